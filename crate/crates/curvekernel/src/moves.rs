//! Mapping classes encoded as flip sequences that return the base
//! triangulation up to a simplicial relabeling.

use crate::coords::Coords;
use crate::triangulation::{Iso, Triangulation, NUM_EDGES, NUM_PUNCTURES};

/// A mapping class encoding: apply the flips to the base triangulation in
/// order, then identify the result with the base via `iso`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveWord {
    pub flips: Vec<usize>,
    pub iso: Iso,
}

impl MoveWord {
    /// Validate a flip word against the base triangulation and close it up
    /// with an orientation-preserving isomorphism back to base realizing the
    /// requested puncture permutation. (The doubled heptagon has equatorial
    /// π-rotation symmetries, so the vertex map is needed to pin the class.)
    pub fn close_up_with(
        base: &Triangulation,
        flips: Vec<usize>,
        verts: [usize; NUM_PUNCTURES],
    ) -> Option<MoveWord> {
        let mut t = base.clone();
        for &e in &flips {
            t.square(e)?;
            t.flip(e);
        }
        let isos = t.isomorphisms_to(base);
        let iso = isos.into_iter().find(|iso| iso.verts == verts)?;
        Some(MoveWord { flips, iso })
    }

    /// All closures of a flip word (one per matching isomorphism).
    pub fn close_up_all(base: &Triangulation, flips: Vec<usize>) -> Vec<MoveWord> {
        let mut t = base.clone();
        for &e in &flips {
            if t.square(e).is_none() {
                return Vec::new();
            }
            t.flip(e);
        }
        t.isomorphisms_to(base)
            .into_iter()
            .map(|iso| MoveWord { flips: flips.clone(), iso })
            .collect()
    }

    /// Action on normal coordinates.
    pub fn apply(&self, base: &Triangulation, c: &Coords) -> Coords {
        let mut t = base.clone();
        let mut x = c.clone();
        for &e in &self.flips {
            x.apply_flip(&t, e);
            t.flip(e);
        }
        let mut out = Coords::zero();
        for e in 0..NUM_EDGES {
            out.0[self.iso.edges[e]] = x.0[e].clone();
        }
        out
    }

    pub fn vertex_perm(&self) -> [usize; NUM_PUNCTURES] {
        self.iso.verts
    }

    /// The inverse encoding: undo the relabeling, then undo the flips in
    /// reverse order (each flip is an involution at the right state).
    pub fn inverse(&self, base: &Triangulation) -> MoveWord {
        let flips: Vec<usize> = self
            .flips
            .iter()
            .rev()
            .map(|&f| self.iso.edges[f])
            .collect();
        let mut inv_verts = [0usize; NUM_PUNCTURES];
        for v in 0..NUM_PUNCTURES {
            inv_verts[self.iso.verts[v]] = v;
        }
        MoveWord::close_up_with(base, flips, inv_verts).expect("inverse word closes up")
    }
}

/// Composite word: apply `first`, then `second`.
pub fn compose(base: &Triangulation, first: &MoveWord, second: &MoveWord) -> MoveWord {
    // Second's flips happen on the base; transported across first's
    // relabeling they act after first's flips.
    let mut inv_first = [0usize; NUM_EDGES];
    for e in 0..NUM_EDGES {
        inv_first[first.iso.edges[e]] = e;
    }
    let mut flips = first.flips.clone();
    flips.extend(second.flips.iter().map(|&f| inv_first[f]));
    let mut verts = [0usize; NUM_PUNCTURES];
    for v in 0..NUM_PUNCTURES {
        verts[v] = second.iso.verts[first.iso.verts[v]];
    }
    MoveWord::close_up_with(base, flips, verts).expect("composite word closes up")
}
