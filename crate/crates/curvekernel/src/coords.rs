//! Normal coordinates: one nonnegative crossing count per edge. A vector is
//! admissible when every triangle has even boundary sum and nonnegative
//! corner counts; admissible vectors are in bijection with isotopy classes
//! of (multi)curves, so equality of vectors is equality of classes.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::triangulation::{Triangulation, NUM_EDGES};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coords(pub Vec<BigUint>);

impl Coords {
    pub fn zero() -> Self {
        Coords(vec![BigUint::zero(); NUM_EDGES])
    }

    pub fn from_u64(v: [u64; NUM_EDGES]) -> Self {
        Coords(v.iter().map(|&x| BigUint::from(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, rhs: &Coords) -> Coords {
        Coords(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; None if any entry would go negative.
    pub fn checked_sub(&self, rhs: &Coords) -> Option<Coords> {
        let mut out = Vec::with_capacity(NUM_EDGES);
        for (a, b) in self.0.iter().zip(&rhs.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Coords(out))
    }

    pub fn scale(&self, k: u64) -> Coords {
        Coords(self.0.iter().map(|a| a * BigUint::from(k)).collect())
    }

    pub fn total_weight(&self) -> BigUint {
        self.0.iter().sum()
    }

    /// Corner count at corner k of triangle t (the corner between slots
    /// k-1 and k): (L_{k-1} + L_k − L_{k+1})/2 where L_j is the coordinate
    /// of slot j's edge. None if negative or parity fails.
    pub fn corner_count(&self, tri: &Triangulation, t: usize, k: usize) -> Option<BigUint> {
        let l = |j: usize| &self.0[tri.tris[t][j % 3].edge];
        let (a, b, c) = (l(k + 2), l(k), l((k + 1) % 3));
        let sum = a + b;
        if &sum < c {
            return None;
        }
        let diff = sum - c;
        if (&diff % 2u8) != BigUint::zero() {
            return None;
        }
        Some(diff >> 1)
    }

    pub fn is_admissible(&self, tri: &Triangulation) -> bool {
        for t in 0..crate::triangulation::NUM_TRIS {
            for k in 0..3 {
                if self.corner_count(tri, t, k).is_none() {
                    return false;
                }
            }
        }
        true
    }

    /// Tropical flip update for the diagonal `edge`: must be called with the
    /// square sides of the *pre-flip* triangulation.
    pub fn apply_flip(&mut self, tri_before: &Triangulation, edge: usize) {
        let (a, b, c, d) = tri_before
            .square(edge)
            .expect("flip of self-folded edge");
        let sum_ac = &self.0[a.edge] + &self.0[c.edge];
        let sum_bd = &self.0[b.edge] + &self.0[d.edge];
        let m = sum_ac.max(sum_bd);
        assert!(
            m >= self.0[edge],
            "inadmissible coordinates in flip (edge {edge})"
        );
        self.0[edge] = m - &self.0[edge];
    }
}

impl std::fmt::Debug for Coords {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            write!(f, "{}{}", x, if i + 1 < NUM_EDGES { " " } else { "" })?;
        }
        write!(f, "]")
    }
}

/// Round curve around a consecutive arc of punctures [from..=to] (0-based,
/// cyclic): the boundary of a disk neighborhood of that rim arc. Crosses
/// each edge with exactly one endpoint inside the set once.
pub fn round_curve(tri: &Triangulation, punctures: &[usize]) -> Coords {
    let inside = |v: usize| punctures.contains(&v);
    let mut c = Coords::zero();
    for e in 0..NUM_EDGES {
        if inside(tri.tail[e]) != inside(tri.head[e]) {
            c.0[e] = BigUint::from(1u8);
        }
    }
    debug_assert!(c.is_admissible(tri), "round curve must be normal");
    c
}

/// Consecutive puncture arc {start, start+1, ..., start+len-1} mod 7.
pub fn arc_punctures(start: usize, len: usize) -> Vec<usize> {
    (0..len).map(|k| (start + k) % 7).collect()
}
