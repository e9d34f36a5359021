//! Ideal triangulations of the seven-punctured sphere with edge flips.
//!
//! The base triangulation is the doubled heptagon with both faces fanned
//! from puncture 1: rim edges 0..6 (edge k joins punctures k+1 and k+2
//! mod 7), front diagonals 7..10 = (1,3),(1,4),(1,5),(1,6), back diagonals
//! 11..14. Ten triangles, all vertices ideal.

pub const NUM_EDGES: usize = 15;
pub const NUM_TRIS: usize = 10;
pub const NUM_PUNCTURES: usize = 7;

/// One side of a triangle: an edge traversed forward (tail→head) or not.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Side {
    pub edge: usize,
    pub forward: bool,
}

impl Side {
    pub fn new(edge: usize, forward: bool) -> Self {
        Side { edge, forward }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Triangulation {
    /// Counterclockwise side lists.
    pub tris: [[Side; 3]; NUM_TRIS],
    /// Tail/head puncture of each edge in its forward direction.
    pub tail: [usize; NUM_EDGES],
    pub head: [usize; NUM_EDGES],
}

pub const RIM: [usize; 7] = [0, 1, 2, 3, 4, 5, 6];
pub const FRONT_DIAG: [usize; 4] = [7, 8, 9, 10];
pub const BACK_DIAG: [usize; 4] = [11, 12, 13, 14];

impl Triangulation {
    /// The fixed base triangulation described in the module docs.
    pub fn base() -> Self {
        // Punctures are 0-based here: rim edge k joins k and k+1 (mod 7);
        // diagonals join 0 with 2, 3, 4, 5.
        let mut tail = [0usize; NUM_EDGES];
        let mut head = [0usize; NUM_EDGES];
        for k in 0..7 {
            tail[k] = k;
            head[k] = (k + 1) % 7;
        }
        for (i, target) in [2usize, 3, 4, 5].iter().enumerate() {
            tail[7 + i] = 0;
            head[7 + i] = *target;
            tail[11 + i] = 0;
            head[11 + i] = *target;
        }
        let s = Side::new;
        // Front face (seen from the front, counterclockwise): fan from 0.
        // (0,1,2): rim0 (0→1), rim1 (1→2), F3 (2→0 = backward 7)
        let tris = [
            [s(0, true), s(1, true), s(7, false)],
            [s(7, true), s(2, true), s(8, false)],
            [s(8, true), s(3, true), s(9, false)],
            [s(9, true), s(4, true), s(10, false)],
            [s(10, true), s(5, true), s(6, true)],
            // Back face: same combinatorics but opposite induced orientation,
            // so the walks reverse.
            [s(7, true), s(1, false), s(0, false)],
            [s(8, true), s(2, false), s(7, false)],
            [s(9, true), s(3, false), s(8, false)],
            [s(10, true), s(4, false), s(9, false)],
            [s(6, false), s(5, false), s(10, false)],
        ];
        // Fix the back sides to use back diagonals 11..14 instead of front.
        let mut tris = tris;
        for t in 5..10 {
            for k in 0..3 {
                let e = tris[t][k].edge;
                if (7..11).contains(&e) {
                    tris[t][k].edge = e + 4;
                }
            }
        }
        let t = Triangulation { tris, tail, head };
        t.validate().expect("base triangulation is consistent");
        t
    }

    /// Start vertex of slot k in triangle t (the corner vertex at that slot).
    pub fn slot_start(&self, t: usize, k: usize) -> usize {
        let side = self.tris[t][k];
        if side.forward {
            self.tail[side.edge]
        } else {
            self.head[side.edge]
        }
    }

    pub fn slot_end(&self, t: usize, k: usize) -> usize {
        let side = self.tris[t][k];
        if side.forward {
            self.head[side.edge]
        } else {
            self.tail[side.edge]
        }
    }

    /// Check that sides chain around each triangle and that every edge is
    /// traversed exactly once forward and once backward.
    pub fn validate(&self) -> Result<(), String> {
        let mut fw = [0u8; NUM_EDGES];
        let mut bw = [0u8; NUM_EDGES];
        for t in 0..NUM_TRIS {
            for k in 0..3 {
                let side = self.tris[t][k];
                if side.edge >= NUM_EDGES {
                    return Err(format!("bad edge id in tri {t}"));
                }
                if side.forward {
                    fw[side.edge] += 1;
                } else {
                    bw[side.edge] += 1;
                }
                if self.slot_end(t, k) != self.slot_start(t, (k + 1) % 3) {
                    return Err(format!("tri {t} does not chain at slot {k}"));
                }
            }
        }
        for e in 0..NUM_EDGES {
            if fw[e] != 1 || bw[e] != 1 {
                return Err(format!("edge {e} traversed fw={} bw={}", fw[e], bw[e]));
            }
        }
        Ok(())
    }

    /// Locate the (triangle, slot) traversing edge e in the given direction.
    pub fn locate(&self, edge: usize, forward: bool) -> (usize, usize) {
        for t in 0..NUM_TRIS {
            for k in 0..3 {
                let s = self.tris[t][k];
                if s.edge == edge && s.forward == forward {
                    return (t, k);
                }
            }
        }
        unreachable!("edge {edge} direction {forward} not found")
    }

    /// The four sides (a, b, c, d) of the square around `edge`, where the
    /// triangle [e+, a, b] sits on one side and [e−, c, d] on the other.
    /// Returns None when both sides of the edge lie in one triangle
    /// (unflippable self-folded configuration).
    pub fn square(&self, edge: usize) -> Option<(Side, Side, Side, Side)> {
        let (t1, k1) = self.locate(edge, true);
        let (t2, k2) = self.locate(edge, false);
        if t1 == t2 {
            return None;
        }
        let a = self.tris[t1][(k1 + 1) % 3];
        let b = self.tris[t1][(k1 + 2) % 3];
        let c = self.tris[t2][(k2 + 1) % 3];
        let d = self.tris[t2][(k2 + 2) % 3];
        Some((a, b, c, d))
    }

    /// Flip the diagonal `edge`. Panics on self-folded squares.
    pub fn flip(&mut self, edge: usize) {
        let (t1, k1) = self.locate(edge, true);
        let (t2, k2) = self.locate(edge, false);
        assert_ne!(t1, t2, "cannot flip a self-folded edge");
        let a = self.tris[t1][(k1 + 1) % 3];
        let b = self.tris[t1][(k1 + 2) % 3];
        let c = self.tris[t2][(k2 + 1) % 3];
        let d = self.tris[t2][(k2 + 2) % 3];
        // Corners: e runs P→Q; a: Q→R, b: R→P, c: P→S, d: S→Q.
        let r = side_end(self, a);
        let s_vert = side_end(self, c);
        // New edge runs R→S.
        self.tail[edge] = r;
        self.head[edge] = s_vert;
        self.tris[t1] = [b, c, Side::new(edge, false)];
        self.tris[t2] = [d, a, Side::new(edge, true)];
    }

    /// All orientation-preserving simplicial isomorphisms to `other`,
    /// described as (edge map with orientation flags, vertex map).
    pub fn isomorphisms_to(&self, other: &Triangulation) -> Vec<Iso> {
        let mut found = Vec::new();
        // Anchor: send directed side (tri 0, slot 0) to every directed slot.
        for t in 0..NUM_TRIS {
            for k in 0..3 {
                if let Some(iso) = self.try_match(other, t, k) {
                    found.push(iso);
                }
            }
        }
        found
    }

    fn try_match(&self, other: &Triangulation, t0: usize, k0: usize) -> Option<Iso> {
        // edge_map[e] = (image edge, same_orientation)
        let mut edge_map: [Option<(usize, bool)>; NUM_EDGES] = [None; NUM_EDGES];
        let mut tri_map: [Option<(usize, usize)>; NUM_TRIS] = [None; NUM_TRIS]; // (image tri, rotation)
        let mut queue = vec![(0usize, t0, k0)];
        tri_map[0] = Some((t0, k0));
        while let Some((t, it, ik)) = queue.pop() {
            for j in 0..3 {
                let src = self.tris[t][j];
                let dst = other.tris[it][(ik + j) % 3];
                let same = src.forward == dst.forward;
                match edge_map[src.edge] {
                    None => edge_map[src.edge] = Some((dst.edge, same)),
                    Some(m) => {
                        if m != (dst.edge, same) {
                            return None;
                        }
                        continue;
                    }
                }
                // Propagate through the other side of this edge. The image
                // of the opposite occurrence is traversed the same way iff
                // the direction correspondence `same` says so.
                let (nt, nk) = self.locate(src.edge, !src.forward);
                let want_forward = if same { !src.forward } else { src.forward };
                let (int, ink) = other.locate(dst.edge, want_forward);
                // Rotate so that slot nk in nt corresponds to slot ink in int.
                let rot = (ink + 3 - nk % 3) % 3;
                match tri_map[nt] {
                    None => {
                        tri_map[nt] = Some((int, rot));
                        queue.push((nt, int, rot));
                    }
                    Some(m) => {
                        if m != (int, rot) {
                            return None;
                        }
                    }
                }
            }
        }
        // Complete?
        let mut edges = [0usize; NUM_EDGES];
        let mut orient = [true; NUM_EDGES];
        let mut seen = [false; NUM_EDGES];
        for e in 0..NUM_EDGES {
            let (img, same) = edge_map[e]?;
            if seen[img] {
                return None;
            }
            seen[img] = true;
            edges[e] = img;
            orient[e] = same;
        }
        // Vertex map.
        let mut verts = [usize::MAX; NUM_PUNCTURES];
        for e in 0..NUM_EDGES {
            let (src_t, src_h) = (self.tail[e], self.head[e]);
            let (dst_t, dst_h) = if orient[e] {
                (other.tail[edges[e]], other.head[edges[e]])
            } else {
                (other.head[edges[e]], other.tail[edges[e]])
            };
            for (s, d) in [(src_t, dst_t), (src_h, dst_h)] {
                if verts[s] == usize::MAX {
                    verts[s] = d;
                } else if verts[s] != d {
                    return None;
                }
            }
        }
        Some(Iso { edges, orient, verts })
    }
}

fn side_end(t: &Triangulation, s: Side) -> usize {
    if s.forward {
        t.head[s.edge]
    } else {
        t.tail[s.edge]
    }
}

/// A simplicial isomorphism between two triangulations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iso {
    pub edges: [usize; NUM_EDGES],
    pub orient: [bool; NUM_EDGES],
    pub verts: [usize; NUM_PUNCTURES],
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_is_consistent() {
        let t = Triangulation::base();
        assert!(t.validate().is_ok());
    }

    #[test]
    fn base_self_isomorphisms() {
        let t = Triangulation::base();
        let isos = t.isomorphisms_to(&t);
        // Orientation-preserving automorphisms: the identity and the
        // equatorial π-rotation through puncture 0 (which exchanges the two
        // faces and reverses the rim). The planar mirror is rejected.
        assert_eq!(isos.len(), 2);
        assert!(isos.iter().any(|i| i.verts == [0, 1, 2, 3, 4, 5, 6]));
        assert!(isos.iter().any(|i| i.verts == [0, 6, 5, 4, 3, 2, 1]));
    }

    #[test]
    fn flip_is_involutive_on_structure() {
        for e in [7usize, 8, 9, 10, 11, 0, 3] {
            let base = Triangulation::base();
            let mut t = base.clone();
            t.flip(e);
            assert!(t.validate().is_ok(), "after flip {e}");
            assert_ne!(t, base);
            t.flip(e);
            assert!(t.validate().is_ok());
            // Structure returns up to the flipped edge's direction.
            for f in 0..NUM_EDGES {
                let fwd = (t.tail[f], t.head[f]);
                let orig = (base.tail[f], base.head[f]);
                assert!(fwd == orig || (f == e && fwd == (orig.1, orig.0)), "edge {f}");
            }
        }
    }

    #[test]
    fn flip_front_diagonal_gives_expected_square() {
        let mut t = Triangulation::base();
        // Edge 7 = (0,2); square corners: P=0, Q=2, R=3, S=1.
        t.flip(7);
        assert_eq!((t.tail[7], t.head[7]), (3, 1));
        assert!(t.validate().is_ok());
    }

    #[test]
    fn refan_sequence_rotates_labels() {
        // Flipping all front then all back diagonals re-fans both faces from
        // puncture 1, giving a triangulation isomorphic to base with the
        // vertex relabeling v ↦ v-1.
        let mut t = Triangulation::base();
        for e in [7, 8, 9, 10, 11, 12, 13, 14] {
            t.flip(e);
        }
        assert!(t.validate().is_ok());
        let base = Triangulation::base();
        let isos = t.isomorphisms_to(&base);
        assert_eq!(isos.len(), 2, "rotation closure and flip closure");
        let rotation = isos
            .iter()
            .find(|iso| (0..7).all(|k| iso.verts[k] == (iso.verts[0] + k) % 7))
            .expect("one closure is a rotation");
        let shift = rotation.verts[0];
        assert!(shift == 1 || shift == 6, "shift by one click, got {shift}");
    }
}
