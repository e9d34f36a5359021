//! Strand tracing through the triangulation and exact geometric
//! intersection numbers via divergence-ordered overlays.
//!
//! A crossing of two curves survives in minimal position exactly when the
//! strands swap sides along their shared edge run; counting swap-runs gives
//! i(x, y) with no bigon removal pass at all.

use num_traits::ToPrimitive;

use crate::coords::Coords;
use crate::triangulation::{Triangulation, NUM_EDGES, NUM_TRIS};

/// Hard cap on materialized strand counts (the kernel is a small-index
/// oracle; weight beyond this is a usage error).
pub const MATERIALIZE_CAP: u64 = 30_000_000;

/// A curve with small-enough coordinates laid out for tracing.
pub struct Strands {
    /// Crossings per edge.
    pub counts: [usize; NUM_EDGES],
    /// Corner counts per (triangle, corner slot).
    pub corners: [[usize; 3]; NUM_TRIS],
    pub total: usize,
}

impl Strands {
    pub fn materialize(tri: &Triangulation, c: &Coords) -> Strands {
        let total = c
            .total_weight()
            .to_u64()
            .filter(|&w| w <= MATERIALIZE_CAP)
            .unwrap_or_else(|| panic!("curve too large to materialize"));
        let mut counts = [0usize; NUM_EDGES];
        for e in 0..NUM_EDGES {
            counts[e] = c.0[e].to_usize().expect("per-edge weight fits usize");
        }
        let mut corners = [[0usize; 3]; NUM_TRIS];
        for t in 0..NUM_TRIS {
            for k in 0..3 {
                corners[t][k] = c
                    .corner_count(tri, t, k)
                    .expect("admissible coordinates")
                    .to_usize()
                    .expect("corner weight fits usize");
            }
        }
        Strands { counts, corners, total: total as usize }
    }
}

/// A point where a curve crosses an edge: position 1..=counts[e], indexed
/// along the edge's forward direction.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Passage {
    pub edge: usize,
    pub pos: usize,
}

/// Direction of travel across an edge: into the triangle holding the
/// forward occurrence (`Plus`) or the backward one (`Minus`).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SideDir {
    Plus,
    Minus,
}

impl SideDir {
    pub fn flip(self) -> SideDir {
        match self {
            SideDir::Plus => SideDir::Minus,
            SideDir::Minus => SideDir::Plus,
        }
    }
}

/// Result of pushing one strand through a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepOut {
    pub passage: Passage,
    /// True if the strand turned around the corner at the entry slot's
    /// walk-start vertex.
    pub via_walk_start: bool,
    /// Whether the corner it used sits at the entry edge's forward tail.
    pub corner_at_entry_tail: bool,
    /// Whether that same corner sits at the exit edge's forward tail.
    pub corner_at_exit_tail: bool,
    /// The direction to continue across the exit edge.
    pub next_dir: SideDir,
}

/// Push the strand at `p` across the edge in direction `dir`.
pub fn step(tri: &Triangulation, s: &Strands, p: Passage, dir: SideDir) -> StepOut {
    let forward = matches!(dir, SideDir::Plus);
    let (t, k) = tri.locate(p.edge, forward);
    let side = tri.tris[t][k];
    let len = s.counts[p.edge];
    debug_assert!(p.pos >= 1 && p.pos <= len);
    // Walk-position along the slot (from the slot's start vertex).
    let q = if side.forward { p.pos } else { len + 1 - p.pos };
    let n_start = s.corners[t][k];
    let (exit_slot, d_from_corner, via_walk_start) = if q <= n_start {
        // Corner at V_k, shared with slot k-1.
        ((k + 2) % 3, q, true)
    } else {
        // Corner at V_{k+1}, shared with slot k+1.
        ((k + 1) % 3, len - q + 1, false)
    };
    let exit_side = tri.tris[t][exit_slot];
    let exit_len = s.counts[exit_side.edge];
    // On the exit slot, the shared-corner block hugs the corner vertex.
    // Corner V_k is the walk-END of slot k-1; corner V_{k+1} is the
    // walk-START of slot k+1.
    let q_exit = if via_walk_start {
        exit_len + 1 - d_from_corner
    } else {
        d_from_corner
    };
    let pos_exit = if exit_side.forward { q_exit } else { exit_len + 1 - q_exit };
    // The corner vertex relative to the edges' global orientations.
    let corner_vertex = if via_walk_start {
        tri.slot_start(t, k)
    } else {
        tri.slot_end(t, k)
    };
    let corner_at_entry_tail = tri.tail[p.edge] == corner_vertex
        && !(tri.tail[p.edge] == tri.head[p.edge]);
    let corner_at_exit_tail = tri.tail[exit_side.edge] == corner_vertex
        && !(tri.tail[exit_side.edge] == tri.head[exit_side.edge]);
    // Continue across exit edge away from t: if the exit slot traverses the
    // edge forward, t is its Plus side, so we travel into Minus.
    let next_dir = if exit_side.forward { SideDir::Minus } else { SideDir::Plus };
    StepOut {
        passage: Passage { edge: exit_side.edge, pos: pos_exit },
        via_walk_start,
        corner_at_entry_tail,
        corner_at_exit_tail,
        next_dir,
    }
}

/// Number of connected components of the multicurve.
pub fn component_count(tri: &Triangulation, c: &Coords) -> usize {
    let s = Strands::materialize(tri, c);
    if s.total == 0 {
        return 0;
    }
    let mut visited = vec![false; NUM_EDGES * (s.total + 1)];
    let key = |p: Passage| p.edge * (s.total + 1) + p.pos;
    let mut components = 0;
    for e in 0..NUM_EDGES {
        for pos in 1..=s.counts[e] {
            let start = Passage { edge: e, pos };
            if visited[key(start)] {
                continue;
            }
            components += 1;
            let mut p = start;
            let mut dir = SideDir::Plus;
            loop {
                visited[key(p)] = true;
                let out = step(tri, &s, p, dir);
                p = out.passage;
                dir = out.next_dir;
                if p == start && dir == SideDir::Plus {
                    break;
                }
            }
        }
    }
    components
}

/// Cycle length (number of edge crossings) through a given passage.
fn cycle_len(tri: &Triangulation, s: &Strands, start: Passage) -> usize {
    let mut p = start;
    let mut dir = SideDir::Plus;
    let mut n = 0;
    loop {
        let out = step(tri, s, p, dir);
        p = out.passage;
        dir = out.next_dir;
        n += 1;
        if p == start && dir == SideDir::Plus {
            return n;
        }
    }
}

/// Outcome of walking a co-located pair away from an edge.
enum PairWalk {
    /// Diverged after `flips` order reversals; `x_at_tail_corner` tells
    /// which strand turned around the corner nearer the *current* edge's
    /// forward tail at the divergence point.
    Diverged { x_toward_entry_tail: bool, flips: bool },
    /// The strands shadow each other around a full cycle.
    Parallel,
}

fn walk_pair(
    tri: &Triangulation,
    x: &Strands,
    y: &Strands,
    mut px: Passage,
    mut py: Passage,
    mut dir: SideDir,
    max_steps: usize,
) -> PairWalk {
    let mut flips = false;
    for _ in 0..max_steps {
        let sx = step(tri, x, px, dir);
        let sy = step(tri, y, py, dir);
        if sx.via_walk_start != sy.via_walk_start {
            // Divergence: one went around the slot's walk-start corner, the
            // other around the walk-end corner. The walk-start corner holds
            // the strands nearer the entry edge's tail iff that corner is at
            // the tail.
            let x_at_start_corner = sx.via_walk_start;
            // corner_at_entry_tail is reported from the strand that used the
            // walk-start corner.
            let start_at_tail = if x_at_start_corner {
                sx.corner_at_entry_tail
            } else {
                sy.corner_at_entry_tail
            };
            let x_toward_entry_tail = x_at_start_corner == start_at_tail;
            return PairWalk::Diverged { x_toward_entry_tail, flips };
        }
        // Shared corner: order flips when the corner changes tail/head role.
        if sx.corner_at_entry_tail != sx.corner_at_exit_tail {
            flips = !flips;
        }
        px = sx.passage;
        py = sy.passage;
        dir = sx.next_dir;
    }
    PairWalk::Parallel
}

/// Exact geometric intersection number of two multicurves.
pub fn intersection_number(tri: &Triangulation, a: &Coords, b: &Coords) -> u64 {
    let x = Strands::materialize(tri, a);
    let y = Strands::materialize(tri, b);
    if x.total == 0 || y.total == 0 {
        return 0;
    }
    let mut double_count = 0u64;
    for e in 0..NUM_EDGES {
        if x.counts[e] == 0 || y.counts[e] == 0 {
            continue;
        }
        for i in 1..=x.counts[e] {
            let px = Passage { edge: e, pos: i };
            let max_steps = cycle_len(tri, &x, px) + y.total + 2;
            for j in 1..=y.counts[e] {
                let py = Passage { edge: e, pos: j };
                for d in [SideDir::Plus, SideDir::Minus] {
                    // End-adjacency: immediate divergence in direction d.
                    let sx = step(tri, &x, px, d);
                    let sy = step(tri, &y, py, d);
                    if sx.via_walk_start == sy.via_walk_start {
                        continue;
                    }
                    let start_at_tail = if sx.via_walk_start {
                        sx.corner_at_entry_tail
                    } else {
                        sy.corner_at_entry_tail
                    };
                    let x_near = sx.via_walk_start == start_at_tail;
                    // Walk the other way to the far divergence.
                    match walk_pair(tri, &x, &y, px, py, d.flip(), max_steps) {
                        PairWalk::Parallel => {}
                        PairWalk::Diverged { x_toward_entry_tail, flips } => {
                            // Map the far order back to this edge's frame.
                            let far_x_near = x_toward_entry_tail != flips;
                            if far_x_near != x_near {
                                double_count += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    debug_assert!(double_count % 2 == 0, "each crossing run has two ends");
    double_count / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::{arc_punctures, round_curve};
    use num_bigint::BigUint;

    fn base() -> Triangulation {
        Triangulation::base()
    }

    #[test]
    fn round_curves_are_connected() {
        let tri = base();
        for start in 0..7 {
            for len in [2usize, 3] {
                let c = round_curve(&tri, &arc_punctures(start, len));
                assert_eq!(component_count(&tri, &c), 1, "start {start} len {len}");
            }
        }
    }

    #[test]
    fn doubled_curve_has_two_components() {
        let tri = base();
        let c = round_curve(&tri, &arc_punctures(1, 2)).scale(2);
        assert_eq!(component_count(&tri, &c), 2);
    }

    #[test]
    fn vertex_links_are_connected() {
        let tri = base();
        for v in 0..7 {
            let mut c = Coords::zero();
            for e in 0..NUM_EDGES {
                if tri.tail[e] == v || tri.head[e] == v {
                    c.0[e] = BigUint::from(1u8);
                }
            }
            assert_eq!(component_count(&tri, &c), 1, "link of {v}");
        }
    }

    #[test]
    fn self_intersection_is_zero() {
        let tri = base();
        for start in 0..7 {
            let c = round_curve(&tri, &arc_punctures(start, 2));
            assert_eq!(intersection_number(&tri, &c, &c), 0, "pair at {start}");
            let t = round_curve(&tri, &arc_punctures(start, 3));
            assert_eq!(intersection_number(&tri, &t, &t), 0, "triple at {start}");
        }
    }

    #[test]
    fn disjoint_round_curves() {
        let tri = base();
        let a = round_curve(&tri, &arc_punctures(1, 2));
        let b = round_curve(&tri, &arc_punctures(4, 2));
        assert_eq!(intersection_number(&tri, &a, &b), 0);
    }

    #[test]
    fn overlapping_pairs_intersect_twice() {
        let tri = base();
        for start in 0..7 {
            let a = round_curve(&tri, &arc_punctures(start, 2));
            let b = round_curve(&tri, &arc_punctures((start + 1) % 7, 2));
            assert_eq!(intersection_number(&tri, &a, &b), 2, "start {start}");
        }
    }

    #[test]
    fn overlapping_triples_intersect_twice() {
        let tri = base();
        // {3,4,5} vs {5,6,0}: share one puncture.
        let a = round_curve(&tri, &arc_punctures(3, 3));
        let b = round_curve(&tri, &arc_punctures(5, 3));
        assert_eq!(intersection_number(&tri, &a, &b), 2);
        // {3,4,5} vs {2,3,4}: share two punctures.
        let c = round_curve(&tri, &arc_punctures(2, 3));
        assert_eq!(intersection_number(&tri, &a, &c), 2);
    }

    #[test]
    fn nested_pair_and_triple_disjoint() {
        let tri = base();
        // {1,2} inside {1,2,3}: disjoint representatives exist.
        let a = round_curve(&tri, &arc_punctures(1, 2));
        let b = round_curve(&tri, &arc_punctures(1, 3));
        assert_eq!(intersection_number(&tri, &a, &b), 0);
        // {2,3} also sits inside {1,2,3}.
        let c = round_curve(&tri, &arc_punctures(2, 2));
        assert_eq!(intersection_number(&tri, &c, &b), 0);
    }

    #[test]
    fn intersection_is_symmetric() {
        let tri = base();
        for s1 in 0..7 {
            for s2 in 0..7 {
                let a = round_curve(&tri, &arc_punctures(s1, 3));
                let b = round_curve(&tri, &arc_punctures(s2, 2));
                assert_eq!(
                    intersection_number(&tri, &a, &b),
                    intersection_number(&tri, &b, &a),
                    "{s1} {s2}"
                );
            }
        }
    }

    #[test]
    fn pair_against_enclosing_link() {
        let tri = base();
        // A pair curve and the vertex link of a puncture inside it: i = 2.
        let a = round_curve(&tri, &arc_punctures(1, 2));
        let mut link2 = Coords::zero();
        for e in 0..NUM_EDGES {
            if tri.tail[e] == 4 || tri.head[e] == 4 {
                link2.0[e] = BigUint::from(1u8);
            }
        }
        // Link of 4 is disjoint from the pair {1,2}.
        assert_eq!(intersection_number(&tri, &a, &link2), 0);
        // Link of a puncture *inside* the pair curve is also disjoint.
        let mut link_in = Coords::zero();
        for e in 0..NUM_EDGES {
            if tri.tail[e] == 1 || tri.head[e] == 1 {
                link_in.0[e] = BigUint::from(1u8);
            }
        }
        assert_eq!(intersection_number(&tri, &a, &link_in), 0);
    }
}
