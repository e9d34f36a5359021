//! Construction of the mapping-class generators: the one-click rotation as
//! a refan word, and half-twists about rim edges found by a validated flip
//! word search.

use crate::coords::{arc_punctures, round_curve, Coords};
use crate::moves::{compose, MoveWord};
use crate::triangulation::{Triangulation, NUM_PUNCTURES};

/// The one-click rotation k ↦ k+1 as a mapping class.
pub fn click(base: &Triangulation) -> MoveWord {
    // Refanning both faces moves the fan apex by one; close with the
    // rotation whose shift we then normalize to +1 by powering.
    let flips = vec![7, 8, 9, 10, 11, 12, 13, 14];
    for shift in [1usize, 6] {
        let verts = core::array::from_fn(|k| (k + shift) % NUM_PUNCTURES);
        if let Some(w) = MoveWord::close_up_with(base, flips.clone(), verts) {
            if shift == 1 {
                return w;
            }
            // Shift 6 = -1: invert to get +1.
            return w.inverse(base);
        }
    }
    unreachable!("refan word closes into a rotation");
}

/// rotation by `s` clicks (s mod 7).
pub fn rotation(base: &Triangulation, s: usize) -> MoveWord {
    let one = click(base);
    let mut acc = one.clone();
    let mut done = 1;
    while done != s % 7 {
        acc = compose(base, &acc, &one);
        done += 1;
        if done == 8 {
            panic!("rotation exponent loop");
        }
    }
    acc
}

/// Transposition permutation of punctures p and q.
fn transposition(p: usize, q: usize) -> [usize; NUM_PUNCTURES] {
    core::array::from_fn(|k| {
        if k == p {
            q
        } else if k == q {
            p
        } else {
            k
        }
    })
}

/// Probe curves disjoint from a disk neighborhood of the rim edge {p, p+1}:
/// the candidate half-twist must fix all of them.
fn fixed_probes(base: &Triangulation, p: usize) -> Vec<Coords> {
    let q = (p + 1) % 7;
    let inside = [p, q];
    let mut probes = Vec::new();
    for start in 0..7 {
        for len in [2usize, 3] {
            let punct = arc_punctures(start, len);
            let hits = punct.iter().filter(|v| inside.contains(v)).count();
            // Disjoint from the twist disk: contains both punctures of the
            // pair consecutively (so the disk nests inside) or misses both.
            let consecutive_containment = punct
                .windows(2)
                .any(|w| (w[0] == p && w[1] == q) || (w[0] == q && w[1] == p));
            if hits == 0 || (hits == 2 && (len == 2 || consecutive_containment)) {
                probes.push(round_curve(base, &punct));
            }
        }
    }
    probes
}

/// Curves the half-twist must move (they cross the twist disk boundary).
fn moved_probes(base: &Triangulation, p: usize) -> Vec<Coords> {
    let q = (p + 1) % 7;
    let mut probes = Vec::new();
    for start in 0..7 {
        for len in [2usize, 3] {
            let punct = arc_punctures(start, len);
            let hits = punct.iter().filter(|v| [p, q].contains(v)).count();
            if hits == 1 {
                probes.push(round_curve(base, &punct));
            }
        }
    }
    probes
}

/// Search for half-twist words about the rim edge joining punctures p and
/// p+1. Returns deduplicated candidates (distinct actions); the two
/// chiralities both appear.
pub fn find_half_twists(base: &Triangulation, p: usize) -> Vec<MoveWord> {
    let q = (p + 1) % 7;
    let verts = transposition(p, q);
    // Support: edges incident to p or q.
    let support: Vec<usize> = (0..crate::triangulation::NUM_EDGES)
        .filter(|&e| [base.tail[e], base.head[e]].iter().any(|v| *v == p || *v == q))
        .collect();
    let fixed = fixed_probes(base, p);
    let moved = moved_probes(base, p);
    let mut found: Vec<MoveWord> = Vec::new();
    let mut signatures: Vec<Vec<Coords>> = Vec::new();
    // Iterative deepening over words from the support alphabet.
    let mut stack: Vec<Vec<usize>> = support.iter().map(|&e| vec![e]).collect();
    let max_len = 4;
    while let Some(word) = stack.pop() {
        if word.len() < max_len {
            for &e in &support {
                if *word.last().unwrap() != e {
                    let mut w2 = word.clone();
                    w2.push(e);
                    stack.push(w2);
                }
            }
        }
        let Some(cand) = MoveWord::close_up_with(base, word, verts) else {
            continue;
        };
        if !fixed.iter().all(|c| &cand.apply(base, c) == c) {
            continue;
        }
        if moved.iter().any(|c| &cand.apply(base, c) == c) {
            continue;
        }
        // Square must be a twist: moves the moved-probes with growing
        // complexity but fixes the pair curve.
        let pair = round_curve(base, &[p, q]);
        if cand.apply(base, &pair) != pair {
            continue;
        }
        let sig: Vec<Coords> = moved.iter().map(|c| cand.apply(base, c)).collect();
        if signatures.contains(&sig) {
            continue;
        }
        signatures.push(sig);
        found.push(cand);
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn click_shifts_by_one() {
        let base = Triangulation::base();
        let w = click(&base);
        assert_eq!(w.vertex_perm(), core::array::from_fn(|k| (k + 1) % 7));
        for start in 0..7 {
            let c = round_curve(&base, &arc_punctures(start, 3));
            let img = w.apply(&base, &c);
            assert_eq!(img, round_curve(&base, &arc_punctures((start + 1) % 7, 3)));
        }
    }

    #[test]
    fn rotation_by_three() {
        let base = Triangulation::base();
        let r3 = rotation(&base, 3);
        assert_eq!(r3.vertex_perm(), core::array::from_fn(|k| (k + 3) % 7));
        let c = round_curve(&base, &arc_punctures(0, 2));
        assert_eq!(r3.apply(&base, &c), round_curve(&base, &arc_punctures(3, 2)));
    }

    #[test]
    fn half_twists_exist_for_every_rim_edge() {
        let base = Triangulation::base();
        let cands = find_half_twists(&base, 1);
        assert!(
            cands.len() >= 2,
            "found {} half-twist candidates about (1,2)",
            cands.len()
        );
        // The two chiralities are inverse to each other on probes.
        let moved = moved_probes(&base, 1);
        let mut inverse_pairs = 0;
        for a in &cands {
            for b in &cands {
                if moved
                    .iter()
                    .all(|c| a.apply(&base, &b.apply(&base, c)) == *c)
                {
                    inverse_pairs += 1;
                }
            }
        }
        assert!(inverse_pairs >= 2, "chirality pair found");
    }

    #[test]
    fn half_twist_squares_to_a_twist() {
        let base = Triangulation::base();
        let cands = find_half_twists(&base, 1);
        let h = &cands[0];
        // The square fixes every probe the twist disk misses and still moves
        // the crossing probes; iterating grows coordinates linearly.
        let hh = compose(&base, h, h);
        assert_eq!(hh.vertex_perm(), core::array::from_fn(|k| k));
        let crossing = round_curve(&base, &arc_punctures(2, 2)); // {2,3} hits the disk of {1,2}
        let mut sizes = Vec::new();
        let mut cur = crossing.clone();
        for _ in 0..5 {
            cur = hh.apply(&base, &cur);
            sizes.push(cur.total_weight());
        }
        // Linear growth: increments stabilize.
        let d1 = &sizes[3] - &sizes[2];
        let d2 = &sizes[4] - &sizes[3];
        assert_eq!(d1, d2, "twist growth is eventually linear");
        assert!(sizes[4] > sizes[0]);
    }
}
