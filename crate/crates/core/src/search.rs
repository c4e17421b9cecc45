//! Minimum colour-change antipodal geodesics.
//!
//! The exact minimum from a fixed start is a shortest-path problem over states
//! `(set of directions already used, colour of the last edge)`, solved backwards
//! from the full set. A forward pass that always takes the smallest optimal
//! direction recovers the lexicographically first optimal geodesic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::codec;
use crate::error::{Error, Result};
use crate::hypercube::{
    colour_changes, enumerate_geodesics, vertex_mask, Colour, Direction, EdgeColouring, Geodesic, Vertex,
};

/// Largest dimension accepted by [`brute_force_min`].
pub const BRUTE_FORCE_MAX_DIMENSION: u32 = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinChangesResult {
    /// The antipodal pair; the first vertex is the one with the top bit clear.
    pub pair: (Vertex, Vertex),
    pub changes: u32,
    /// Geodesic from `pair.0` to `pair.1` achieving `changes`.
    pub witness: Geodesic,
}

/// `remaining[s][colour]`: fewest further changes needed to finish an antipodal
/// geodesic from `v` after using the directions in `s`, last edge coloured `colour`.
fn remaining_changes(c: &EdgeColouring, v: Vertex) -> Vec<[u8; 2]> {
    let n = c.dimension();
    let full = vertex_mask(n);
    let mut remaining = vec![[0u8; 2]; 1 << n];
    for used in (0..full).rev() {
        let at = Vertex(v.0 ^ used);
        let mut best = [u8::MAX; 2];
        let mut free = full & !used;
        while free != 0 {
            let d = Direction(free.trailing_zeros());
            free &= free - 1;
            let colour = c.colour_at(at, d);
            let after = remaining[(used | d.bit()) as usize][colour.bit() as usize];
            for last in [Colour::Red, Colour::Blue] {
                let cost = after + (last != colour) as u8;
                let slot = &mut best[last.bit() as usize];
                *slot = (*slot).min(cost);
            }
        }
        remaining[used as usize] = best;
    }
    remaining
}

fn first_step_value(c: &EdgeColouring, v: Vertex, remaining: &[[u8; 2]], d: Direction) -> u8 {
    remaining[d.bit() as usize][c.colour_at(v, d).bit() as usize]
}

fn dp_min(c: &EdgeColouring, v: Vertex) -> (u32, Vec<[u8; 2]>) {
    let remaining = remaining_changes(c, v);
    let best = (0..c.dimension())
        .map(|d| first_step_value(c, v, &remaining, Direction(d)))
        .min()
        .expect("n >= 1");
    (best as u32, remaining)
}

fn reconstruct(c: &EdgeColouring, v: Vertex, remaining: &[[u8; 2]], best: u32) -> Geodesic {
    let n = c.dimension();
    let first = (0..n)
        .map(Direction)
        .find(|&d| first_step_value(c, v, remaining, d) as u32 == best)
        .expect("optimum is attained");
    let mut dirs = vec![first];
    let mut used = first.bit();
    let mut last = c.colour_at(v, first);
    let mut target = best as u8;
    while used != vertex_mask(n) {
        let at = Vertex(v.0 ^ used);
        let (d, colour, cost) = (0..n)
            .map(Direction)
            .filter(|d| used & d.bit() == 0)
            .map(|d| {
                let colour = c.colour_at(at, d);
                let cost = (colour != last) as u8;
                (d, colour, cost)
            })
            .find(|&(d, colour, cost)| cost + remaining[(used | d.bit()) as usize][colour.bit() as usize] == target)
            .expect("optimum is attained");
        dirs.push(d);
        used |= d.bit();
        last = colour;
        target -= cost;
    }
    Geodesic::new_unchecked(v, dirs)
}

/// Exact minimum colour changes over all geodesics from `v` to its antipode.
pub fn min_changes_from(c: &EdgeColouring, v: Vertex) -> Result<MinChangesResult> {
    let n = c.dimension();
    let v = v.in_dimension(n)?;
    let (best, remaining) = dp_min(c, v);
    Ok(MinChangesResult {
        pair: (v, v.antipode(n)),
        changes: best,
        witness: reconstruct(c, v, &remaining, best),
    })
}

/// Minimum over all antipodal pairs. Each pair is searched from its endpoint with
/// the top bit clear; ties go to the smallest such endpoint.
pub fn min_antipodal_changes(c: &EdgeColouring) -> MinChangesResult {
    let n = c.dimension();
    let (changes, start) = (0..1u32 << (n - 1))
        .into_par_iter()
        .map(|v| (dp_min(c, Vertex(v)).0, v))
        .min()
        .expect("at least one pair");
    min_changes_from(c, Vertex(start))
        .map(|r| {
            debug_assert_eq!(r.changes, changes);
            r
        })
        .expect("vertex in range")
}

/// Exhaustive enumeration of every antipodal geodesic; same contract and tie-breaks
/// as [`min_antipodal_changes`].
pub fn brute_force_min(c: &EdgeColouring) -> Result<MinChangesResult> {
    let n = c.dimension();
    if n > BRUTE_FORCE_MAX_DIMENSION {
        return Err(Error::DimensionTooLarge { n, max: BRUTE_FORCE_MAX_DIMENSION, what: "brute-force search" });
    }
    let mut best: Option<MinChangesResult> = None;
    for v in 0..1u32 << (n - 1) {
        let v = Vertex(v);
        let w = v.antipode(n);
        for g in enumerate_geodesics(v, w) {
            let changes = colour_changes(c, &g) as u32;
            if best.as_ref().is_none_or(|b| changes < b.changes) {
                best = Some(MinChangesResult { pair: (v, w), changes, witness: g });
            }
        }
    }
    Ok(best.expect("at least one geodesic"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdversaryOutcome {
    pub best: EdgeColouring,
    pub value: u32,
    /// Steps actually taken; the search stops early once `floor(n / 2)` is reached.
    pub iterations: u64,
    pub restarts: u64,
}

/// Randomized hill climbing over colourings, maximizing [`min_antipodal_changes`].
///
/// Each step flips one random edge and keeps the flip unless the value drops.
/// After `n * 2^n` consecutive steps without improvement the walk restarts from
/// a fresh random colouring.
pub fn adversary_search(n: u32, seed: u64, iterations: u64) -> Result<AdversaryOutcome> {
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3, what: "adversary search" });
    }
    if n > 12 {
        return Err(Error::DimensionTooLarge { n, max: 12, what: "adversary search" });
    }
    let ceiling = n / 2;
    let plateau = (n as u64) << n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = codec::random_with(n, &mut rng)?;
    let mut value = min_antipodal_changes(&current).changes;
    let mut best = (current.clone(), value);
    let mut stalled = 0u64;
    let mut restarts = 0u64;
    let mut steps = 0u64;
    while steps < iterations && best.1 < ceiling {
        steps += 1;
        if stalled >= plateau {
            current = codec::random_with(n, &mut rng)?;
            value = min_antipodal_changes(&current).changes;
            stalled = 0;
            restarts += 1;
        } else {
            let candidate = current.with_flipped_edge(rng.gen_range(0..current.num_edges()));
            let candidate_value = min_antipodal_changes(&candidate).changes;
            if candidate_value > value {
                stalled = 0;
            } else {
                stalled += 1;
            }
            if candidate_value >= value {
                current = candidate;
                value = candidate_value;
            }
        }
        if value > best.1 {
            best = (current.clone(), value);
        }
    }
    Ok(AdversaryOutcome { best: best.0, value: best.1, iterations: steps, restarts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q3::Q3Colouring;

    #[test]
    fn monochrome_has_no_changes() {
        for n in 1..=7 {
            let c = EdgeColouring::monochrome(n, Colour::Blue).unwrap();
            let r = min_antipodal_changes(&c);
            assert_eq!(r.changes, 0);
            assert_eq!(r.pair, (Vertex(0), Vertex(vertex_mask(n))));
            assert_eq!(r.witness.dirs(), (0..n).map(Direction).collect::<Vec<_>>());
        }
    }

    #[test]
    fn direction_split_three() {
        let c = EdgeColouring::direction_split(3, Direction(0)).unwrap();
        let r = min_changes_from(&c, Vertex(0)).unwrap();
        assert_eq!(r.changes, 1);
        let by_hand = enumerate_geodesics(Vertex(0), Vertex(7))
            .iter()
            .map(|g| colour_changes(&c, g))
            .min()
            .unwrap();
        assert_eq!(r.changes as usize, by_hand);
        assert_eq!(r.witness.dirs(), &[Direction(0), Direction(1), Direction(2)]);
    }

    #[test]
    fn dp_matches_enumeration_from_every_start() {
        for seed in 0..100 {
            let c = codec::random(5, seed).unwrap();
            for v in 0..32 {
                let r = min_changes_from(&c, Vertex(v)).unwrap();
                assert_eq!(colour_changes(&c, &r.witness) as u32, r.changes);
                let brute = enumerate_geodesics(Vertex(v), Vertex(v ^ 31))
                    .into_iter()
                    .min_by_key(|g| colour_changes(&c, g))
                    .unwrap();
                assert_eq!(r.changes as usize, colour_changes(&c, &brute));
                assert_eq!(r.witness, brute, "lexicographic tie-break");
            }
        }
    }

    #[test]
    fn q3_minimum_is_at_most_one() {
        let mut max = 0;
        for q in Q3Colouring::all() {
            let c = q.to_edge_colouring();
            let r = min_antipodal_changes(&c);
            assert_eq!(r, brute_force_min(&c).unwrap());
            max = max.max(r.changes);
        }
        assert_eq!(max, 1);
    }

    #[test]
    fn brute_force_rejects_large_dimension() {
        let c = EdgeColouring::monochrome(8, Colour::Red).unwrap();
        assert!(matches!(brute_force_min(&c), Err(Error::DimensionTooLarge { .. })));
        assert!(min_changes_from(&c, Vertex(256)).is_err());
    }

    #[test]
    fn adversary_is_deterministic_and_bounded() {
        let a = adversary_search(4, 3, 200).unwrap();
        assert_eq!(a, adversary_search(4, 3, 200).unwrap());
        assert!(a.value <= 2);
        assert_eq!(adversary_search(3, 1, 100_000).unwrap().value, 1);
        assert!(adversary_search(2, 1, 10).is_err());
        assert!(adversary_search(13, 1, 10).is_err());
    }
}
