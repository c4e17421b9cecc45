//! Q3 classification checked against a deliberately naive enumerator that shares
//! no code with the library: explicit edge lists, explicit vertex paths.

use std::collections::HashMap;

use antipodal_core::q3::{verify_lemma6, verify_lemma7, verify_lemma8, Isometry, ANTIPODAL_PAIRS};
use antipodal_core::{classify, colour_changes, Classification, Q3Colouring, Q3Table};

/// Edges of Q3 as `(low, high)` vertex pairs in file order: by direction, then by low endpoint.
fn naive_edges() -> Vec<(u8, u8)> {
    let mut edges = Vec::new();
    for d in 0..3 {
        for u in 0..8u8 {
            if u & (1 << d) == 0 {
                edges.push((u, u | (1 << d)));
            }
        }
    }
    edges
}

fn naive_colour_map(bits: u16) -> HashMap<(u8, u8), bool> {
    naive_edges()
        .into_iter()
        .enumerate()
        .map(|(i, e)| (e, bits >> i & 1 == 1))
        .collect()
}

fn adjacent(a: u8, b: u8) -> bool {
    (a ^ b).count_ones() == 1
}

/// Vertex paths of length 3 from `x` to `7 - x`.
fn naive_paths(x: u8) -> Vec<[u8; 4]> {
    let y = 7 - x;
    let mut out = Vec::new();
    for a in 0..8u8 {
        for b in 0..8u8 {
            let path = [x, a, b, y];
            let ok = path.windows(2).all(|w| adjacent(w[0], w[1]))
                && path.iter().enumerate().all(|(i, &v)| (v ^ x).count_ones() as usize == i);
            if ok {
                out.push(path);
            }
        }
    }
    out
}

fn naive_changes(colours: &HashMap<(u8, u8), bool>, path: [u8; 4]) -> usize {
    let edge = |a: u8, b: u8| colours[&(a.min(b), a.max(b))];
    let cs = [edge(path[0], path[1]), edge(path[1], path[2]), edge(path[2], path[3])];
    (cs[0] != cs[1]) as usize + (cs[1] != cs[2]) as usize
}

/// The four geodesics are chosen independently, so the minimum total is the sum
/// of the per-pair minima.
fn naive_is_good(bits: u16) -> bool {
    let colours = naive_colour_map(bits);
    let total: usize = [0u8, 1, 2, 3]
        .iter()
        .map(|&x| naive_paths(x).into_iter().map(|p| naive_changes(&colours, p)).min().unwrap())
        .sum();
    total <= 2
}

/// Frozen from `naive_is_good` over all 4096 colourings.
const BAD_Q3_COLOURINGS: usize = 138;

#[test]
fn naive_enumerator_sanity() {
    assert_eq!(naive_edges().len(), 12);
    for x in 0..8 {
        assert_eq!(naive_paths(x).len(), 6);
    }
}

#[test]
fn bad_count_matches_naive_oracle() {
    let naive_bad = (0..4096u16).filter(|&b| !naive_is_good(b)).count();
    assert_eq!(naive_bad, BAD_Q3_COLOURINGS);
    let bad = Q3Colouring::all().filter(|&q| !classify(q).is_good()).count();
    assert_eq!(bad, BAD_Q3_COLOURINGS);
    for q in Q3Colouring::all() {
        assert_eq!(classify(q).is_good(), naive_is_good(q.bits()), "{:#05x}", q.bits());
    }
}

#[test]
fn classification_is_symmetric() {
    let isometries = Isometry::all();
    let mut checks = 0;
    for q in Q3Colouring::all() {
        let kind = classify(q).is_good();
        for iso in &isometries {
            for image in [q.transform(iso), q.transform(iso).complement()] {
                assert_eq!(classify(image).is_good(), kind);
                checks += 1;
            }
        }
    }
    assert_eq!(checks, 4096 * 48 * 2);
}

#[test]
fn bad_colouring_structure() {
    for q in Q3Colouring::all().filter(|&q| !classify(q).is_good()) {
        let colours = naive_colour_map(q.bits());
        let per_pair_min: Vec<usize> = [0u8, 1, 2, 3]
            .iter()
            .map(|&x| naive_paths(x).into_iter().map(|p| naive_changes(&colours, p)).min().unwrap())
            .collect();
        assert!(per_pair_min.iter().all(|&m| m <= 1));
        assert!(per_pair_min.iter().filter(|&&m| m == 0).count() <= 1);
    }
}

#[test]
fn good_selectors_total_at_most_two() {
    let table = Q3Table::global();
    for q in Q3Colouring::all() {
        let Classification::Good { total_changes, .. } = classify(q) else { continue };
        let c = q.to_edge_colouring();
        let total: usize = ANTIPODAL_PAIRS
            .iter()
            .map(|&(x, y)| colour_changes(&c, &antipodal_core::q3::select_good_geodesic(q, x, y).unwrap().geodesic()))
            .sum();
        assert_eq!(total, total_changes);
        assert!(total <= 2);
        assert_eq!(table.get(q).witness_total() as usize, total);
    }
}

#[test]
fn lemma_sweeps() {
    let six = verify_lemma6();
    assert_eq!(six.checked, 4096);
    assert!(six.counterexamples.is_empty());
    assert!(six.hypothesis_hits > 0);

    let seven = verify_lemma7();
    assert!(seven.counterexamples.is_empty());
    assert!(seven.hypothesis_hits > 0);

    let eight = verify_lemma8();
    assert!(eight.counterexamples.is_empty());
    assert_eq!(eight.hypothesis_hits, BAD_Q3_COLOURINGS);
}

#[test]
fn lemma6_hypothesis_instances_have_three_monochromatic_pairs() {
    let mut hits = 0;
    for bits in 0..4096u16 {
        let colours = naive_colour_map(bits);
        for x in 0..8u8 {
            if naive_paths(x).into_iter().all(|p| naive_changes(&colours, p) == 2) {
                hits += 1;
                for other in (0..8u8).filter(|&o| o != x && o != 7 - x) {
                    assert!(naive_paths(other).into_iter().any(|p| naive_changes(&colours, p) == 0));
                }
            }
        }
    }
    assert!(hits > 0);
}
