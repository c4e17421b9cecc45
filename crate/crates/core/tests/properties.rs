use antipodal_core::hypercube::Parity;
use antipodal_core::search::brute_force_min;
use antipodal_core::{
    codec, colour_changes, enumerate_geodesics, min_antipodal_changes, min_changes_from, Direction, Vertex,
};
use proptest::prelude::*;

fn factorial(k: u32) -> usize {
    (1..=k as usize).product()
}

proptest! {
    #[test]
    fn geodesic_enumeration_counts(v in 0u32..128, w in 0u32..128) {
        let all = enumerate_geodesics(Vertex(v), Vertex(w));
        prop_assert_eq!(all.len(), factorial((v ^ w).count_ones()));
        prop_assert!(all.iter().all(|g| g.end() == Vertex(w)));
        prop_assert!(all.windows(2).all(|p| p[0].dirs() < p[1].dirs()));
    }

    #[test]
    fn reversal_keeps_change_count(seed in any::<u64>(), v in 0u32..64) {
        let c = codec::random(6, seed).unwrap();
        for g in enumerate_geodesics(Vertex(v), Vertex(v ^ 0b101101)).iter().step_by(7) {
            prop_assert_eq!(colour_changes(&c, g), colour_changes(&c, &g.reversed()));
        }
    }

    #[test]
    fn endpoint_parity_follows_length(v in 0u32..1024, dirs in proptest::sample::subsequence((0u32..10).collect::<Vec<_>>(), 0..=10)) {
        let g = antipodal_core::Geodesic::new(Vertex(v), dirs.into_iter().map(Direction).collect()).unwrap();
        let flipped = g.len() % 2 == 1;
        prop_assert_eq!(g.end().parity() != g.start().parity(), flipped);
        prop_assert_eq!(g.start().parity() == Parity::Even, v.count_ones() % 2 == 0);
    }

    #[test]
    fn codec_round_trip(n in 1u32..=10, seed in any::<u64>()) {
        let c = codec::random(n, seed).unwrap();
        prop_assert_eq!(codec::parse(&codec::serialize(&c)).unwrap(), c);
    }

    #[test]
    fn dp_equals_brute_force(n in 1u32..=6, seed in any::<u64>()) {
        let c = codec::random(n, seed).unwrap();
        let dp = min_antipodal_changes(&c);
        prop_assert_eq!(&dp, &brute_force_min(&c).unwrap());
        prop_assert_eq!(colour_changes(&c, &dp.witness) as u32, dp.changes);
        prop_assert!(dp.witness.is_antipodal(n));
        prop_assert!(dp.changes <= n / 2);
    }

    #[test]
    fn min_from_either_endpoint_agrees(seed in any::<u64>(), v in 0u32..256) {
        let c = codec::random(8, seed).unwrap();
        let a = min_changes_from(&c, Vertex(v)).unwrap();
        let b = min_changes_from(&c, Vertex(v).antipode(8)).unwrap();
        prop_assert_eq!(a.changes, b.changes);
    }
}
