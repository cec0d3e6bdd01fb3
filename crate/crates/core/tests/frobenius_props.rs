mod common;

use common::{build, prime, ring, small_prime, terms};
use fsummand::frobenius::{bracket_power, d_image, eth_root, FrobeniusContext};
use fsummand::oracle::eth_root_dense;
use fsummand::Ideal;
use proptest::prelude::*;

fn ideal(p: u64, n: usize, gs: &[Vec<(Vec<u32>, u64)>]) -> Ideal {
    let r = ring(p, n);
    Ideal::new(&r, gs.iter().map(|g| build(&r, g))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn root_undoes_bracket(p in prime(), e in 1u32..=2, gs in prop::collection::vec(terms(2, 4, 3), 1..=2)) {
        let i = ideal(p, 2, &gs);
        let ctx = FrobeniusContext::new(i.ring(), e).unwrap();
        prop_assert!(eth_root(&bracket_power(&i, &ctx).unwrap(), &ctx).unwrap().equals(&i).unwrap());
    }

    #[test]
    fn root_is_minimal_and_matches_dense(p in prime(), e in 1u32..=2, gs in prop::collection::vec(terms(2, 8, 4), 1..=2)) {
        let i = ideal(p, 2, &gs);
        let ctx = FrobeniusContext::new(i.ring(), e).unwrap();
        let root = eth_root(&i, &ctx).unwrap();
        prop_assert!(bracket_power(&root, &ctx).unwrap().contains(&i).unwrap());
        prop_assert!(root.equals(&eth_root_dense(&i, e).unwrap()).unwrap());
    }

    #[test]
    fn root_is_monotone(p in small_prime(), e in 1u32..=2, g in terms(2, 8, 4), h in terms(2, 8, 4), k in terms(2, 3, 2)) {
        let r = ring(p, 2);
        let big = Ideal::new(&r, [build(&r, &g), build(&r, &h)]).unwrap();
        let small = Ideal::new(&r, [&build(&r, &g) * &build(&r, &k)]).unwrap();
        let ctx = FrobeniusContext::new(&r, e).unwrap();
        prop_assert!(eth_root(&big, &ctx).unwrap().contains(&eth_root(&small, &ctx).unwrap()).unwrap());
    }

    #[test]
    fn levels_compose(p in small_prime(), g in terms(2, 12, 5)) {
        let r = ring(p, 2);
        let i = Ideal::new(&r, [build(&r, &g)]).unwrap();
        let c1 = FrobeniusContext::new(&r, 1).unwrap();
        let c2 = FrobeniusContext::new(&r, 2).unwrap();
        let twice = eth_root(&eth_root(&i, &c1).unwrap(), &c1).unwrap();
        prop_assert!(eth_root(&i, &c2).unwrap().equals(&twice).unwrap());
    }

    #[test]
    fn d_image_is_idempotent_and_contains(p in small_prime(), e in 1u32..=2, g in terms(2, 8, 4)) {
        let r = ring(p, 2);
        let i = Ideal::new(&r, [build(&r, &g)]).unwrap();
        let ctx = FrobeniusContext::new(&r, e).unwrap();
        let d = d_image(&i, &ctx).unwrap();
        prop_assert!(d.contains(&i).unwrap());
        prop_assert!(d_image(&d, &ctx).unwrap().equals(&d).unwrap());
    }
}
