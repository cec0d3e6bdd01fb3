mod common;

use std::collections::BTreeSet;

use common::{build, small_prime, terms};
use fsummand::finv::{jump_spectrum, nu, one, ratio, test_ideal, threshold_estimate, Ambient};
use fsummand::oracle::nu_dense;
use fsummand::summand::build_embedding;
use fsummand::{Ideal, Polynomial, Ring};
use proptest::prelude::*;

fn xy(p: u64) -> Ring {
    Ring::new(p, ["x", "y"]).unwrap()
}

fn m(r: &Ring) -> Ideal {
    Ideal::new(r, [Polynomial::var(r, 0), Polynomial::var(r, 1)]).unwrap()
}

fn nonconstant(ts: Vec<(Vec<u32>, u64)>) -> Vec<(Vec<u32>, u64)> {
    ts.into_iter().filter(|(e, _)| e.iter().any(|&x| x > 0)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn nu_grows_with_the_level(p in small_prime(), ts in terms(2, 4, 3).prop_map(nonconstant)) {
        let r = xy(p);
        let f = build(&r, &ts);
        prop_assume!(!f.is_zero());
        let est = threshold_estimate(&Ideal::principal(&f), &m(&r), 3, Ambient::S).unwrap();
        prop_assert!(est.monotone);
        for lv in &est.levels {
            // ν(q) ≤ 2(q - 1) for a principal ideal inside the two-generated m
            prop_assert!(lv.value <= 2 * (lv.q - 1));
            prop_assert_eq!(lv.value, nu_dense(&f, &[vec![1, 0], vec![0, 1]], lv.e).unwrap());
        }
    }

    #[test]
    fn nu_agrees_between_veronese_and_plane(p in small_prime(), ts in prop::collection::vec((0u32..=3, 0u32..=3, 1u64..50), 1..=3)) {
        let r = xy(p);
        let emb = build_embedding(&r, vec![vec![2, 0], vec![1, 1], vec![0, 2]], 32).unwrap();
        let f = Polynomial::from_terms(&r, ts.iter().map(|&(i, j, c)| {
            let (a, b) = if (i + j) % 2 == 0 { (i, j) } else { (i + 1, j) };
            let (a, b) = if a + b == 0 { (2, 0) } else { (a, b) };
            (fsummand::Monomial::new(vec![a, b]).unwrap(), c % p)
        }));
        prop_assume!(!f.is_zero());
        let mr = Ideal::new(&r, [vec![2, 0], vec![1, 1], vec![0, 2]].map(|e| Polynomial::monomial(&r, e).unwrap())).unwrap();
        let j = Ideal::principal(&f);
        for e in 1..=2 {
            prop_assert_eq!(
                nu(&j, &mr, e, Ambient::R(&emb)).unwrap().value,
                nu(&j, &mr, e, Ambient::S).unwrap().value
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn test_ideals_shrink_as_lambda_grows(p in small_prime(), ts in terms(2, 4, 3).prop_map(nonconstant)) {
        let r = xy(p);
        let f = build(&r, &ts);
        prop_assume!(!f.is_zero());
        let i = Ideal::principal(&f);
        let q = p * p;
        let mut prev: Option<Ideal> = None;
        for a in 1..=q {
            let res = test_ideal(&i, &ratio(a, q), 3, Ambient::S).unwrap();
            prop_assert!(res.ascending);
            if let Some(pr) = &prev {
                prop_assert!(pr.contains(&res.tau).unwrap());
            }
            prev = Some(res.tau);
        }
    }

    #[test]
    fn veronese_candidates_are_plane_candidates(p in small_prime(), gens in prop::collection::vec((0u32..=2, 0u32..=2), 1..=2)) {
        let r = xy(p);
        let emb = build_embedding(&r, vec![vec![2, 0], vec![1, 1], vec![0, 2]], 32).unwrap();
        let ideal = Ideal::new(&r, gens.iter().map(|&(i, j)| {
            let (a, b) = if (i + j) % 2 == 0 { (i, j) } else { (i + 1, j) };
            let (a, b) = if a + b == 0 { (1, 1) } else { (a, b) };
            Polynomial::monomial(&r, vec![a, b]).unwrap()
        })).unwrap();
        for e in 1..=2 {
            let rs: BTreeSet<_> = jump_spectrum(&ideal, e, &one(), Ambient::R(&emb), false).unwrap().lambdas().into_iter().collect();
            let ss: BTreeSet<_> = jump_spectrum(&ideal, e, &one(), Ambient::S, false).unwrap().lambdas().into_iter().collect();
            prop_assert!(rs.is_subset(&ss));
        }
    }
}

#[test]
fn golden_thresholds() {
    let r = xy(7);
    let f = fsummand::poly::parse_poly("x^2 + y^3", &r).unwrap();
    let res = nu(&Ideal::principal(&f), &m(&r), 1, Ambient::S).unwrap();
    assert_eq!(res.value, 5);
    assert_eq!(res.ratio, ratio(5, 7));
    assert!(res.rechecked);
}
