mod common;

use common::{build, prime, ring, terms};
use fsummand::groebner::{eliminate, normal_form};
use fsummand::poly::parse_poly;
use fsummand::{Ideal, Monomial, MonomialOrder, Polynomial};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printing_round_trips(p in prime(), n in 1usize..=4, ts in terms(4, 8, 6)) {
        let r = ring(p, n);
        let ts: Vec<_> = ts.into_iter().map(|(e, c)| (e[..n].to_vec(), c)).collect();
        let f = build(&r, &ts);
        prop_assert_eq!(parse_poly(&f.to_string(), &r).unwrap(), f);
    }
}

proptest! {
    #[test]
    fn decomposition_reassembles(p in prime(), e in 1u32..=2, ts in terms(3, 12, 8)) {
        let r = ring(p, 3);
        let f = build(&r, &ts);
        let mut sum = Polynomial::zero(&r);
        for (a, g) in f.pe_decompose(e).unwrap() {
            sum = &sum + &g.frobenius(e).unwrap().mul_monomial(&a).unwrap();
        }
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn frobenius_is_the_q_th_power(p in prime(), e in 1u32..=2, ts in terms(2, 3, 3)) {
        let r = ring(p, 2);
        let f = build(&r, &ts);
        let q = p.pow(e);
        let fq = f.frobenius(e).unwrap();
        prop_assert_eq!(&fq, &f.pow(q).unwrap());
        prop_assert!(fq.terms().all(|(m, _)| m.exponents().iter().all(|&x| x as u64 % q == 0)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_ignores_ideal_elements(
        p in prime(),
        g1 in terms(3, 3, 3),
        g2 in terms(3, 3, 3),
        f in terms(3, 4, 4),
        h1 in terms(3, 2, 3),
        h2 in terms(3, 2, 3),
    ) {
        let r = ring(p, 3);
        let (g1, g2) = (build(&r, &g1), build(&r, &g2));
        let ideal = Ideal::new(&r, [g1.clone(), g2.clone()]).unwrap();
        let f = build(&r, &f);
        let shifted = &(&f + &(&build(&r, &h1) * &g1)) + &(&build(&r, &h2) * &g2);
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            prop_assert_eq!(
                normal_form(&f, &ideal, order).unwrap(),
                normal_form(&shifted, &ideal, order).unwrap()
            );
        }
    }

    #[test]
    fn equality_ignores_presentation(p in prime(), g1 in terms(2, 3, 3), g2 in terms(2, 3, 3), h in terms(2, 2, 3)) {
        let r = ring(p, 2);
        let (g1, g2) = (build(&r, &g1), build(&r, &g2));
        let a = Ideal::new(&r, [g1.clone(), g2.clone()]).unwrap();
        let mixed = &g1 + &(&build(&r, &h) * &g2);
        let b = Ideal::new(&r, [g2.clone(), mixed.clone(), &g1 * &g2]).unwrap();
        prop_assert!(a.equals(&b).unwrap());
        prop_assert!(b.equals(&a).unwrap());
    }

    #[test]
    fn eliminating_nothing_keeps_the_ideal(p in prime(), g1 in terms(3, 3, 3), g2 in terms(3, 3, 3)) {
        let r = ring(p, 3);
        let ideal = Ideal::new(&r, [build(&r, &g1), build(&r, &g2)]).unwrap();
        let kept = eliminate(&ideal, &["x", "y", "z"]).unwrap();
        prop_assert!(kept.equals(&ideal).unwrap());
    }
}

/// Multivariate division written out from the definition.
fn divide(f: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Polynomial {
    let p = f.ring().p();
    let mut rest = f.clone();
    let mut remainder = Polynomial::zero(f.ring());
    while let Some((lm, lc)) = rest.leading_term(order).map(|(m, c)| (m.clone(), c)) {
        let divisor = basis.iter().find_map(|g| {
            let (gm, gc) = g.leading_term(order)?;
            gm.divides(&lm).then(|| (g, gm.clone(), gc))
        });
        match divisor {
            Some((g, gm, gc)) => {
                let quot: Vec<u32> = lm.exponents().iter().zip(gm.exponents()).map(|(a, b)| a - b).collect();
                let c = lc * fsummand::poly::field::inv(gc, p) % p;
                let sub = g.mul_monomial(&Monomial::new(quot).unwrap()).unwrap().scale(c);
                rest = &rest - &sub;
            }
            None => {
                let lead = Polynomial::term(f.ring(), lm, lc);
                remainder = &remainder + &lead;
                rest = &rest - &lead;
            }
        }
    }
    remainder
}

fn s_poly(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let p = f.ring().p();
    let (fm, fc) = f.leading_term(order).unwrap();
    let (gm, gc) = g.leading_term(order).unwrap();
    let l = fm.lcm(gm);
    let cofactor = |m: &Monomial| {
        Monomial::new(l.exponents().iter().zip(m.exponents()).map(|(a, b)| a - b).collect()).unwrap()
    };
    let a = f.mul_monomial(&cofactor(fm)).unwrap().scale(fsummand::poly::field::inv(fc, p));
    let b = g.mul_monomial(&cofactor(gm)).unwrap().scale(fsummand::poly::field::inv(gc, p));
    &a - &b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn bases_pass_the_s_pair_test(p in prime(), gs in prop::collection::vec(terms(3, 3, 3), 1..=3)) {
        let r = ring(p, 3);
        let ideal = Ideal::new(&r, gs.iter().map(|g| build(&r, g))).unwrap();
        let basis = ideal.basis().unwrap();
        for (i, f) in basis.iter().enumerate() {
            for g in &basis[i + 1..] {
                prop_assert!(divide(&s_poly(f, g, MonomialOrder::Grevlex), basis, MonomialOrder::Grevlex).is_zero());
            }
        }
        for g in ideal.gens() {
            prop_assert!(divide(g, basis, MonomialOrder::Grevlex).is_zero());
        }
    }
}
