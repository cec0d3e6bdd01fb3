use fsummand::bs::{catalog, catalog_entry, BPolynomial};
use fsummand::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// Product of linear factors `s + a/d` with `d ∈ {1, 2}`.
fn from_roots(roots: &[(i64, i64)]) -> BPolynomial {
    roots.iter().fold(BPolynomial::new(vec![BigRational::from_integer(1.into())], "1").unwrap(), |acc, &(a, d)| {
        let lin = BPolynomial::new(vec![BigRational::new(BigInt::from(a), BigInt::from(d)), BigRational::from_integer(1.into())], "linear").unwrap();
        acc.mul(&lin)
    })
}

fn roots() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..20, 1i64..=2), 1..=3)
}

proptest! {
    #[test]
    fn reduction_is_multiplicative(a in roots(), b in roots(), p in prop::sample::select(vec![3u64, 5, 7, 11]), t in 0u64..1000) {
        let (fa, fb) = (from_roots(&a), from_roots(&b));
        let prod = fa.mul(&fb);
        prop_assert!(fa.divides(&prod));
        prop_assert!(fb.divides(&prod));
        let lhs = prod.eval_mod_p(t, p).unwrap();
        let rhs = fa.eval_mod_p(t, p).unwrap() * fb.eval_mod_p(t, p).unwrap() % p;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn halves_exclude_two(a in roots()) {
        let f = from_roots(&a);
        let has_half = f.coeffs().iter().any(|c| c.denom() % 2 == BigInt::from(0));
        prop_assert_eq!(f.reduce_mod_p(2).is_err(), has_half);
        if has_half {
            prop_assert_eq!(f.reduce_mod_p(2).unwrap_err(), Error::PrimeExcluded { p: 2 });
        }
    }
}

#[test]
fn catalog_entries_divide_as_expected() {
    assert!(!catalog().is_empty());
    let r = catalog_entry("xu_yv_in_R").unwrap();
    let s = catalog_entry("xu_yv_in_S").unwrap();
    assert!(r.divides(&s));
    assert!(!s.divides(&r));
}
