#![allow(dead_code)]

use fsummand::{Monomial, Polynomial, Ring};
use proptest::prelude::*;

pub fn ring(p: u64, n: usize) -> Ring {
    Ring::new(p, ["x", "y", "z", "w"][..n].iter().copied()).unwrap()
}

/// Nonempty terms as (exponents, coefficient seed) with total degree at most `max_deg`.
pub fn terms(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, u64)>> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, n), 1u64..1000)
            .prop_filter("degree", move |(e, _)| e.iter().sum::<u32>() <= max_deg),
        1..=max_terms,
    )
}

pub fn build(ring: &Ring, terms: &[(Vec<u32>, u64)]) -> Polynomial {
    Polynomial::from_terms(
        ring,
        terms
            .iter()
            .map(|(e, c)| (Monomial::new(e.clone()).unwrap(), c % (ring.p() - 1) + 1)),
    )
}

pub fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7])
}

pub fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3])
}
