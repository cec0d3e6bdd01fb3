//! Sparse multivariate polynomials over prime fields.
//!
//! A [`Polynomial`] is a canonical map from [`Monomial`] to a nonzero residue
//! mod p. All values are immutable once built; arithmetic returns new values.

pub mod field;
mod order;
pub mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub use order::MonomialOrder;
pub use parse::{parse_poly, parse_poly_with};

use crate::error::{Error, Result};

/// Largest exponent (inclusive) any monomial may carry.
pub const MAX_EXPONENT: u64 = 1 << 31;

/// Largest characteristic supported; keeps every residue product in a `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

/// Characteristic and ordered variable names of F_p[x_1..x_n].
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

struct RingData {
    p: u64,
    vars: Vec<String>,
}

impl Ring {
    pub fn new<S: Into<String>>(p: u64, vars: impl IntoIterator<Item = S>) -> Result<Ring> {
        if !field::is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if p >= MAX_PRIME {
            return Err(Error::InvalidRing(format!("{p} exceeds 2^31")));
        }
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(v) {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Ring(Arc::new(RingData { p, vars })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    /// A variable name not already used by this ring, built from `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut name = stem.to_string();
        while self.var_index(&name).is_some() {
            name.push('_');
        }
        name
    }

    pub(crate) fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.vars == other.0.vars)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]", self.p(), self.vars().join(","))
    }
}

pub(crate) fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector. The derived `Ord` is plain lexicographic on the vector and
/// only serves as the canonical storage order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.iter().any(|&e| e as u64 > MAX_EXPONENT) {
            return Err(Error::ExponentOverflow);
        }
        Ok(Monomial(exponents))
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn into_exponents(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            let s = *a as u64 + *b as u64;
            if s > MAX_EXPONENT {
                return Err(Error::ExponentOverflow);
            }
            out.push(s as u32);
        }
        Ok(Monomial(out))
    }

    /// Exponents scaled by `k`.
    pub fn checked_scale(&self, k: u64) -> Result<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for &a in &self.0 {
            let s = (a as u64).checked_mul(k).ok_or(Error::ExponentOverflow)?;
            if s > MAX_EXPONENT {
                return Err(Error::ExponentOverflow);
            }
            out.push(s as u32);
        }
        Ok(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub(crate) fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Sparse polynomial over F_p with a canonical term map.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, u64>,
}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), field::from_i64(c, ring.p()))
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i), 1)
    }

    /// `c * x^m`; `c` is reduced mod p.
    pub fn term(ring: &Ring, m: Monomial, c: u64) -> Self {
        assert_eq!(m.len(), ring.nvars(), "monomial length must match the ring");
        let c = c % ring.p();
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn monomial(ring: &Ring, exponents: Vec<u32>) -> Result<Self> {
        if exponents.len() != ring.nvars() {
            return Err(Error::InvalidArgument(format!(
                "exponent vector of length {} in a ring with {} variables",
                exponents.len(),
                ring.nvars()
            )));
        }
        Ok(Self::term(ring, Monomial::new(exponents)?, 1))
    }

    /// Sum of terms; repeated monomials are combined.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, u64)>) -> Self {
        let p = ring.p();
        let mut map: BTreeMap<Monomial, u64> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), ring.nvars(), "monomial length must match the ring");
            accumulate(&mut map, m, c % p, p);
        }
        Polynomial {
            ring: ring.clone(),
            terms: map,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().is_some_and(Monomial::is_one)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical storage order (lex ascending on exponent vectors).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> + '_ {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest exponent of each variable over all terms.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.ring.nvars()];
        for m in self.terms.keys() {
            for (o, e) in out.iter_mut().zip(m.exponents()) {
                *o = (*o).max(*e);
            }
        }
        out
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, u64)> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(a.0.exponents(), b.0.exponents()))
            .map(|(m, c)| (m, *c))
    }

    /// Scale so the grevlex-leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term(MonomialOrder::Grevlex) {
            None => self.clone(),
            Some((_, 1)) => self.clone(),
            Some((_, c)) => self.scale(field::inv(c, self.ring.p())),
        }
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let p = self.ring.p();
        let c = c % p;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), field::mul(*a, c, p)))
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let p = self.ring.p();
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), *c, p);
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let p = self.ring.p();
        let mut acc: std::collections::HashMap<Monomial, u64> =
            std::collections::HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb)?;
                let c = field::mul(*ca, *cb, p);
                let slot = acc.entry(m).or_insert(0);
                *slot = field::add(*slot, c, p);
            }
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: acc.into_iter().filter(|(_, c)| *c != 0).collect(),
        })
    }

    /// Multiply by the monomial `x^m`.
    pub fn mul_monomial(&self, m: &Monomial) -> Result<Polynomial> {
        let mut terms = BTreeMap::new();
        for (a, c) in &self.terms {
            terms.insert(a.checked_mul(m)?, *c);
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// `f^{p^e}`: exponents scale by `p^e`, coefficients are fixed by
    /// Frobenius on the prime field.
    pub fn frobenius(&self, e: u32) -> Result<Polynomial> {
        let q = self
            .ring
            .p()
            .checked_pow(e)
            .ok_or(Error::ExponentOverflow)?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.checked_scale(q)?, *c);
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// `f^k`. Writes `k` in base p and uses `f^{p^i} = F^i(f)`, so only
    /// powers below p are formed by repeated squaring.
    pub fn pow(&self, k: u64) -> Result<Polynomial> {
        if k == 0 {
            return Ok(Polynomial::one(&self.ring));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.is_monomial() {
            let (m, c) = self.terms.iter().next().unwrap();
            return Ok(Polynomial::term(
                &self.ring,
                m.checked_scale(k)?,
                field::pow(*c, k, self.ring.p()),
            ));
        }
        let p = self.ring.p();
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut rest = k;
        loop {
            let digit = rest % p;
            if digit > 0 {
                acc = acc.checked_mul(&base.pow_small(digit)?)?;
            }
            rest /= p;
            if rest == 0 {
                break;
            }
            base = base.frobenius(1)?;
        }
        Ok(acc)
    }

    fn pow_small(&self, mut k: u64) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Split `f = sum_a (g_a)^{p^e} x^a` over box monomials `a in [0, p^e)^n`.
    /// Only nonzero components are returned.
    pub fn pe_decompose(&self, e: u32) -> Result<BTreeMap<Monomial, Polynomial>> {
        if e == 0 {
            return Err(Error::InvalidArgument("level e must be at least 1".into()));
        }
        let q = self
            .ring
            .p()
            .checked_pow(e)
            .filter(|&q| q <= MAX_EXPONENT)
            .ok_or(Error::ExponentOverflow)?;
        let mut parts: BTreeMap<Monomial, BTreeMap<Monomial, u64>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (low, high): (Vec<u32>, Vec<u32>) = m
                .exponents()
                .iter()
                .map(|&x| ((x as u64 % q) as u32, (x as u64 / q) as u32))
                .unzip();
            parts
                .entry(Monomial(low))
                .or_default()
                .insert(Monomial(high), *c);
        }
        Ok(parts
            .into_iter()
            .map(|(a, terms)| {
                (
                    a,
                    Polynomial {
                        ring: self.ring.clone(),
                        terms,
                    },
                )
            })
            .collect())
    }

    /// Rewrite into another ring; `var_map[i]` is the target index of variable i.
    pub fn map_vars(&self, target: &Ring, var_map: &[usize]) -> Polynomial {
        assert_eq!(var_map.len(), self.ring.nvars());
        let n = target.nvars();
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut v = vec![0; n];
                for (i, &e) in m.exponents().iter().enumerate() {
                    v[var_map[i]] += e;
                }
                (Monomial(v), *c)
            }),
        )
    }

    /// Terms sorted in descending grevlex, the canonical print order.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, u64)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| order.compare(b.0.exponents(), a.0.exponents()));
        v
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, u64>, m: Monomial, c: u64, p: u64) {
    if c == 0 {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = field::add(*o.get(), c, p);
            if s == 0 {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let p = self.ring.p();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field::neg(*c, p)))
                .collect(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on ring mismatch; use [`Polynomial::checked_add`] otherwise.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: descending grevlex, coefficients in `[0, p)`, `*`
    /// between factors and `^` for powers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let vars = self.ring.vars();
        for (k, (m, c)) in self.sorted_terms(MonomialOrder::Grevlex).into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, vars: &[&str]) -> Ring {
        Ring::new(p, vars.iter().copied()).unwrap()
    }

    #[test]
    fn ring_validation() {
        assert!(Ring::new(4, ["x"]).is_err());
        assert!(Ring::new(5, ["x", "x"]).is_err());
        assert!(Ring::new(5, ["1x"]).is_err());
        assert!(Ring::new(5, ["x_1", "Y2"]).is_ok());
    }

    #[test]
    fn add_inverse_is_zero() {
        let r = ring(5, &["x"]);
        let x = Polynomial::var(&r, 0);
        assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn frobenius_on_binomial() {
        for p in [2u64, 3, 5, 7] {
            let r = ring(p, &["x", "y"]);
            let s = &Polynomial::var(&r, 0) + &Polynomial::var(&r, 1);
            let want = &Polynomial::var(&r, 0).pow(p).unwrap() + &Polynomial::var(&r, 1).pow(p).unwrap();
            assert_eq!(s.pow(p).unwrap(), want);
        }
    }

    #[test]
    fn difference_of_squares_mod_3() {
        let r = ring(3, &["x"]);
        let x = Polynomial::var(&r, 0);
        let one = Polynomial::one(&r);
        let prod = &(&x + &one) * &(&x - &one);
        assert_eq!(prod.to_string(), "x^2 + 2");
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let r = ring(3, &["x", "y"]);
        let f = parse_poly("x^2 + 2*x*y + y + 1", &r).unwrap();
        let mut acc = Polynomial::one(&r);
        for k in 0..12u64 {
            assert_eq!(f.pow(k).unwrap(), acc, "k = {k}");
            acc = &acc * &f;
        }
    }

    #[test]
    fn decompose_examples() {
        let r1 = ring(2, &["x"]);
        let parts = parse_poly("x^3", &r1).unwrap().pe_decompose(1).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&Monomial(vec![1])].to_string(), "x");

        let r2 = ring(2, &["x", "y"]);
        let parts = parse_poly("x^2 + y^2", &r2).unwrap().pe_decompose(1).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&Monomial(vec![0, 0])].to_string(), "x + y");

        let r4 = ring(2, &["x", "y", "u", "v"]);
        let parts = parse_poly("x*u - y*v", &r4).unwrap().pe_decompose(1).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts[&Monomial(vec![1, 0, 1, 0])].is_unit());
        assert!(parts[&Monomial(vec![0, 1, 0, 1])].is_unit());
    }

    #[test]
    fn canonical_printing() {
        let r = ring(5, &["x", "y", "u", "v"]);
        let f = parse_poly("x*u - y*v", &r).unwrap();
        assert_eq!(f.to_string(), "x*u + 4*y*v");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
        assert_eq!(Polynomial::constant(&r, -2).to_string(), "3");
    }

    #[test]
    fn exponent_overflow_is_reported() {
        let r = ring(2, &["x"]);
        let x = Polynomial::var(&r, 0);
        assert_eq!(x.pow(1 << 32).unwrap_err(), Error::ExponentOverflow);
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = ring(2, &["x"]);
        let b = ring(3, &["x"]);
        let err = Polynomial::var(&a, 0).checked_add(&Polynomial::var(&b, 0));
        assert_eq!(err.unwrap_err(), Error::RingMismatch);
    }
}
