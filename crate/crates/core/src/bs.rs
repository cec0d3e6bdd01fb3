//! Bernstein–Sato polynomials as inputs, and their mod-p root checks against
//! ν-invariants and Cartier-image jumps.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::finv::{nu, Ambient};
use crate::groebner::Ideal;
use crate::poly::field;
use crate::poly::parse::{parse_expr, Algebra};
use crate::poly::Polynomial;

/// Default m-floor: failures at `p` at or below it are inconclusive.
pub const DEFAULT_M_FLOOR: u64 = 3;

/// Monic polynomial in `s` over ℚ. `coeffs[i]` multiplies `s^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BPolynomial {
    coeffs: Vec<BigRational>,
    pub provenance: String,
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn mul_coeffs(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

impl BPolynomial {
    /// Normalizes to the monic associate. The zero polynomial is rejected.
    pub fn new(coeffs: Vec<BigRational>, provenance: impl Into<String>) -> Result<Self> {
        let coeffs = trim(coeffs);
        let Some(lead) = coeffs.last().cloned() else {
            return Err(Error::InvalidArgument("b-polynomial must be nonzero".into()));
        };
        Ok(BPolynomial {
            coeffs: coeffs.into_iter().map(|c| c / &lead).collect(),
            provenance: provenance.into(),
        })
    }

    pub fn parse(src: &str, provenance: impl Into<String>) -> Result<Self> {
        BPolynomial::new(parse_expr(src, &SAlgebra)?, provenance)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mul(&self, other: &BPolynomial) -> BPolynomial {
        BPolynomial {
            coeffs: mul_coeffs(&self.coeffs, &other.coeffs),
            provenance: format!("({}) * ({})", self.provenance, other.provenance),
        }
    }

    /// Exact division over ℚ: whether `self` divides `other`.
    pub fn divides(&self, other: &BPolynomial) -> bool {
        let mut rem = other.coeffs.clone();
        let d = self.degree();
        while rem.len() > d {
            let k = rem.len() - 1 - d;
            let c = rem.last().unwrap().clone();
            for (i, a) in self.coeffs.iter().enumerate() {
                rem[k + i] -= &c * a;
            }
            rem = trim(rem);
        }
        rem.is_empty()
    }

    /// Coefficients mod p, constant term first.
    pub fn reduce_mod_p(&self, p: u64) -> Result<Vec<u64>> {
        let pb = BigInt::from(p);
        self.coeffs
            .iter()
            .map(|c| {
                let den = c.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(Error::PrimeExcluded { p });
                }
                let num = c.numer().mod_floor(&pb).to_u64().expect("below p");
                let den = den.to_u64().expect("below p");
                Ok(field::mul(num, field::inv(den, p), p))
            })
            .collect()
    }

    /// `b(t) mod p`.
    pub fn eval_mod_p(&self, t: u64, p: u64) -> Result<u64> {
        let coeffs = self.reduce_mod_p(p)?;
        let x = t % p;
        Ok(coeffs.iter().rev().fold(0, |acc, &c| field::add(field::mul(acc, x, p), c, p)))
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for BPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let body = match (i, mag.is_one()) {
                (0, _) => fmt_rational(&mag),
                (1, true) => "s".to_string(),
                (1, false) => format!("{}*s", fmt_rational(&mag)),
                (_, true) => format!("s^{i}"),
                (_, false) => format!("{}*s^{i}", fmt_rational(&mag)),
            };
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

/// Polynomials in `s` with rational coefficients.
struct SAlgebra;

impl Algebra for SAlgebra {
    type Elem = Vec<BigRational>;

    fn integer(&self, value: &BigInt, _offset: usize) -> Result<Self::Elem> {
        Ok(trim(vec![BigRational::from_integer(value.clone())]))
    }

    fn variable(&self, name: &str, offset: usize) -> Result<Self::Elem> {
        if name == "s" {
            Ok(vec![BigRational::zero(), BigRational::one()])
        } else {
            Err(Error::UnknownVariable {
                name: name.to_string(),
                offset,
            })
        }
    }

    fn add(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem> {
        let (mut long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        for (x, y) in long.iter_mut().zip(short) {
            *x += y;
        }
        Ok(trim(long))
    }

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem> {
        let nb = self.neg(b)?;
        self.add(a, nb)
    }

    fn neg(&self, a: Self::Elem) -> Result<Self::Elem> {
        Ok(a.into_iter().map(|c| -c).collect())
    }

    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem> {
        Ok(mul_coeffs(&a, &b))
    }

    fn pow(&self, a: Self::Elem, k: u64) -> Result<Self::Elem> {
        if k > 4096 {
            return Err(Error::ExponentOverflow);
        }
        let mut acc = vec![BigRational::one()];
        for _ in 0..k {
            acc = mul_coeffs(&acc, &a);
        }
        Ok(acc)
    }

    fn div(&self, a: Self::Elem, b: Self::Elem, offset: usize) -> Result<Self::Elem> {
        match b.as_slice() {
            [c] => Ok(a.into_iter().map(|x| x / c).collect()),
            [] => Err(Error::syntax(offset, "division by zero")),
            _ => Err(Error::syntax(offset, "can only divide by a constant")),
        }
    }
}

/// Built-in b-polynomials, one `bpoly KEY = EXPR` per line, with the comment
/// lines above an entry as its provenance.
pub const CATALOG: &str = "\
# a coordinate function of a polynomial ring
bpoly variable = s+1
# f = xu - yv on R = F[xu, yv], where it is a variable of a polynomial ring
bpoly xu_yv_in_R = s+1
# f = xu - yv on S = F[x, y, u, v], a nondegenerate quadric in four variables
bpoly xu_yv_in_S = (s+1)*(s+2)
";

/// Parse catalog text. Errors name the 1-based line.
pub fn parse_catalog(text: &str) -> Result<Vec<(String, BPolynomial)>> {
    let mut out: Vec<(String, BPolynomial)> = Vec::new();
    let mut notes: Vec<&str> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            notes.clear();
            continue;
        }
        if let Some(note) = line.strip_prefix('#') {
            notes.push(note.trim());
            continue;
        }
        let bad = |msg: String| Error::InvalidArgument(format!("catalog line {}: {msg}", i + 1));
        let rest = line
            .strip_prefix("bpoly ")
            .ok_or_else(|| bad("expected `bpoly KEY = EXPR`".into()))?;
        let (key, expr) = rest
            .split_once('=')
            .ok_or_else(|| bad("missing `=`".into()))?;
        let key = key.trim();
        if key.is_empty() || out.iter().any(|(k, _)| k == key) {
            return Err(bad(format!("empty or duplicate key `{key}`")));
        }
        let b = BPolynomial::parse(expr.trim(), notes.join(" ")).map_err(|e| bad(e.to_string()))?;
        out.push((key.to_string(), b));
        notes.clear();
    }
    Ok(out)
}

pub fn catalog() -> Vec<(String, BPolynomial)> {
    parse_catalog(CATALOG).expect("built-in catalog parses")
}

pub fn catalog_entry(key: &str) -> Option<BPolynomial> {
    catalog().into_iter().find(|(k, _)| k == key).map(|(_, b)| b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    InconclusiveSmallP,
    Fail,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::InconclusiveSmallP => "inconclusive-small-p",
            Verdict::Fail => "fail",
        }
    }

    fn judge(residue: u64, p: u64, m_floor: u64) -> Verdict {
        match (residue, p <= m_floor) {
            (0, _) => Verdict::Pass,
            (_, true) => Verdict::InconclusiveSmallP,
            (_, false) => Verdict::Fail,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BCheckEntry {
    pub e: u32,
    /// The ν-invariant or the jump exponent at which b was evaluated.
    pub nu: u64,
    pub residue: u64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct BCheckReport {
    pub b: BPolynomial,
    pub p: u64,
    pub ambient: &'static str,
    pub m_floor: u64,
    pub entries: Vec<BCheckEntry>,
}

impl BCheckReport {
    pub fn verdict(&self) -> Verdict {
        if self.entries.iter().any(|e| e.verdict == Verdict::Fail) {
            Verdict::Fail
        } else if self.entries.iter().any(|e| e.verdict == Verdict::InconclusiveSmallP) {
            Verdict::InconclusiveSmallP
        } else {
            Verdict::Pass
        }
    }
}

/// `b(ν^a_f(p^e)) ≡ 0 mod p` for each `e` in range.
pub fn bs_threshold_check(
    b: &BPolynomial,
    f: &Polynomial,
    a: &Ideal,
    e_range: RangeInclusive<u32>,
    ambient: Ambient,
    m_floor: u64,
) -> Result<BCheckReport> {
    let p = f.ring().p();
    b.reduce_mod_p(p)?;
    let j = Ideal::principal(f);
    let mut entries = Vec::new();
    for e in e_range {
        let v = nu(&j, a, e, ambient)?.value;
        let residue = b.eval_mod_p(v, p)?;
        entries.push(BCheckEntry {
            e,
            nu: v,
            residue,
            verdict: Verdict::judge(residue, p, m_floor),
        });
    }
    Ok(BCheckReport {
        b: b.clone(),
        p,
        ambient: ambient.tag(),
        m_floor,
        entries,
    })
}

/// `b(ν) ≡ 0 mod p` at every ν in range where `C^e(f^ν) ≠ C^e(f^{ν+1})`.
pub fn bs_jump_check(
    b: &BPolynomial,
    f: &Polynomial,
    e: u32,
    nu_range: RangeInclusive<u64>,
    ambient: Ambient,
    m_floor: u64,
) -> Result<BCheckReport> {
    let p = f.ring().p();
    b.reduce_mod_p(p)?;
    let (lo, hi) = (*nu_range.start(), *nu_range.end());
    let mut prev = ambient.cartier(&Ideal::principal(&f.pow(lo)?), e)?;
    let mut entries = Vec::new();
    for v in lo..=hi {
        let next = ambient.cartier(&Ideal::principal(&f.pow(v + 1)?), e)?;
        if !ambient.equal(&prev, &next)? {
            let residue = b.eval_mod_p(v, p)?;
            entries.push(BCheckEntry {
                e,
                nu: v,
                residue,
                verdict: Verdict::judge(residue, p, m_floor),
            });
        }
        prev = next;
    }
    Ok(BCheckReport {
        b: b.clone(),
        p,
        ambient: ambient.tag(),
        m_floor,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Ring};
    use crate::summand::build_embedding;

    fn b(src: &str) -> BPolynomial {
        BPolynomial::parse(src, "test").unwrap()
    }

    #[test]
    fn reductions() {
        assert_eq!(b("s+1").reduce_mod_p(7).unwrap(), vec![1, 1]);
        assert_eq!(b("s+5/6").reduce_mod_p(7).unwrap(), vec![2, 1]);
        assert_eq!(b("s+1/3").reduce_mod_p(3).unwrap_err(), Error::PrimeExcluded { p: 3 });
    }

    #[test]
    fn parsing_and_printing() {
        assert_eq!(b("(s+1)*(s+2)").to_string(), "s^2 + 3*s + 2");
        assert_eq!(b("2*s + 1").to_string(), "s + 1/2");
        assert!(BPolynomial::parse("0", "").is_err());
        assert!(matches!(BPolynomial::parse("s + t", ""), Err(Error::UnknownVariable { offset: 4, .. })));
        assert!(BPolynomial::parse("s/(s+1)", "").is_err());
    }

    #[test]
    fn catalog_divisibility() {
        let cat = catalog();
        assert_eq!(cat.len(), 3);
        let r = catalog_entry("xu_yv_in_R").unwrap();
        let s = catalog_entry("xu_yv_in_S").unwrap();
        assert!(r.divides(&s));
        assert!(!s.divides(&r));
        assert!(cat.iter().all(|(_, b)| !b.provenance.is_empty()));
    }

    #[test]
    fn catalog_errors_name_lines() {
        let err = parse_catalog("# ok\nbpoly a = s\nbpoly a = s+1\n").unwrap_err();
        assert!(err.to_string().contains("line 3"));
    }

    #[test]
    fn variable_checks() {
        for p in [2u64, 3, 5] {
            let r = Ring::new(p, ["x"]).unwrap();
            let x = parse_poly("x", &r).unwrap();
            let rep = bs_threshold_check(&b("s+1"), &x, &Ideal::principal(&x), 1..=2, Ambient::S, 0).unwrap();
            assert_eq!(rep.verdict(), Verdict::Pass);
            let rep = bs_jump_check(&b("s+1"), &x, 1, 0..=3 * p, Ambient::S, 0).unwrap();
            let flagged: Vec<u64> = rep.entries.iter().map(|e| e.nu).collect();
            let want: Vec<u64> = (0..=3 * p).filter(|v| v % p == p - 1).collect();
            assert_eq!(flagged, want);
            assert_eq!(rep.verdict(), Verdict::Pass);
        }
    }

    #[test]
    fn example_threshold_checks() {
        let r = Ring::new(3, ["x", "y", "u", "v"]).unwrap();
        let emb = build_embedding(&r, vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]], 40).unwrap();
        let f = parse_poly("x*u - y*v", &r).unwrap();
        let m_r = Ideal::new(&r, [parse_poly("x*u", &r).unwrap(), parse_poly("y*v", &r).unwrap()]).unwrap();
        let rep = bs_threshold_check(&b("s+1"), &f, &m_r, 1..=2, Ambient::R(&emb), 0).unwrap();
        assert_eq!(rep.verdict(), Verdict::Pass);
        let m_s = Ideal::new(&r, (0..4).map(|i| Polynomial::var(&r, i))).unwrap();
        let rep = bs_threshold_check(&b("(s+1)*(s+2)"), &f, &m_s, 1..=2, Ambient::S, 0).unwrap();
        assert_eq!(rep.verdict(), Verdict::Pass);
    }

    #[test]
    fn small_prime_failures_are_inconclusive() {
        let r = Ring::new(3, ["x"]).unwrap();
        let x = parse_poly("x", &r).unwrap();
        let rep = bs_threshold_check(&b("s+2"), &x, &Ideal::principal(&x), 1..=1, Ambient::S, 3).unwrap();
        assert_eq!(rep.verdict(), Verdict::InconclusiveSmallP);
        let rep = bs_threshold_check(&b("s+2"), &x, &Ideal::principal(&x), 1..=1, Ambient::S, 2).unwrap();
        assert_eq!(rep.verdict(), Verdict::Fail);
    }

    #[test]
    fn reduction_is_multiplicative() {
        let (a, c) = (b("s + 1/2"), b("s^2 - 3/5"));
        let p = 7;
        let (ra, rc) = (a.reduce_mod_p(p).unwrap(), c.reduce_mod_p(p).unwrap());
        let prod = a.mul(&c).reduce_mod_p(p).unwrap();
        let mut want = vec![0u64; ra.len() + rc.len() - 1];
        for (i, x) in ra.iter().enumerate() {
            for (j, y) in rc.iter().enumerate() {
                want[i + j] = field::add(want[i + j], field::mul(*x, *y, p), p);
            }
        }
        assert_eq!(prod, want);
    }
}
