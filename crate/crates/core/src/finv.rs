//! ν-invariants, F-threshold approximants, test ideals, level-e jumping
//! candidates, the direct-summand filter and the cyclicity witness.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cartier::cartier_image;
use crate::error::{Error, Result};
use crate::frobenius::{d_image, eth_root, FrobeniusContext};
use crate::groebner::{radical_member, Ideal};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring, MAX_EXPONENT};
use crate::summand::SplitEmbedding;

/// Largest power searched when looking for `f^N ∈ a`.
const RADICAL_POWER_CAP: u64 = 1 << 20;

/// Largest generator count of `J^t` materialized for the post-hoc recheck.
const RECHECK_GENERATOR_CAP: u128 = 4000;

/// Where an invariant is computed: the polynomial ring S or a summand R.
#[derive(Clone, Copy, Debug)]
pub enum Ambient<'a> {
    S,
    R(&'a SplitEmbedding),
}

impl Ambient<'_> {
    pub fn tag(&self) -> &'static str {
        match self {
            Ambient::S => "S",
            Ambient::R(_) => "R",
        }
    }

    fn check_ideal(&self, ideal: &Ideal) -> Result<()> {
        match self {
            Ambient::S => Ok(()),
            Ambient::R(emb) => {
                emb.ring().check_same(ideal.ring())?;
                emb.check_ideal_in_r(ideal)
            }
        }
    }

    /// `C^e` of an ideal: e-th root in S, Cartier image in R.
    pub fn cartier(&self, ideal: &Ideal, e: u32) -> Result<Ideal> {
        match self {
            Ambient::S => eth_root(ideal, &FrobeniusContext::new(ideal.ring(), e)?),
            Ambient::R(emb) => Ok(cartier_image(ideal, emb, e)?.image),
        }
    }

    pub fn equal(&self, a: &Ideal, b: &Ideal) -> Result<bool> {
        match self {
            Ambient::S => a.equals(b),
            Ambient::R(emb) => emb.r_ideal_equal(a, b),
        }
    }

    /// `inner ⊆ outer`.
    pub fn contains(&self, outer: &Ideal, inner: &Ideal) -> Result<bool> {
        match self {
            Ambient::S => outer.contains(inner),
            Ambient::R(emb) => emb.r_ideal_contains(outer, inner),
        }
    }
}

pub fn q_of(ring: &Ring, e: u32) -> Result<u64> {
    ring.p()
        .checked_pow(e)
        .filter(|&q| q <= MAX_EXPONENT)
        .ok_or(Error::ExponentOverflow)
}

pub fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `⌈q λ⌉` for nonnegative λ.
pub fn ceil_scaled(lambda: &BigRational, q: u64) -> Result<u64> {
    let v = (lambda * BigInt::from(q)).ceil().to_integer();
    u64::try_from(v).map_err(|_| Error::InvalidArgument(format!("exponent {lambda}·{q} out of range")))
}

/// `⌊q λ⌋` for nonnegative λ.
pub fn floor_scaled(lambda: &BigRational, q: u64) -> Result<u64> {
    let v = (lambda * BigInt::from(q)).floor().to_integer();
    u64::try_from(v).map_err(|_| Error::InvalidArgument(format!("exponent {lambda}·{q} out of range")))
}

/// `ν^a_J(p^e)` with the recheck status of its defining bounds.
#[derive(Clone, Debug)]
pub struct NuResult {
    pub j: Ideal,
    pub a: Ideal,
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub value: u64,
    pub ratio: BigRational,
    pub ambient: &'static str,
    /// Whether `J^ν ⊄ a^[q]` and `J^{ν+1} ⊆ a^[q]` were confirmed by direct
    /// expansion of the powers.
    pub rechecked: bool,
}

/// Generators of J and a together with the ring they are tested in. In R this
/// is the presentation ring, with the toric ideal added to every ambient ideal.
struct Setting {
    ring: Ring,
    toric: Vec<Polynomial>,
    j: Vec<Polynomial>,
    a: Vec<Polynomial>,
}

impl Setting {
    fn new(j: &Ideal, a: &Ideal, ambient: Ambient) -> Result<Setting> {
        j.ring().check_same(a.ring())?;
        ambient.check_ideal(j)?;
        ambient.check_ideal(a)?;
        match ambient {
            Ambient::S => Ok(Setting {
                ring: j.ring().clone(),
                toric: Vec::new(),
                j: j.gens().to_vec(),
                a: a.gens().to_vec(),
            }),
            Ambient::R(emb) => {
                let pres = emb.presentation()?;
                let lift = |gs: &[Polynomial]| gs.iter().map(|g| emb.lift(g)).collect::<Result<Vec<_>>>();
                Ok(Setting {
                    ring: pres.aux.clone(),
                    toric: pres.toric.gens().to_vec(),
                    j: lift(j.gens())?,
                    a: lift(a.gens())?,
                })
            }
        }
    }

    fn ideal(&self, gens: impl IntoIterator<Item = Polynomial>, limits: &crate::GroebnerLimits) -> Result<Ideal> {
        Ok(Ideal::new(&self.ring, self.toric.iter().cloned().chain(gens))?.with_limits(*limits))
    }
}

/// `h^k` reduced modulo `ideal` after every multiplication.
fn pow_mod(h: &Polynomial, k: u64, ideal: &Ideal) -> Result<Polynomial> {
    let mut acc = Polynomial::one(h.ring());
    let mut base = ideal.reduce(h)?;
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = ideal.reduce(&acc.checked_mul(&base)?)?;
            if acc.is_zero() {
                return Ok(acc);
            }
        }
        k >>= 1;
        if k > 0 {
            base = ideal.reduce(&base.checked_mul(&base)?)?;
        }
    }
    Ok(acc)
}

/// Smallest N with `g^N ∈ ideal`, given that some power lies in it.
fn radical_exponent(g: &Polynomial, ideal: &Ideal) -> Result<u64> {
    let mut h = ideal.reduce(g)?;
    let mut n = 1;
    while !h.is_zero() {
        n += 1;
        if n > RADICAL_POWER_CAP {
            return Err(Error::ResourceBound(format!(
                "no power of {g} up to {RADICAL_POWER_CAP} lies in the ideal"
            )));
        }
        h = ideal.reduce(&h.checked_mul(g)?)?;
    }
    Ok(n)
}

/// Echelon basis of a space of polynomials, distinct grevlex leading monomials.
struct Echelon {
    rows: Vec<(Monomial, Polynomial)>,
}

impl Echelon {
    fn insert(&mut self, v: Polynomial) -> Result<()> {
        let mut v = v;
        // rows are sorted by descending leading monomial and each tail lies
        // below its head, so one pass reduces completely
        for (lm, row) in &self.rows {
            let c = v.coefficient(lm);
            if c != 0 {
                v = v.checked_sub(&row.scale(c))?;
            }
        }
        if v.is_zero() {
            return Ok(());
        }
        let v = v.monic();
        let lm = v.leading_term(MonomialOrder::Grevlex).unwrap().0.clone();
        let pos = self
            .rows
            .partition_point(|(m, _)| MonomialOrder::Grevlex.compare(m.exponents(), lm.exponents()).is_gt());
        self.rows.insert(pos, (lm, v));
        Ok(())
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
        if acc > u64::MAX as u128 {
            return acc;
        }
    }
    acc
}

/// `ν^a_J(p^e) = max{t : J^t ⊄ a^[p^e]}`. Requires `J ⊆ √a` and `a` proper.
pub fn nu(j: &Ideal, a: &Ideal, e: u32, ambient: Ambient) -> Result<NuResult> {
    if j.is_zero() {
        return Err(Error::InvalidArgument("J must be nonzero".into()));
    }
    let st = Setting::new(j, a, ambient)?;
    let limits = a.limits();
    let q = q_of(&st.ring, e)?;
    let a_full = st.ideal(st.a.iter().cloned(), limits)?;
    if a_full.is_unit()? {
        return Err(Error::InvalidArgument("the ideal a must be proper".into()));
    }

    let mut n_total = 0u64;
    for g in &st.j {
        if !radical_member(g, &a_full)? {
            return Err(Error::RadicalHypothesis(format!("{g} is not in the radical of a")));
        }
        n_total += radical_exponent(g, &a_full)? - 1;
    }
    // J^N ⊆ a, and a^{μ(q-1)+1} ⊆ a^[q] for μ generators
    let n_j = n_total + 1;
    let mu = st.a.len() as u64;
    let upper = n_j
        .checked_mul(mu * (q - 1) + 1)
        .ok_or(Error::ResourceBound("ν search bound overflows".into()))?;

    let bracket = st.ideal(
        st.a.iter().map(|g| g.frobenius(e)).collect::<Result<Vec<_>>>()?,
        limits,
    )?;

    let value = if st.j.len() == 1 {
        let f = &st.j[0];
        let (mut lo, mut hi) = (0u64, upper);
        while !pow_mod(f, hi, &bracket)?.is_zero() {
            lo = hi;
            hi = hi.checked_mul(2).ok_or(Error::ResourceBound("ν search bound overflows".into()))?;
        }
        // f^lo ∉ bracket, f^hi ∈ bracket
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if pow_mod(f, mid, &bracket)?.is_zero() {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo
    } else {
        let mut layer = Echelon { rows: vec![] };
        layer.insert(bracket.reduce(&Polynomial::one(&st.ring))?)?;
        let mut t = 0u64;
        while !layer.rows.is_empty() {
            let mut next = Echelon { rows: vec![] };
            for (_, h) in &layer.rows {
                for g in &st.j {
                    next.insert(bracket.reduce(&h.checked_mul(g)?)?)?;
                }
            }
            layer = next;
            t += 1;
            if t > upper + 1 {
                return Err(Error::ResourceBound("ν layer search exceeded its bound".into()));
            }
        }
        t - 1
    };

    let rechecked = recheck(&st, value, &bracket)?;
    Ok(NuResult {
        j: j.clone(),
        a: a.clone(),
        p: st.ring.p(),
        e,
        q,
        value,
        ratio: ratio(value, q),
        ambient: ambient.tag(),
        rechecked,
    })
}

/// Confirm both defining bounds by expanding the powers directly. Returns
/// false when the expansion would be too large; a failed bound is an error.
fn recheck(st: &Setting, value: u64, bracket: &Ideal) -> Result<bool> {
    let k = st.j.len() as u64;
    if binomial(value + k, k - 1) > RECHECK_GENERATOR_CAP {
        return Ok(false);
    }
    let jt = Ideal::new(&st.ring, st.j.iter().cloned())?;
    let below = jt.power(value)?;
    let above = jt.power(value + 1)?;
    let ok_below = !bracket.contains(&below)?;
    let ok_above = bracket.contains(&above)?;
    if ok_below && ok_above {
        Ok(true)
    } else {
        Err(Error::InvalidArgument(format!(
            "ν = {value} failed its post-hoc bounds (below: {ok_below}, above: {ok_above})"
        )))
    }
}

/// The sequence `ν(p^e)/p^e` for `e = 1..=e_max`.
#[derive(Clone, Debug)]
pub struct ThresholdEstimate {
    pub levels: Vec<NuResult>,
    /// `ν(p^{e+1}) ≥ p·ν(p^e)` held at every step.
    pub monotone: bool,
}

pub fn threshold_estimate(j: &Ideal, a: &Ideal, e_max: u32, ambient: Ambient) -> Result<ThresholdEstimate> {
    let levels = (1..=e_max)
        .map(|e| nu(j, a, e, ambient))
        .collect::<Result<Vec<_>>>()?;
    let p = j.ring().p();
    let monotone = levels.windows(2).all(|w| w[1].value >= p * w[0].value);
    Ok(ThresholdEstimate { levels, monotone })
}

/// `ν^m_f(p^e)/p^e` together with the chain for levels `1..=e`.
pub fn fpt_truncation(f: &Polynomial, m: &Ideal, e: u32, ambient: Ambient) -> Result<ThresholdEstimate> {
    threshold_estimate(&Ideal::principal(f), m, e, ambient)
}

/// One level of a test-ideal chain: `C^e(I^a)` with `a = ⌈p^e λ⌉`.
#[derive(Clone, Debug)]
pub struct TauLevel {
    pub e: u32,
    pub exponent: u64,
    pub ideal: Ideal,
}

#[derive(Clone, Debug)]
pub struct TestIdealResult {
    pub lambda: BigRational,
    pub chain: Vec<TauLevel>,
    /// First level whose ideal agrees with the next one, if any.
    pub stabilized_at: Option<u32>,
    /// The chain value at the stabilization level, or at the last level.
    pub tau: Ideal,
    /// Whether each level contained the previous one.
    pub ascending: bool,
}

impl TestIdealResult {
    pub fn is_conclusive(&self) -> bool {
        self.stabilized_at.is_some()
    }
}

/// `τ(I^λ)` as the chain `C^e(I^{⌈p^e λ⌉})`, `e = 1..=e_max`, stopping once
/// two consecutive levels agree.
pub fn test_ideal(ideal: &Ideal, lambda: &BigRational, e_max: u32, ambient: Ambient) -> Result<TestIdealResult> {
    if *lambda <= BigRational::zero() {
        return Err(Error::InvalidArgument("λ must be positive".into()));
    }
    if e_max == 0 {
        return Err(Error::InvalidArgument("e_max must be at least 1".into()));
    }
    ambient.check_ideal(ideal)?;
    let mut chain: Vec<TauLevel> = Vec::new();
    let mut stabilized_at = None;
    let mut ascending = true;
    for e in 1..=e_max {
        let q = q_of(ideal.ring(), e)?;
        let a = ceil_scaled(lambda, q)?;
        let level = ambient.cartier(&ideal.power(a)?, e)?;
        if let Some(prev) = chain.last() {
            ascending &= ambient.contains(&level, &prev.ideal)?;
            if ambient.equal(&level, &prev.ideal)? {
                stabilized_at = Some(prev.e);
                chain.push(TauLevel { e, exponent: a, ideal: level });
                break;
            }
        }
        chain.push(TauLevel { e, exponent: a, ideal: level });
    }
    let tau = match stabilized_at {
        Some(e) => chain[e as usize - 1].ideal.clone(),
        None => chain.last().unwrap().ideal.clone(),
    };
    Ok(TestIdealResult {
        lambda: lambda.clone(),
        chain,
        stabilized_at,
        tau,
        ascending,
    })
}

/// A level-e candidate `λ = a/p^e` with `C^e(I^a) ⊊ C^e(I^{a-1})`.
#[derive(Clone, Debug)]
pub struct JumpCandidate {
    pub lambda: BigRational,
    pub a: u64,
    pub before: Ideal,
    pub after: Ideal,
}

/// Whether a level-e candidate `a/q` has a level-(e+1) candidate in the
/// window `((a-1)p, ap] / pq`.
#[derive(Clone, Debug)]
pub struct Refinement {
    pub lambda: BigRational,
    pub consistent: bool,
}

#[derive(Clone, Debug)]
pub struct JumpSpectrum {
    pub ambient: &'static str,
    pub e: u32,
    pub q: u64,
    pub upper: BigRational,
    pub candidates: Vec<JumpCandidate>,
    pub refinement: Option<Vec<Refinement>>,
}

impl JumpSpectrum {
    pub fn lambdas(&self) -> Vec<BigRational> {
        self.candidates.iter().map(|c| c.lambda.clone()).collect()
    }

    pub fn exponents(&self) -> Vec<u64> {
        self.candidates.iter().map(|c| c.a).collect()
    }
}

/// `C^e(I^a)` for `a = 0..=top`, with `C^e(I^0) = (1)`.
fn level_chain(ideal: &Ideal, e: u32, top: u64, ambient: Ambient) -> Result<Vec<Ideal>> {
    let mut powers = vec![Ideal::unit(ideal.ring())];
    for _ in 0..top {
        let next = powers.last().unwrap().product(ideal)?;
        powers.push(next);
    }
    powers[1..]
        .par_iter()
        .map(|pw| ambient.cartier(pw, e))
        .collect::<Result<Vec<_>>>()
        .map(|mut v| {
            v.insert(0, Ideal::unit(ideal.ring()));
            v
        })
}

fn candidates_at(ideal: &Ideal, e: u32, upper: &BigRational, ambient: Ambient) -> Result<(u64, Vec<JumpCandidate>)> {
    let q = q_of(ideal.ring(), e)?;
    let top = floor_scaled(upper, q)?;
    let chain = level_chain(ideal, e, top, ambient)?;
    let changed = (1..chain.len())
        .into_par_iter()
        .map(|a| ambient.equal(&chain[a - 1], &chain[a]).map(|eq| !eq))
        .collect::<Result<Vec<bool>>>()?;
    let cands = changed
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(i, _)| {
            let a = i as u64 + 1;
            JumpCandidate {
                lambda: ratio(a, q),
                a,
                before: chain[i].clone(),
                after: chain[i + 1].clone(),
            }
        })
        .collect();
    Ok((q, cands))
}

/// Level-e jumping candidates in `(0, upper]`, optionally checked against
/// level e+1.
pub fn jump_spectrum(
    ideal: &Ideal,
    e: u32,
    upper: &BigRational,
    ambient: Ambient,
    refine: bool,
) -> Result<JumpSpectrum> {
    if e == 0 {
        return Err(Error::InvalidArgument("level e must be at least 1".into()));
    }
    ambient.check_ideal(ideal)?;
    let (q, candidates) = candidates_at(ideal, e, upper, ambient)?;
    let refinement = if refine {
        let p = ideal.ring().p();
        let (_, finer) = candidates_at(ideal, e + 1, upper, ambient)?;
        Some(
            candidates
                .iter()
                .map(|c| Refinement {
                    lambda: c.lambda.clone(),
                    consistent: finer.iter().any(|f| f.a > (c.a - 1) * p && f.a <= c.a * p),
                })
                .collect(),
        )
    } else {
        None
    };
    Ok(JumpSpectrum {
        ambient: ambient.tag(),
        e,
        q,
        upper: upper.clone(),
        candidates,
        refinement,
    })
}

/// Verdict on one S-candidate under the summand filter.
#[derive(Clone, Debug)]
pub struct FilterEntry {
    pub lambda: BigRational,
    pub a: u64,
    pub survives: bool,
}

/// Compare `C^e_R(I^{a_i})` with `C^e_R(I^{a_{i-1}})` for consecutive
/// S-candidates (`a_0 = 0`); equality means `a_i/q` is not an R-jump at this
/// level.
pub fn summand_filter(ideal: &Ideal, emb: &SplitEmbedding, s_spectrum: &JumpSpectrum) -> Result<Vec<FilterEntry>> {
    let ambient = Ambient::R(emb);
    ambient.check_ideal(ideal)?;
    let e = s_spectrum.e;
    let mut prev_a = 0u64;
    let mut prev = Ideal::unit(ideal.ring());
    let mut out = Vec::with_capacity(s_spectrum.candidates.len());
    for c in &s_spectrum.candidates {
        let cur = ambient.cartier(&ideal.power(c.a)?, e)?;
        let survives = !ambient.equal(&prev, &cur)?;
        out.push(FilterEntry {
            lambda: c.lambda.clone(),
            a: c.a,
            survives,
        });
        debug_assert!(c.a > prev_a);
        prev_a = c.a;
        prev = cur;
    }
    Ok(out)
}

/// Outcome of the search for `f^{p^{e'} - p^e} ∈ D^(e')·(f^{p^{e'} - 1})`.
#[derive(Clone, Debug)]
pub struct CyclicWitness {
    pub f: Polynomial,
    pub e: u32,
    pub e_max: u32,
    /// Smallest level that verified, if any.
    pub level: Option<u32>,
    pub attempts: Vec<(u32, bool)>,
}

impl CyclicWitness {
    pub fn verified(&self) -> bool {
        self.level.is_some()
    }
}

/// Search `e' = e..=e_max` for the identity behind cyclicity of `R_f` as a
/// D-module. The test runs in S; for R it certifies the statement through the
/// splitting, so R-mode only checks that `f ∈ R`.
pub fn cyclic_witness(f: &Polynomial, e: u32, e_max: u32, ambient: Ambient) -> Result<CyclicWitness> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("f must be nonzero".into()));
    }
    if let Ambient::R(emb) = ambient {
        emb.check_in_r(f)?;
    }
    let q = q_of(f.ring(), e)?;
    let mut attempts = Vec::new();
    let mut level = None;
    for ep in e..=e_max {
        let ctx = FrobeniusContext::new(f.ring(), ep)?;
        let qp = ctx.q();
        let img = d_image(&Ideal::principal(&f.pow(qp - 1)?), &ctx)?;
        let ok = img.contains_poly(&f.pow(qp - q)?)?;
        attempts.push((ep, ok));
        if ok {
            level = Some(ep);
            break;
        }
    }
    Ok(CyclicWitness {
        f: f.clone(),
        e,
        e_max,
        level,
        attempts,
    })
}

/// `1` as a rational, for callers building λ grids.
pub fn one() -> BigRational {
    BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::summand::build_embedding;

    fn ring(p: u64, vars: &[&str]) -> Ring {
        Ring::new(p, vars.iter().copied()).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_poly(g, r).unwrap())).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn example_summand(p: u64) -> SplitEmbedding {
        let r = ring(p, &["x", "y", "u", "v"]);
        build_embedding(&r, vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]], 40).unwrap()
    }

    #[test]
    fn nu_of_a_variable() {
        for p in [2u64, 3, 5] {
            let r = ring(p, &["x"]);
            for e in 1..=2 {
                let res = nu(&ideal(&r, &["x"]), &ideal(&r, &["x"]), e, Ambient::S).unwrap();
                assert_eq!(res.value, p.pow(e) - 1);
                assert!(res.rechecked);
            }
        }
    }

    #[test]
    fn nu_examples() {
        let r = ring(2, &["x", "y"]);
        assert_eq!(nu(&ideal(&r, &["x*y"]), &ideal(&r, &["x", "y"]), 2, Ambient::S).unwrap().value, 3);
        let r = ring(7, &["x", "y"]);
        assert_eq!(nu(&ideal(&r, &["x^2 + y^3"]), &ideal(&r, &["x", "y"]), 1, Ambient::S).unwrap().value, 5);
        // multi-generator J: (x,y)^t ⊆ (x^2,y^2) iff t ≥ 3
        let r = ring(2, &["x", "y"]);
        assert_eq!(nu(&ideal(&r, &["x", "y"]), &ideal(&r, &["x", "y"]), 1, Ambient::S).unwrap().value, 2);
    }

    #[test]
    fn nu_radical_hypothesis() {
        let r = ring(3, &["x", "y"]);
        assert!(matches!(
            nu(&ideal(&r, &["y"]), &ideal(&r, &["x"]), 1, Ambient::S),
            Err(Error::RadicalHypothesis(_))
        ));
    }

    #[test]
    fn nu_in_example_summand() {
        let emb = example_summand(2);
        let r = emb.ring();
        let res = nu(&ideal(r, &["x*u - y*v"]), &ideal(r, &["x*u", "y*v"]), 2, Ambient::R(&emb)).unwrap();
        assert_eq!(res.value, 3);
        assert_eq!(res.ratio, rat(3, 4));
    }

    #[test]
    fn fpt_truncations_of_x_squared() {
        let r = ring(3, &["x"]);
        let est = fpt_truncation(&parse_poly("x^2", &r).unwrap(), &ideal(&r, &["x"]), 2, Ambient::S).unwrap();
        let vals: Vec<u64> = est.levels.iter().map(|l| l.value).collect();
        assert_eq!(vals, vec![1, 4]);
        assert_eq!(est.levels[1].ratio, rat(4, 9));
        assert!(est.monotone);
    }

    #[test]
    fn test_ideal_examples() {
        let r = ring(2, &["x"]);
        let t = test_ideal(&ideal(&r, &["x"]), &one(), 3, Ambient::S).unwrap();
        assert!(t.is_conclusive());
        assert!(t.tau.equals(&ideal(&r, &["x"])).unwrap());
        let r = ring(2, &["x", "y"]);
        let t = test_ideal(&ideal(&r, &["x*y"]), &rat(1, 2), 3, Ambient::S).unwrap();
        assert!(t.tau.is_unit().unwrap());
        let emb = example_summand(2);
        let t = test_ideal(&ideal(emb.ring(), &["x*u - y*v"]), &rat(1, 2), 3, Ambient::R(&emb)).unwrap();
        assert!(t.tau.is_unit().unwrap());
        assert!(t.ascending);
    }

    #[test]
    fn spectra() {
        let r = ring(3, &["x"]);
        let s = jump_spectrum(&ideal(&r, &["x"]), 1, &one(), Ambient::S, false).unwrap();
        assert_eq!(s.lambdas(), vec![one()]);
        let s = jump_spectrum(&ideal(&r, &["x^2"]), 1, &one(), Ambient::S, true).unwrap();
        assert_eq!(s.lambdas(), vec![rat(2, 3), one()]);
        assert!(s.refinement.unwrap().iter().all(|r| r.consistent));
        let emb = example_summand(2);
        let f = ideal(emb.ring(), &["x*u - y*v"]);
        let s = jump_spectrum(&f, 2, &one(), Ambient::R(&emb), false).unwrap();
        assert_eq!(s.lambdas(), vec![one()]);
        let ss = jump_spectrum(&f, 2, &one(), Ambient::S, false).unwrap();
        let filt = summand_filter(&f, &emb, &ss).unwrap();
        let survivors: Vec<_> = filt.iter().filter(|e| e.survives).map(|e| e.lambda.clone()).collect();
        assert_eq!(survivors, vec![one()]);
    }

    #[test]
    fn cyclic_examples() {
        let r = ring(3, &["x"]);
        let w = cyclic_witness(&parse_poly("x", &r).unwrap(), 1, 3, Ambient::S).unwrap();
        assert_eq!(w.level, Some(1));
        let r = ring(5, &["x", "y"]);
        let w = cyclic_witness(&parse_poly("x^2 + y^3", &r).unwrap(), 1, 3, Ambient::S).unwrap();
        assert!(w.verified());
        let emb = example_summand(2);
        let f = parse_poly("x*u - y*v", emb.ring()).unwrap();
        let w = cyclic_witness(&f, 1, 2, Ambient::R(&emb)).unwrap();
        assert!(w.verified());
    }
}
