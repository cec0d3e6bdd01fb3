//! Monomial direct summands `R = F_p[x^{v_1},…,x^{v_r}] ⊆ S`: purity
//! verification, the splitting β, the presentation of R, and R-side ideal
//! membership.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cartier::MapFamily;
use crate::error::{Error, Result};
use crate::groebner::{eliminate, GroebnerLimits, Ideal};
use crate::lattice::Lattice;
use crate::poly::{Monomial, Polynomial, Ring};

/// Largest number of lattice points examined while verifying purity.
pub const PURITY_POINT_CAP: usize = 4_000_000;

/// A finitely generated subsemigroup of ℕⁿ together with the lattice it
/// generates.
#[derive(Clone, Debug)]
pub struct AffineSemigroup {
    n: usize,
    gens: Vec<Vec<u32>>,
    lattice: Lattice,
}

impl AffineSemigroup {
    pub fn new(n: usize, gens: Vec<Vec<u32>>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::InvalidArgument("a subring needs at least one generator".into()));
        }
        for (i, g) in gens.iter().enumerate() {
            if g.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "generator {g:?} has length {}, expected {n}",
                    g.len()
                )));
            }
            if g.iter().all(|&x| x == 0) {
                return Err(Error::InvalidArgument("generators must be nonzero".into()));
            }
            if gens[..i].contains(g) {
                return Err(Error::InvalidArgument(format!("duplicate generator {g:?}")));
            }
        }
        let rows: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| x as i64).collect())
            .collect();
        let lattice = Lattice::new(n, &rows);
        Ok(AffineSemigroup { n, gens, lattice })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn max_degree(&self) -> u64 {
        self.gens
            .iter()
            .map(|g| g.iter().map(|&x| x as u64).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn max_coordinate(&self) -> u32 {
        self.gens.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Lattice test plus nonnegativity. Equals membership in Σ wherever Σ is
    /// pure.
    pub fn contains(&self, m: &[i64]) -> bool {
        m.iter().all(|&x| x >= 0) && self.lattice.contains(m)
    }
}

/// Result of checking `Σ ∩ [0,B]^n = G(Σ) ∩ ℕⁿ ∩ [0,B]^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurityCertificate {
    pub bound: u32,
    pub verified: bool,
    pub points_checked: usize,
}

/// `4 · (max generator degree) · p^e_max`.
pub fn default_box(gens: &[Vec<u32>], p: u64, e_max: u32) -> u64 {
    let maxdeg = gens
        .iter()
        .map(|g| g.iter().map(|&x| x as u64).sum::<u64>())
        .max()
        .unwrap_or(1);
    4 * maxdeg * p.saturating_pow(e_max)
}

/// Exponent vector of a word such as `xxy` or `xu`, matching the longest
/// variable name at each position.
pub fn parse_monomial_word(ring: &Ring, word: &str) -> Result<Vec<u32>> {
    let mut exps = vec![0u32; ring.nvars()];
    let mut pos = 0;
    while pos < word.len() {
        let best = ring
            .vars()
            .iter()
            .enumerate()
            .filter(|(_, v)| word[pos..].starts_with(v.as_str()))
            .max_by_key(|(_, v)| v.len());
        match best {
            Some((i, v)) => {
                exps[i] += 1;
                pos += v.len();
            }
            None => {
                return Err(Error::UnknownVariable {
                    name: word[pos..].to_string(),
                    offset: pos,
                })
            }
        }
    }
    Ok(exps)
}

/// Aux polynomial ring `F_p[y_1..y_r]` and toric ideal `T` with
/// `R ≅ F_p[y]/T`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub aux: Ring,
    pub toric: Ideal,
}

/// A verified pure affine semigroup ring inside its polynomial ring.
pub struct SplitEmbedding {
    ring: Ring,
    semigroup: AffineSemigroup,
    certificate: PurityCertificate,
    limits: GroebnerLimits,
    decompositions: Mutex<HashMap<Vec<u32>, Vec<usize>>>,
    presentation: OnceLock<Result<Presentation>>,
    pub(crate) maps: Mutex<HashMap<u32, Arc<MapFamily>>>,
}

impl std::fmt::Debug for SplitEmbedding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SplitEmbedding")
            .field("ring", &self.ring)
            .field("gens", &self.semigroup.gens)
            .field("certificate", &self.certificate)
            .finish()
    }
}

/// Verify purity on `[0,B]^n` and build the embedding. Rejection carries the
/// smallest-degree lattice point of the box that is missing from Σ.
pub fn build_embedding(ring: &Ring, gens: Vec<Vec<u32>>, bound: u32) -> Result<SplitEmbedding> {
    let semigroup = AffineSemigroup::new(ring.nvars(), gens)?;
    let needed = 2 * semigroup.max_degree();
    if (bound as u64) < needed {
        return Err(Error::InvalidArgument(format!(
            "box bound {bound} is below twice the largest generator degree ({needed})"
        )));
    }
    let n = ring.nvars();
    let mut points = semigroup.lattice().points_in_box(
        &vec![0; n],
        &vec![bound as i64; n],
        PURITY_POINT_CAP,
    )?;
    points.sort_by_key(|m| (m.iter().sum::<i64>(), m.clone()));
    let mut sigma: HashSet<Vec<i64>> = HashSet::with_capacity(points.len());
    for m in &points {
        let reachable = m.iter().all(|&x| x == 0)
            || semigroup.gens().iter().any(|v| {
                let rest: Vec<i64> = m.iter().zip(v).map(|(&a, &b)| a - b as i64).collect();
                rest.iter().all(|&x| x >= 0) && sigma.contains(&rest)
            });
        if !reachable {
            return Err(Error::NotPure {
                witness: m.iter().map(|&x| x as u32).collect(),
            });
        }
        sigma.insert(m.clone());
    }
    Ok(SplitEmbedding {
        ring: ring.clone(),
        semigroup,
        certificate: PurityCertificate {
            bound,
            verified: true,
            points_checked: points.len(),
        },
        limits: GroebnerLimits::default(),
        decompositions: Mutex::new(HashMap::new()),
        presentation: OnceLock::new(),
        maps: Mutex::new(HashMap::new()),
    })
}

impl SplitEmbedding {
    /// `R = S`, generated by the variables.
    pub fn identity(ring: &Ring, bound: u32) -> Result<SplitEmbedding> {
        let n = ring.nvars();
        let gens = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        build_embedding(ring, gens, bound)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Caps used for the presentation and for R-ideal arithmetic.
    pub fn with_limits(mut self, limits: GroebnerLimits) -> SplitEmbedding {
        self.limits = limits;
        self
    }

    pub fn semigroup(&self) -> &AffineSemigroup {
        &self.semigroup
    }

    pub fn certificate(&self) -> &PurityCertificate {
        &self.certificate
    }

    pub fn bound(&self) -> u32 {
        self.certificate.bound
    }

    pub fn limits(&self) -> &GroebnerLimits {
        &self.limits
    }

    pub fn in_semigroup(&self, m: &[u32]) -> bool {
        let v: Vec<i64> = m.iter().map(|&x| x as i64).collect();
        self.semigroup.lattice().contains(&v)
    }

    /// Whether every monomial of `f` lies in R.
    pub fn is_in_r(&self, f: &Polynomial) -> bool {
        f.terms().all(|(m, _)| self.in_semigroup(m.exponents()))
    }

    pub fn check_in_r(&self, f: &Polynomial) -> Result<()> {
        self.ring.check_same(f.ring())?;
        match f.terms().find(|(m, _)| !self.in_semigroup(m.exponents())) {
            Some((m, _)) => Err(Error::NotInSemigroup(m.exponents().to_vec())),
            None => Ok(()),
        }
    }

    pub fn check_ideal_in_r(&self, ideal: &Ideal) -> Result<()> {
        ideal.gens().iter().try_for_each(|g| self.check_in_r(g))
    }

    /// β: keep exactly the terms whose exponents lie in Σ.
    pub fn beta_project(&self, f: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(f.ring())?;
        let b = self.bound();
        if let Some((m, _)) = f.terms().find(|(m, _)| m.exponents().iter().any(|&x| x > b)) {
            return Err(Error::BoxExceeded {
                exponents: m.exponents().to_vec(),
                bound: b,
            });
        }
        Ok(Polynomial::from_terms(
            &self.ring,
            f.terms()
                .filter(|(m, _)| self.in_semigroup(m.exponents()))
                .map(|(m, c)| (m.clone(), c)),
        ))
    }

    /// γ = β ∘ σ at level e, where σ extracts the component of `f` at box
    /// exponent zero.
    pub fn gamma(&self, f: &Polynomial, e: u32) -> Result<Polynomial> {
        let zero = Monomial::one(self.ring.nvars());
        let comp = f
            .pe_decompose(e)?
            .remove(&zero)
            .unwrap_or_else(|| Polynomial::zero(&self.ring));
        self.beta_project(&comp)
    }

    /// Generator indices (with repetition, ascending) summing to `m`: greedy by
    /// index, taking a generator only if the remainder stays in Σ.
    pub fn monomial_decompose(&self, m: &[u32]) -> Result<Vec<usize>> {
        if let Some(d) = self.decompositions.lock().unwrap().get(m) {
            return Ok(d.clone());
        }
        let d = self.decompose_by(m, |choices| choices[0])?;
        self.decompositions
            .lock()
            .unwrap()
            .insert(m.to_vec(), d.clone());
        Ok(d)
    }

    /// A decomposition chosen uniformly at random at each step.
    pub fn random_decomposition(&self, m: &[u32], rng: &mut impl Rng) -> Result<Vec<usize>> {
        self.decompose_by(m, |choices| *choices.choose(rng).expect("nonempty"))
    }

    fn decompose_by(&self, m: &[u32], mut pick: impl FnMut(&[usize]) -> usize) -> Result<Vec<usize>> {
        if !self.in_semigroup(m) {
            return Err(Error::NotInSemigroup(m.to_vec()));
        }
        let mut rest: Vec<i64> = m.iter().map(|&x| x as i64).collect();
        let mut out = Vec::new();
        while rest.iter().any(|&x| x != 0) {
            let choices: Vec<usize> = (0..self.semigroup.gens.len())
                .filter(|&i| {
                    let r: Vec<i64> = rest
                        .iter()
                        .zip(&self.semigroup.gens[i])
                        .map(|(&a, &b)| a - b as i64)
                        .collect();
                    self.semigroup.contains(&r)
                })
                .collect();
            if choices.is_empty() {
                // Σ is not saturated at m, outside the verified box
                return Err(Error::NotInSemigroup(m.to_vec()));
            }
            let i = pick(&choices);
            for (a, &b) in rest.iter_mut().zip(&self.semigroup.gens[i]) {
                *a -= b as i64;
            }
            out.push(i);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Kernel of `y_i ↦ x^{v_i}`, computed once by elimination.
    pub fn presentation(&self) -> Result<&Presentation> {
        self.presentation
            .get_or_init(|| self.compute_presentation())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn compute_presentation(&self) -> Result<Presentation> {
        let r = self.semigroup.gens.len();
        let mut names: Vec<String> = Vec::with_capacity(r);
        for i in 1..=r {
            names.push(self.ring.fresh_name(&format!("y{i}")));
        }
        let aux = Ring::new(self.ring.p(), names.clone())?;
        let n = self.ring.nvars();
        let joint = Ring::new(
            self.ring.p(),
            self.ring.vars().iter().cloned().chain(names.iter().cloned()),
        )?;
        let gens = self.semigroup.gens.iter().enumerate().map(|(i, v)| {
            let y = Polynomial::var(&joint, n + i);
            let mut exps = v.clone();
            exps.extend(std::iter::repeat(0).take(r));
            &y - &Polynomial::term(&joint, Monomial::new(exps).expect("small"), 1)
        });
        let ideal = Ideal::new(&joint, gens)?.with_limits(self.limits);
        let keep: Vec<&str> = names.iter().map(String::as_str).collect();
        let toric = eliminate(&ideal, &keep)?;
        // eliminate returns an ideal over an equal ring; rebind to `aux`
        let toric = Ideal::new(
            &aux,
            toric.gens().iter().map(|g| g.map_vars(&aux, &(0..r).collect::<Vec<_>>())),
        )?
        .with_limits(self.limits);
        Ok(Presentation { aux, toric })
    }

    /// Rewrite an element of R in the presentation variables.
    pub fn lift(&self, f: &Polynomial) -> Result<Polynomial> {
        self.lift_by(f, |m| self.monomial_decompose(m))
    }

    /// As [`lift`](Self::lift) with caller-chosen decompositions.
    pub fn lift_by(
        &self,
        f: &Polynomial,
        mut decompose: impl FnMut(&[u32]) -> Result<Vec<usize>>,
    ) -> Result<Polynomial> {
        self.ring.check_same(f.ring())?;
        let aux = &self.presentation()?.aux;
        let mut terms = Vec::with_capacity(f.num_terms());
        for (m, c) in f.terms() {
            let mut exps = vec![0u32; aux.nvars()];
            for i in decompose(m.exponents())? {
                exps[i] += 1;
            }
            terms.push((Monomial::new(exps)?, c));
        }
        Ok(Polynomial::from_terms(aux, terms))
    }

    /// Substitute `y_i ↦ x^{v_i}`.
    pub fn push(&self, g: &Polynomial) -> Result<Polynomial> {
        let aux = &self.presentation()?.aux;
        aux.check_same(g.ring())?;
        let mut terms = Vec::with_capacity(g.num_terms());
        for (m, c) in g.terms() {
            let mut exps = vec![0u64; self.ring.nvars()];
            for (i, &k) in m.exponents().iter().enumerate() {
                for (x, &v) in exps.iter_mut().zip(&self.semigroup.gens[i]) {
                    *x += k as u64 * v as u64;
                }
            }
            let exps = exps
                .into_iter()
                .map(|x| u32::try_from(x).map_err(|_| Error::ExponentOverflow))
                .collect::<Result<Vec<u32>>>()?;
            terms.push((Monomial::new(exps)?, c));
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// `T + (lifted generators of J)` in the presentation ring.
    pub fn aux_ideal(&self, ideal: &Ideal) -> Result<Ideal> {
        self.check_ideal_in_r(ideal)?;
        let pres = self.presentation()?;
        let lifted = ideal
            .gens()
            .iter()
            .map(|g| self.lift(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(&pres.aux, pres.toric.gens().iter().cloned().chain(lifted))?
            .with_limits(*ideal.limits()))
    }

    /// Whether `f ∈ J·R`, decided in `F_p[y]/T`.
    pub fn r_ideal_member(&self, f: &Polynomial, ideal: &Ideal) -> Result<bool> {
        self.check_in_r(f)?;
        let lifted = self.lift(f)?;
        self.aux_ideal(ideal)?.contains_poly(&lifted)
    }

    /// `inner·R ⊆ outer·R`.
    pub fn r_ideal_contains(&self, outer: &Ideal, inner: &Ideal) -> Result<bool> {
        self.check_ideal_in_r(inner)?;
        let big = self.aux_ideal(outer)?;
        for g in inner.gens() {
            if !big.contains_poly(&self.lift(g)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn r_ideal_equal(&self, a: &Ideal, b: &Ideal) -> Result<bool> {
        Ok(self.r_ideal_contains(a, b)? && self.r_ideal_contains(b, a)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ring(p: u64, vars: &[&str]) -> Ring {
        Ring::new(p, vars.iter().copied()).unwrap()
    }

    fn veronese(p: u64) -> SplitEmbedding {
        let r = ring(p, &["x", "y"]);
        build_embedding(&r, vec![vec![2, 0], vec![1, 1], vec![0, 2]], 40).unwrap()
    }

    fn poly(e: &SplitEmbedding, s: &str) -> Polynomial {
        parse_poly(s, e.ring()).unwrap()
    }

    fn ideal(e: &SplitEmbedding, gens: &[&str]) -> Ideal {
        Ideal::new(e.ring(), gens.iter().map(|g| poly(e, g))).unwrap()
    }

    #[test]
    fn purity_examples() {
        let r = ring(3, &["x"]);
        let e = build_embedding(&r, vec![vec![2]], 8).unwrap();
        assert!(e.certificate().verified);
        assert_eq!(e.semigroup().lattice().basis(), &[vec![2]]);
        assert_eq!(
            build_embedding(&r, vec![vec![2], vec![3]], 12).unwrap_err(),
            Error::NotPure { witness: vec![1] }
        );
        let r = ring(5, &["x", "y", "u", "v"]);
        let e = build_embedding(&r, vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]], 40).unwrap();
        assert!(e.certificate().verified);
    }

    #[test]
    fn box_bound_precondition() {
        let r = ring(3, &["x"]);
        assert!(matches!(
            build_embedding(&r, vec![vec![2]], 3),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn monomial_words() {
        let r = ring(2, &["x", "y", "u", "v"]);
        assert_eq!(parse_monomial_word(&r, "xu").unwrap(), vec![1, 0, 1, 0]);
        assert_eq!(parse_monomial_word(&r, "xxy").unwrap(), vec![2, 1, 0, 0]);
        assert!(parse_monomial_word(&r, "xz").is_err());
        let r = ring(2, &["x", "x1"]);
        assert_eq!(parse_monomial_word(&r, "x1x").unwrap(), vec![1, 1]);
    }

    #[test]
    fn beta_examples() {
        let e = veronese(5);
        assert_eq!(e.beta_project(&poly(&e, "x^2 + x")).unwrap(), poly(&e, "x^2"));
        let r = ring(5, &["x", "y", "z", "u"]);
        let e4 = build_embedding(
            &r,
            vec![vec![1, 1, 0, 0], vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![0, 0, 1, 1]],
            20,
        )
        .unwrap();
        let f = parse_poly("x*y*z*u", &r).unwrap();
        assert_eq!(e4.beta_project(&f).unwrap(), f);
        let g = parse_poly("x*y*z", &r).unwrap();
        assert!(e4.beta_project(&g).unwrap().is_zero());
        assert!(matches!(
            e.beta_project(&poly(&e, "x^50")),
            Err(Error::BoxExceeded { .. })
        ));
    }

    #[test]
    fn decompositions() {
        let e = veronese(3);
        assert_eq!(e.monomial_decompose(&[2, 2]).unwrap(), vec![0, 2]);
        assert_eq!(e.monomial_decompose(&[3, 1]).unwrap(), vec![0, 1]);
        assert_eq!(e.monomial_decompose(&[1, 0]).unwrap_err(), Error::NotInSemigroup(vec![1, 0]));
        let r = ring(2, &["x", "y", "u", "v"]);
        let e = build_embedding(&r, vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]], 20).unwrap();
        assert_eq!(e.monomial_decompose(&[1, 1, 1, 1]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn presentations() {
        let e = veronese(5);
        let pres = e.presentation().unwrap();
        let want = Ideal::new(&pres.aux, [parse_poly("y1*y3 - y2^2", &pres.aux).unwrap()]).unwrap();
        assert!(pres.toric.equals(&want).unwrap());
        let r = ring(5, &["x", "y", "u", "v"]);
        let e = build_embedding(&r, vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]], 20).unwrap();
        assert!(e.presentation().unwrap().toric.is_zero());
        let r = ring(5, &["x"]);
        let e = build_embedding(&r, vec![vec![2]], 8).unwrap();
        assert!(e.presentation().unwrap().toric.is_zero());
    }

    #[test]
    fn aux_names_avoid_ring_variables() {
        let r = ring(3, &["y1", "x"]);
        let e = build_embedding(&r, vec![vec![1, 0], vec![0, 2]], 12).unwrap();
        let aux = &e.presentation().unwrap().aux;
        assert_eq!(aux.vars(), ["y1_", "y2"]);
    }

    #[test]
    fn r_membership() {
        let e = veronese(3);
        assert!(e.r_ideal_member(&poly(&e, "x^2*y^2"), &ideal(&e, &["x^2", "y^2"])).unwrap());
        assert!(!e.r_ideal_member(&poly(&e, "x*y"), &ideal(&e, &["x^2"])).unwrap());
        // x*y*x*y = x^2 * y^2 but x*y is not in (x^2)R even though x^2 y^2 is
        assert!(e.r_ideal_member(&poly(&e, "x^2*y^2"), &ideal(&e, &["x^2"])).unwrap());
        let r = ring(5, &["x", "y", "u", "v"]);
        let e2 = build_embedding(&r, vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]], 20).unwrap();
        let f = parse_poly("x*u - y*v", &r).unwrap();
        assert!(e2
            .r_ideal_member(&f, &Ideal::principal(&f))
            .unwrap());
        assert!(matches!(
            e.r_ideal_member(&poly(&e, "x"), &ideal(&e, &["x^2"])),
            Err(Error::NotInSemigroup(_))
        ));
    }

    #[test]
    fn push_inverts_lift() {
        let e = veronese(7);
        let f = poly(&e, "3*x^4*y^2 + x*y - y^6");
        assert_eq!(e.push(&e.lift(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn gamma_is_identity_on_one_and_kills_off_box() {
        let e = veronese(2);
        let one = Polynomial::one(e.ring());
        assert_eq!(e.gamma(&one, 1).unwrap(), one);
        assert!(e.gamma(&poly(&e, "x*y"), 1).unwrap().is_zero());
        assert!(e.gamma(&poly(&e, "x^4*y^2"), 1).unwrap().is_zero());
        assert_eq!(e.gamma(&poly(&e, "x^4*y^4"), 1).unwrap(), poly(&e, "x^2*y^2"));
    }
}
