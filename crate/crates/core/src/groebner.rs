//! Ideals of F_p[x_1..x_n]: reduced Gröbner bases (Buchberger), membership,
//! equality, elimination and radical membership.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::poly::{field, Monomial, MonomialOrder, Polynomial, Ring};

/// Explicit caps for basis construction. Exceeding one is an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerLimits {
    pub max_basis_size: usize,
    pub max_degree: u64,
    pub max_pairs: usize,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits {
            max_basis_size: 20_000,
            max_degree: 1 << 20,
            max_pairs: 5_000_000,
        }
    }
}

/// Monomial keyed by a runtime order, so a `BTreeMap` can act as a heap of
/// terms while reducing.
#[derive(Clone, PartialEq, Eq)]
struct Keyed {
    order: MonomialOrder,
    m: Monomial,
}

impl PartialOrd for Keyed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Keyed {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.compare(self.m.exponents(), other.m.exponents())
    }
}

/// Terms in descending order; monic when stored in a basis.
type Terms = Vec<(Monomial, u64)>;

fn sorted_terms(f: &Polynomial, order: MonomialOrder) -> Terms {
    let mut v: Terms = f.terms().map(|(m, c)| (m.clone(), c)).collect();
    v.sort_by(|a, b| order.compare(b.0.exponents(), a.0.exponents()));
    v
}

fn make_monic(t: &mut Terms, p: u64) {
    if let Some(&(_, lc)) = t.first() {
        if lc != 1 {
            let inv = field::inv(lc, p);
            for (_, c) in t.iter_mut() {
                *c = field::mul(*c, inv, p);
            }
        }
    }
}

fn sub_into(work: &mut BTreeMap<Keyed, u64>, key: Keyed, c: u64, p: u64) {
    match work.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(field::neg(c, p));
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = field::sub(*o.get(), c, p);
            if s == 0 {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Full reduction of `f` by the monic polynomials in `basis`.
fn reduce_terms(
    f: impl IntoIterator<Item = (Monomial, u64)>,
    basis: &[Terms],
    skip: Option<usize>,
    order: MonomialOrder,
    p: u64,
) -> Result<Terms> {
    let mut work: BTreeMap<Keyed, u64> = BTreeMap::new();
    for (m, c) in f {
        if c != 0 {
            sub_into(&mut work, Keyed { order, m }, field::neg(c, p), p);
        }
    }
    let mut out = Vec::new();
    while let Some((key, c)) = work.pop_last() {
        let m = key.m;
        let divisor = basis
            .iter()
            .enumerate()
            .find(|(i, g)| Some(*i) != skip && g[0].0.divides(&m));
        match divisor {
            Some((_, g)) => {
                let shift = g[0].0.quotient_of(&m);
                for (gm, gc) in &g[1..] {
                    let nm = gm.checked_mul(&shift)?;
                    sub_into(&mut work, Keyed { order, m: nm }, field::mul(c, *gc, p), p);
                }
            }
            None => out.push((m, c)),
        }
    }
    Ok(out)
}

fn s_polynomial(f: &Terms, g: &Terms, p: u64) -> Result<Vec<(Monomial, u64)>> {
    let l = f[0].0.lcm(&g[0].0);
    let sf = f[0].0.quotient_of(&l);
    let sg = g[0].0.quotient_of(&l);
    let mut out = Vec::with_capacity(f.len() + g.len());
    for (m, c) in &f[1..] {
        out.push((m.checked_mul(&sf)?, *c));
    }
    // duplicates are merged by the reduction's working map
    for (m, c) in &g[1..] {
        out.push((m.checked_mul(&sg)?, field::neg(*c, p)));
    }
    Ok(out)
}

/// Buchberger's algorithm with the product and chain criteria and the
/// normal selection strategy (smallest lcm degree, ties by pair index).
/// Returns the reduced basis sorted by ascending leading monomial.
fn buchberger(
    ring: &Ring,
    gens: &[Polynomial],
    order: MonomialOrder,
    limits: &GroebnerLimits,
) -> Result<Vec<Terms>> {
    let p = ring.p();
    let mut basis: Vec<Terms> = Vec::new();
    let mut queue: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    // returns true once the unit ideal has been detected
    let add = |r: Terms,
               basis: &mut Vec<Terms>,
               queue: &mut BTreeSet<(u64, usize, usize)>,
               pending: &mut HashSet<(usize, usize)>|
     -> Result<bool> {
        let mut r = r;
        make_monic(&mut r, p);
        if r[0].0.is_one() {
            basis.clear();
            basis.push(r);
            return Ok(true);
        }
        if basis.len() >= limits.max_basis_size {
            return Err(Error::ResourceBound(format!(
                "Gröbner basis exceeded {} elements",
                limits.max_basis_size
            )));
        }
        let deg = r.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        if deg > limits.max_degree {
            return Err(Error::ResourceBound(format!(
                "Gröbner basis element of degree {deg} exceeds cap {}",
                limits.max_degree
            )));
        }
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let d = g[0].0.lcm(&r[0].0).degree();
            queue.insert((d, i, j));
            pending.insert((i, j));
        }
        basis.push(r);
        Ok(false)
    };

    for g in gens {
        let r = reduce_terms(sorted_terms(g, order), &basis, None, order, p)?;
        if !r.is_empty() && add(r, &mut basis, &mut queue, &mut pending)? {
            return Ok(basis);
        }
    }

    let mut processed = 0usize;
    while let Some((_, i, j)) = queue.pop_first() {
        pending.remove(&(i, j));
        processed += 1;
        if processed > limits.max_pairs {
            return Err(Error::ResourceBound(format!(
                "more than {} critical pairs",
                limits.max_pairs
            )));
        }
        let (li, lj) = (&basis[i][0].0, &basis[j][0].0);
        if li.is_coprime(lj) {
            continue;
        }
        let lij = li.lcm(lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k][0].0.divides(&lij)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
                && li.lcm(&basis[k][0].0) != lij
                && lj.lcm(&basis[k][0].0) != lij
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], p)?;
        let r = reduce_terms(s, &basis, None, order, p)?;
        if !r.is_empty() && add(r, &mut basis, &mut queue, &mut pending)? {
            return Ok(basis);
        }
    }

    // minimalize: drop elements whose leading monomial is a multiple of another's
    let keep: Vec<bool> = (0..basis.len())
        .map(|i| {
            !(0..basis.len()).any(|k| {
                k != i
                    && basis[k][0].0.divides(&basis[i][0].0)
                    && (basis[k][0].0 != basis[i][0].0 || k < i)
            })
        })
        .collect();
    let minimal: Vec<Terms> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let mut r = reduce_terms(minimal[i].iter().cloned(), &minimal, Some(i), order, p)?;
        make_monic(&mut r, p);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.compare(a[0].0.exponents(), b[0].0.exponents()));
    Ok(reduced)
}

fn to_polynomial(ring: &Ring, t: &Terms) -> Polynomial {
    Polynomial::from_terms(ring, t.iter().cloned())
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
pub fn groebner_basis(
    ring: &Ring,
    gens: &[Polynomial],
    order: MonomialOrder,
    limits: &GroebnerLimits,
) -> Result<Vec<Polynomial>> {
    for g in gens {
        ring.check_same(g.ring())?;
    }
    Ok(buchberger(ring, gens, order, limits)?
        .iter()
        .map(|t| to_polynomial(ring, t))
        .collect())
}

struct CachedBasis {
    polys: Vec<Polynomial>,
    terms: Vec<Terms>,
}

/// Ideal given by generators, with a write-once cache of its reduced grevlex
/// basis.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    limits: GroebnerLimits,
    basis: OnceLock<Arc<CachedBasis>>,
}

impl Ideal {
    /// Zero generators are dropped and the rest made monic and deduplicated.
    pub fn new(ring: &Ring, gens: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in gens {
            ring.check_same(g.ring())?;
            if g.is_zero() {
                continue;
            }
            let g = g.monic();
            if seen.insert(g.clone()) {
                out.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: out,
            limits: GroebnerLimits::default(),
            basis: OnceLock::new(),
        })
    }

    pub fn principal(f: &Polynomial) -> Ideal {
        Ideal::new(f.ring(), [f.clone()]).expect("same ring")
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::principal(&Polynomial::one(ring))
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, []).expect("no generators")
    }

    pub fn with_limits(mut self, limits: GroebnerLimits) -> Ideal {
        self.limits = limits;
        self.basis = OnceLock::new();
        self
    }

    pub fn limits(&self) -> &GroebnerLimits {
        &self.limits
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    fn cached(&self) -> Result<&Arc<CachedBasis>> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let terms = buchberger(&self.ring, &self.gens, MonomialOrder::Grevlex, &self.limits)?;
        let polys = terms.iter().map(|t| to_polynomial(&self.ring, t)).collect();
        // a concurrent builder may win; both results are identical
        let _ = self.basis.set(Arc::new(CachedBasis { polys, terms }));
        Ok(self.basis.get().expect("just set"))
    }

    /// Reduced grevlex basis.
    pub fn basis(&self) -> Result<&[Polynomial]> {
        Ok(&self.cached()?.polys)
    }

    pub fn basis_in(&self, order: MonomialOrder) -> Result<Vec<Polynomial>> {
        if order == MonomialOrder::Grevlex {
            return Ok(self.basis()?.to_vec());
        }
        groebner_basis(&self.ring, &self.gens, order, &self.limits)
    }

    /// Normal form modulo the reduced grevlex basis.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(f.ring())?;
        if self.gens.is_empty() {
            return Ok(f.clone());
        }
        let b = self.cached()?;
        let r = reduce_terms(
            f.terms().map(|(m, c)| (m.clone(), c)),
            &b.terms,
            None,
            MonomialOrder::Grevlex,
            self.ring.p(),
        )?;
        Ok(Polynomial::from_terms(&self.ring, r))
    }

    pub fn contains_poly(&self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        if self.gens.iter().any(|g| g.is_unit()) {
            return Ok(true);
        }
        Ok(self.reduce(f)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        self.ring.check_same(&other.ring)?;
        for g in &other.gens {
            if !self.contains_poly(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_unit()) {
            return Ok(true);
        }
        if self.gens.is_empty() {
            return Ok(false);
        }
        let b = self.basis()?;
        Ok(b.len() == 1 && b[0].is_unit())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        Ideal::new(&self.ring, self.gens.iter().chain(&other.gens).cloned())
            .map(|i| i.with_limits(self.limits))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.ring.check_same(&other.ring)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.checked_mul(b)?);
            }
        }
        Ok(Ideal::new(&self.ring, prune_monomials(gens))?.with_limits(self.limits))
    }

    /// Generators of the k-th power: products of k generators, deduplicated,
    /// with monomial generators that are multiples of others dropped.
    pub fn power(&self, k: u64) -> Result<Ideal> {
        if k == 0 {
            return Ok(Ideal::unit(&self.ring).with_limits(self.limits));
        }
        if self.gens.len() == 1 {
            return Ok(Ideal::principal(&self.gens[0].pow(k)?).with_limits(self.limits));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Move every generator into `target`; `var_map[i]` is the image index of
    /// variable i.
    pub fn map_vars(&self, target: &Ring, var_map: &[usize]) -> Ideal {
        Ideal::new(target, self.gens.iter().map(|g| g.map_vars(target, var_map)))
            .expect("mapped into target")
            .with_limits(self.limits)
    }
}

/// Drop monomials divisible by another monomial in the list; dedup the rest.
pub(crate) fn prune_monomials(gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut seen = HashSet::new();
    let gens: Vec<Polynomial> = gens
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .filter(|g| seen.insert(g.clone()))
        .collect();
    let monos: Vec<Option<Monomial>> = gens
        .iter()
        .map(|g| g.is_monomial().then(|| g.terms().next().unwrap().0.clone()))
        .collect();
    gens.iter()
        .enumerate()
        .filter(|(i, _)| match &monos[*i] {
            None => true,
            Some(m) => !monos.iter().enumerate().any(|(k, other)| {
                k != *i
                    && other
                        .as_ref()
                        .is_some_and(|o| o.divides(m) && (o != m || k < *i))
            }),
        })
        .map(|(_, g)| g.clone())
        .collect()
}

impl fmt::Display for Ideal {
    /// Generators as given (not the basis).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Unique remainder of `f` modulo the reduced basis of `ideal` under `order`.
pub fn normal_form(f: &Polynomial, ideal: &Ideal, order: MonomialOrder) -> Result<Polynomial> {
    if order == MonomialOrder::Grevlex {
        return ideal.reduce(f);
    }
    ideal.ring().check_same(f.ring())?;
    let p = ideal.ring().p();
    let basis: Vec<Terms> = buchberger(ideal.ring(), ideal.gens(), order, ideal.limits())?;
    let r = reduce_terms(f.terms().map(|(m, c)| (m.clone(), c)), &basis, None, order, p)?;
    Ok(Polynomial::from_terms(ideal.ring(), r))
}

pub fn ideal_member(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    ideal.contains_poly(f)
}

/// `inner ⊆ outer`.
pub fn ideal_contains(outer: &Ideal, inner: &Ideal) -> Result<bool> {
    outer.contains(inner)
}

pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    a.equals(b)
}

/// `I ∩ F_p[keep]`, returned as an ideal of the ring on the kept variables
/// (in their original relative order).
pub fn eliminate(ideal: &Ideal, keep: &[&str]) -> Result<Ideal> {
    let ring = ideal.ring();
    let mut keep_idx = Vec::new();
    for name in keep {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown variable `{name}`")))?;
        keep_idx.push(i);
    }
    keep_idx.sort_unstable();
    keep_idx.dedup();
    let elim: Vec<usize> = (0..ring.nvars()).filter(|i| !keep_idx.contains(i)).collect();
    let kept_ring = Ring::new(ring.p(), keep_idx.iter().map(|&i| ring.vars()[i].clone()))?;
    if elim.is_empty() {
        return Ok(ideal.map_vars(&kept_ring, &(0..ring.nvars()).collect::<Vec<_>>()));
    }

    // elimination block first
    let order_vars: Vec<usize> = elim.iter().chain(&keep_idx).copied().collect();
    let work_ring = Ring::new(ring.p(), order_vars.iter().map(|&i| ring.vars()[i].clone()))?;
    let mut to_work = vec![0; ring.nvars()];
    for (pos, &i) in order_vars.iter().enumerate() {
        to_work[i] = pos;
    }
    let gens: Vec<Polynomial> = ideal
        .gens()
        .iter()
        .map(|g| g.map_vars(&work_ring, &to_work))
        .collect();
    let order = MonomialOrder::Block { prefix: elim.len() };
    let basis = groebner_basis(&work_ring, &gens, order, ideal.limits())?;
    let k = elim.len();
    let back: Vec<usize> = (0..work_ring.nvars())
        .map(|pos| pos.saturating_sub(k))
        .collect();
    let kept: Vec<Polynomial> = basis
        .into_iter()
        .filter(|g| g.terms().all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0)))
        .map(|g| g.map_vars(&kept_ring, &back))
        .collect();
    Ok(Ideal::new(&kept_ring, kept)?.with_limits(*ideal.limits()))
}

/// Whether some power of `f` lies in `ideal`: adjoin `t` and test whether
/// `ideal + (1 - t f)` is the unit ideal.
pub fn radical_member(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    let ring = ideal.ring();
    ring.check_same(f.ring())?;
    if f.is_zero() {
        return Ok(true);
    }
    if ideal.contains_poly(f)? {
        return Ok(true);
    }
    let t = ring.fresh_name("t");
    let ext = Ring::new(ring.p(), ring.vars().iter().cloned().chain([t]))?;
    let embed: Vec<usize> = (0..ring.nvars()).collect();
    let tvar = Polynomial::var(&ext, ring.nvars());
    let rab = &Polynomial::one(&ext) - &(&tvar * &f.map_vars(&ext, &embed));
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.map_vars(&ext, &embed))
        .chain([rab]);
    Ideal::new(&ext, gens)?.with_limits(*ideal.limits()).is_unit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ring(p: u64, vars: &[&str]) -> Ring {
        Ring::new(p, vars.iter().copied()).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_poly(g, r).unwrap())).unwrap()
    }

    fn strs(v: &[Polynomial]) -> Vec<String> {
        v.iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn lex_basis_of_linear_system() {
        let r = ring(5, &["x", "y"]);
        let b = ideal(&r, &["x + y", "y"]).basis_in(MonomialOrder::Lex).unwrap();
        assert_eq!(strs(&b), vec!["y", "x"]);
    }

    #[test]
    fn lex_basis_of_hyperbola_and_circle() {
        let r = ring(7, &["x", "y"]);
        let b = ideal(&r, &["x*y - 1", "y^2 - 1"]).basis_in(MonomialOrder::Lex).unwrap();
        assert_eq!(b.len(), 2);
        let want = ideal(&r, &["x - y", "y^2 - 1"]).gens().to_vec();
        assert_eq!(b, vec![want[1].clone(), want[0].clone()]);
    }

    #[test]
    fn empty_generators_give_zero_ideal() {
        let r = ring(3, &["x"]);
        let i = ideal(&r, &["0"]);
        assert!(i.is_zero());
        assert!(i.basis().unwrap().is_empty());
        assert!(!i.contains_poly(&Polynomial::var(&r, 0)).unwrap());
    }

    #[test]
    fn membership_examples() {
        let r = ring(5, &["x", "y"]);
        assert!(ideal(&r, &["x", "y"])
            .contains_poly(&parse_poly("x^2 + y", &r).unwrap())
            .unwrap());
        assert!(!ideal(&r, &["x^3", "y^2"])
            .contains_poly(&parse_poly("x^2*y", &r).unwrap())
            .unwrap());
        assert!(ideal(&r, &["x", "y"]).equals(&ideal(&r, &["x + y", "y"])).unwrap());
    }

    #[test]
    fn veronese_kernel_by_elimination() {
        let r = ring(5, &["x", "y", "y1", "y2", "y3"]);
        let i = ideal(&r, &["y1 - x^2", "y2 - x*y", "y3 - y^2"]);
        let k = eliminate(&i, &["y1", "y2", "y3"]).unwrap();
        assert_eq!(k.ring().vars(), ["y1", "y2", "y3"]);
        let want = ideal(k.ring(), &["y1*y3 - y2^2"]);
        assert!(k.equals(&want).unwrap());
        assert_eq!(k.gens().len(), 1);
    }

    #[test]
    fn elimination_edge_cases() {
        let r = ring(3, &["x", "y"]);
        assert!(eliminate(&ideal(&r, &["x - y"]), &["x"]).unwrap().is_zero());
        let k = eliminate(&ideal(&r, &["x"]), &["x"]).unwrap();
        assert_eq!(strs(k.gens()), vec!["x"]);
        let all = eliminate(&ideal(&r, &["x*y - 1"]), &["x", "y"]).unwrap();
        assert!(all.equals(&ideal(&r, &["x*y - 1"])).unwrap());
    }

    #[test]
    fn radical_examples() {
        let r = ring(2, &["x", "y"]);
        let x = parse_poly("x", &r).unwrap();
        assert!(radical_member(&x, &ideal(&r, &["x^3"])).unwrap());
        assert!(!radical_member(&parse_poly("y", &r).unwrap(), &ideal(&r, &["x"])).unwrap());
        assert!(radical_member(&parse_poly("x + y", &r).unwrap(), &ideal(&r, &["x^2 + y^2"])).unwrap());
    }

    #[test]
    fn unit_ideal_detected() {
        let r = ring(3, &["x", "y"]);
        assert!(ideal(&r, &["x", "x + 1"]).is_unit().unwrap());
        assert_eq!(strs(ideal(&r, &["x*y + 1", "x"]).basis().unwrap()), vec!["1"]);
    }

    #[test]
    fn resource_caps_are_errors() {
        let r = ring(7, &["x", "y", "z"]);
        let limits = GroebnerLimits {
            max_basis_size: 2,
            ..GroebnerLimits::default()
        };
        let i = ideal(&r, &["x^2 - y*z", "y^2 - x*z", "z^2 - x*y"]).with_limits(limits);
        assert!(matches!(i.basis(), Err(Error::ResourceBound(_))));
    }

    #[test]
    fn monomial_power_is_pruned() {
        let r = ring(2, &["x", "y"]);
        let sq = ideal(&r, &["x", "y"]).power(3).unwrap();
        assert_eq!(sq.gens().len(), 4);
    }
}
