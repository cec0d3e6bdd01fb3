//! Brute-force reference implementations, kept algorithmically apart from the
//! main path: dense arrays instead of sparse maps and Gröbner reduction,
//! linear algebra instead of coset minima, rational elimination instead of
//! Hermite forms.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{field, Monomial, Polynomial, Ring};
use crate::summand::SplitEmbedding;

/// Largest dense array (in cells) any oracle allocates.
pub const DENSE_CELL_CAP: usize = 20_000_000;

/// Dense coefficient array over the box `prod [0, dims_i)`.
struct Dense {
    dims: Vec<usize>,
    cells: Vec<u64>,
}

impl Dense {
    fn new(dims: Vec<usize>) -> Result<Dense> {
        let size = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d));
        match size {
            Some(s) if s <= DENSE_CELL_CAP => Ok(Dense {
                dims,
                cells: vec![0; s],
            }),
            _ => Err(Error::ResourceBound(format!("dense array {dims:?} exceeds the oracle cap"))),
        }
    }

    fn index(&self, exps: &[usize]) -> Option<usize> {
        let mut idx = 0;
        for (&x, &d) in exps.iter().zip(&self.dims) {
            if x >= d {
                return None;
            }
            idx = idx * d + x;
        }
        Some(idx)
    }

    fn exponents(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for i in (0..self.dims.len()).rev() {
            out[i] = idx % self.dims[i];
            idx /= self.dims[i];
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.cells.iter().all(|&c| c == 0)
    }
}

fn in_monomial_ideal(exps: &[usize], gens: &[Vec<u64>]) -> bool {
    gens.iter().any(|g| g.iter().zip(exps).all(|(&a, &b)| a <= b as u64))
}

/// `ν^a_f(q)` by expanding `f^t` for `t = 1, 2, …`, discarding terms that
/// fall into `a^[q]`. `a` is a monomial ideal given by exponent vectors.
pub fn nu_dense(f: &Polynomial, a: &[Vec<u32>], e: u32) -> Result<u64> {
    let ring = f.ring();
    let n = ring.nvars();
    let p = ring.p();
    let q = p.checked_pow(e).ok_or(Error::ExponentOverflow)?;
    if a.is_empty() || a.iter().any(|g| g.iter().all(|&x| x == 0)) {
        return Err(Error::InvalidArgument("a must be a proper nonzero monomial ideal".into()));
    }
    let bracket: Vec<Vec<u64>> = a.iter().map(|g| g.iter().map(|&x| x as u64 * q).collect()).collect();
    // per-variable exponent ceiling from pure powers in a^[q]
    let ceiling: Vec<Option<u64>> = (0..n)
        .map(|i| {
            bracket
                .iter()
                .filter(|g| g.iter().enumerate().all(|(j, &x)| j == i || x == 0))
                .map(|g| g[i])
                .min()
        })
        .collect();
    let terms: Vec<(Vec<usize>, u64)> = f
        .terms()
        .map(|(m, c)| (m.exponents().iter().map(|&x| x as usize).collect(), c))
        .collect();
    if terms.is_empty() {
        return Err(Error::InvalidArgument("f must be nonzero".into()));
    }
    let fdeg: Vec<usize> = (0..n).map(|i| terms.iter().map(|(m, _)| m[i]).max().unwrap()).collect();

    let mut cur = Dense::new(vec![1; n])?;
    cur.cells[0] = 1;
    for t in 1u64.. {
        let dims: Vec<usize> = (0..n)
            .map(|i| {
                let grown = cur.dims[i] + fdeg[i];
                match ceiling[i] {
                    Some(c) => grown.min(c as usize),
                    None => grown,
                }
            })
            .collect();
        let mut next = Dense::new(dims)?;
        for (idx, &c) in cur.cells.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let base = cur.exponents(idx);
            for (m, fc) in &terms {
                let prod: Vec<usize> = base.iter().zip(m).map(|(a, b)| a + b).collect();
                if in_monomial_ideal(&prod, &bracket) {
                    continue;
                }
                if let Some(j) = next.index(&prod) {
                    next.cells[j] = field::add(next.cells[j], field::mul(c, *fc, p), p);
                }
            }
        }
        if next.is_zero() {
            return Ok(t - 1);
        }
        cur = next;
    }
    unreachable!()
}

/// Split every term of `h` at the base-q digit boundary, grouping by the
/// low part.
fn split_components(h: &Polynomial, q: u64) -> Vec<Polynomial> {
    let mut groups: BTreeMap<Vec<u32>, Vec<(Monomial, u64)>> = BTreeMap::new();
    for (m, c) in h.terms() {
        let low: Vec<u32> = m.exponents().iter().map(|&x| (x as u64 % q) as u32).collect();
        let high: Vec<u32> = m.exponents().iter().map(|&x| (x as u64 / q) as u32).collect();
        groups.entry(low).or_default().push((Monomial::new(high).expect("smaller"), c));
    }
    groups
        .into_values()
        .map(|ts| Polynomial::from_terms(h.ring(), ts))
        .collect()
}

/// `C^e I` from the components of `x^b g` for every generator `g` and every
/// box monomial `x^b`, inserted one at a time when not already in the
/// ideal. The result is checked against `I ⊆ b^[q]`.
pub fn eth_root_dense(ideal: &Ideal, e: u32) -> Result<Ideal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let q = ring.p().checked_pow(e).ok_or(Error::ExponentOverflow)?;
    let boxes = (q as usize)
        .checked_pow(n as u32)
        .filter(|&b| b.saturating_mul(ideal.gens().len()) <= DENSE_CELL_CAP)
        .ok_or_else(|| Error::ResourceBound("too many box shifts".into()))?;
    let mut seen: HashSet<Polynomial> = HashSet::new();
    let mut gens: Vec<Polynomial> = Vec::new();
    let mut current = Ideal::zero(ring);
    for g in ideal.gens() {
        for idx in 0..boxes {
            let mut b = vec![0u32; n];
            let mut rest = idx;
            for x in b.iter_mut() {
                *x = (rest % q as usize) as u32;
                rest /= q as usize;
            }
            let shifted = g.mul_monomial(&Monomial::new(b)?)?;
            for comp in split_components(&shifted, q) {
                let comp = comp.monic();
                if !seen.insert(comp.clone()) {
                    continue;
                }
                if !current.contains_poly(&comp)? {
                    gens.push(comp);
                    current = Ideal::new(ring, gens.iter().cloned())?;
                    if current.is_unit()? {
                        return Ok(Ideal::unit(ring));
                    }
                }
            }
        }
    }
    let bracket = Ideal::new(
        ring,
        current.gens().iter().map(|g| g.frobenius(e)).collect::<Result<Vec<_>>>()?,
    )?;
    if !bracket.contains(ideal)? {
        return Err(Error::InvalidArgument("dense e-th root failed I ⊆ b^[q]".into()));
    }
    Ok(current)
}

/// Solution space of the scalar system for one graded piece of
/// `Hom_R(F^e_* R, R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceSolution {
    pub dim: usize,
    /// Box monomials carrying an unknown scalar.
    pub support: Vec<Vec<u32>>,
    /// Basis of solutions, each giving one scalar per support monomial.
    pub basis: Vec<Vec<u64>>,
    pub box_side: u32,
}

/// Σ ∩ [0, side]^n by breadth-first closure from 0 under the generators.
fn semigroup_box(gens: &[Vec<u32>], side: u32) -> Result<HashSet<Vec<u32>>> {
    let n = gens[0].len();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue = VecDeque::from([vec![0u32; n]]);
    seen.insert(vec![0; n]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let s: Vec<u32> = m.iter().zip(g).map(|(a, b)| a + b).collect();
            if s.iter().all(|&x| x <= side) && !seen.contains(&s) {
                if seen.len() >= DENSE_CELL_CAP {
                    return Err(Error::ResourceBound("semigroup box too large".into()));
                }
                seen.insert(s.clone());
                queue.push_back(s);
            }
        }
    }
    Ok(seen)
}

/// Sparse Gaussian elimination over F_p; returns a nullspace basis.
fn nullspace(rows: Vec<BTreeMap<usize, u64>>, ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for mut row in rows {
        while let Some((&c, &v)) = row.iter().next() {
            match pivots.get(&c) {
                Some(prow) => {
                    for (&k, &pv) in prow {
                        let cur = row.get(&k).copied().unwrap_or(0);
                        let nv = field::sub(cur, field::mul(v, pv, p), p);
                        if nv == 0 {
                            row.remove(&k);
                        } else {
                            row.insert(k, nv);
                        }
                    }
                }
                None => {
                    let inv = field::inv(v, p);
                    for x in row.values_mut() {
                        *x = field::mul(*x, inv, p);
                    }
                    pivots.insert(c, row);
                    break;
                }
            }
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains_key(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0u64; ncols];
            x[f] = 1;
            // each pivot row only involves larger columns
            for (&c, row) in pivots.iter().rev() {
                let mut s = 0;
                for (&k, &v) in row.range(c + 1..) {
                    s = field::add(s, field::mul(v, x[k], p), p);
                }
                x[c] = field::neg(s, p);
            }
            x
        })
        .collect()
}

fn solve_piece(emb: &SplitEmbedding, e: u32, w: &[i64], side: u32) -> Result<PieceSolution> {
    let p = emb.ring().p();
    let q = p.checked_pow(e).ok_or(Error::ExponentOverflow)? as i64;
    let gens = emb.semigroup().gens();
    // targets are at most (side + max w)/q, far inside a box of the same side
    let sigma = semigroup_box(gens, side)?;
    let mut support: Vec<Vec<u32>> = sigma
        .iter()
        .filter(|m| m.iter().zip(w).all(|(&a, &b)| (a as i64 + b).rem_euclid(q) == 0))
        .cloned()
        .collect();
    support.sort();
    let index: HashMap<&Vec<u32>, usize> = support.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for (i, m) in support.iter().enumerate() {
        let target: Vec<i64> = m.iter().zip(w).map(|(&a, &b)| (a as i64 + b) / q).collect();
        let in_sigma = target.iter().all(|&x| x >= 0)
            && sigma.contains(&target.iter().map(|&x| x as u32).collect::<Vec<u32>>());
        if !in_sigma {
            rows.push(BTreeMap::from([(i, 1)]));
        }
        for g in gens {
            let up: Vec<u32> = m.iter().zip(g).map(|(&a, &b)| a + q as u32 * b).collect();
            if let Some(&j) = index.get(&up) {
                rows.push(BTreeMap::from([(i, 1), (j, p - 1)]));
            }
        }
    }
    let basis = nullspace(rows, support.len(), p);
    Ok(PieceSolution {
        dim: basis.len(),
        support,
        basis,
        box_side: side,
    })
}

/// Solve the graded piece of shift `w` on the box of side `side` and on the
/// doubled box; the two dimensions must agree.
pub fn cartier_piece_solver(emb: &SplitEmbedding, e: u32, w: &[i64], side: u32) -> Result<PieceSolution> {
    let small = solve_piece(emb, e, w, side)?;
    let large = solve_piece(emb, e, w, side.checked_mul(2).ok_or(Error::ExponentOverflow)?)?;
    if small.dim != large.dim {
        return Err(Error::BoxTooSmall(format!(
            "piece {w:?}: dimension {} at side {side} but {} at side {}",
            small.dim,
            large.dim,
            2 * side
        )));
    }
    Ok(large)
}

/// Ring isomorphism between a summand with linearly independent generators
/// and a polynomial ring on fresh variables.
#[derive(Clone, Debug)]
pub struct TransportIso {
    source: Ring,
    target: Ring,
    gens: Vec<Vec<u32>>,
}

/// Rank of an integer matrix by elimination over ℚ.
fn rational_rank(rows: &[Vec<u32>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let factor = &m[i][col] / &m[rank][col];
                let prow = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(&prow) {
                    *x -= &factor * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl TransportIso {
    /// Fails with [`Error::NonzeroToricIdeal`] unless the generators are
    /// linearly independent.
    pub fn new(emb: &SplitEmbedding) -> Result<TransportIso> {
        let gens = emb.semigroup().gens().to_vec();
        if rational_rank(&gens) < gens.len() {
            return Err(Error::NonzeroToricIdeal);
        }
        let source = emb.ring().clone();
        let mut names = Vec::new();
        let mut stem = b'a';
        for i in 0..gens.len() {
            let name = if gens.len() <= 26 {
                (stem as char).to_string()
            } else {
                format!("t{}", i + 1)
            };
            names.push(source.fresh_name(&name));
            stem += 1;
        }
        let target = Ring::new(source.p(), names)?;
        Ok(TransportIso { source, target, gens })
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    /// Exponents `k` with `Σ k_i v_i = m`, by solving over ℚ.
    fn solve(&self, m: &[u32]) -> Result<Vec<u32>> {
        let r = self.gens.len();
        let n = m.len();
        // augmented system  V^T k = m
        let mut rows: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..r)
                    .map(|j| BigRational::from_integer(self.gens[j][i].into()))
                    .chain([BigRational::from_integer(m[i].into())])
                    .collect()
            })
            .collect();
        let mut pivot_cols = Vec::new();
        let mut rank = 0;
        for col in 0..r {
            let Some(piv) = (rank..n).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, piv);
            let lead = rows[rank][col].clone();
            for x in rows[rank].iter_mut() {
                *x /= &lead;
            }
            for i in 0..n {
                if i != rank && !rows[i][col].is_zero() {
                    let factor = rows[i][col].clone();
                    let prow = rows[rank].clone();
                    for (x, y) in rows[i].iter_mut().zip(&prow) {
                        *x -= &factor * y;
                    }
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }
        if rows[rank..].iter().any(|row| !row[r].is_zero()) {
            return Err(Error::NotInSemigroup(m.to_vec()));
        }
        let mut k = vec![0u32; r];
        for (i, &col) in pivot_cols.iter().enumerate() {
            let v = &rows[i][r];
            if !v.is_integer() || v.is_negative() {
                return Err(Error::NotInSemigroup(m.to_vec()));
            }
            k[col] = v.to_integer().to_u32().ok_or(Error::ExponentOverflow)?;
        }
        Ok(k)
    }

    /// Element of R (in S-variables) to the polynomial ring.
    pub fn forward(&self, f: &Polynomial) -> Result<Polynomial> {
        self.source.check_same(f.ring())?;
        let terms = f
            .terms()
            .map(|(m, c)| Ok((Monomial::new(self.solve(m.exponents())?)?, c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms(&self.target, terms))
    }

    pub fn backward(&self, g: &Polynomial) -> Result<Polynomial> {
        self.target.check_same(g.ring())?;
        let n = self.source.nvars();
        let terms = g
            .terms()
            .map(|(m, c)| {
                let mut exps = vec![0u32; n];
                for (k, v) in m.exponents().iter().zip(&self.gens) {
                    for (x, &y) in exps.iter_mut().zip(v) {
                        *x = x
                            .checked_add(k.checked_mul(y).ok_or(Error::ExponentOverflow)?)
                            .ok_or(Error::ExponentOverflow)?;
                    }
                }
                Ok((Monomial::new(exps)?, c))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms(&self.source, terms))
    }

    pub fn forward_ideal(&self, ideal: &Ideal) -> Result<Ideal> {
        Ideal::new(
            &self.target,
            ideal.gens().iter().map(|g| self.forward(g)).collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn backward_ideal(&self, ideal: &Ideal) -> Result<Ideal> {
        Ideal::new(
            &self.source,
            ideal.gens().iter().map(|g| self.backward(g)).collect::<Result<Vec<_>>>()?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartier::map_family;
    use crate::poly::parse_poly;
    use crate::summand::build_embedding;

    fn ring(p: u64, vars: &[&str]) -> Ring {
        Ring::new(p, vars.iter().copied()).unwrap()
    }

    #[test]
    fn dense_nu_examples() {
        let r = ring(3, &["x"]);
        assert_eq!(nu_dense(&parse_poly("x", &r).unwrap(), &[vec![1]], 1).unwrap(), 2);
        let r = ring(7, &["x", "y"]);
        let f = parse_poly("x^2 + y^3", &r).unwrap();
        assert_eq!(nu_dense(&f, &[vec![1, 0], vec![0, 1]], 1).unwrap(), 5);
        let r = ring(2, &["x", "y"]);
        assert_eq!(nu_dense(&parse_poly("x*y", &r).unwrap(), &[vec![1, 0], vec![0, 1]], 2).unwrap(), 3);
    }

    #[test]
    fn dense_nu_without_pure_powers() {
        // a = (x) in F_3[x, y]: y-degree is unbounded but x caps the search
        let r = ring(3, &["x", "y"]);
        let f = parse_poly("x + y^2*x", &r).unwrap();
        assert_eq!(nu_dense(&f, &[vec![1, 0]], 1).unwrap(), 2);
    }

    #[test]
    fn dense_roots() {
        let r = ring(2, &["x", "y"]);
        let i = Ideal::principal(&parse_poly("x^2", &r).unwrap());
        assert!(eth_root_dense(&i, 1).unwrap().equals(&Ideal::principal(&parse_poly("x", &r).unwrap())).unwrap());
        let i = Ideal::principal(&parse_poly("x^3 + x*y^2", &r).unwrap());
        let want = Ideal::principal(&parse_poly("x + y", &r).unwrap());
        assert!(eth_root_dense(&i, 1).unwrap().equals(&want).unwrap());
        assert!(eth_root_dense(&Ideal::unit(&r), 1).unwrap().is_unit().unwrap());
    }

    #[test]
    fn pieces_of_full_semigroup() {
        let r = ring(2, &["x", "y"]);
        let emb = SplitEmbedding::identity(&r, 8).unwrap();
        for w in [[0, 0], [-1, 0], [-1, -1]] {
            assert_eq!(cartier_piece_solver(&emb, 1, &w, 16).unwrap().dim, 1);
        }
        assert_eq!(cartier_piece_solver(&emb, 1, &[-9, -9], 16).unwrap().dim, 0);
    }

    #[test]
    fn pieces_of_even_powers_match_main_path() {
        let r = ring(2, &["x"]);
        let emb = build_embedding(&r, vec![vec![2]], 8).unwrap();
        let fam = map_family(&emb, 1).unwrap();
        for w in (-12..=8).step_by(2) {
            let sol = cartier_piece_solver(&emb, 1, &[w], 48).unwrap();
            assert_eq!(sol.dim == 1, fam.is_valid(&emb, &[w]), "w = {w}");
        }
    }

    #[test]
    fn transport_round_trip() {
        let r = ring(5, &["x", "y", "u", "v"]);
        let emb = build_embedding(&r, vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]], 20).unwrap();
        let iso = TransportIso::new(&emb).unwrap();
        let f = parse_poly("x*u - y*v", &r).unwrap();
        let g = iso.forward(&f).unwrap();
        assert_eq!(g.to_string(), "a + 4*b");
        assert_eq!(iso.backward(&g).unwrap(), f);
        let xu = Ideal::principal(&parse_poly("x*u", &r).unwrap());
        assert_eq!(iso.forward_ideal(&xu).unwrap().gens()[0].to_string(), "a");
        let r2 = ring(5, &["x", "y"]);
        let ver = build_embedding(&r2, vec![vec![2, 0], vec![1, 1], vec![0, 2]], 20).unwrap();
        assert_eq!(TransportIso::new(&ver).unwrap_err(), Error::NonzeroToricIdeal);
    }
}
