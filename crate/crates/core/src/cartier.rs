//! Cartier operators on a pure affine semigroup ring R.
//!
//! Every homogeneous p^{-e}-linear map on R is a multiple of a shift map
//! `φ_w: x^m ↦ x^{(m+w)/q}` (zero unless `m + w ∈ qG`) for some `w` in the
//! group G of the semigroup. `φ_w` is well defined exactly when every
//! `m ∈ Σ` congruent to `-w` modulo `qG` satisfies `m + w ≥ 0`, which only
//! depends on the coordinatewise minimum of that congruence class.
//!
//! Valid shifts are closed under adding Σ, and `φ_{w+qs} = x^s φ_w`,
//! `φ_w(x^m ·) = φ_{w+m}`, so `C^e_R J` is generated by `φ_w(g)` for `g` among
//! the generators of `J` and `w` among the minimal valid shifts (those with
//! `w - q v_j` invalid for every generator `v_j`).

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{Monomial, Polynomial, MAX_EXPONENT};
use crate::summand::SplitEmbedding;

/// Window scales tried before giving up on stabilization.
const MAX_SCALE: i64 = 8;

/// Cap on lattice points enumerated per box.
const POINT_CAP: usize = 3_000_000;

/// The shift map `φ_w` at level e.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ToricCartierMap {
    pub e: u32,
    pub q: u64,
    pub w: Vec<i64>,
}

impl ToricCartierMap {
    /// Image of a single monomial of R, if nonzero.
    pub fn apply_monomial(&self, emb: &SplitEmbedding, m: &[u32]) -> Option<Vec<u32>> {
        let q = self.q as i64;
        let mut target = Vec::with_capacity(m.len());
        for (&a, &b) in m.iter().zip(&self.w) {
            let s = a as i64 + b;
            if s < 0 || s % q != 0 {
                return None;
            }
            target.push(s / q);
        }
        emb.semigroup()
            .contains(&target)
            .then(|| target.into_iter().map(|x| x as u32).collect())
    }

    pub fn apply(&self, emb: &SplitEmbedding, f: &Polynomial) -> Result<Polynomial> {
        emb.check_in_r(f)?;
        let terms = f.terms().filter_map(|(m, c)| {
            self.apply_monomial(emb, m.exponents())
                .map(|t| (Monomial::new(t).expect("below the source exponent"), c))
        });
        Ok(Polynomial::from_terms(emb.ring(), terms.collect::<Vec<_>>()))
    }
}

/// Coset data for level e: coordinatewise minima of each class of Σ modulo
/// qG, and the minimal valid shifts.
#[derive(Debug)]
pub struct MapFamily {
    e: u32,
    q: u64,
    minima: HashMap<Vec<i64>, Vec<i64>>,
    w_min: Vec<Vec<i64>>,
    box_side: i64,
    stable: bool,
}

impl MapFamily {
    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Side of the box `[0, L]^n` in which class minima were computed.
    pub fn box_side(&self) -> i64 {
        self.box_side
    }

    pub fn stable(&self) -> bool {
        self.stable
    }

    pub fn minimal_shifts(&self) -> &[Vec<i64>] {
        &self.w_min
    }

    pub fn generators(&self) -> Vec<ToricCartierMap> {
        self.w_min
            .iter()
            .map(|w| ToricCartierMap {
                e: self.e,
                q: self.q,
                w: w.clone(),
            })
            .collect()
    }

    /// Whether `φ_w` is a well-defined R-linear map. `w` must lie in G.
    pub fn is_valid(&self, emb: &SplitEmbedding, w: &[i64]) -> bool {
        let neg: Vec<i64> = w.iter().map(|&x| -x).collect();
        match class_key(emb, &neg, self.q as i64).and_then(|k| self.minima.get(&k)) {
            Some(min) => min.iter().zip(w).all(|(&a, &b)| a + b >= 0),
            None => false,
        }
    }
}

fn class_key(emb: &SplitEmbedding, v: &[i64], q: i64) -> Option<Vec<i64>> {
    emb.semigroup()
        .lattice()
        .coordinates(v)
        .map(|c| c.into_iter().map(|x| x.rem_euclid(q)).collect())
}

fn level_q(emb: &SplitEmbedding, e: u32) -> Result<u64> {
    if e == 0 {
        return Err(Error::InvalidArgument("level e must be at least 1".into()));
    }
    emb.ring()
        .p()
        .checked_pow(e)
        .filter(|&q| q <= MAX_EXPONENT)
        .ok_or(Error::ExponentOverflow)
}

/// Class minima over `Σ ∩ [0, side]^n` and minimal valid shifts in the
/// window `[-scale·q(M+1), scale·qM]^n`.
fn compute_family(
    emb: &SplitEmbedding,
    e: u32,
    q: u64,
    scale: i64,
) -> Result<(HashMap<Vec<i64>, Vec<i64>>, Vec<Vec<i64>>, i64)> {
    let n = emb.ring().nvars();
    let qi = q as i64;
    let m = emb.semigroup().max_coordinate() as i64;
    let side = 2 * scale * qi * (m + 1);
    let lattice = emb.semigroup().lattice();

    let mut minima: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    for pt in lattice.points_in_box(&vec![0; n], &vec![side; n], POINT_CAP)? {
        let key = class_key(emb, &pt, qi).expect("lattice point");
        minima
            .entry(key)
            .and_modify(|cur| {
                for (a, &b) in cur.iter_mut().zip(&pt) {
                    *a = (*a).min(b);
                }
            })
            .or_insert(pt);
    }

    let family = MapFamily {
        e,
        q,
        minima,
        w_min: Vec::new(),
        box_side: side,
        stable: false,
    };
    let lo = -scale * qi * (m + 1);
    let hi = scale * qi * m;
    let window = lattice.points_in_box(&vec![lo; n], &vec![hi; n], POINT_CAP)?;
    let valid: HashSet<&Vec<i64>> = window.iter().filter(|w| family.is_valid(emb, w)).collect();
    let mut w_min: Vec<Vec<i64>> = valid
        .iter()
        .filter(|w| {
            emb.semigroup().gens().iter().all(|v| {
                let shifted: Vec<i64> = w.iter().zip(v).map(|(&a, &b)| a - qi * b as i64).collect();
                if shifted.iter().all(|&x| x >= lo) {
                    !valid.contains(&shifted)
                } else {
                    !family.is_valid(emb, &shifted)
                }
            })
        })
        .map(|w| (*w).clone())
        .collect();
    w_min.sort();
    Ok((family.minima, w_min, side))
}

/// The generating shift maps at level e, computed once per embedding and
/// level. The window and class box are doubled until two consecutive
/// computations agree.
pub fn map_family(emb: &SplitEmbedding, e: u32) -> Result<Arc<MapFamily>> {
    if let Some(f) = emb.maps.lock().unwrap().get(&e) {
        return Ok(f.clone());
    }
    let q = level_q(emb, e)?;
    let (_, mut prev, _) = compute_family(emb, e, q, 1)?;
    let mut scale = 2;
    let family = loop {
        let (minima, w_min, side) = compute_family(emb, e, q, scale)?;
        if w_min == prev {
            break MapFamily {
                e,
                q,
                minima,
                w_min,
                box_side: side,
                stable: true,
            };
        }
        if scale >= MAX_SCALE {
            return Err(Error::BoxTooSmall(format!(
                "minimal Cartier shifts at level {e} did not stabilize up to window scale {scale}"
            )));
        }
        prev = w_min;
        scale *= 2;
    };
    let family = Arc::new(family);
    emb.maps.lock().unwrap().insert(e, family.clone());
    Ok(family)
}

/// All valid shift maps with every coordinate of `w` in `[lo, hi]`.
pub fn enumerate_maps(emb: &SplitEmbedding, e: u32, lo: i64, hi: i64) -> Result<Vec<ToricCartierMap>> {
    let family = map_family(emb, e)?;
    let n = emb.ring().nvars();
    let pts = emb
        .semigroup()
        .lattice()
        .points_in_box(&vec![lo; n], &vec![hi; n], POINT_CAP)?;
    let mut out: Vec<ToricCartierMap> = pts
        .into_iter()
        .filter(|w| family.is_valid(emb, w))
        .map(|w| ToricCartierMap {
            e,
            q: family.q,
            w,
        })
        .collect();
    out.sort();
    Ok(out)
}

/// `C^e_R J` with the data needed to reproduce it.
#[derive(Clone, Debug)]
pub struct CartierImage {
    pub source: Ideal,
    pub e: u32,
    pub image: Ideal,
    pub box_bound: i64,
    pub stable: bool,
    pub maps_used: usize,
}

/// Drop monomial generators that are R-multiples of other monomial generators.
pub(crate) fn prune_r_monomials(emb: &SplitEmbedding, gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut seen = HashSet::new();
    let gens: Vec<Polynomial> = gens
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .filter(|g| seen.insert(g.clone()))
        .collect();
    let monos: Vec<Option<Vec<u32>>> = gens
        .iter()
        .map(|g| g.is_monomial().then(|| g.terms().next().unwrap().0.exponents().to_vec()))
        .collect();
    let r_divides = |a: &[u32], b: &[u32]| {
        let d: Vec<i64> = a.iter().zip(b).map(|(&x, &y)| y as i64 - x as i64).collect();
        emb.semigroup().contains(&d)
    };
    gens.iter()
        .enumerate()
        .filter(|(i, _)| match &monos[*i] {
            None => true,
            Some(m) => !monos.iter().enumerate().any(|(k, o)| {
                k != *i && o.as_ref().is_some_and(|o| r_divides(o, m) && (o != m || k < *i))
            }),
        })
        .map(|(_, g)| g.clone())
        .collect()
}

pub fn cartier_image(ideal: &Ideal, emb: &SplitEmbedding, e: u32) -> Result<CartierImage> {
    emb.check_ideal_in_r(ideal)?;
    let family = map_family(emb, e)?;
    let maps = family.generators();
    let mut gens = Vec::new();
    let mut unit = false;
    'outer: for g in ideal.gens() {
        for phi in &maps {
            let h = phi.apply(emb, g)?;
            if h.is_unit() {
                unit = true;
                break 'outer;
            }
            gens.push(h);
        }
    }
    let image = if unit {
        Ideal::unit(emb.ring())
    } else {
        Ideal::new(emb.ring(), prune_r_monomials(emb, gens))?
    }
    .with_limits(*ideal.limits());
    Ok(CartierImage {
        source: ideal.clone(),
        e,
        image,
        box_bound: family.box_side,
        stable: family.stable,
        maps_used: maps.len(),
    })
}

/// Whether `C^e_R J1 = C^e_R J2` as ideals of R.
pub fn d_image_equal_r(a: &Ideal, b: &Ideal, emb: &SplitEmbedding, e: u32) -> Result<bool> {
    let ia = cartier_image(a, emb, e)?;
    let ib = cartier_image(b, emb, e)?;
    emb.r_ideal_equal(&ia.image, &ib.image)
}

/// Distinct minimal shifts as a set, for reports.
pub fn minimal_shift_set(emb: &SplitEmbedding, e: u32) -> Result<BTreeSet<Vec<i64>>> {
    Ok(map_family(emb, e)?.minimal_shifts().iter().cloned().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::{eth_root, FrobeniusContext};
    use crate::poly::{parse_poly, Ring};
    use crate::summand::build_embedding;

    fn emb(p: u64, vars: &[&str], gens: Vec<Vec<u32>>, bound: u32) -> SplitEmbedding {
        let r = Ring::new(p, vars.iter().copied()).unwrap();
        build_embedding(&r, gens, bound).unwrap()
    }

    fn veronese(p: u64) -> SplitEmbedding {
        emb(p, &["x", "y"], vec![vec![2, 0], vec![1, 1], vec![0, 2]], 40)
    }

    fn ideal(e: &SplitEmbedding, gens: &[&str]) -> Ideal {
        Ideal::new(e.ring(), gens.iter().map(|g| parse_poly(g, e.ring()).unwrap())).unwrap()
    }

    #[test]
    fn full_semigroup_recovers_standard_extractions() {
        for p in [2u64, 3] {
            let e = emb(p, &["x", "y"], vec![vec![1, 0], vec![0, 1]], 20);
            let got = minimal_shift_set(&e, 1).unwrap();
            let q = p as i64;
            let want: BTreeSet<Vec<i64>> = (0..q)
                .flat_map(|a| (0..q).map(move |b| vec![-a, -b]))
                .collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn even_powers_in_char_two() {
        let e = emb(2, &["x"], vec![vec![2]], 8);
        assert_eq!(minimal_shift_set(&e, 1).unwrap(), [vec![-2], vec![0]].into_iter().collect());
        let phi = ToricCartierMap { e: 1, q: 2, w: vec![0] };
        let x4 = parse_poly("x^4", e.ring()).unwrap();
        assert_eq!(phi.apply(&e, &x4).unwrap().to_string(), "x^2");
        let x2 = parse_poly("x^2", e.ring()).unwrap();
        assert!(phi.apply(&e, &x2).unwrap().is_zero());
    }

    #[test]
    fn unit_ideal_maps_to_unit() {
        for e in [veronese(2), veronese(3), emb(2, &["x"], vec![vec![2]], 8)] {
            for level in [1, 2] {
                let c = cartier_image(&Ideal::unit(e.ring()), &e, level).unwrap();
                assert!(c.image.is_unit().unwrap());
                assert!(c.stable);
            }
        }
    }

    #[test]
    fn veronese_image_of_x2y2() {
        let e = veronese(2);
        let j = ideal(&e, &["x^2*y^2"]);
        let c = cartier_image(&j, &e, 1).unwrap();
        assert!(e.r_ideal_equal(&c.image, &ideal(&e, &["x*y"])).unwrap());
        // β(C^1_S(JS)) ⊆ C^1_R(J)
        let ctx = FrobeniusContext::new(e.ring(), 1).unwrap();
        let s_root = eth_root(&j, &ctx).unwrap();
        for g in s_root.gens() {
            let b = e.beta_project(g).unwrap();
            assert!(e.r_ideal_member(&b, &c.image).unwrap());
        }
    }

    #[test]
    fn binomial_in_regular_summand_has_unit_image() {
        let e = emb(2, &["x", "y", "u", "v"], vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]], 20);
        let c = cartier_image(&ideal(&e, &["x*u - y*v"]), &e, 1).unwrap();
        assert!(c.image.is_unit().unwrap());
    }

    #[test]
    fn generators_outside_r_rejected() {
        let e = veronese(2);
        assert!(matches!(
            cartier_image(&ideal(&e, &["x"]), &e, 1),
            Err(Error::NotInSemigroup(_))
        ));
    }

    #[test]
    fn enumerated_maps_are_valid_and_include_generators() {
        let e = veronese(3);
        let maps = enumerate_maps(&e, 1, -9, 6).unwrap();
        let fam = map_family(&e, 1).unwrap();
        for w in fam.minimal_shifts() {
            assert!(maps.iter().any(|m| &m.w == w));
        }
        assert!(maps.iter().all(|m| fam.is_valid(&e, &m.w)));
    }
}
