//! Acceptance suite: eight criteria, each a batch of exact checks with a time
//! budget. Randomized cases come from a seeded ChaCha stream so every run of
//! a given seed is identical.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bs::{bs_threshold_check, BPolynomial, Verdict, DEFAULT_M_FLOOR};
use crate::cartier::{cartier_image, enumerate_maps, map_family};
use crate::error::Result;
use crate::finv::{cyclic_witness, jump_spectrum, nu, one, ratio, test_ideal, threshold_estimate, Ambient};
use crate::frobenius::{bracket_power, eth_root, FrobeniusContext};
use crate::groebner::Ideal;
use crate::oracle::{cartier_piece_solver, eth_root_dense, nu_dense, TransportIso};
use crate::poly::{parse_poly, Monomial, Polynomial, Ring};
use crate::summand::{build_embedding, SplitEmbedding};

pub const DEFAULT_SEED: u64 = 0x5eed_f00d;

/// Criterion ids with their names and time budgets in seconds.
pub const CRITERIA: [(u32, &str, u64); 8] = [
    (1, "frobenius kernel soundness and oracle agreement", 120),
    (2, "example golden suite", 180),
    (3, "containment of jumping candidates", 300),
    (4, "transfer lemma", 300),
    (5, "nu laws", 180),
    (6, "test ideal monotonicity", 180),
    (7, "cyclicity witness", 120),
    (8, "cartier solver cross-validation", 300),
];

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
    /// Counts showing the checks were not vacuous.
    pub notes: Vec<String>,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.elapsed <= self.budget
    }
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {}: {} checks, {} failures, {:.1}s of {}s",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.checks,
            self.failures.len(),
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )?;
        if !self.notes.is_empty() {
            write!(f, " ({})", self.notes.join(", "))?;
        }
        for msg in self.failures.iter().take(5) {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

/// Running tally of one criterion.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, msg: String) {
        self.notes.push(msg);
    }

    /// Record an error from a computation that should have succeeded.
    fn guard<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }
}

pub fn run_criterion(id: u32, seed: u64) -> Option<CriterionOutcome> {
    let &(_, name, budget) = CRITERIA.iter().find(|c| c.0 == id)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(id).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut t = Tally::default();
    let start = Instant::now();
    match id {
        1 => frobenius_kernel(&mut t, &mut rng),
        2 => example_suite(&mut t),
        3 => containment(&mut t, &mut rng),
        4 => transfer(&mut t, &mut rng),
        5 => nu_laws(&mut t, &mut rng),
        6 => tau_monotone(&mut t, &mut rng),
        7 => cyclicity(&mut t),
        8 => solver_cross_validation(&mut t),
        _ => unreachable!(),
    }
    Some(CriterionOutcome {
        id,
        name,
        checks: t.checks,
        failures: t.failures,
        notes: t.notes,
        elapsed: start.elapsed(),
        budget: Duration::from_secs(budget),
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.0, seed)).collect()
}

/// Random polynomial with up to `max_terms` terms whose exponent vectors
/// satisfy `keep`, of total degree in `1..=max_deg`.
pub fn random_polynomial(
    ring: &Ring,
    rng: &mut impl Rng,
    max_deg: u32,
    max_terms: usize,
    keep: impl Fn(&[u32]) -> bool,
) -> Polynomial {
    let n = ring.nvars();
    let p = ring.p();
    loop {
        let nterms = rng.gen_range(1..=max_terms);
        let mut terms = Vec::new();
        for _ in 0..nterms {
            let deg = rng.gen_range(1..=max_deg);
            let mut exps = vec![0u32; n];
            for _ in 0..deg {
                exps[rng.gen_range(0..n)] += 1;
            }
            if keep(&exps) {
                terms.push((Monomial::new(exps).expect("small"), rng.gen_range(1..p)));
            }
        }
        let f = Polynomial::from_terms(ring, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

fn var_names(n: usize) -> Vec<String> {
    ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
}

fn maximal_ideal(ring: &Ring) -> Ideal {
    Ideal::new(ring, (0..ring.nvars()).map(|i| Polynomial::var(ring, i))).expect("variables")
}

fn monomial_ideal(ring: &Ring, exps: &[Vec<u32>]) -> Ideal {
    Ideal::new(ring, exps.iter().map(|m| Polynomial::monomial(ring, m.clone()).expect("small"))).expect("monomials")
}

fn frobenius_kernel(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let (mut proper_roots, mut nu_total) = (0usize, 0u64);
    for p in [2u64, 3, 5] {
        for e in [1u32, 2] {
            for case in 0..100 {
                let n = rng.gen_range(1..=3);
                let ring = Ring::new(p, var_names(n)).expect("ring");
                let ngens = rng.gen_range(1..=2);
                let gens: Vec<Polynomial> = (0..ngens)
                    .map(|_| random_polynomial(&ring, rng, 6, 4, |_| true))
                    .collect();
                let label = || format!("p={p} e={e} case {case}: {gens:?}");
                let Some(ideal) = t.guard(Ideal::new(&ring, gens.clone()), label) else {
                    continue;
                };
                let ctx = FrobeniusContext::new(&ring, e).expect("context");
                let round = bracket_power(&ideal, &ctx).and_then(|b| eth_root(&b, &ctx));
                if let Some(back) = t.guard(round, label) {
                    let eq = back.equals(&ideal);
                    t.check(eq == Ok(true), || format!("root of bracket differs, {}", label()));
                }
                let main = eth_root(&ideal, &ctx);
                let dense = eth_root_dense(&ideal, e);
                if let (Some(a), Some(b)) = (t.guard(main, label), t.guard(dense, label)) {
                    proper_roots += usize::from(a.is_unit() == Ok(false));
                    t.check(a.equals(&b) == Ok(true), || format!("eth_root oracle mismatch, {}", label()));
                }
                // C(J^[q]·h) = J·C(h), with J proper so the root is too
                let jg = random_polynomial(&ring, rng, 2, 2, |_| true);
                let h = random_polynomial(&ring, rng, 6, 4, |_| true);
                let j = Ideal::principal(&jg);
                let mixed = bracket_power(&j, &ctx).and_then(|b| b.product(&Ideal::principal(&h)));
                let want = eth_root(&Ideal::principal(&h), &ctx).and_then(|c| c.product(&j));
                if let (Some(mixed), Some(want)) = (t.guard(mixed, label), t.guard(want, label)) {
                    let main = eth_root(&mixed, &ctx);
                    let dense = eth_root_dense(&mixed, e);
                    if let (Some(a), Some(b)) = (t.guard(main, label), t.guard(dense, label)) {
                        proper_roots += usize::from(a.is_unit() == Ok(false));
                        t.check(a.equals(&b) == Ok(true), || format!("oracle mismatch on ({jg})^[q]·({h})"));
                        t.check(a.equals(&want) == Ok(true), || format!("C(({jg})^[q]·({h})) ≠ ({jg})·C({h})"));
                    }
                }
                // ν against a random ideal of pure powers and one mixed monomial
                let mut a_exps: Vec<Vec<u32>> = (0..n)
                    .map(|i| {
                        let mut v = vec![0; n];
                        v[i] = rng.gen_range(1..=2);
                        v
                    })
                    .collect();
                if n > 1 {
                    a_exps.push(vec![1; n]);
                }
                let a = monomial_ideal(&ring, &a_exps);
                let f = &gens[0];
                let main = nu(&Ideal::principal(f), &a, e, Ambient::S);
                let dense = nu_dense(f, &a_exps, e);
                if let (Some(x), Some(y)) = (t.guard(main, label), t.guard(dense, label)) {
                    nu_total += y;
                    t.check(x.value == y, || format!("nu {} vs dense {y}, a={a_exps:?}, {}", x.value, label()));
                }
            }
        }
    }
    t.note(format!("{proper_roots} proper roots, ν values summing to {nu_total}"));
}

/// `R = F_p[xu, yv] ⊂ F_p[x, y, u, v]` with `f = xu - yv` and `m_R = (xu, yv)`.
pub fn example_setting(p: u64) -> Result<(SplitEmbedding, Polynomial, Ideal)> {
    let ring = Ring::new(p, ["x", "y", "u", "v"])?;
    let emb = build_embedding(&ring, vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]], 64)?;
    let f = parse_poly("x*u - y*v", &ring)?;
    let m = Ideal::new(&ring, [parse_poly("x*u", &ring)?, parse_poly("y*v", &ring)?])?;
    Ok((emb, f, m))
}

fn example_suite(t: &mut Tally) {
    let b_r = BPolynomial::parse("s+1", "example over R").expect("catalog");
    let b_s = BPolynomial::parse("(s+1)*(s+2)", "example over S").expect("catalog");
    t.check(b_r.divides(&b_s), || "(s+1) does not divide (s+1)(s+2)".into());
    for p in [2u64, 3, 5, 7] {
        let Some((emb, f, m)) = t.guard(example_setting(p), || format!("p={p} setup")) else {
            continue;
        };
        let pres = emb.presentation();
        t.check(pres.map(|pr| pr.toric.is_zero()) == Ok(true), || format!("p={p}: toric ideal not zero"));

        let fi = Ideal::principal(&f);
        let expected = vec![one()];
        let spec_r = jump_spectrum(&fi, 2, &one(), Ambient::R(&emb), false);
        let iso = TransportIso::new(&emb).and_then(|iso| {
            let g = iso.forward_ideal(&fi)?;
            jump_spectrum(&g, 2, &one(), Ambient::S, false)
        });
        if let (Some(r), Some(o)) = (
            t.guard(spec_r, || format!("p={p} R spectrum")),
            t.guard(iso, || format!("p={p} transported spectrum")),
        ) {
            t.check(r.lambdas() == expected, || format!("p={p}: R spectrum {:?}", r.lambdas()));
            t.check(r.lambdas() == o.lambdas(), || format!("p={p}: R spectrum differs from transport"));
        }

        let check = bs_threshold_check(&b_r, &f, &m, 1..=3, Ambient::R(&emb), DEFAULT_M_FLOOR);
        if let Some(rep) = t.guard(check, || format!("p={p} bs-check R")) {
            t.check(rep.verdict() == Verdict::Pass, || format!("p={p}: bs-check R gave {:?}", rep.entries));
        }
        if p >= 3 {
            let ms = maximal_ideal(f.ring());
            let check = bs_threshold_check(&b_s, &f, &ms, 1..=2, Ambient::S, DEFAULT_M_FLOOR);
            if let Some(rep) = t.guard(check, || format!("p={p} bs-check S")) {
                t.check(rep.verdict() == Verdict::Pass, || format!("p={p}: bs-check S gave {:?}", rep.entries));
            }
        }
    }
}

/// `F_p[x², xy, y²] ⊂ F_p[x, y]`.
pub fn veronese(p: u64) -> Result<SplitEmbedding> {
    let ring = Ring::new(p, ["x", "y"])?;
    build_embedding(&ring, vec![vec![2, 0], vec![1, 1], vec![0, 2]], 64)
}

fn random_veronese_monomial_ideal(ring: &Ring, rng: &mut ChaCha8Rng) -> Ideal {
    let k = rng.gen_range(1..=3);
    let exps: Vec<Vec<u32>> = (0..k)
        .map(|_| {
            let deg = 2 * rng.gen_range(1..=2);
            let i = rng.gen_range(0..=deg);
            vec![i, deg - i]
        })
        .collect();
    monomial_ideal(ring, &exps)
}

fn containment(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let (mut r_total, mut s_total) = (0usize, 0usize);
    for p in [2u64, 3] {
        let Some(emb) = t.guard(veronese(p), || format!("p={p} veronese")) else {
            continue;
        };
        let ring = emb.ring().clone();
        let mut ideals = vec![Ideal::principal(&parse_poly("x^2 + y^2", &ring).expect("f"))];
        ideals.extend((0..5).map(|_| random_veronese_monomial_ideal(&ring, rng)));
        for ideal in &ideals {
            for e in [1u32, 2] {
                let label = || format!("p={p} e={e} I={:?}", ideal.gens());
                let r = jump_spectrum(ideal, e, &one(), Ambient::R(&emb), false);
                let s = jump_spectrum(ideal, e, &one(), Ambient::S, false);
                if let (Some(r), Some(s)) = (t.guard(r, label), t.guard(s, label)) {
                    let rs: BTreeSet<BigRational> = r.lambdas().into_iter().collect();
                    let ss: BTreeSet<BigRational> = s.lambdas().into_iter().collect();
                    r_total += rs.len();
                    s_total += ss.len();
                    t.check(rs.is_subset(&ss), || format!("R {rs:?} ⊄ S {ss:?}, {}", label()));
                }
            }
        }
    }
    t.note(format!("{r_total} R-candidates, {s_total} S-candidates"));
}

fn transfer(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let (mut pairs, mut premises) = (0usize, 0usize);
    for p in [2u64, 3] {
        let Some(emb) = t.guard(veronese(p), || format!("p={p} veronese")) else {
            continue;
        };
        let ring = emb.ring().clone();
        let ctx = FrobeniusContext::new(&ring, 1).expect("context");
        for case in 0..50 {
            let ideal = random_veronese_monomial_ideal(&ring, rng);
            let label = || format!("p={p} case {case} I={:?}", ideal.gens());
            let mut s_roots = Vec::new();
            let mut r_images = Vec::new();
            for k in 1..=4u64 {
                let pw = ideal.power(k);
                let s = pw.clone().and_then(|pw| eth_root(&pw, &ctx));
                let r = pw.and_then(|pw| cartier_image(&pw, &emb, 1)).map(|c| c.image);
                s_roots.push(t.guard(s, label));
                r_images.push(t.guard(r, label));
            }
            for i in 0..4 {
                for j in i + 1..4 {
                    let (Some(si), Some(sj), Some(ri), Some(rj)) = (&s_roots[i], &s_roots[j], &r_images[i], &r_images[j])
                    else {
                        continue;
                    };
                    pairs += 1;
                    if si.equals(sj) == Ok(true) {
                        premises += 1;
                        let eq = emb.r_ideal_equal(ri, rj);
                        t.check(eq == Ok(true), || format!("r={} t={}: R images differ, {}", i + 1, j + 1, label()));
                    }
                }
            }
        }
    }
    t.note(format!("premise held for {premises} of {pairs} pairs"));
}

fn bracket_in(a: &Ideal, e: u32) -> Result<Ideal> {
    Ideal::new(a.ring(), a.gens().iter().map(|g| g.frobenius(e)).collect::<Result<Vec<_>>>()?)
}

/// `f^ν ∉ a^[q]` and `f^{ν+1} ∈ a^[q]`, in S or in R.
fn nu_bounds_hold(f: &Polynomial, a: &Ideal, e: u32, v: u64, emb: Option<&SplitEmbedding>) -> Result<bool> {
    let br = bracket_in(a, e)?;
    let below = f.pow(v)?;
    let above = f.pow(v + 1)?;
    Ok(match emb {
        None => !br.contains_poly(&below)? && br.contains_poly(&above)?,
        Some(emb) => !emb.r_ideal_member(&below, &br)? && emb.r_ideal_member(&above, &br)?,
    })
}

fn nu_laws(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let nu_case = |t: &mut Tally, f: &Polynomial, a: &Ideal, emb: Option<&SplitEmbedding>, e_max: u32| {
        let label = || format!("p={} f={f} a={:?} R={}", f.ring().p(), a.gens(), emb.is_some());
        let j = Ideal::principal(f);
        let ambient = emb.map_or(Ambient::S, Ambient::R);
        let Some(est) = t.guard(threshold_estimate(&j, a, e_max, ambient), label) else {
            return;
        };
        t.check(est.monotone, || format!("ν(p^(e+1)) < p·ν(p^e), {}", label()));
        for lv in &est.levels {
            let ok = nu_bounds_hold(f, a, lv.e, lv.value, emb);
            t.check(ok == Ok(true), || format!("bounds fail at e={} ν={}, {}", lv.e, lv.value, label()));
            if emb.is_some() {
                // IS ∩ R = I for a summand, so the S computation must agree
                let s = nu(&j, a, lv.e, Ambient::S).map(|r| r.value);
                t.check(s == Ok(lv.value), || format!("S gives {s:?} vs R {} at e={}, {}", lv.value, lv.e, label()));
            }
        }
    };

    for p in [2u64, 3, 5, 7] {
        if let Some((emb, f, m)) = t.guard(example_setting(p), || format!("p={p} example")) {
            nu_case(t, &f, &m, Some(&emb), 2);
        }
        let ring = Ring::new(p, ["x", "y"]).expect("ring");
        let m = maximal_ideal(&ring);
        for src in ["x", "x^2 + y^3", "x*y"] {
            nu_case(t, &parse_poly(src, &ring).expect("golden"), &m, None, 2);
        }
    }
    for p in [2u64, 3] {
        let Some(emb) = t.guard(veronese(p), || format!("p={p} veronese")) else {
            continue;
        };
        let ring = emb.ring().clone();
        let m = monomial_ideal(&ring, &[vec![2, 0], vec![1, 1], vec![0, 2]]);
        nu_case(t, &parse_poly("x^2 + y^2", &ring).expect("golden"), &m, Some(&emb), 2);
        for _ in 0..25 {
            let f = random_polynomial(&ring, rng, 4, 3, |m| (m[0] + m[1]) % 2 == 0);
            nu_case(t, &f, &m, Some(&emb), 2);
        }
    }
}

fn tau_monotone(t: &mut Tally, rng: &mut ChaCha8Rng) {
    let mut proper = 0usize;
    for p in [2u64, 3] {
        let ring = Ring::new(p, ["x", "y"]).expect("ring");
        let q2 = p * p;
        for case in 0..10 {
            let g = random_polynomial(&ring, rng, 3, 3, |_| true);
            let h = random_polynomial(&ring, rng, 2, 2, |_| true);
            let f = g.checked_mul(&h).expect("same ring");
            let (fi, gi) = (Ideal::principal(&f), Ideal::principal(&g));
            let label = || format!("p={p} case {case} f={f} g={g}");
            let mut prev: Option<Ideal> = None;
            for a in 1..=q2 {
                let lambda = ratio(a, q2);
                let tf = test_ideal(&fi, &lambda, 3, Ambient::S).map(|r| r.tau);
                let tg = test_ideal(&gi, &lambda, 3, Ambient::S).map(|r| r.tau);
                let (Some(tf), Some(tg)) = (t.guard(tf, label), t.guard(tg, label)) else {
                    prev = None;
                    continue;
                };
                proper += usize::from(tf.is_unit() == Ok(false));
                t.check(tg.contains(&tf) == Ok(true), || format!("τ((f)^{lambda}) ⊄ τ((g)^{lambda}), {}", label()));
                if let Some(pr) = &prev {
                    t.check(pr.contains(&tf) == Ok(true), || format!("τ not decreasing at {lambda}, {}", label()));
                }
                prev = Some(tf);
            }
        }
    }
    t.note(format!("{proper} proper test ideals"));
}

fn cyclicity(t: &mut Tally) {
    for p in [2u64, 5] {
        let ring = Ring::new(p, ["x", "y"]).expect("ring");
        for src in ["x", "x^2 + y^3"] {
            let f = parse_poly(src, &ring).expect("golden");
            let w = cyclic_witness(&f, 1, 3, Ambient::S);
            if let Some(w) = t.guard(w, || format!("p={p} f={src}")) {
                t.check(w.verified(), || format!("p={p} f={src}: no witness up to e'=3"));
            }
        }
        if let Some((emb, f, _)) = t.guard(example_setting(p), || format!("p={p} example")) {
            let w = cyclic_witness(&f, 1, 3, Ambient::R(&emb));
            if let Some(w) = t.guard(w, || format!("p={p} f=xu-yv")) {
                t.check(w.verified(), || format!("p={p} f=xu-yv: no witness up to e'=3"));
            }
        }
    }
}

fn solver_cross_validation(t: &mut Tally) {
    let (mut shifts, mut valid) = (0usize, 0usize);
    for p in [2u64, 3] {
        let xy = Ring::new(p, ["x", "y"]).expect("ring");
        let x = Ring::new(p, ["x"]).expect("ring");
        let cases: Vec<(&str, Result<SplitEmbedding>)> = vec![
            ("S", SplitEmbedding::identity(&xy, 64)),
            ("F_p[x^2]", build_embedding(&x, vec![vec![2]], 64)),
            ("veronese", veronese(p)),
            ("F_p[xu,yv]", example_setting(p).map(|s| s.0)),
        ];
        for (name, emb) in cases {
            let label = || format!("p={p} R={name}");
            let Some(emb) = t.guard(emb, label) else { continue };
            let Some(family) = t.guard(map_family(&emb, 1), label) else {
                continue;
            };
            t.check(family.stable(), || format!("map family unstable, {}", label()));
            let q = p as i64;
            let m = emb.semigroup().max_coordinate() as i64;
            let (lo, hi) = (-2 * q * (m + 1), q * m);
            let side = (2 * q * (m + 1)) as u32;
            let Some(main) = t.guard(enumerate_maps(&emb, 1, lo, hi), label) else {
                continue;
            };
            let main: BTreeSet<Vec<i64>> = main.into_iter().map(|phi| phi.w).collect();
            let n = emb.ring().nvars();
            let window = emb
                .semigroup()
                .lattice()
                .points_in_box(&vec![lo; n], &vec![hi; n], 1_000_000);
            let Some(window) = t.guard(window, label) else { continue };
            let mut solved = BTreeSet::new();
            shifts += window.len();
            valid += main.len();
            for w in &window {
                let Some(sol) = t.guard(cartier_piece_solver(&emb, 1, w, side), || format!("w={w:?}, {}", label()))
                else {
                    continue;
                };
                t.check(sol.dim <= 1, || format!("w={w:?}: dimension {}, {}", sol.dim, label()));
                if sol.dim == 1 {
                    solved.insert(w.clone());
                    let phi = crate::cartier::ToricCartierMap { e: 1, q: p, w: w.clone() };
                    let basis = &sol.basis[0];
                    let scale = basis.iter().copied().find(|&c| c != 0).unwrap_or(0);
                    let agree = sol.support.iter().zip(basis).all(|(mono, &c)| {
                        let acts = phi.apply_monomial(&emb, mono).is_some();
                        (c == scale) == acts && (c == 0) != acts
                    });
                    t.check(agree, || format!("w={w:?}: action differs from the shift map, {}", label()));
                }
            }
            t.check(main == solved, || {
                let extra: Vec<_> = main.symmetric_difference(&solved).take(5).collect();
                format!("maps differ at {extra:?}, {}", label())
            });
        }
    }
    t.note(format!("{valid} valid maps among {shifts} shifts"));
}
