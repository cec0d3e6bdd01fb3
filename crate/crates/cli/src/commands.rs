//! One function per subcommand, each building a [`Report`].

use std::ops::RangeInclusive;
use std::str::FromStr;

use num_rational::BigRational;
use serde_json::{json, Value};

use fsummand::acceptance::run_criterion;
use fsummand::bs::{bs_jump_check, bs_threshold_check, catalog_entry, BCheckReport, BPolynomial, Verdict};
use fsummand::cartier::{cartier_image, map_family, minimal_shift_set};
use fsummand::finv::{
    cyclic_witness, fpt_truncation, jump_spectrum, nu, summand_filter, test_ideal, Ambient, JumpSpectrum,
};
use fsummand::frobenius::{eth_root, FrobeniusContext};
use fsummand::oracle::{cartier_piece_solver, eth_root_dense, nu_dense, TransportIso};
use fsummand::summand::SplitEmbedding;
use fsummand::{Error, Ideal, Polynomial};

use crate::report::{gens, rat, Report, Status};
use crate::session::Session;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    BigRational::from_str(s.trim()).map_err(|_| invalid(format!("bad rational `{s}`")))
}

/// `a..b` (inclusive) or a single value.
pub fn parse_range<T: FromStr + Copy + PartialOrd>(s: &str) -> Result<RangeInclusive<T>, Error> {
    let bad = || invalid(format!("bad range `{s}`"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn embedding_of(ambient: Ambient<'_>) -> Option<&SplitEmbedding> {
    match ambient {
        Ambient::R(emb) => Some(emb),
        Ambient::S => None,
    }
}

fn embedding_certificate(ambient: Ambient) -> Value {
    match embedding_of(ambient) {
        Some(emb) => {
            let c = emb.certificate();
            json!({"purity_box": c.bound, "purity_verified": c.verified, "points_checked": c.points_checked})
        }
        None => Value::Null,
    }
}

fn monomial_exponents(ideal: &Ideal) -> Option<Vec<Vec<u32>>> {
    ideal
        .gens()
        .iter()
        .map(|g| g.is_monomial().then(|| g.terms().next().unwrap().0.exponents().to_vec()))
        .collect()
}

/// ν from the dense oracle, in S directly or in R through the transport
/// isomorphism. `None` when the oracle does not apply.
fn nu_by_oracle(j: &Ideal, a: &Ideal, e: u32, ambient: Ambient) -> Option<u64> {
    if j.gens().len() != 1 {
        return None;
    }
    let (f, a) = match ambient {
        Ambient::S => (j.gens()[0].clone(), a.clone()),
        Ambient::R(emb) => {
            let iso = TransportIso::new(emb).ok()?;
            (iso.forward(&j.gens()[0]).ok()?, iso.forward_ideal(a).ok()?)
        }
    };
    nu_dense(&f, &monomial_exponents(&a)?, e).ok()
}

fn oracle_flags(main: u64, oracle: Option<u64>) -> (Value, Status) {
    match oracle {
        None => (json!({"checked": false, "agrees": null}), Status::Ok),
        Some(v) => {
            let ok = v == main;
            let status = if ok { Status::Ok } else { Status::Violation };
            (json!({"checked": true, "agrees": ok, "value": v}), status)
        }
    }
}

pub fn cmd_nu(s: &Session, ambient: Ambient, ideal: &str, wrt: &str, e: u32) -> Result<Report, Error> {
    let mut rep = Report::new(
        "nu",
        json!({"ideal": ideal, "wrt": wrt, "e": e, "p": s.ring.p(), "ambient": ambient.tag()}),
    );
    let j = s.ideal(ideal, ambient)?;
    let a = s.ideal(wrt, ambient)?;
    let res = nu(&j, &a, e, ambient)?;
    let (oracle, status) = oracle_flags(res.value, nu_by_oracle(&j, &a, e, ambient));
    rep.result = json!({"value": res.value, "ratio": rat(&res.ratio), "q": res.q});
    rep.certificates = json!({
        "rechecked": res.rechecked,
        "oracle": oracle,
        "embedding": embedding_certificate(ambient),
    });
    rep.status = status;
    Ok(rep)
}

pub fn cmd_fpt(s: &Session, ambient: Ambient, f: &str, wrt: &str, e: u32) -> Result<Report, Error> {
    let mut rep = Report::new(
        "fpt",
        json!({"f": f, "wrt": wrt, "e": e, "p": s.ring.p(), "ambient": ambient.tag()}),
    );
    let poly = s.poly(f)?;
    let m = s.ideal(wrt, ambient)?;
    let est = fpt_truncation(&poly, &m, e, ambient)?;
    let levels: Vec<Value> = est
        .levels
        .iter()
        .map(|l| json!({"e": l.e, "nu": l.value, "ratio": rat(&l.ratio)}))
        .collect();
    let last = est.levels.last().expect("e ≥ 1");
    rep.result = json!({"estimate": rat(&last.ratio), "levels": levels});
    rep.certificates = json!({
        "monotone": est.monotone,
        "rechecked": est.levels.iter().all(|l| l.rechecked),
        "embedding": embedding_certificate(ambient),
    });
    if !est.monotone {
        rep.status = Status::Violation;
    }
    Ok(rep)
}

pub fn cmd_tau(s: &Session, ambient: Ambient, ideal: &str, lambda: &str, e_max: u32) -> Result<Report, Error> {
    let mut rep = Report::new(
        "tau",
        json!({"ideal": ideal, "lambda": lambda, "e_max": e_max, "p": s.ring.p(), "ambient": ambient.tag()}),
    );
    let i = s.ideal(ideal, ambient)?;
    let lam = parse_rational(lambda)?;
    let res = test_ideal(&i, &lam, e_max, ambient)?;
    let chain: Vec<Value> = res
        .chain
        .iter()
        .map(|l| json!({"e": l.e, "exponent": l.exponent, "gens": gens(&l.ideal)}))
        .collect();
    rep.result = json!({"lambda": rat(&res.lambda), "tau": gens(&res.tau), "chain": chain});
    rep.certificates = json!({
        "stabilized_at": res.stabilized_at,
        "ascending": res.ascending,
        "embedding": embedding_certificate(ambient),
    });
    rep.status = if !res.ascending {
        Status::Violation
    } else if !res.is_conclusive() {
        Status::Inconclusive
    } else {
        Status::Ok
    };
    Ok(rep)
}

fn spectrum_json(sp: &JumpSpectrum) -> Value {
    json!({
        "lambdas": sp.lambdas().iter().map(rat).collect::<Vec<_>>(),
        "exponents": sp.exponents(),
        "q": sp.q,
    })
}

pub fn cmd_jumps(
    s: &Session,
    ambient: Ambient,
    ideal: &str,
    e: u32,
    upper: &str,
    refine: bool,
) -> Result<Report, Error> {
    let mut rep = Report::new(
        "jumps",
        json!({"ideal": ideal, "e": e, "upper": upper, "refine": refine, "p": s.ring.p(), "ambient": ambient.tag()}),
    );
    let i = s.ideal(ideal, ambient)?;
    let sp = jump_spectrum(&i, e, &parse_rational(upper)?, ambient, refine)?;
    rep.result = spectrum_json(&sp);
    let refinement = sp.refinement.as_ref().map(|r| {
        r.iter()
            .map(|x| json!({"lambda": rat(&x.lambda), "consistent": x.consistent}))
            .collect::<Vec<_>>()
    });
    if refinement.as_ref().is_some_and(|r| r.iter().any(|x| x["consistent"] == false)) {
        rep.status = Status::Inconclusive;
    }
    rep.certificates = json!({"refinement": refinement, "embedding": embedding_certificate(ambient)});
    Ok(rep)
}

pub fn cmd_summand(s: &Session, ideal: &str, e: u32, upper: &str) -> Result<Report, Error> {
    let mut rep = Report::new("summand", json!({"ideal": ideal, "e": e, "upper": upper, "p": s.ring.p()}));
    let emb = s
        .embedding
        .as_ref()
        .ok_or_else(|| invalid("summand needs a `subring` line in the session"))?;
    let ambient = Ambient::R(emb);
    let i = s.ideal(ideal, ambient)?;
    let upper = parse_rational(upper)?;
    let s_spec = jump_spectrum(&i, e, &upper, Ambient::S, false)?;
    let filter = summand_filter(&i, emb, &s_spec)?;
    let survivors: Vec<String> = filter.iter().filter(|f| f.survives).map(|f| rat(&f.lambda)).collect();
    let direct = jump_spectrum(&i, e, &upper, ambient, false)?;
    let direct: Vec<String> = direct.lambdas().iter().map(rat).collect();
    let agrees = direct == survivors;
    rep.result = json!({
        "s_candidates": spectrum_json(&s_spec),
        "filter": filter.iter().map(|f| json!({"lambda": rat(&f.lambda), "a": f.a, "survives": f.survives})).collect::<Vec<_>>(),
        "r_candidates": survivors,
    });
    rep.certificates = json!({
        "direct_r_candidates": direct,
        "agrees_with_direct": agrees,
        "embedding": embedding_certificate(ambient),
    });
    if !agrees {
        rep.status = Status::Violation;
    }
    Ok(rep)
}

pub fn cmd_cyclic(s: &Session, ambient: Ambient, f: &str, e: u32, e_max: u32) -> Result<Report, Error> {
    let mut rep = Report::new(
        "cyclic",
        json!({"f": f, "e": e, "e_max": e_max, "p": s.ring.p(), "ambient": ambient.tag()}),
    );
    let w = cyclic_witness(&s.poly(f)?, e, e_max, ambient)?;
    rep.result = json!({
        "verified": w.verified(),
        "level": w.level,
        "attempts": w.attempts.iter().map(|(l, ok)| json!({"e": l, "holds": ok})).collect::<Vec<_>>(),
    });
    rep.certificates = json!({"embedding": embedding_certificate(ambient)});
    if !w.verified() {
        rep.status = Status::Inconclusive;
    }
    Ok(rep)
}

pub fn cmd_cartier(s: &Session, ambient: Ambient, ideal: &str, e: u32) -> Result<Report, Error> {
    let mut rep = Report::new(
        "cartier",
        json!({"ideal": ideal, "e": e, "p": s.ring.p(), "ambient": ambient.tag()}),
    );
    let i = s.ideal(ideal, ambient)?;
    match ambient {
        Ambient::S => {
            let root = eth_root(&i, &FrobeniusContext::new(&s.ring, e)?)?;
            rep.result = json!({"image": gens(&root)});
            rep.certificates = json!({"embedding": Value::Null});
        }
        Ambient::R(emb) => {
            let img = cartier_image(&i, emb, e)?;
            let shifts: Vec<Vec<i64>> = minimal_shift_set(emb, e)?.into_iter().collect();
            rep.result = json!({"image": gens(&img.image), "minimal_shifts": shifts});
            rep.certificates = json!({
                "class_box": img.box_bound,
                "stable": img.stable,
                "maps_used": img.maps_used,
                "embedding": embedding_certificate(ambient),
            });
        }
    }
    Ok(rep)
}

fn b_from(b: Option<&str>, catalog: Option<&str>) -> Result<BPolynomial, Error> {
    match (b, catalog) {
        (Some(src), None) => BPolynomial::parse(src, "command line"),
        (None, Some(key)) => catalog_entry(key).ok_or_else(|| invalid(format!("no catalog entry `{key}`"))),
        _ => Err(invalid("give exactly one of --b and --catalog")),
    }
}

fn verdict_status(v: Verdict) -> Status {
    match v {
        Verdict::Pass => Status::Ok,
        Verdict::InconclusiveSmallP => Status::Inconclusive,
        Verdict::Fail => Status::Violation,
    }
}

pub struct BsArgs<'a> {
    pub b: Option<&'a str>,
    pub catalog: Option<&'a str>,
    pub f: &'a str,
    pub wrt: &'a str,
    pub e: &'a str,
    pub jumps: Option<&'a str>,
    pub m_floor: u64,
}

pub fn cmd_bs_check(s: &Session, ambient: Ambient, args: &BsArgs) -> Result<Report, Error> {
    let mut rep = Report::new(
        "bs-check",
        json!({
            "b": args.b, "catalog": args.catalog, "f": args.f, "wrt": args.wrt, "e": args.e,
            "jumps": args.jumps, "m_floor": args.m_floor, "p": s.ring.p(), "ambient": ambient.tag(),
        }),
    );
    let b = b_from(args.b, args.catalog)?;
    let f = s.poly(args.f)?;
    let e_range = parse_range::<u32>(args.e)?;
    let reports: Vec<BCheckReport> = match args.jumps {
        None => vec![bs_threshold_check(&b, &f, &s.ideal(args.wrt, ambient)?, e_range, ambient, args.m_floor)?],
        Some(r) => {
            let nus = parse_range::<u64>(r)?;
            e_range
                .map(|e| bs_jump_check(&b, &f, e, nus.clone(), ambient, args.m_floor))
                .collect::<Result<_, _>>()?
        }
    };
    let entries: Vec<Value> = reports
        .iter()
        .flat_map(|r| &r.entries)
        .map(|x| json!({"e": x.e, "nu": x.nu, "residue": x.residue, "verdict": x.verdict.name()}))
        .collect();
    let status = reports
        .iter()
        .fold(Status::Ok, |acc, r| acc.and(verdict_status(r.verdict())));
    let verdict = match status {
        Status::Ok => Verdict::Pass,
        Status::Inconclusive => Verdict::InconclusiveSmallP,
        Status::Violation => Verdict::Fail,
    };
    rep.result = json!({"b": b.to_string(), "entries": entries, "verdict": verdict.name()});
    rep.certificates = json!({"provenance": b.provenance, "embedding": embedding_certificate(ambient)});
    rep.status = status;
    Ok(rep)
}

pub fn cmd_oracle_nu(s: &Session, ambient: Ambient, f: &str, wrt: &str, e: u32) -> Result<Report, Error> {
    let mut rep = Report::new(
        "oracle nu",
        json!({"f": f, "wrt": wrt, "e": e, "p": s.ring.p(), "ambient": ambient.tag()}),
    );
    let j = Ideal::principal(&s.poly(f)?);
    let a = s.ideal(wrt, ambient)?;
    let value = nu_by_oracle(&j, &a, e, ambient)
        .ok_or_else(|| invalid("the dense oracle needs a monomial `wrt` ideal, and in R a zero toric ideal"))?;
    let main = nu(&j, &a, e, ambient)?;
    let q = main.q;
    rep.result = json!({"value": value, "ratio": rat(&BigRational::new(value.into(), q.into())), "q": q});
    rep.certificates = json!({"main_value": main.value, "agrees": main.value == value});
    if main.value != value {
        rep.status = Status::Violation;
    }
    Ok(rep)
}

pub fn cmd_oracle_root(s: &Session, ideal: &str, e: u32) -> Result<Report, Error> {
    let mut rep = Report::new("oracle root", json!({"ideal": ideal, "e": e, "p": s.ring.p()}));
    let i = s.ideal(ideal, Ambient::S)?;
    let dense = eth_root_dense(&i, e)?;
    let main = eth_root(&i, &FrobeniusContext::new(&s.ring, e)?)?;
    let agrees = dense.equals(&main)?;
    rep.result = json!({"root": gens(&dense)});
    rep.certificates = json!({"agrees": agrees});
    if !agrees {
        rep.status = Status::Violation;
    }
    Ok(rep)
}

pub fn cmd_oracle_piece(s: &Session, e: u32, w: &str, side: Option<u32>) -> Result<Report, Error> {
    let emb = s
        .embedding
        .as_ref()
        .ok_or_else(|| invalid("oracle piece needs a `subring` line in the session"))?;
    let w: Vec<i64> = w
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| invalid(format!("bad shift `{x}`"))))
        .collect::<Result<_, _>>()?;
    if w.len() != s.ring.nvars() {
        return Err(invalid(format!("shift needs {} coordinates", s.ring.nvars())));
    }
    if !emb.semigroup().lattice().contains(&w) {
        return Err(invalid("shift is not in the group generated by the subring"));
    }
    let q = s.ring.p().checked_pow(e).ok_or(Error::ExponentOverflow)?;
    let m = emb.semigroup().max_coordinate() as u64;
    let side = match side {
        Some(x) => x,
        None => u32::try_from(2 * q * (m + 1)).map_err(|_| Error::ExponentOverflow)?,
    };
    let mut rep = Report::new("oracle piece", json!({"e": e, "w": w, "side": side, "p": s.ring.p()}));
    let sol = cartier_piece_solver(emb, e, &w, side)?;
    let valid = map_family(emb, e)?.is_valid(emb, &w);
    let agrees = (sol.dim == 1) == valid && sol.dim <= 1;
    rep.result = json!({"dimension": sol.dim, "unknowns": sol.support.len()});
    rep.certificates = json!({"box_side": sol.box_side, "main_valid": valid, "agrees": agrees});
    if !agrees {
        rep.status = Status::Violation;
    }
    Ok(rep)
}

pub fn cmd_oracle_transport(s: &Session, poly: Option<&str>, ideal: Option<&str>) -> Result<Report, Error> {
    let emb = s
        .embedding
        .as_ref()
        .ok_or_else(|| invalid("oracle transport needs a `subring` line in the session"))?;
    let iso = TransportIso::new(emb)?;
    let mut rep = Report::new("oracle transport", json!({"poly": poly, "ideal": ideal, "p": s.ring.p()}));
    let vars = iso.target().vars().to_vec();
    let (image, round_trip) = match (poly, ideal) {
        (Some(name), None) => {
            let f = s.poly(name)?;
            let g = iso.forward(&f)?;
            let back: Polynomial = iso.backward(&g)?;
            (Value::String(g.to_string()), back == f)
        }
        (None, Some(name)) => {
            let i = s.ideal(name, Ambient::R(emb))?;
            let g = iso.forward_ideal(&i)?;
            let back = iso.backward_ideal(&g)?;
            (gens(&g), emb.r_ideal_equal(&back, &i)?)
        }
        _ => return Err(invalid("give exactly one of --poly and --ideal")),
    };
    rep.result = json!({"variables": vars, "image": image});
    rep.certificates = json!({"round_trip": round_trip});
    if !round_trip {
        rep.status = Status::Violation;
    }
    Ok(rep)
}

/// Runs acceptance criteria; per-criterion times go to `timings`.
pub fn cmd_selftest(ids: &[u32], seed: u64) -> (Report, Value) {
    let mut rep = Report::new("selftest", json!({"criteria": ids, "seed": seed}));
    let outcomes: Vec<_> = ids.iter().filter_map(|&id| run_criterion(id, seed)).collect();
    let all = outcomes.iter().all(|o| o.passed());
    rep.result = json!({
        "passed": all,
        "criteria": outcomes.iter().map(|o| json!({
            "id": o.id,
            "name": o.name,
            "passed": o.passed(),
            "checks": o.checks,
            "failures": o.failures,
            "notes": o.notes,
        })).collect::<Vec<_>>(),
    });
    rep.certificates = json!({
        "budgets_s": outcomes.iter().map(|o| json!({"id": o.id, "budget": o.budget.as_secs()})).collect::<Vec<_>>(),
    });
    if !all {
        rep.status = Status::Violation;
    }
    let timings = json!(outcomes
        .iter()
        .map(|o| json!({"id": o.id, "ms": o.elapsed.as_millis() as u64}))
        .collect::<Vec<_>>());
    (rep, timings)
}
