//! Line-oriented session files.
//!
//! ```text
//! prime 5
//! ring x y u v
//! subring xu yv            # or: subring [1,0,1,0] [0,1,0,1]
//! poly f = x*u - y*v
//! ideal I = f, x*y
//! set e_max 3
//! ```

use std::collections::BTreeMap;
use std::fmt;

use fsummand::finv::Ambient;
use fsummand::poly::{field, parse_poly_with};
use fsummand::summand::{build_embedding, default_box, parse_monomial_word, SplitEmbedding};
use fsummand::{Error, GroebnerLimits, Ideal, Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub e_max: u32,
    pub box_bound: Option<u32>,
    pub max_degree: Option<u64>,
    pub max_basis: Option<usize>,
    pub m_floor: u64,
    pub seed: Option<u64>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            e_max: 3,
            box_bound: None,
            max_degree: None,
            max_basis: None,
            m_floor: fsummand::bs::DEFAULT_M_FLOOR,
            seed: None,
        }
    }
}

impl Config {
    pub fn limits(&self) -> GroebnerLimits {
        let mut limits = GroebnerLimits::default();
        if let Some(d) = self.max_degree {
            limits.max_degree = d;
        }
        if let Some(b) = self.max_basis {
            limits.max_basis_size = b;
        }
        limits
    }
}

/// A parse or validation failure, tied to a line when possible.
#[derive(Debug)]
pub struct SessionError {
    pub line: Option<usize>,
    pub error: Error,
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.error),
            None => write!(f, "{}", self.error),
        }
    }
}

pub struct Session {
    pub ring: Ring,
    pub embedding: Option<SplitEmbedding>,
    pub polys: BTreeMap<String, Polynomial>,
    pub ideals: BTreeMap<String, Ideal>,
    pub config: Config,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn parse_rows(text: &str, n: usize) -> Result<Vec<Vec<u32>>, Error> {
    let mut rows = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('[')
            .and_then(|r| r.split_once(']'))
            .ok_or_else(|| invalid("expected exponent rows like [1,0,1,0]"))?;
        let row = body
            .0
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| invalid(format!("bad exponent `{}`", x.trim()))))
            .collect::<Result<Vec<u32>, Error>>()?;
        if row.len() != n {
            return Err(invalid(format!("row has {} entries but the ring has {n} variables", row.len())));
        }
        rows.push(row);
        rest = body.1.trim_start();
    }
    Ok(rows)
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, Error> {
    v.parse().map_err(|_| invalid(format!("bad value `{v}` for {key}")))
}

impl Session {
    pub fn parse(text: &str) -> Result<Session, SessionError> {
        let mut p: Option<u64> = None;
        let mut ring: Option<Ring> = None;
        let mut subring: Option<(usize, Vec<Vec<u32>>)> = None;
        let mut polys: BTreeMap<String, Polynomial> = BTreeMap::new();
        let mut ideal_src: Vec<(usize, String, Vec<Polynomial>)> = Vec::new();
        let mut config = Config::default();

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let at = |error: Error| SessionError { line: Some(lineno), error };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            let need_ring = || ring.clone().ok_or_else(|| at(invalid(format!("`{kw}` before `ring`"))));
            match kw {
                "prime" => {
                    if p.is_some() {
                        return Err(at(invalid("prime declared twice")));
                    }
                    let v: u64 = parse_value("prime", rest).map_err(at)?;
                    if !field::is_prime(v) {
                        return Err(at(Error::InvalidRing(format!("{v} is not prime"))));
                    }
                    p = Some(v);
                }
                "ring" => {
                    if ring.is_some() {
                        return Err(at(invalid("ring declared twice")));
                    }
                    let p = p.ok_or_else(|| at(invalid("`ring` before `prime`")))?;
                    ring = Some(Ring::new(p, rest.split_whitespace()).map_err(at)?);
                }
                "subring" => {
                    let r = need_ring()?;
                    if subring.is_some() {
                        return Err(at(invalid("subring declared twice")));
                    }
                    let gens = if rest.starts_with('[') {
                        parse_rows(rest, r.nvars()).map_err(at)?
                    } else {
                        rest.split_whitespace()
                            .map(|w| parse_monomial_word(&r, w))
                            .collect::<Result<Vec<_>, Error>>()
                            .map_err(at)?
                    };
                    if gens.is_empty() {
                        return Err(at(invalid("subring needs at least one generator")));
                    }
                    subring = Some((lineno, gens));
                }
                "poly" | "ideal" => {
                    let r = need_ring()?;
                    let (name, expr) = rest
                        .split_once('=')
                        .ok_or_else(|| at(invalid(format!("expected `{kw} NAME = ...`"))))?;
                    let name = name.trim();
                    let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                    if !valid {
                        return Err(at(invalid(format!("bad name `{name}`"))));
                    }
                    if r.var_index(name).is_some() {
                        return Err(at(invalid(format!("`{name}` is a ring variable"))));
                    }
                    if polys.contains_key(name) || ideal_src.iter().any(|(_, n, _)| n == name) {
                        return Err(at(invalid(format!("`{name}` is already defined"))));
                    }
                    let resolve = |n: &str| polys.get(n).cloned();
                    if kw == "poly" {
                        let f = parse_poly_with(expr, &r, &resolve).map_err(at)?;
                        polys.insert(name.to_string(), f);
                    } else {
                        let gens = expr
                            .split(',')
                            .map(|e| parse_poly_with(e, &r, &resolve))
                            .collect::<Result<Vec<_>, Error>>()
                            .map_err(at)?;
                        ideal_src.push((lineno, name.to_string(), gens));
                    }
                }
                "set" => {
                    let (key, value) = rest
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| at(invalid("expected `set KEY VALUE`")))?;
                    let value = value.trim();
                    match key {
                        "e_max" => config.e_max = parse_value(key, value).map_err(at)?,
                        "box" => config.box_bound = Some(parse_value(key, value).map_err(at)?),
                        "max_degree" => config.max_degree = Some(parse_value(key, value).map_err(at)?),
                        "max_basis" => config.max_basis = Some(parse_value(key, value).map_err(at)?),
                        "m_floor" => config.m_floor = parse_value(key, value).map_err(at)?,
                        "seed" => config.seed = Some(parse_value(key, value).map_err(at)?),
                        _ => return Err(at(invalid(format!("unknown setting `{key}`")))),
                    }
                }
                _ => return Err(at(invalid(format!("unknown keyword `{kw}`")))),
            }
        }

        let ring = ring.ok_or(SessionError {
            line: None,
            error: invalid("session declares no ring"),
        })?;
        let limits = config.limits();
        let mut ideals = BTreeMap::new();
        for (lineno, name, gens) in ideal_src {
            let ideal = Ideal::new(&ring, gens).map_err(|error| SessionError { line: Some(lineno), error })?;
            ideals.insert(name, ideal.with_limits(limits));
        }
        let embedding = match subring {
            None => None,
            Some((lineno, gens)) => {
                let bound = config.box_bound.unwrap_or_else(|| {
                    u32::try_from(default_box(&gens, ring.p(), config.e_max)).unwrap_or(u32::MAX)
                });
                let emb = build_embedding(&ring, gens, bound)
                    .map_err(|error| SessionError { line: Some(lineno), error })?;
                Some(emb.with_limits(limits))
            }
        };
        Ok(Session {
            ring,
            embedding,
            polys,
            ideals,
            config,
        })
    }

    /// R when a subring is declared, unless `force_s`.
    pub fn ambient(&self, force_s: bool) -> Ambient<'_> {
        match (&self.embedding, force_s) {
            (Some(emb), false) => Ambient::R(emb),
            _ => Ambient::S,
        }
    }

    pub fn poly(&self, name: &str) -> Result<Polynomial, Error> {
        self.polys
            .get(name)
            .cloned()
            .ok_or_else(|| invalid(format!("no polynomial named `{name}`")))
    }

    /// A named ideal, the principal ideal of a named polynomial, or `m`: the
    /// ideal generated by the variables of S, or by the generators of R.
    pub fn ideal(&self, name: &str, ambient: Ambient) -> Result<Ideal, Error> {
        let limits = self.config.limits();
        if let Some(i) = self.ideals.get(name) {
            return Ok(i.clone());
        }
        if let Some(f) = self.polys.get(name) {
            return Ok(Ideal::principal(f).with_limits(limits));
        }
        if name == "m" {
            let gens: Vec<Polynomial> = match ambient {
                Ambient::S => (0..self.ring.nvars()).map(|i| Polynomial::var(&self.ring, i)).collect(),
                Ambient::R(emb) => emb
                    .semigroup()
                    .gens()
                    .iter()
                    .map(|v| Polynomial::monomial(&self.ring, v.clone()))
                    .collect::<Result<_, _>>()?,
            };
            return Ok(Ideal::new(&self.ring, gens)?.with_limits(limits));
        }
        Err(invalid(format!("no ideal or polynomial named `{name}`")))
    }
}
