//! Frobenius operations on ideals of the polynomial ring: bracket powers,
//! e-th roots and the D^(e)-closure.

use crate::error::{Error, Result};
use crate::groebner::{prune_monomials, Ideal};
use crate::poly::{Ring, MAX_EXPONENT};

/// Level `e` over a ring, with `q = p^e`.
#[derive(Clone, Debug)]
pub struct FrobeniusContext {
    ring: Ring,
    e: u32,
    q: u64,
}

impl FrobeniusContext {
    pub fn new(ring: &Ring, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidArgument("level e must be at least 1".into()));
        }
        let q = ring
            .p()
            .checked_pow(e)
            .filter(|&q| q <= MAX_EXPONENT)
            .ok_or(Error::ExponentOverflow)?;
        Ok(FrobeniusContext {
            ring: ring.clone(),
            e,
            q,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

/// `I^[q]`, generated by the q-th powers of the generators of `I`.
pub fn bracket_power(ideal: &Ideal, ctx: &FrobeniusContext) -> Result<Ideal> {
    ideal.ring().check_same(&ctx.ring)?;
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.frobenius(ctx.e))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(&ctx.ring, gens)?.with_limits(*ideal.limits()))
}

/// `C^e I`, the smallest ideal `b` with `I ⊆ b^[q]`. Since the polynomial ring
/// is free over its q-th powers on the box monomials, this is generated by the
/// components of the generators.
pub fn eth_root(ideal: &Ideal, ctx: &FrobeniusContext) -> Result<Ideal> {
    ideal.ring().check_same(&ctx.ring)?;
    let mut comps = Vec::new();
    for g in ideal.gens() {
        for (_, c) in g.pe_decompose(ctx.e)? {
            if c.is_unit() {
                return Ok(Ideal::unit(&ctx.ring).with_limits(*ideal.limits()));
            }
            comps.push(c);
        }
    }
    Ok(Ideal::new(&ctx.ring, prune_monomials(comps))?.with_limits(*ideal.limits()))
}

/// `(C^e I)^[q]`, the smallest D^(e)-stable ideal containing `I`.
pub fn d_image(ideal: &Ideal, ctx: &FrobeniusContext) -> Result<Ideal> {
    bracket_power(&eth_root(ideal, ctx)?, ctx)
}
