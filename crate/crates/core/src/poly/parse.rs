//! Expression grammar shared by polynomials and b-polynomials.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ['^' integer]
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only accepted by algebras that support it (rational
//! coefficients); polynomial parsing rejects it.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Polynomial, Ring, MAX_EXPONENT};
use crate::error::{Error, Result};

/// Target of expression evaluation.
pub(crate) trait Algebra {
    type Elem;
    fn integer(&self, value: &BigInt, offset: usize) -> Result<Self::Elem>;
    fn variable(&self, name: &str, offset: usize) -> Result<Self::Elem>;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem>;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem>;
    fn neg(&self, a: Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem>;
    fn pow(&self, a: Self::Elem, k: u64) -> Result<Self::Elem>;
    fn div(&self, _a: Self::Elem, _b: Self::Elem, offset: usize) -> Result<Self::Elem> {
        Err(Error::syntax(offset, "division is not allowed here"))
    }
}

pub(crate) fn parse_expr<A: Algebra>(src: &str, alg: &A) -> Result<A::Elem> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        alg,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(Error::syntax(p.pos, "unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'s, 'a, A: Algebra> {
    src: &'s [u8],
    pos: usize,
    alg: &'a A,
}

impl<A: Algebra> Parser<'_, '_, A> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<A::Elem> {
        let negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = self.alg.neg(acc)?;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.add(acc, t)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.alg.sub(acc, t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<A::Elem> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.alg.mul(acc, f)?;
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.alg.div(acc, f, at)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<A::Elem> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(Error::syntax(start, "expected a nonnegative integer exponent"));
            }
            let k = digits
                .parse::<BigInt>()
                .ok()
                .and_then(|b| b.to_u64())
                .filter(|&k| k <= MAX_EXPONENT)
                .ok_or(Error::ExponentOverflow)?;
            return self.alg.pow(base, k);
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<A::Elem> {
        let Some(c) = self.peek() else {
            return Err(Error::syntax(self.pos, "unexpected end of input"));
        };
        let start = self.pos;
        if c.is_ascii_digit() {
            let digits = self.digits();
            let value: BigInt = digits.parse().expect("digit string");
            return self.alg.integer(&value, start);
        }
        if c.is_ascii_alphabetic() {
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
            return self.alg.variable(name, start);
        }
        if c == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(Error::syntax(self.pos, "expected `)`"));
            }
            self.pos += 1;
            return Ok(inner);
        }
        Err(Error::syntax(start, format!("unexpected character `{}`", c as char)))
    }
}

struct PolyAlgebra<'r> {
    ring: &'r Ring,
    resolve: &'r dyn Fn(&str) -> Option<Polynomial>,
}

impl Algebra for PolyAlgebra<'_> {
    type Elem = Polynomial;

    fn integer(&self, value: &BigInt, _offset: usize) -> Result<Polynomial> {
        let p = BigInt::from(self.ring.p());
        let r = ((value % &p) + &p) % &p;
        Ok(Polynomial::constant(self.ring, r.to_i64().expect("residue below 2^31")))
    }

    fn variable(&self, name: &str, offset: usize) -> Result<Polynomial> {
        if let Some(i) = self.ring.var_index(name) {
            return Ok(Polynomial::var(self.ring, i));
        }
        match (self.resolve)(name) {
            Some(f) => {
                self.ring.check_same(f.ring())?;
                Ok(f)
            }
            None => Err(Error::UnknownVariable {
                name: name.to_string(),
                offset,
            }),
        }
    }

    fn add(&self, a: Polynomial, b: Polynomial) -> Result<Polynomial> {
        a.checked_add(&b)
    }

    fn sub(&self, a: Polynomial, b: Polynomial) -> Result<Polynomial> {
        a.checked_sub(&b)
    }

    fn neg(&self, a: Polynomial) -> Result<Polynomial> {
        Ok(-&a)
    }

    fn mul(&self, a: Polynomial, b: Polynomial) -> Result<Polynomial> {
        a.checked_mul(&b)
    }

    fn pow(&self, a: Polynomial, k: u64) -> Result<Polynomial> {
        a.pow(k)
    }
}

/// Parse a polynomial over `ring`. Integer coefficients are reduced mod p.
pub fn parse_poly(src: &str, ring: &Ring) -> Result<Polynomial> {
    parse_poly_with(src, ring, &|_| None)
}

/// As [`parse_poly`], resolving identifiers that are not ring variables
/// through `resolve` (named polynomials in a session).
pub fn parse_poly_with(
    src: &str,
    ring: &Ring,
    resolve: &dyn Fn(&str) -> Option<Polynomial>,
) -> Result<Polynomial> {
    parse_expr(src, &PolyAlgebra { ring, resolve })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, vars: &[&str]) -> Ring {
        Ring::new(p, vars.iter().copied()).unwrap()
    }

    #[test]
    fn binomial_mod_5() {
        let r = ring(5, &["x", "y", "u", "v"]);
        let f = parse_poly("x*u - y*v", &r).unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.to_string(), "x*u + 4*y*v");
    }

    #[test]
    fn commutativity_cancels() {
        let r = ring(7, &["x", "y"]);
        assert!(parse_poly("x*y - y*x", &r).unwrap().is_zero());
    }

    #[test]
    fn freshmans_dream_in_char_2() {
        let r = ring(2, &["x", "y"]);
        assert_eq!(parse_poly("(x+y)^2", &r).unwrap().to_string(), "x^2 + y^2");
    }

    #[test]
    fn large_coefficients_reduce() {
        let r = ring(7, &["x"]);
        let f = parse_poly("123456789012345678901234567890*x - 15", &r).unwrap();
        let c = 123456789012345678901234567890u128 % 7;
        assert_eq!(f, parse_poly(&format!("{c}*x + 6"), &r).unwrap());
    }

    #[test]
    fn errors_carry_offsets() {
        let r = ring(5, &["x", "y"]);
        assert_eq!(
            parse_poly("x + z", &r).unwrap_err(),
            Error::UnknownVariable {
                name: "z".into(),
                offset: 4
            }
        );
        match parse_poly("x + * y", &r).unwrap_err() {
            Error::Syntax { offset, .. } => assert_eq!(offset, 4),
            e => panic!("unexpected {e:?}"),
        }
        match parse_poly("(x + y", &r).unwrap_err() {
            Error::Syntax { offset, .. } => assert_eq!(offset, 6),
            e => panic!("unexpected {e:?}"),
        }
        assert_eq!(parse_poly("x^4294967296", &r).unwrap_err(), Error::ExponentOverflow);
        assert!(matches!(parse_poly("x/2", &r), Err(Error::Syntax { offset: 1, .. })));
    }

    #[test]
    fn resolves_named_polynomials() {
        let r = ring(3, &["x", "y"]);
        let f = parse_poly("x + y", &r).unwrap();
        let g = parse_poly_with("f^3 - x^3", &r, &|n| (n == "f").then(|| f.clone())).unwrap();
        assert_eq!(g.to_string(), "y^3");
    }
}
