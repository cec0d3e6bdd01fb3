//! Arithmetic in the prime field F_p. Residues are kept in `[0, p)` and
//! `p < 2^31`, so every product fits in a `u64`.

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue.
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverting zero in F_{p}");
    pow(a, p - 2, p)
}

/// Reduce a signed integer into `[0, p)`.
pub fn from_i64(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_mod_7() {
        for a in 1..7 {
            assert_eq!(mul(a, inv(a, 7), 7), 1);
        }
        assert_eq!(inv(6, 7), 6);
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn signed_reduction() {
        assert_eq!(from_i64(-1, 5), 4);
        assert_eq!(from_i64(-10, 3), 2);
    }
}
