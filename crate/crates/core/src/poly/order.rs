//! Monomial orders.

use std::cmp::Ordering;

/// A monomial order on exponent vectors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum MonomialOrder {
    /// Lexicographic with x_1 > x_2 > ... > x_n.
    Lex,
    /// Graded reverse lexicographic.
    #[default]
    Grevlex,
    /// Lex on the first `prefix` variables, ties broken by grevlex on the rest.
    /// Any monomial involving the prefix beats every monomial free of it, so
    /// this is an elimination order for the prefix block.
    Block { prefix: usize },
}

impl MonomialOrder {
    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Block { prefix } => {
                let k = prefix.min(a.len());
                a[..k].cmp(&b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Block { prefix } => format!("block({prefix})"),
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                // smaller exponent in the last differing variable wins
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_degree_then_reverse() {
        let o = MonomialOrder::Grevlex;
        assert_eq!(o.compare(&[2, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(o.compare(&[1, 1], &[0, 2]), Ordering::Greater);
        assert_eq!(o.compare(&[1, 1], &[1, 0]), Ordering::Greater);
        // x*z^1 vs y^2 in three variables: y^2 is larger (less z)
        assert_eq!(o.compare(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
    }

    #[test]
    fn lex_first_variable_dominates() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.compare(&[1, 0], &[0, 5]), Ordering::Greater);
    }

    #[test]
    fn block_eliminates_prefix() {
        let o = MonomialOrder::Block { prefix: 1 };
        // anything with x beats any pure-y monomial
        assert_eq!(o.compare(&[1, 0], &[0, 9]), Ordering::Greater);
        assert_eq!(o.compare(&[0, 2], &[0, 1]), Ordering::Greater);
    }
}
