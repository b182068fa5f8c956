//! Exact rational scalars and extended rationals.
//!
//! Everything in this crate computes over arbitrary-precision rationals so
//! that lattice identities, Heyting adjunctions and forcing checks are
//! decidable by exact equality. `ExtQ` adds the two infinities needed for
//! unbounded interval endpoints and for derivative bounds of genuinely
//! interval-valued sections.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// The scalar type used everywhere: an arbitrary-precision rational.
pub type Q = BigRational;

/// Shorthand for an integer rational.
pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `n/d`.
pub fn qr(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a rational from the wire format `"p/q"` or `"p"`.
pub fn parse_q(s: &str) -> Result<Q> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| Error::BadRational(s.to_string()))
}

/// Formats a rational in the wire format: `p/q` reduced, `p` when integral.
pub fn fmt_q(q: &Q) -> String {
    q.to_string()
}

/// A rational extended with `-inf` and `+inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtQ {
    NegInf,
    Fin(Q),
    PosInf,
}

impl ExtQ {
    pub fn zero() -> Self {
        ExtQ::Fin(Q::zero())
    }

    pub fn one() -> Self {
        ExtQ::Fin(Q::one())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtQ::Fin(_))
    }

    /// Finite value or an error naming the context.
    pub fn finite(&self) -> Result<&Q> {
        match self {
            ExtQ::Fin(q) => Ok(q),
            _ => Err(Error::InfiniteValue),
        }
    }

    /// `max(q, 0)`, the positive part used by Kaucher multiplication.
    /// Infinite inputs keep their positive part: `(+inf)^+ = +inf`, `(-inf)^+ = 0`.
    pub fn pos_part(&self) -> ExtQ {
        match self {
            ExtQ::NegInf => ExtQ::zero(),
            ExtQ::Fin(q) => {
                if q.is_negative() {
                    ExtQ::zero()
                } else {
                    ExtQ::Fin(q.clone())
                }
            }
            ExtQ::PosInf => ExtQ::PosInf,
        }
    }

    /// `max(-q, 0)`, the negative part.
    pub fn neg_part(&self) -> ExtQ {
        match self {
            ExtQ::NegInf => ExtQ::PosInf,
            ExtQ::Fin(q) => {
                if q.is_positive() {
                    ExtQ::zero()
                } else {
                    ExtQ::Fin(-q.clone())
                }
            }
            ExtQ::PosInf => ExtQ::zero(),
        }
    }

    /// Addition; `+inf + -inf` is an error.
    pub fn add(&self, other: &ExtQ) -> Result<ExtQ> {
        use ExtQ::*;
        match (self, other) {
            (Fin(a), Fin(b)) => Ok(Fin(a + b)),
            (PosInf, NegInf) | (NegInf, PosInf) => Err(Error::InfiniteArithmetic),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
        }
    }

    pub fn sub(&self, other: &ExtQ) -> Result<ExtQ> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExtQ {
        match self {
            ExtQ::NegInf => ExtQ::PosInf,
            ExtQ::Fin(q) => ExtQ::Fin(-q.clone()),
            ExtQ::PosInf => ExtQ::NegInf,
        }
    }

    /// Multiplication with the predomain convention `0 * inf = 0`.
    pub fn mul(&self, other: &ExtQ) -> ExtQ {
        use ExtQ::*;
        match (self, other) {
            (Fin(a), Fin(b)) => Fin(a * b),
            (Fin(a), inf) | (inf, Fin(a)) => {
                if a.is_zero() {
                    ExtQ::zero()
                } else if a.is_positive() {
                    inf.clone()
                } else {
                    inf.neg()
                }
            }
            (PosInf, PosInf) | (NegInf, NegInf) => PosInf,
            _ => NegInf,
        }
    }

}

impl PartialOrd for ExtQ {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtQ {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtQ::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Fin(a), Fin(b)) => a.cmp(b),
        }
    }
}

impl From<Q> for ExtQ {
    fn from(q: Q) -> Self {
        ExtQ::Fin(q)
    }
}

impl fmt::Display for ExtQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtQ::NegInf => write!(f, "-inf"),
            ExtQ::Fin(q) => write!(f, "{}", q),
            ExtQ::PosInf => write!(f, "inf"),
        }
    }
}

/// Parses an extended rational: `"inf"`, `"-inf"`, or `"p/q"`.
pub fn parse_extq(s: &str) -> Result<ExtQ> {
    match s.trim() {
        "inf" | "+inf" => Ok(ExtQ::PosInf),
        "-inf" => Ok(ExtQ::NegInf),
        other => Ok(ExtQ::Fin(parse_q(other)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for s in ["7/2", "-3", "0", "22/7"] {
            let q = parse_q(s).unwrap();
            assert_eq!(fmt_q(&q), s);
        }
        assert_eq!(parse_q("4/2").unwrap(), qi(2));
        assert!(parse_q("abc").is_err());
    }

    #[test]
    fn ext_arith() {
        assert_eq!(ExtQ::PosInf.add(&ExtQ::Fin(qi(3))).unwrap(), ExtQ::PosInf);
        assert!(ExtQ::PosInf.add(&ExtQ::NegInf).is_err());
        assert_eq!(ExtQ::Fin(qi(0)).mul(&ExtQ::PosInf), ExtQ::zero());
        assert_eq!(ExtQ::Fin(qi(-2)).mul(&ExtQ::PosInf), ExtQ::NegInf);
        assert!(ExtQ::NegInf < ExtQ::Fin(qi(-1000)));
        assert_eq!(ExtQ::NegInf.pos_part(), ExtQ::zero());
        assert_eq!(ExtQ::NegInf.neg_part(), ExtQ::PosInf);
    }
}
