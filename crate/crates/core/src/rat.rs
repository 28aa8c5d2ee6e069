//! Exact rational scalars, vectors and points.
//!
//! Every geometric quantity in this crate is a [`Q`] (arbitrary-precision
//! rational, always in reduced form with positive denominator) or a tuple of
//! them. There is no floating point anywhere in the library.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// Exact rational scalar.
pub type Q = BigRational;

/// Shorthand for an integer-valued rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `n/d`.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parse a decimal-free rational string: `"p"` or `"p/q"`.
pub fn parse_q(s: &str) -> Result<Q, QParseError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n = BigInt::from_str(num).map_err(|_| QParseError(s.to_string()))?;
    let d = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| QParseError(s.to_string()))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(QParseError(s.to_string()));
    }
    Ok(Q::new(n, d))
}

/// Render a rational as `"p"` or `"p/q"`, never with a decimal point.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal: {0:?}")]
pub struct QParseError(pub String);

/// A vector with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVector(pub Vec<Q>);

/// A point with exact rational coordinates. Same representation as
/// [`QVector`]; the distinction is purely semantic (points translate,
/// vectors do not).
pub type QPoint = QVector;

impl QVector {
    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Q::zero(); dim])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        QVector(xs.iter().map(|&x| qi(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &QVector) -> Q {
        assert_eq!(self.dim(), other.dim(), "dot: dimension mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a * b)
            .fold(Q::zero(), |acc, x| acc + x)
    }

    pub fn add(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim(), "add: dimension mismatch");
        QVector(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim(), "sub: dimension mismatch");
        QVector(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, c: &Q) -> QVector {
        QVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }

    /// Midpoint of two points.
    pub fn midpoint(&self, other: &QVector) -> QVector {
        self.add(other).scale(&qr(1, 2))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|a| a.is_zero())
    }

    /// Sup-norm distance to another point.
    pub fn linf_distance(&self, other: &QVector) -> Q {
        assert_eq!(self.dim(), other.dim(), "linf_distance: dimension mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(Q::zero(), |acc, x| if x > acc { x } else { acc })
    }

    /// Parse a comma-separated list of rationals, e.g. `"3/2, 1, 5/3"`.
    pub fn parse(s: &str) -> Result<QVector, QParseError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(QVector(Vec::new()));
        }
        s.split(',').map(parse_q).collect::<Result<_, _>>().map(QVector)
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_q(x))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
