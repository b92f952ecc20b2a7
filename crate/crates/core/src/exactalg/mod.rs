//! Exact arithmetic substrate: rationals, dense univariate polynomials,
//! Sturm root counting and Gaussian elimination over the rationals.
//!
//! Nothing in here touches floating point.

mod linear;
mod polynomial;
mod sturm;

pub use linear::{solve_linear, LinearSystem};
pub use polynomial::Polynomial;
pub use sturm::{count_roots_in_open_interval, sign_variations, strictly_positive_on, sturm_sequence};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Reduced arbitrary-precision fraction with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("interval ({lo}, {hi}) is empty")]
    EmptyInterval { lo: Box<Rational>, hi: Box<Rational> },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("linear system shape mismatch: {rows}x{cols} matrix with {rhs} right-hand side entries")]
    ShapeMismatch { rows: usize, cols: usize, rhs: usize },
}

/// `num / den` as a reduced rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Serialize as `"num/den"`, always with the denominator, e.g. `"-1/1"`.
pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parse `"num/den"` or a plain integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub(crate) fn sign(q: &Rational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn midpoint(lo: &Rational, hi: &Rational) -> Rational {
    (lo + hi) / Rational::from_integer(BigInt::one() + BigInt::one())
}
