//! Exact division and gcd primitives on arbitrary-precision naturals.
//!
//! The one non-standard routine is [`div_least_positive`]: division whose
//! remainder lands in `1..=d` instead of the usual `0..d`. Writing
//! `c = q*d + r`, the quotient is `q = (c - 1) / d` rounded down, so when `d`
//! divides `c` exactly the quotient drops by one and the remainder becomes `d`
//! rather than `0`. This is the division rule the deriving-one state machine
//! is built on: it keeps every matrix entry strictly positive.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;

/// Quotient and remainder of an exact division, `c = quotient * d + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivResult {
    pub quotient: BigUint,
    pub remainder: BigUint,
}

/// Errors from the division and gcd primitives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithError {
    /// `div_least_positive` needs a dividend of at least 1; there is no
    /// representation of 0 with a remainder in `1..=d`.
    ZeroDividend,
    /// Division by zero.
    ZeroDivisor,
    /// `gcd(0, 0)` is undefined.
    GcdOfZeros,
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::ZeroDividend => {
                write!(f, "least-positive division requires a dividend >= 1")
            }
            ArithError::ZeroDivisor => write!(f, "division by zero"),
            ArithError::GcdOfZeros => write!(f, "gcd(0, 0) is undefined"),
        }
    }
}

impl std::error::Error for ArithError {}

/// Division with least positive remainder: `c = q*d + r` with `1 <= r <= d`.
///
/// Requires `c >= 1` and `d >= 1`. When `d` does not divide `c` this agrees
/// with floor division; when `d | c` it returns `(c/d - 1, d)`.
pub fn div_least_positive(c: &BigUint, d: &BigUint) -> Result<DivResult, ArithError> {
    if c.is_zero() {
        return Err(ArithError::ZeroDividend);
    }
    if d.is_zero() {
        return Err(ArithError::ZeroDivisor);
    }
    let quotient = (c - 1u32) / d;
    let remainder = c - &quotient * d;
    Ok(DivResult {
        quotient,
        remainder,
    })
}

/// Ordinary floor division: `c = q*d + r` with `0 <= r < d`. Requires `d >= 1`.
pub fn div_floor(c: &BigUint, d: &BigUint) -> Result<DivResult, ArithError> {
    if d.is_zero() {
        return Err(ArithError::ZeroDivisor);
    }
    let (quotient, remainder) = c.div_rem(d);
    Ok(DivResult {
        quotient,
        remainder,
    })
}

/// Greatest common divisor. `gcd(x, 0) = x` for `x > 0`; `gcd(0, 0)` is rejected.
pub fn gcd(a: &BigUint, b: &BigUint) -> Result<BigUint, ArithError> {
    if a.is_zero() && b.is_zero() {
        return Err(ArithError::GcdOfZeros);
    }
    Ok(a.gcd(b))
}
