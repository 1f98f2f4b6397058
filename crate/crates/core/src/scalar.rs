//! Exact rational scalars.
//!
//! The ground field is restricted to arbitrary-precision rationals: every
//! coefficient in the library is a `Q` kept in lowest terms with a positive
//! denominator (the canonical form maintained by `num_rational`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational scalar.
pub type Q = BigRational;

/// Rational from an integer.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn qr(n: i64, d: i64) -> Q {
    assert!(d != 0, "qr: zero denominator");
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parse a rational written as `p` or `p/q` (ASCII, optional leading sign).
pub fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".to_string());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid integer `{num}`"))?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| format!("invalid integer `{d}`"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    if !d.is_positive() {
        return Err(format!("denominator must be positive in `{s}`"));
    }
    Ok(Q::new(n, d))
}

/// Format a rational as `p` or `p/q`.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
