//! Exact rationals: thin helpers over `num_rational::BigRational`.
//!
//! `BigRational` already maintains the invariants we need (numerator and
//! denominator coprime, denominator positive), so the library uses it
//! directly under the [`Rational`] alias. The helpers here cover the
//! `"p/q"` wire format used by the JSON serializations.

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Rational = BigRational;

/// Build a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(num: i64) -> Rational {
    Rational::from_integer(BigInt::from(num))
}

/// Format as `"p/q"` with decimal integer parts; the denominator is always
/// present and positive, e.g. `-2/3`, `5/1`.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parse `"p/q"` (or a bare integer `"p"`).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let num: BigInt = p.trim().parse().ok()?;
            let den: BigInt = q.trim().parse().ok()?;
            if den == BigInt::from(0) {
                return None;
            }
            Some(Rational::new(num, den))
        }
        None => {
            let num: BigInt = s.parse().ok()?;
            Some(Rational::from_integer(num))
        }
    }
}
