//! Exact rational scalars and their canonical text form.
//!
//! Rationals cross the file and report boundary as strings `"p/q"` (or a
//! bare integer `"p"`); decimal notation is rejected so no value ever takes
//! a float round-trip.

use num::bigint::BigInt;
use num::{BigRational, Signed, ToPrimitive, Zero};

/// Exact rational scalar used for all order and market computations.
pub type Rat = BigRational;

/// Builds `n/d`. Panics if `d == 0`; intended for literals in tests,
/// benches and fixtures.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses the canonical form `"p"` or `"p/q"`. Decimal input and zero
/// denominators are rejected, never coerced.
pub fn parse_rat(s: &str) -> std::result::Result<Rat, String> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| format!("`{s}` is not a rational; write it as p or p/q, not a decimal"))?;
    let den: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| format!("`{s}` has a malformed denominator"))?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(format!("`{s}` has a zero denominator"));
    }
    Ok(Rat::new(num, den))
}

/// Canonical text form: reduced, `"p"` when the denominator is 1, else
/// `"p/q"` with the sign on the numerator.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Nearest `f64`; rationals in this crate always fit.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

/// True when `r` is an exact non-negative value.
pub fn is_nonneg(r: &Rat) -> bool {
    !r.is_negative()
}

/// True when `r` is strictly positive.
pub fn is_positive(r: &Rat) -> bool {
    r.is_positive()
}
