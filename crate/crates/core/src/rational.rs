//! Exact rational grossdigits.
//!
//! Coefficients are arbitrary-precision fractions kept in lowest terms with a
//! positive denominator. Decimal literals such as `17.21` are read exactly as
//! `1721/100`; nothing in this crate ever goes through floating point.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational as Rational;

/// Builds `n/1`.
pub fn from_int<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

/// Builds `n/d`, reducing to lowest terms.
///
/// Panics if `d` is zero.
pub fn from_frac<N: Into<BigInt>, D: Into<BigInt>>(n: N, d: D) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parses an unsigned decimal literal (`7`, `0.23`, `52.4`) into an exact
/// fraction. Returns `None` for anything that is not `digits[.digits]`.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    let digits_ok = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if int_part.is_empty() || !digits_ok(int_part) || !digits_ok(frac_part) {
        return None;
    }
    if text.contains('.') && frac_part.is_empty() {
        return None;
    }
    let mut all = String::with_capacity(int_part.len() + frac_part.len());
    all.push_str(int_part);
    all.push_str(frac_part);
    let numer: BigInt = all.parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    Some(Rational::new(numer, denom))
}

/// Number of decimal places needed to write `q` exactly, or `None` when the
/// reduced denominator has a prime factor other than 2 or 5.
pub fn terminating_places(q: &Rational) -> Option<usize> {
    let mut d = q.denom().clone();
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let (mut twos, mut fives) = (0usize, 0usize);
    while d.is_even() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    d.is_one().then_some(twos.max(fives))
}

/// Exact textual form: a decimal when the expansion terminates, otherwise
/// `n/d`. The output is accepted back by the literal parser.
pub fn to_exact_string(q: &Rational) -> String {
    match terminating_places(q) {
        Some(places) => {
            let scaled = q.numer() * num_traits::pow(BigInt::from(10u32), places) / q.denom();
            format_scaled(&scaled, places)
        }
        None => format!("{}/{}", q.numer(), q.denom()),
    }
}

/// Decimal rendering rounded half away from zero to `digits` places, with
/// trailing zeros trimmed. Display only.
pub fn to_rounded_string(q: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let scaled = q * Rational::from_integer(scale);
    let rounded = scaled.round().to_integer();
    let text = format_scaled(&rounded, digits);
    if text == "-0" {
        "0".to_string()
    } else {
        text
    }
}

fn format_scaled(scaled: &BigInt, places: usize) -> String {
    let negative = scaled.sign() == Sign::Minus;
    let mut digits = scaled.abs().to_string();
    if places > 0 {
        if digits.len() <= places {
            digits = format!("{}{}", "0".repeat(places + 1 - digits.len()), digits);
        }
        let split = digits.len() - places;
        let (int_part, frac_part) = digits.split_at(split);
        let frac_part = frac_part.trim_end_matches('0');
        digits = if frac_part.is_empty() {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac_part}")
        };
    }
    if negative {
        format!("-{digits}")
    } else {
        digits
    }
}

/// `Some(n)` when `q` is an integer that fits in an `i64`.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub(crate) fn sign_of(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}
