use num_traits::{One, Signed};

use crate::gross::GrossNumber;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PrintMode {
    /// Round-trip format: terminating coefficients as decimals, others as
    /// `n/d`.
    #[default]
    Exact,
    /// Coefficients rounded to the given number of decimal places. For
    /// display only.
    Decimal(usize),
}

fn coefficient_text(q: &Rational, mode: PrintMode) -> String {
    match mode {
        PrintMode::Exact => rational::to_exact_string(q),
        PrintMode::Decimal(digits) => rational::to_rounded_string(q, digits),
    }
}

/// Canonical text for `x`: terms by decreasing grosspower joined with
/// ` + `/` - `, the finite part as a bare number, grosspowers in braces.
pub fn print_canonical(x: &GrossNumber, mode: PrintMode) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, term) in x.terms().iter().enumerate() {
        let negative = term.coefficient().is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let magnitude = term.coefficient().abs();
        let exponent = term.exponent();
        if exponent.is_zero() {
            out.push_str(&coefficient_text(&magnitude, mode));
            continue;
        }
        if !magnitude.is_one() {
            out.push_str(&coefficient_text(&magnitude, mode));
            out.push('*');
        }
        out.push_str("G1");
        if !exponent.is_one() {
            out.push_str("^{");
            out.push_str(&print_canonical(exponent, mode));
            out.push('}');
        }
    }
    out
}
