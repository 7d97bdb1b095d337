//! Gross-numbers: finite sums `c_1·①^p_1 + … + c_n·①^p_n` with rational
//! grossdigits `c_i ≠ 0` and grosspowers `p_1 > … > p_n`, where every
//! grosspower is itself a gross-number.
//!
//! Values are always kept in canonical form, so derived structural equality
//! is numeric equality. Ordering is the dominance order: the term with the
//! largest grosspower decides.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{self, Rational};

/// Term budget used by [`GrossNumber::exact_divide`] for non-monomial
/// divisors, and the default for truncated division.
pub const DEFAULT_MAX_TERMS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrossError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division: remainder {remainder} after {terms} quotient terms")]
    InexactDivision {
        remainder: GrossNumber,
        terms: usize,
    },
    #[error("negative power of a non-monomial: {0}")]
    NegativePowerOfNonMonomial(GrossNumber),
    #[error("zero raised to a non-positive power")]
    ZeroToNonpositivePower,
    #[error("unsupported exponentiation: ({base})^({exponent})")]
    UnsupportedExponentiation {
        base: GrossNumber,
        exponent: GrossNumber,
    },
    #[error("parity undefined for {0}")]
    ParityUndefined(GrossNumber),
}

/// One grossdigit/grosspower pair `c·①^p`. The coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrossTerm {
    coefficient: Rational,
    exponent: GrossNumber,
}

impl GrossTerm {
    pub fn coefficient(&self) -> &Rational {
        &self.coefficient
    }

    pub fn exponent(&self) -> &GrossNumber {
        &self.exponent
    }
}

impl fmt::Debug for GrossTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·①^({})", self.coefficient, self.exponent)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GrossNumber {
    terms: Vec<GrossTerm>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NumClass {
    Zero,
    Infinitesimal,
    FiniteNonzero,
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// Outcome of truncated long division.
///
/// `dividend = quotient·divisor + remainder` always holds exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivResult {
    pub quotient: GrossNumber,
    pub remainder: GrossNumber,
    pub exact: bool,
    pub terms_emitted: usize,
}

/// Canonicalizes a list of `(coefficient, exponent)` pairs: equal exponents
/// are merged, zero coefficients dropped, and terms sorted by strictly
/// decreasing exponent.
pub fn normalize<I>(terms: I) -> GrossNumber
where
    I: IntoIterator<Item = (Rational, GrossNumber)>,
{
    let mut raw: Vec<(Rational, GrossNumber)> =
        terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
    raw.sort_by(|a, b| b.1.cmp(&a.1));

    let mut out: Vec<GrossTerm> = Vec::with_capacity(raw.len());
    for (coefficient, exponent) in raw {
        match out.last_mut() {
            Some(last) if last.exponent == exponent => last.coefficient += coefficient,
            _ => out.push(GrossTerm {
                coefficient,
                exponent,
            }),
        }
    }
    out.retain(|t| !t.coefficient.is_zero());
    GrossNumber { terms: out }
}

impl GrossNumber {
    pub fn zero() -> Self {
        GrossNumber { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// ①
    pub fn grossone() -> Self {
        Self::monomial(Rational::one(), Self::one())
    }

    /// `①^p` for a finite integer `p`.
    pub fn grossone_pow(p: i64) -> Self {
        Self::monomial(Rational::one(), Self::from_int(p))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::monomial(q, Self::zero())
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Self::from_rational(rational::from_int(n))
    }

    /// `c·①^p`; zero when `c` is zero.
    pub fn monomial(coefficient: Rational, exponent: GrossNumber) -> Self {
        if coefficient.is_zero() {
            return Self::zero();
        }
        GrossNumber {
            terms: vec![GrossTerm {
                coefficient,
                exponent,
            }],
        }
    }

    pub fn terms(&self) -> &[GrossTerm] {
        &self.terms
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms[0].exponent.is_zero()
            && self.terms[0].coefficient.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&GrossTerm> {
        self.terms.first()
    }

    /// The value as a rational when the number is purely finite (or zero).
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [t] if t.exponent.is_zero() => Some(t.coefficient.clone()),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_rational().is_some()
    }

    /// The value as an integer when purely finite and integral.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Recursion depth of the grosspower tree; finite numbers have depth 1,
    /// zero has depth 0.
    pub fn depth(&self) -> usize {
        self.terms
            .iter()
            .map(|t| 1 + t.exponent.depth())
            .max()
            .unwrap_or(0)
    }

    pub fn sign(&self) -> i8 {
        self.terms
            .first()
            .map_or(0, |t| rational::sign_of(&t.coefficient))
    }

    /// Dominance comparison, equivalent to `sign(self - other)`.
    pub fn compare(&self, other: &Self) -> i8 {
        match self.cmp(other) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn classify(&self) -> NumClass {
        match self.terms.first() {
            None => NumClass::Zero,
            Some(t) => match t.exponent.sign() {
                -1 => NumClass::Infinitesimal,
                0 => NumClass::FiniteNonzero,
                _ => NumClass::Infinite,
            },
        }
    }

    /// The `①^0` term as a pure finite number (zero if absent).
    pub fn finite_part(&self) -> GrossNumber {
        self.terms
            .iter()
            .find(|t| t.exponent.is_zero())
            .map_or_else(Self::zero, |t| Self::from_rational(t.coefficient.clone()))
    }

    pub fn has_infinite_part(&self) -> bool {
        self.terms.iter().any(|t| t.exponent.sign() > 0)
    }

    pub fn has_infinitesimal_part(&self) -> bool {
        self.terms.iter().any(|t| t.exponent.sign() < 0)
    }

    pub fn abs(&self) -> GrossNumber {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn scalar_mul(&self, q: &Rational) -> GrossNumber {
        if q.is_zero() {
            return Self::zero();
        }
        GrossNumber {
            terms: self
                .terms
                .iter()
                .map(|t| GrossTerm {
                    coefficient: &t.coefficient * q,
                    exponent: t.exponent.clone(),
                })
                .collect(),
        }
    }

    /// Integer power. Negative powers are only defined for monomials; general
    /// reciprocals go through [`GrossNumber::divide`].
    pub fn power_int(&self, n: i64) -> Result<GrossNumber, GrossError> {
        if self.is_zero() {
            return if n > 0 {
                Ok(Self::zero())
            } else {
                Err(GrossError::ZeroToNonpositivePower)
            };
        }
        if n < 0 {
            let [t] = self.terms.as_slice() else {
                return Err(GrossError::NegativePowerOfNonMonomial(self.clone()));
            };
            let m = n.unsigned_abs();
            let coefficient = num_traits::pow(t.coefficient.recip(), m as usize);
            let exponent = t.exponent.scalar_mul(&rational::from_int(n));
            return Ok(Self::monomial(coefficient, exponent));
        }
        if let [t] = self.terms.as_slice() {
            let coefficient = num_traits::pow(t.coefficient.clone(), n as usize);
            let exponent = t.exponent.scalar_mul(&rational::from_int(n));
            return Ok(Self::monomial(coefficient, exponent));
        }
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Exponentiation with a gross-number exponent, on the supported domain:
    /// `0^k` for `k > 0`, `1^k`, `(①^p)^k = ①^(p·k)`, and any base with a
    /// finite integer exponent.
    pub fn power_gross(&self, k: &GrossNumber) -> Result<GrossNumber, GrossError> {
        if self.is_zero() {
            return if k.sign() > 0 {
                Ok(Self::zero())
            } else {
                Err(GrossError::ZeroToNonpositivePower)
            };
        }
        if self.is_one() {
            return Ok(Self::one());
        }
        if let Some(n) = k.as_rational().as_ref().and_then(rational::to_i64) {
            return self.power_int(n);
        }
        if let [t] = self.terms.as_slice() {
            if t.coefficient.is_one() {
                return Ok(Self::monomial(Rational::one(), &t.exponent * k));
            }
        }
        Err(GrossError::UnsupportedExponentiation {
            base: self.clone(),
            exponent: k.clone(),
        })
    }

    /// Leading-term long division with a budget of `max_terms` quotient
    /// terms. Stops early once the remainder vanishes.
    pub fn divide(&self, divisor: &GrossNumber, max_terms: usize) -> Result<DivResult, GrossError> {
        let Some(lead) = divisor.leading_term() else {
            return Err(GrossError::DivisionByZero);
        };
        let lead_recip = lead.coefficient.recip();
        let mut quotient_terms = Vec::new();
        let mut remainder = self.clone();
        while let Some(r) = remainder.leading_term() {
            if quotient_terms.len() >= max_terms {
                break;
            }
            let step =
                GrossNumber::monomial(&r.coefficient * &lead_recip, &r.exponent - &lead.exponent);
            remainder = &remainder - &(&step * divisor);
            quotient_terms.push(step.terms.into_iter().next().expect("nonzero step"));
        }
        let terms_emitted = quotient_terms.len();
        Ok(DivResult {
            quotient: GrossNumber {
                terms: quotient_terms,
            },
            exact: remainder.is_zero(),
            remainder,
            terms_emitted,
        })
    }

    /// Division that must come out exact. Monomial divisors always divide
    /// exactly; other divisors get [`DEFAULT_MAX_TERMS`] quotient terms, or
    /// as many as the dividend has if that is larger.
    pub fn exact_divide(&self, divisor: &GrossNumber) -> Result<GrossNumber, GrossError> {
        let budget = if divisor.is_monomial() {
            self.len().max(1)
        } else {
            DEFAULT_MAX_TERMS.max(self.len())
        };
        self.exact_divide_within(divisor, budget)
    }

    pub fn exact_divide_within(
        &self,
        divisor: &GrossNumber,
        max_terms: usize,
    ) -> Result<GrossNumber, GrossError> {
        let res = self.divide(divisor, max_terms)?;
        if res.exact {
            Ok(res.quotient)
        } else {
            Err(GrossError::InexactDivision {
                remainder: res.remainder,
                terms: res.terms_emitted,
            })
        }
    }

    pub fn reciprocal(&self, max_terms: usize) -> Result<DivResult, GrossError> {
        Self::one().divide(self, max_terms)
    }

    /// Whether [`GrossNumber::parity`] is defined: the finite part (if any)
    /// is an integer and every other term has a positive grosspower.
    pub fn is_parity_eligible(&self) -> bool {
        self.terms.iter().all(|t| match t.exponent.sign() {
            0 => t.coefficient.is_integer(),
            s => s > 0,
        })
    }

    /// Parity under the convention that every `c·①^p` with `p > 0` is even,
    /// so the integer finite part decides.
    pub fn parity(&self) -> Result<Parity, GrossError> {
        if !self.is_parity_eligible() {
            return Err(GrossError::ParityUndefined(self.clone()));
        }
        let finite = self
            .finite_part()
            .as_integer()
            .expect("eligible finite part is integral");
        Ok(if finite.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        })
    }
}

impl Ord for GrossNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        let sign_ord = |c: &Rational| c.signum().cmp(&Rational::zero());
        let mut a = self.terms.iter();
        let mut b = other.terms.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(x), None) => return sign_ord(&x.coefficient),
                (None, Some(y)) => return sign_ord(&y.coefficient).reverse(),
                (Some(x), Some(y)) => match x.exponent.cmp(&y.exponent) {
                    Ordering::Greater => return sign_ord(&x.coefficient),
                    Ordering::Less => return sign_ord(&y.coefficient).reverse(),
                    Ordering::Equal => match x.coefficient.cmp(&y.coefficient) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for GrossNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rational> for GrossNumber {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for GrossNumber {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for GrossNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::numio::print_canonical(
            self,
            crate::numio::PrintMode::Exact,
        ))
    }
}

impl fmt::Debug for GrossNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrossNumber({self})")
    }
}

impl std::str::FromStr for GrossNumber {
    type Err = crate::numio::SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::numio::parse_number(s)
    }
}

fn merge_add(x: &GrossNumber, y: &GrossNumber) -> GrossNumber {
    let mut out = Vec::with_capacity(x.terms.len() + y.terms.len());
    let mut a = x.terms.iter().peekable();
    let mut b = y.terms.iter().peekable();
    loop {
        match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => out.push(a.next().unwrap().clone()),
            (None, Some(_)) => out.push(b.next().unwrap().clone()),
            (Some(s), Some(t)) => match s.exponent.cmp(&t.exponent) {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap().clone()),
                Ordering::Equal => {
                    let s = a.next().unwrap();
                    let t = b.next().unwrap();
                    let c = &s.coefficient + &t.coefficient;
                    if !c.is_zero() {
                        out.push(GrossTerm {
                            coefficient: c,
                            exponent: s.exponent.clone(),
                        });
                    }
                }
            },
        }
    }
    GrossNumber { terms: out }
}

fn convolve(x: &GrossNumber, y: &GrossNumber) -> GrossNumber {
    if x.is_zero() || y.is_zero() {
        return GrossNumber::zero();
    }
    normalize(x.terms.iter().flat_map(|s| {
        y.terms
            .iter()
            .map(move |t| (&s.coefficient * &t.coefficient, &s.exponent + &t.exponent))
    }))
}

impl Neg for &GrossNumber {
    type Output = GrossNumber;

    fn neg(self) -> GrossNumber {
        GrossNumber {
            terms: self
                .terms
                .iter()
                .map(|t| GrossTerm {
                    coefficient: -&t.coefficient,
                    exponent: t.exponent.clone(),
                })
                .collect(),
        }
    }
}

impl Neg for GrossNumber {
    type Output = GrossNumber;

    fn neg(mut self) -> GrossNumber {
        for t in &mut self.terms {
            t.coefficient = -std::mem::take(&mut t.coefficient);
        }
        self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&GrossNumber> for &GrossNumber {
            type Output = GrossNumber;
            fn $method(self, rhs: &GrossNumber) -> GrossNumber {
                $body(self, rhs)
            }
        }
        impl $trait<GrossNumber> for GrossNumber {
            type Output = GrossNumber;
            fn $method(self, rhs: GrossNumber) -> GrossNumber {
                $body(&self, &rhs)
            }
        }
        impl $trait<&GrossNumber> for GrossNumber {
            type Output = GrossNumber;
            fn $method(self, rhs: &GrossNumber) -> GrossNumber {
                $body(&self, rhs)
            }
        }
        impl $trait<GrossNumber> for &GrossNumber {
            type Output = GrossNumber;
            fn $method(self, rhs: GrossNumber) -> GrossNumber {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, merge_add);
forward_binop!(Sub, sub, |x: &GrossNumber, y: &GrossNumber| merge_add(
    x, &-y
));
forward_binop!(Mul, mul, convolve);
