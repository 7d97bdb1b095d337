//! Sums with an explicitly given number of items, finite or infinite.
//!
//! A sum over `k` items with a polynomial summand has a polynomial closed
//! form in `k` (Faulhaber), so it can be evaluated at any gross-number `k`.
//! Alternating sums split into their odd- and even-indexed halves, whose item
//! counts depend on the parity of `k`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::eval::{evaluate, Env, EvalError};
use crate::gross::{GrossError, GrossNumber, Parity};
use crate::numio::{BinOp, Expr, ExprKind};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SumError {
    #[error("summand is not a polynomial in {var}: {reason}")]
    NotPolynomial { var: String, reason: String },
    #[error("invalid item count {0}: must be a nonnegative integer-like number")]
    InvalidItemCount(GrossNumber),
    #[error(transparent)]
    Arithmetic(#[from] GrossError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Bernoulli number `B_n` with `B_1 = +1/2`.
pub fn bernoulli(n: usize) -> Rational {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut known = cache.lock().unwrap_or_else(|e| e.into_inner());
    if known.len() <= n {
        *known = akiyama_tanigawa(n.max(2 * known.len()));
    }
    known[n].clone()
}

fn akiyama_tanigawa(upto: usize) -> Vec<Rational> {
    let mut row: Vec<Rational> = Vec::with_capacity(upto + 1);
    let mut out = Vec::with_capacity(upto + 1);
    for m in 0..=upto {
        row.push(rational::from_frac(1, m as i64 + 1));
        for j in (1..=m).rev() {
            row[j - 1] = rational::from_int(j as i64) * (&row[j - 1] - &row[j]);
        }
        out.push(row[0].clone());
    }
    out
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Coefficients (index = power of `k`) of the polynomial `Σ_{i=1}^{k} i^j`.
pub fn faulhaber_coefficients(j: usize) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<Vec<Option<Vec<Rational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    if let Some(Some(c)) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(j) {
        return c.clone();
    }
    let scale = rational::from_frac(1, j as i64 + 1);
    let mut coeffs = vec![Rational::zero(); j + 2];
    for m in 0..=j {
        coeffs[j + 1 - m] = Rational::from_integer(binomial(j + 1, m)) * bernoulli(m) * &scale;
    }
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    if guard.len() <= j {
        guard.resize(j + 1, None);
    }
    guard[j] = Some(coeffs.clone());
    coeffs
}

fn eval_rational_poly(coeffs: &[Rational], k: &GrossNumber) -> GrossNumber {
    coeffs.iter().rev().fold(GrossNumber::zero(), |acc, c| {
        &acc * k + GrossNumber::from_rational(c.clone())
    })
}

/// `Σ_{i=1}^{k} i^j` evaluated exactly at `k`.
pub fn faulhaber(j: usize, k: &GrossNumber) -> GrossNumber {
    eval_rational_poly(&faulhaber_coefficients(j), k)
}

/// Summand `p(i) = Σ_j c_j·i^j` with gross-number coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolynomialSummand {
    coefficients: Vec<GrossNumber>,
}

impl PolynomialSummand {
    pub fn new(mut coefficients: Vec<GrossNumber>) -> Self {
        while coefficients.last().is_some_and(GrossNumber::is_zero) {
            coefficients.pop();
        }
        PolynomialSummand { coefficients }
    }

    pub fn constant(c: GrossNumber) -> Self {
        Self::new(vec![c])
    }

    /// The summand `i`.
    pub fn identity() -> Self {
        Self::new(vec![GrossNumber::zero(), GrossNumber::one()])
    }

    /// The summand `i^j`.
    pub fn monomial(j: usize) -> Self {
        let mut c = vec![GrossNumber::zero(); j + 1];
        c[j] = GrossNumber::one();
        Self::new(c)
    }

    pub fn coefficients(&self) -> &[GrossNumber] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn evaluate(&self, i: &GrossNumber) -> GrossNumber {
        self.coefficients
            .iter()
            .rev()
            .fold(GrossNumber::zero(), |acc, c| &acc * i + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coefficients.len().max(other.coefficients.len());
        let zero = GrossNumber::zero();
        Self::new(
            (0..n)
                .map(|j| {
                    self.coefficients.get(j).unwrap_or(&zero)
                        + other.coefficients.get(j).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &GrossNumber) -> Self {
        Self::new(self.coefficients.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out =
            vec![GrossNumber::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (a, x) in self.coefficients.iter().enumerate() {
            for (b, y) in other.coefficients.iter().enumerate() {
                out[a + b] = &out[a + b] + x * y;
            }
        }
        Self::new(out)
    }

    /// The polynomial `t ↦ p(a·t + b)`.
    pub fn compose_affine(&self, a: &GrossNumber, b: &GrossNumber) -> Self {
        let inner = Self::new(vec![b.clone(), a.clone()]);
        self.coefficients
            .iter()
            .rev()
            .fold(Self::default(), |acc, c| {
                acc.mul(&inner).add(&Self::constant(c.clone()))
            })
    }

    /// Reads a summand expression as a polynomial in `var`. Other names are
    /// looked up in `env`; calls are allowed only on arguments free of `var`.
    pub fn from_expr(expr: &Expr, var: &str, env: &Env) -> Result<Self, SumError> {
        let not_poly = |reason: String| SumError::NotPolynomial {
            var: var.to_string(),
            reason,
        };
        match &expr.kind {
            ExprKind::Literal(q) => Ok(Self::constant(GrossNumber::from_rational(q.clone()))),
            ExprKind::Grossone => Ok(Self::constant(GrossNumber::grossone())),
            ExprKind::Var(name) if name == var => Ok(Self::identity()),
            ExprKind::Var(_) => Ok(Self::constant(evaluate(expr, env)?)),
            ExprKind::Neg(inner) => {
                Ok(Self::from_expr(inner, var, env)?.scale(&GrossNumber::from_int(-1)))
            }
            ExprKind::Binary(op, l, r) => {
                let a = Self::from_expr(l, var, env)?;
                let b = Self::from_expr(r, var, env)?;
                match op {
                    BinOp::Add => Ok(a.add(&b)),
                    BinOp::Sub => Ok(a.add(&b.scale(&GrossNumber::from_int(-1)))),
                    BinOp::Mul => Ok(a.mul(&b)),
                    BinOp::Div => {
                        if b.degree() > 0 {
                            return Err(not_poly(format!("division by {r}")));
                        }
                        let d = b.coefficients.first().cloned().unwrap_or_default();
                        let coeffs = a
                            .coefficients
                            .iter()
                            .map(|c| c.exact_divide(&d))
                            .collect::<Result<Vec<_>, _>>()?;
                        Ok(Self::new(coeffs))
                    }
                    BinOp::Pow => {
                        if b.degree() > 0 {
                            return Err(not_poly(format!(
                                "{var} appears in the exponent of {expr}; such sums have no finite closed form at gross item counts"
                            )));
                        }
                        let e = b.coefficients.first().cloned().unwrap_or_default();
                        if a.degree() == 0 {
                            let base = a.coefficients.first().cloned().unwrap_or_default();
                            return Ok(Self::constant(base.power_gross(&e)?));
                        }
                        let n = e
                            .as_rational()
                            .as_ref()
                            .and_then(rational::to_i64)
                            .filter(|n| *n >= 0)
                            .ok_or_else(|| {
                                not_poly(format!("exponent {e} is not a nonnegative integer"))
                            })?;
                        Ok((0..n).fold(Self::constant(GrossNumber::one()), |acc, _| acc.mul(&a)))
                    }
                }
            }
            ExprKind::Call(_, args) => {
                for a in args {
                    if Self::from_expr(a, var, env)?.degree() > 0 {
                        return Err(not_poly(format!("{var} appears inside the call {expr}")));
                    }
                }
                Ok(Self::constant(evaluate(expr, env)?))
            }
            ExprKind::Compare(..) => Err(not_poly(format!("comparison {expr}"))),
        }
    }
}

/// Checks that `k` can be a number of items: nonnegative and integer-like.
pub fn validate_item_count(k: &GrossNumber) -> Result<(), SumError> {
    if k.sign() < 0 || !k.is_parity_eligible() {
        return Err(SumError::InvalidItemCount(k.clone()));
    }
    Ok(())
}

/// `Σ_{i=1}^{k} p(i)`, exact.
pub fn sum_polynomial(p: &PolynomialSummand, k: &GrossNumber) -> GrossNumber {
    p.coefficients
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(GrossNumber::zero(), |acc, (j, c)| acc + c * faulhaber(j, k))
}

/// `1 - 1 + 1 - …` with `k` items.
pub fn sum_alternating_unit(k: &GrossNumber) -> Result<GrossNumber, SumError> {
    Ok(match k.parity()? {
        Parity::Even => GrossNumber::zero(),
        Parity::Odd => GrossNumber::one(),
    })
}

/// The two halves of `Σ_{i=1}^{k} (-1)^(i+1) p(i)`: the sum over odd `i`
/// and the sum over even `i`.
pub fn alternating_subsums(
    p: &PolynomialSummand,
    k: &GrossNumber,
) -> Result<(GrossNumber, GrossNumber), SumError> {
    let half = rational::from_frac(1, 2);
    let one = GrossNumber::one();
    let (odd_items, even_items) = match k.parity()? {
        Parity::Even => {
            let h = k.scalar_mul(&half);
            (h.clone(), h)
        }
        Parity::Odd => ((k + &one).scalar_mul(&half), (k - &one).scalar_mul(&half)),
    };
    let two = GrossNumber::from_int(2);
    let odd_terms = p.compose_affine(&two, &GrossNumber::from_int(-1));
    let even_terms = p.compose_affine(&two, &GrossNumber::zero());
    Ok((
        sum_polynomial(&odd_terms, &odd_items),
        sum_polynomial(&even_terms, &even_items),
    ))
}

/// `p(1) - p(2) + p(3) - …` with `k` items.
pub fn sum_alternating_polynomial(
    p: &PolynomialSummand,
    k: &GrossNumber,
) -> Result<GrossNumber, SumError> {
    let (odd, even) = alternating_subsums(p, k)?;
    Ok(odd - even)
}

/// Direct iteration `Σ_{i=1}^{k} expr` with `var` bound to each `i`.
pub fn sum_finite_generic(
    expr: &Expr,
    var: &str,
    k: u64,
    env: &Env,
) -> Result<GrossNumber, EvalError> {
    let mut scope = env.clone();
    let mut total = GrossNumber::zero();
    for i in 1..=k {
        scope.bind(var, GrossNumber::from_int(i));
        total = total + evaluate(expr, &scope)?;
    }
    Ok(total)
}
