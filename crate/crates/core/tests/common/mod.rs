//! Shared generators and the independent fraction oracle used by the
//! integration tests.
#![allow(dead_code)]

use std::cmp::Ordering;

use grossone::rational::from_frac;
use grossone::setcalc::ProgressionSet;
use grossone::{normalize, GrossNumber, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let n = rng.random_range(-6i64..=6);
    let d = rng.random_range(1i64..=4);
    from_frac(n, d)
}

fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let q = small_rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

/// Exponents are drawn from a small pool so that terms collide often.
fn exponent(rng: &mut impl Rng, depth: usize) -> GrossNumber {
    if depth <= 1 || rng.random_bool(0.6) {
        let halves = rng.random_range(-6i64..=6);
        return GrossNumber::from_rational(from_frac(halves, 2));
    }
    let n = rng.random_range(1..=3);
    normalize((0..n).map(|_| {
        let c = from_frac(rng.random_range(-3i64..=3), rng.random_range(1i64..=2));
        (c, exponent(rng, depth - 1))
    }))
}

/// Random canonical gross-number: at most five terms, grosspower nesting at
/// most `depth`.
pub fn gross(rng: &mut impl Rng, depth: usize) -> GrossNumber {
    let n = rng.random_range(0..=5);
    normalize((0..n).map(|_| (nonzero_rational(rng), exponent(rng, depth))))
}

pub fn nonzero_gross(rng: &mut impl Rng, depth: usize) -> GrossNumber {
    loop {
        let x = gross(rng, depth);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn positive_gross(rng: &mut impl Rng, depth: usize) -> GrossNumber {
    let x = nonzero_gross(rng, depth);
    if x.sign() < 0 {
        -x
    } else {
        x
    }
}

/// Minimal exact fraction over `BigInt`, written independently of the
/// library's rational type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frac {
    n: BigInt,
    d: BigInt,
}

impl Frac {
    pub fn new(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Option<Frac> {
        let (mut n, mut d) = (n.into(), d.into());
        if d.is_zero() {
            return None;
        }
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if !g.is_zero() && !g.is_one() {
            n /= &g;
            d /= &g;
        }
        Some(Frac { n, d })
    }

    pub fn int(v: i64) -> Frac {
        Frac::new(v, 1).unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.n.is_zero()
    }

    pub fn add(&self, o: &Frac) -> Frac {
        Frac::new(&self.n * &o.d + &o.n * &self.d, &self.d * &o.d).unwrap()
    }

    pub fn neg(&self) -> Frac {
        Frac::new(-&self.n, self.d.clone()).unwrap()
    }

    pub fn sub(&self, o: &Frac) -> Frac {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Frac) -> Frac {
        Frac::new(&self.n * &o.n, &self.d * &o.d).unwrap()
    }

    pub fn div(&self, o: &Frac) -> Option<Frac> {
        Frac::new(&self.n * &o.d, &self.d * &o.n)
    }

    pub fn pow(&self, e: i64) -> Option<Frac> {
        if self.is_zero() && e <= 0 {
            return None;
        }
        let mut acc = Frac::int(1);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(self);
        }
        if e < 0 {
            Frac::int(1).div(&acc)
        } else {
            Some(acc)
        }
    }

    pub fn cmp(&self, o: &Frac) -> Ordering {
        (&self.n * &o.d).cmp(&(&o.n * &self.d))
    }

    /// Converts to the library type for comparison at the end.
    pub fn to_gross(&self) -> GrossNumber {
        GrossNumber::from_rational(Rational::new(self.n.clone(), self.d.clone()))
    }

    pub fn from_gross(x: &GrossNumber) -> Option<Frac> {
        let q = x.as_rational()?;
        Frac::new(q.numer().clone(), q.denom().clone())
    }
}

/// Finite expression tree for the oracle comparison.
#[derive(Debug, Clone)]
pub enum FExpr {
    Lit(i64, u32),
    Neg(Box<FExpr>),
    Bin(char, Box<FExpr>, Box<FExpr>),
    Pow(Box<FExpr>, i64),
}

impl FExpr {
    pub fn random(rng: &mut impl Rng, depth: usize) -> FExpr {
        if depth == 0 || rng.random_bool(0.25) {
            let places = rng.random_range(0..=2);
            return FExpr::Lit(rng.random_range(0..=40), places);
        }
        match rng.random_range(0..10) {
            0 => FExpr::Neg(Box::new(FExpr::random(rng, depth - 1))),
            1 => FExpr::Pow(
                Box::new(FExpr::random(rng, depth - 1)),
                rng.random_range(-2..=3),
            ),
            k => {
                let op = ['+', '-', '*', '/'][k % 4];
                FExpr::Bin(
                    op,
                    Box::new(FExpr::random(rng, depth - 1)),
                    Box::new(FExpr::random(rng, depth - 1)),
                )
            }
        }
    }

    pub fn render(&self) -> String {
        match self {
            FExpr::Lit(v, 0) => v.to_string(),
            FExpr::Lit(v, places) => {
                let s = format!("{:0width$}", v, width = *places as usize + 1);
                let (i, f) = s.split_at(s.len() - *places as usize);
                format!("{i}.{f}")
            }
            FExpr::Neg(e) => format!("-({})", e.render()),
            FExpr::Bin(op, l, r) => format!("({}) {op} ({})", l.render(), r.render()),
            FExpr::Pow(b, e) => format!("({})^{{{e}}}", b.render()),
        }
    }

    /// `None` on division by zero or zero to a non-positive power.
    pub fn oracle(&self) -> Option<Frac> {
        match self {
            FExpr::Lit(v, places) => Frac::new(*v, BigInt::from(10).pow(*places)),
            FExpr::Neg(e) => Some(e.oracle()?.neg()),
            FExpr::Bin(op, l, r) => {
                let a = l.oracle()?;
                let b = r.oracle()?;
                match op {
                    '+' => Some(a.add(&b)),
                    '-' => Some(a.sub(&b)),
                    '*' => Some(a.mul(&b)),
                    _ => a.div(&b),
                }
            }
            FExpr::Pow(b, e) => b.oracle()?.pow(*e),
        }
    }
}

/// A random pair `(inner, outer)` of progressions with `inner ⊆ outer`.
pub fn nested_progressions(rng: &mut impl Rng) -> (ProgressionSet, ProgressionSet) {
    let g1 = GrossNumber::grossone();
    let outer_count = if rng.random_bool(0.5) {
        GrossNumber::from_int(rng.random_range(3..=40))
    } else {
        let lead = from_frac(rng.random_range(1..=6), 2);
        g1.scalar_mul(&lead) + GrossNumber::from_int(rng.random_range(-5..=5))
    };
    let outer_start = GrossNumber::from_int(rng.random_range(-10..=10));
    let outer_step = from_frac(rng.random_range(1..=4), rng.random_range(1..=2));
    let outer = ProgressionSet::new(outer_start, outer_step.clone(), outer_count.clone()).unwrap();

    // inner occupies outer indices first, first+m, ..., first+m*(c-1)
    let m: i64 = rng.random_range(1..=3);
    let first: i64 = rng.random_range(1..=3);
    let tail_room = &outer_count - GrossNumber::from_int(first);
    let finite_tail = tail_room.finite_part().as_integer().unwrap();
    let finite_tail: i64 = finite_tail.try_into().unwrap();
    let slack = finite_tail.rem_euclid(m) + m * rng.random_range(0..=2);
    let span = &tail_room - GrossNumber::from_int(slack);
    if span.sign() < 0 {
        let single =
            ProgressionSet::new(outer.element_at(1), outer_step, GrossNumber::one()).unwrap();
        return (single, outer);
    }
    let inner_count = span.scalar_mul(&from_frac(1, m)) + GrossNumber::one();
    let inner_step = &outer_step * from_frac(m, 1);
    let inner = ProgressionSet::new(outer.element_at(first), inner_step, inner_count).unwrap();
    if rng.random_bool(0.3) {
        let reversed =
            ProgressionSet::new(inner.last(), -inner.step().clone(), inner.count().clone())
                .unwrap();
        return (reversed, outer);
    }
    (inner, outer)
}

/// Random polynomial summand in `i` as source text, with finite and gross
/// coefficients.
pub fn poly_text(rng: &mut impl Rng) -> String {
    let degree = rng.random_range(0..=4);
    let terms: Vec<String> = (0..=degree)
        .map(|d| {
            let n = rng.random_range(-5i64..=5);
            let den = rng.random_range(1i64..=3);
            let coeff = match rng.random_range(0..4) {
                0 => format!("({n}/{den})*G1"),
                1 => format!("({n}/{den})*G1^{{-1}}"),
                _ => format!("({n}/{den})"),
            };
            format!("{coeff}*i^{d}")
        })
        .collect();
    terms.join(" + ")
}
