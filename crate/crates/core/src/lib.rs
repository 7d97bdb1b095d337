//! Exact arithmetic with finite, infinite and infinitesimal numbers written
//! in the positional numeral system with base grossone (①).
//!
//! - [`gross`]: canonical gross-numbers, arithmetic, ordering, division.
//! - [`numio`]: lexer, parsers and canonical printer.
//! - [`eval`]: expression evaluation and piecewise functions.
//! - [`summation`]: closed forms for sums with a gross number of items.
//! - [`setcalc`]: element counts of progression sets, probabilities.

pub mod eval;
pub mod gross;
pub mod numio;
pub mod rational;
pub mod setcalc;
pub mod summation;

pub use gross::{
    normalize, DivResult, GrossError, GrossNumber, GrossTerm, NumClass, Parity, DEFAULT_MAX_TERMS,
};
pub use rational::Rational;
