//! Exact q-expansions of modular units and numeric Siegel theta constants.
//!
//! Everything here is `no_std` with `alloc`. Series coefficients live in
//! cyclotomic fields and are computed exactly; the only floating-point code
//! is the theta-constant evaluator in [`thetag`] and the point evaluation
//! of series.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod classical;
pub mod cusps;
pub mod cycloq;
pub mod linalg;
pub mod qseries;
pub mod thetag;
pub mod units;

use core::fmt;

pub use cycloq::{e_of, Cyclotomic};
pub use qseries::{Exponent, PuiseuxSeries};

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DivisionByZero,
    InvalidOrder,
    WeightMismatch { left: i32, right: i32 },
    ZeroSeries,
    ZeroPower,
    VanishingFactor,
    IntegralIndex,
    DegenerateIndexPair,
    InvalidLevel(i64),
    NotUnimodular,
    NotSymmetric,
    NotPositiveDefinite,
    HalfIntegralCharacteristic,
    DimensionMismatch { expected: usize, found: usize },
    InvalidTruncation,
    InvalidTolerance,
    Overflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::InvalidOrder => write!(f, "invalid cyclotomic order or coordinate length"),
            Error::WeightMismatch { left, right } => {
                write!(f, "cannot add series with (2πi)-powers {} and {}", left, right)
            }
            Error::ZeroSeries => write!(f, "series is zero to its truncation order"),
            Error::ZeroPower => write!(f, "zero series raised to a non-positive power"),
            Error::VanishingFactor => write!(f, "product contains an identically vanishing factor"),
            Error::IntegralIndex => write!(f, "index vector is integral"),
            Error::DegenerateIndexPair => write!(f, "index vectors are congruent up to sign mod Z^2"),
            Error::InvalidLevel(n) => write!(f, "invalid level {}", n),
            Error::NotUnimodular => write!(f, "matrix does not have determinant 1"),
            Error::NotSymmetric => write!(f, "matrix is not symmetric"),
            Error::NotPositiveDefinite => write!(f, "imaginary part is not positive definite"),
            Error::HalfIntegralCharacteristic => write!(f, "characteristic lies in (1/2+Z)^2"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {}, found {}", expected, found)
            }
            Error::InvalidTruncation => write!(f, "truncation order out of range"),
            Error::InvalidTolerance => write!(f, "tolerance must be positive and finite"),
            Error::Overflow => write!(f, "value exceeds machine-size exponent range"),
        }
    }
}

impl core::error::Error for Error {}
