//! Exact Boolean cumulant calculus for quadratic forms in Boolean independent
//! variables.
//!
//! The crate covers interval-partition combinatorics ([`partitions`]), Boolean
//! moments and cumulants with a brute-force expansion oracle ([`cumulants`]),
//! truncated rational power series and tangent-family numbers ([`series`]),
//! Gaussian-rational matrices and the quadratic-form cumulant engines
//! ([`matrix`]), quadratic statistics ([`statistics`]) and the floating-point
//! side of the Boolean tangent law ([`measure`]).
//!
//! All algebraic identities are computed with [`Rational`] (arbitrary precision),
//! so equality checks are exact.

pub mod cumulants;
pub mod error;
pub mod matrix;
pub mod measure;
pub mod partitions;
pub mod rational;
pub mod series;
pub mod statistics;

pub use cumulants::{CumulantSequence, Distribution, Family, NCPolynomial};
pub use error::{Error, Result};
pub use matrix::{GaussianRational, HermitianMatrix, QFCumulantReport};
pub use partitions::{ClosureStructure, IntervalPartition};
pub use rational::Rational;
pub use series::{FormalSeries, RationalPolynomial, SeriesKind};
