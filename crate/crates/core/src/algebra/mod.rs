//! Exact arithmetic foundation: rationals, matrices, matrix-coefficient
//! polynomials, graded series in `lambda`, and the free algebra on `{x, y}`.

mod free;
mod mat;
mod numbers;
mod poly;
mod rat;
mod ring;
mod series;

use std::fmt;

pub use free::{free_mul, FreeRing, FreeSeries, Letter, Word};
pub use mat::Mat;
pub use numbers::{bernoulli, bernoulli_numbers, binomial, factorial, multinomial};
pub use poly::MatPoly;
pub use rat::{rat_arith, ArithOp, Rat};
pub use ring::{bch, exp_nilpotent, log_unipotent, PointwiseRing, TruncatedRing};
pub use series::{lam_mul, LamSeries, Product};

pub(crate) use poly::TermJson;

use crate::error::Result;

/// A function algebra `A` that can carry dendriform structure: a vector space
/// over [`Rat`] with an associative pointwise product and a unit.
///
/// Implemented by [`MatPoly`] and by grid functions. Every element knows its
/// own shape (matrix dimension, grid), so `zero_like`/`one_like` build
/// compatible constants.
pub trait Carrier: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    /// The pointwise unit `1_A` (the constant function 1).
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    /// Pointwise (associative) product.
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Rat) -> Self;

    fn negated(&self) -> Self {
        self.scaled(&-Rat::one())
    }

    /// Checks that two elements live in the same algebra.
    fn compatible(&self, other: &Self) -> Result<()>;
}
