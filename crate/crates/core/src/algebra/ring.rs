//! Exponential, logarithm and BCH in graded-nilpotent truncated algebras.
//!
//! A [`TruncatedRing`] is an associative algebra truncated at some order `N`
//! such that any product of more than `N` elements of the augmentation ideal
//! vanishes. Power series in such elements are therefore finite sums and
//! every routine here is exact.

use super::{Carrier, LamSeries, Rat};
use crate::error::Result;

pub trait TruncatedRing {
    type Elem: Clone + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Rat) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    /// Truncation order; bounds the number of nonvanishing powers.
    fn order(&self) -> usize;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(b, &-Rat::one()))
    }
}

/// `exp(x) = sum_{n=0}^{N} x^n / n!`. `x` must lie in the augmentation ideal;
/// callers check that precondition in their own terms.
pub fn exp_nilpotent<R: TruncatedRing>(ring: &R, x: &R::Elem) -> Result<R::Elem> {
    let mut acc = ring.one();
    let mut term = ring.one();
    for n in 1..=ring.order() {
        term = ring.scale(&ring.mul(&term, x)?, &Rat::frac(1, n as i64));
        acc = ring.add(&acc, &term);
    }
    Ok(acc)
}

/// `log(1 + x) = sum_{n=1}^{N} (-1)^{n+1} x^n / n` for `u = 1 + x`.
pub fn log_unipotent<R: TruncatedRing>(ring: &R, u: &R::Elem) -> Result<R::Elem> {
    let x = ring.sub(u, &ring.one());
    let mut acc = ring.zero();
    let mut power = ring.one();
    for n in 1..=ring.order() {
        power = ring.mul(&power, &x)?;
        let sign = if n % 2 == 1 { 1 } else { -1 };
        acc = ring.add(&acc, &ring.scale(&power, &Rat::frac(sign, n as i64)));
    }
    Ok(acc)
}

/// Classical Baker-Campbell-Hausdorff series `log(exp(x) exp(y))`.
pub fn bch<R: TruncatedRing>(ring: &R, x: &R::Elem, y: &R::Elem) -> Result<R::Elem> {
    let ex = exp_nilpotent(ring, x)?;
    let ey = exp_nilpotent(ring, y)?;
    log_unipotent(ring, &ring.mul(&ex, &ey)?)
}

/// `A[[lambda]]` truncated at `order` with the pointwise product of the
/// carrier; the home of ordinary exponentials such as `exp(Omega_q)`.
#[derive(Debug, Clone)]
pub struct PointwiseRing<C> {
    order: usize,
    proto: C,
}

impl<C: Carrier> PointwiseRing<C> {
    /// `proto` fixes the shape (matrix dimension, grid) of the carrier.
    pub fn new(order: usize, proto: &C) -> Self {
        PointwiseRing { order, proto: proto.zero_like() }
    }
}

impl<C: Carrier> TruncatedRing for PointwiseRing<C> {
    type Elem = LamSeries<C>;

    fn zero(&self) -> LamSeries<C> {
        LamSeries::zero(self.order, &self.proto)
    }

    fn one(&self) -> LamSeries<C> {
        LamSeries::constant(self.order, self.proto.one_like())
    }

    fn add(&self, a: &LamSeries<C>, b: &LamSeries<C>) -> LamSeries<C> {
        a.plus(b)
    }

    fn scale(&self, a: &LamSeries<C>, c: &Rat) -> LamSeries<C> {
        a.scale(c)
    }

    fn mul(&self, a: &LamSeries<C>, b: &LamSeries<C>) -> Result<LamSeries<C>> {
        a.pointwise_mul(b)
    }

    fn order(&self) -> usize {
        self.order
    }
}
