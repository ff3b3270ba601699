//! Grid functions on `t = jh`, `j = 0..K`, with the difference operator
//! `D_h`, the summation operator `S_h` and the dendriform structure of the
//! weight-`h` Rota-Baxter law.
//!
//! `(S_h f)(jh) = h sum_{k=1}^{j} f((j - k)h)` only looks backwards, so it maps
//! a grid to itself; `D_h` loses the last point.

use serde::{Deserialize, Serialize};

use crate::algebra::{Carrier, LamSeries, Mat, Rat};
use crate::dendriform::{Integrating, TwistedDendriform};
use crate::error::{Error, Result};
use crate::magnus::{integrate_series, lambda, solve_dend_right};

#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFn {
    h: Rat,
    values: Vec<Mat>,
}

impl GridFn {
    pub fn new(h: Rat, values: Vec<Mat>) -> Result<Self> {
        if !h.is_positive() {
            return Err(Error::InvalidParameter(format!("grid step must be positive, got {h}")));
        }
        let Some(first) = values.first() else {
            return Err(Error::GridTooShort { needed: 1, got: 0 });
        };
        let dim = first.dim();
        if let Some(m) = values.iter().find(|m| m.dim() != dim) {
            return Err(Error::DimensionMismatch { left: dim, right: m.dim() });
        }
        Ok(GridFn { h, values })
    }

    /// `m` at every point `0, h, .., steps h`.
    pub fn constant(h: Rat, steps: usize, m: Mat) -> Result<Self> {
        Self::new(h, vec![m; steps + 1])
    }

    pub fn from_fn(h: Rat, steps: usize, f: impl FnMut(usize) -> Mat) -> Result<Self> {
        Self::new(h, (0..=steps).map(f).collect())
    }

    /// Re-checks the invariants, e.g. after deserializing.
    pub fn validated(self) -> Result<Self> {
        Self::new(self.h, self.values)
    }

    pub fn h(&self) -> &Rat {
        &self.h
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `K`, the index of the last grid point.
    pub fn steps(&self) -> usize {
        self.values.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.values[0].dim()
    }

    pub fn values(&self) -> &[Mat] {
        &self.values
    }

    pub fn value(&self, j: usize) -> &Mat {
        &self.values[j]
    }

    /// The first `len` points.
    pub fn restricted(&self, len: usize) -> GridFn {
        GridFn { h: self.h.clone(), values: self.values[..len.min(self.len())].to_vec() }
    }

    pub fn check_grid(&self, other: &GridFn) -> Result<()> {
        if self.h != other.h || self.len() != other.len() {
            return Err(Error::GridMismatch);
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        Ok(())
    }

    fn zip(&self, other: &GridFn, f: impl Fn(&Mat, &Mat) -> Mat) -> GridFn {
        self.check_grid(other).expect("grid functions on the same grid");
        GridFn { h: self.h.clone(), values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect() }
    }

    fn map(&self, f: impl Fn(&Mat) -> Mat) -> GridFn {
        GridFn { h: self.h.clone(), values: self.values.iter().map(f).collect() }
    }

    pub fn try_add(&self, other: &GridFn) -> Result<GridFn> {
        self.check_grid(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &GridFn) -> Result<GridFn> {
        self.check_grid(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    pub fn try_mul(&self, other: &GridFn) -> Result<GridFn> {
        self.check_grid(other)?;
        Ok(self.zip(other, |a, b| a * b))
    }

    pub fn scale(&self, c: &Rat) -> GridFn {
        self.map(|m| m.scale(c))
    }
}

impl std::fmt::Debug for GridFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GridFn(h = {}, {:?})", self.h, self.values)
    }
}

impl Carrier for GridFn {
    fn zero_like(&self) -> Self {
        self.map(|m| Mat::zero(m.dim()))
    }

    fn one_like(&self) -> Self {
        self.map(|m| Mat::identity(m.dim()))
    }

    fn is_zero(&self) -> bool {
        self.values.iter().all(Mat::is_zero)
    }

    fn plus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    fn minus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    fn times(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a * b)
    }

    fn scaled(&self, c: &Rat) -> Self {
        self.scale(c)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        self.check_grid(other)
    }
}

/// `(D_h f)(jh) = (f((j+1)h) - f(jh)) / h` for `j < K`.
pub fn diff_h(f: &GridFn) -> Result<GridFn> {
    if f.len() < 2 {
        return Err(Error::GridTooShort { needed: 2, got: f.len() });
    }
    let inv = f.h.recip()?;
    let values = f.values.windows(2).map(|w| (&w[1] - &w[0]).scale(&inv)).collect();
    Ok(GridFn { h: f.h.clone(), values })
}

/// `(S_h f)(jh) = h sum_{i<j} f(ih)`, zero at `t = 0`.
pub fn sum_h(f: &GridFn) -> GridFn {
    let mut acc = Mat::zero(f.dim());
    let mut values = Vec::with_capacity(f.len());
    for v in &f.values {
        values.push(acc.scale(&f.h));
        acc = &acc + v;
    }
    GridFn { h: f.h.clone(), values }
}

/// Both sides of `S_h(f S_h g + S_h f g + h f g) = S_h f S_h g`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RbCheck {
    pub lhs: GridFn,
    pub rhs: GridFn,
    /// Grid indices where the sides differ.
    pub mismatches: Vec<usize>,
}

impl RbCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn rb_check_h(f: &GridFn, g: &GridFn) -> Result<RbCheck> {
    f.check_grid(g)?;
    let (sf, sg) = (sum_h(f), sum_h(g));
    let inner = f.times(&sg).plus(&sf.times(g)).plus(&f.times(g).scale(&f.h));
    let lhs = sum_h(&inner);
    let rhs = sf.times(&sg);
    let mismatches = (0..f.len()).filter(|&j| lhs.values[j] != rhs.values[j]).collect();
    Ok(RbCheck { lhs, rhs, mismatches })
}

/// `F = 1 + S_h(F U)` by forward recursion `F((j+1)h) = F(jh)(1 + h U(jh))`.
pub fn solve_fd(u: &GridFn) -> GridFn {
    let one = Mat::identity(u.dim());
    let mut f = one.clone();
    let mut values = Vec::with_capacity(u.len());
    for v in &u.values {
        values.push(f.clone());
        f = &f * &(&one + &v.scale(&u.h));
    }
    GridFn { h: u.h.clone(), values }
}

/// `F - 1 - S_h(F U)`.
pub fn fd_residual(f: &GridFn, u: &GridFn) -> Result<GridFn> {
    f.check_grid(u)?;
    Ok(f.minus(&f.one_like()).minus(&sum_h(&f.times(u))))
}

/// `D_h F - F U` on the points `j < K`.
pub fn fd_derivative_residual(f: &GridFn, u: &GridFn) -> Result<GridFn> {
    f.check_grid(u)?;
    let d = diff_h(f)?;
    let k = d.len();
    Ok(d.minus(&f.restricted(k).times(&u.restricted(k))))
}

/// `f > g = S_h(f) g`, `f < g = f S_h(g) + h f g`, `phi = id`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FdDendriform;

impl TwistedDendriform for FdDendriform {
    type Elem = GridFn;

    fn prec(&self, x: &GridFn, y: &GridFn) -> GridFn {
        x.times(&sum_h(y)).plus(&x.times(y).scale(&x.h))
    }

    fn succ(&self, x: &GridFn, y: &GridFn) -> GridFn {
        sum_h(x).times(y)
    }

    fn phi(&self, x: &GridFn) -> GridFn {
        x.clone()
    }

    fn phi_inv(&self, x: &GridFn) -> GridFn {
        x.clone()
    }
}

impl Integrating for FdDendriform {
    fn integrate(&self, x: &GridFn) -> GridFn {
        sum_h(x)
    }
}

/// The same solution through the series route: `X = 1 + X > lambda U`,
/// then `F = S_h(X)` at `lambda = 1`. Exact once `order >= K`, because
/// grade `n` of `S_h(X)` vanishes at points `j < n`.
pub fn solve_fd_dendriform(u: &GridFn, order: usize) -> Result<GridFn> {
    let alg = FdDendriform;
    let x = solve_dend_right(&alg, &-&lambda(u, order))?;
    let f: LamSeries<GridFn> = integrate_series(&alg, &x);
    Ok(f.grades().iter().skip(1).fold(f.grade(0).clone(), |acc, g| acc.plus(g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dendriform::{check_derived_products, check_twisted_axioms};
    use crate::sample::Sampler;
    use proptest::prelude::*;

    fn half() -> Rat {
        Rat::frac(1, 2)
    }

    fn random_grid(s: &mut Sampler, dim: usize, steps: usize) -> GridFn {
        GridFn::from_fn(half(), steps, |_| s.mat(dim)).unwrap()
    }

    #[test]
    fn construction() {
        assert!(GridFn::new(Rat::zero(), vec![Mat::zero(1)]).is_err());
        assert!(GridFn::new(half(), vec![]).is_err());
        assert!(GridFn::new(half(), vec![Mat::zero(1), Mat::zero(2)]).is_err());
        let f = GridFn::constant(half(), 4, Mat::identity(2)).unwrap();
        assert_eq!((f.len(), f.steps(), f.dim()), (5, 4, 2));
        let g = GridFn::constant(Rat::frac(1, 3), 4, Mat::identity(2)).unwrap();
        assert_eq!(f.try_add(&g), Err(Error::GridMismatch));
    }

    #[test]
    fn differences() {
        let c = GridFn::constant(half(), 5, Mat::from_ints(&[&[1, 2], &[3, 4]])).unwrap();
        assert!(diff_h(&c).unwrap().is_zero());
        let t = GridFn::from_fn(half(), 5, |j| Mat::scalar(1, Rat::frac(j as i64, 2))).unwrap();
        assert!(diff_h(&t).unwrap().values().iter().all(|m| m == &Mat::identity(1)));
        let short = GridFn::constant(half(), 0, Mat::zero(1)).unwrap();
        assert_eq!(diff_h(&short), Err(Error::GridTooShort { needed: 2, got: 1 }));
    }

    #[test]
    fn summation() {
        let mut s = Sampler::new(3);
        let f = random_grid(&mut s, 2, 10);
        let sf = sum_h(&f);
        assert!(sf.value(0).is_zero());
        assert_eq!(sf.value(1), &f.value(0).scale(&half()));
        assert_eq!(diff_h(&sf).unwrap(), f.restricted(10));
        let back = sum_h(&diff_h(&f).unwrap());
        for j in 0..10 {
            assert_eq!(back.value(j), &(f.value(j) - f.value(0)));
        }
    }

    #[test]
    fn constant_forcing() {
        let c = Rat::frac(2, 3);
        let u = GridFn::constant(half(), 12, Mat::scalar(1, c.clone())).unwrap();
        let f = solve_fd(&u);
        let base = Rat::one() + &half() * &c;
        for j in 0..=12 {
            assert_eq!(f.value(j), &Mat::scalar(1, base.powu(j as u32)));
        }
        let zero = GridFn::constant(half(), 6, Mat::zero(2)).unwrap();
        assert_eq!(solve_fd(&zero), zero.one_like());
    }

    #[test]
    fn dendriform_structure() {
        let mut s = Sampler::new(7);
        let triples: Vec<_> =
            (0..16).map(|_| (random_grid(&mut s, 2, 8), random_grid(&mut s, 2, 8), random_grid(&mut s, 2, 8))).collect();
        for r in check_twisted_axioms(&FdDendriform, &triples).iter().chain(&check_derived_products(&FdDendriform, &triples)) {
            assert!(r.passed(), "{}", r.axiom);
        }
    }

    #[test]
    fn series_route_agrees() {
        let mut s = Sampler::new(11);
        for _ in 0..3 {
            let u = random_grid(&mut s, 2, 6);
            assert_eq!(solve_fd_dendriform(&u, 6).unwrap(), solve_fd(&u));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn rota_baxter(seed in any::<u64>(), dim in 1usize..3) {
            let mut s = Sampler::new(seed);
            let (f, g) = (random_grid(&mut s, dim, 16), random_grid(&mut s, dim, 16));
            prop_assert!(rb_check_h(&f, &g).unwrap().passed());
        }

        #[test]
        fn modified_leibniz(seed in any::<u64>()) {
            let mut s = Sampler::new(seed);
            let (f, g) = (random_grid(&mut s, 2, 8), random_grid(&mut s, 2, 8));
            let (df, dg) = (diff_h(&f).unwrap(), diff_h(&g).unwrap());
            let (f8, g8) = (f.restricted(8), g.restricted(8));
            let rhs = df.times(&g8).plus(&f8.times(&dg)).plus(&df.times(&dg).scale(&half()));
            prop_assert_eq!(diff_h(&f.times(&g)).unwrap(), rhs);
        }

        #[test]
        fn solver_residuals(seed in any::<u64>()) {
            let mut s = Sampler::new(seed);
            let u = random_grid(&mut s, 2, 12);
            let f = solve_fd(&u);
            prop_assert!(fd_residual(&f, &u).unwrap().is_zero());
            prop_assert!(fd_derivative_residual(&f, &u).unwrap().is_zero());
        }
    }
}
