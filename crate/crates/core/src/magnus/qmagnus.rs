//! The q-Magnus expansion for Jackson integrals and its closed forms.

use serde::Serialize;

use super::{exp_star, integrate_series, lambda, omega_prime, phi_series, sharp, solve_dend_left, solve_dend_right, w_map};
use crate::algebra::{exp_nilpotent, lam_mul, LamSeries, Mat, MatPoly, PointwiseRing, Product, Rat};
use crate::dendriform::QDendriform;
use crate::error::{Error, Result};
use crate::qcalc::QContext;

type Series = LamSeries<MatPoly>;

/// Computes with the element `a` (usually a constant matrix) to order `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnusConfig {
    pub ctx: QContext,
    pub order: usize,
    pub input: MatPoly,
}

impl MagnusConfig {
    pub fn new(ctx: QContext, order: usize, input: MatPoly) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter("order must be at least 1".into()));
        }
        if input.dim() != ctx.dim() {
            return Err(Error::DimensionMismatch { left: ctx.dim(), right: input.dim() });
        }
        Ok(MagnusConfig { ctx, order, input })
    }

    pub fn constant(ctx: QContext, order: usize, a: Mat) -> Result<Self> {
        Self::new(ctx, order, MatPoly::constant(a))
    }

    pub fn algebra(&self) -> QDendriform {
        QDendriform::new(self.ctx.clone())
    }

    /// `lambda a`.
    pub fn lambda_a(&self) -> Series {
        lambda(&self.input, self.order)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MagnusTables {
    pub q: Rat,
    pub order: usize,
    pub input: MatPoly,
    pub omega_prime: Series,
    pub omega_q: Series,
    pub w: Series,
}

/// `Omega'(lambda a)`, `Omega_q = I_q(Omega')` and `W(lambda a)`.
pub fn magnus_tables(cfg: &MagnusConfig) -> Result<MagnusTables> {
    let alg = cfg.algebra();
    let omega_prime = omega_prime(&alg, &cfg.lambda_a())?;
    let omega_q = integrate_series(&alg, &omega_prime);
    let w = w_map(&alg, &cfg.lambda_a())?;
    Ok(MagnusTables { q: cfg.ctx.q().clone(), order: cfg.order, input: cfg.input.clone(), omega_prime, omega_q, w })
}

/// Solutions of the linear equations and of their integrated forms, with
/// the residuals of every defining identity (all zero when exact).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QMagnusSolution {
    pub q: Rat,
    pub order: usize,
    pub omega_prime: Series,
    pub omega_q: Series,
    /// `X = 1 + lambda a < phi(X)`
    pub x: Series,
    /// `Y = 1 - Y > lambda a`
    pub y: Series,
    /// `X^ = I_q(X)`, solving `X^ = 1 + lambda q^{-1} I_q(a phi(X^))`
    pub x_hat: Series,
    /// `Y^ = I_q(Y)`, solving `Y^ = 1 - lambda I_q(Y^ a)`
    pub y_hat: Series,
    pub x_hat_residual: Series,
    pub y_hat_residual: Series,
    /// `Y * X - 1`
    pub inverse_residual: Series,
    /// `exp*(Omega') = X` and `exp*(-Omega') = Y`
    pub exponentials_match: bool,
}

impl QMagnusSolution {
    pub fn passed(&self) -> bool {
        self.exponentials_match
            && self.x_hat_residual.is_zero()
            && self.y_hat_residual.is_zero()
            && self.inverse_residual.is_zero()
    }
}

pub fn q_magnus_solution(cfg: &MagnusConfig) -> Result<QMagnusSolution> {
    let alg = cfg.algebra();
    let la = cfg.lambda_a();
    let omega_p = omega_prime(&alg, &la)?;
    let omega_q = integrate_series(&alg, &omega_p);
    let x = solve_dend_left(&alg, &la)?;
    let y = solve_dend_right(&alg, &la)?;
    let x_hat = integrate_series(&alg, &x);
    let y_hat = integrate_series(&alg, &y);

    let one = LamSeries::constant(cfg.order, MatPoly::one(cfg.input.dim()));
    let i = |s: &Series| integrate_series(&alg, s);
    let y_rhs = one.try_sub(&i(&y_hat.pointwise_mul(&la)?))?;
    let q_inv = cfg.ctx.q().recip()?;
    let x_rhs = one.try_add(&i(&la.pointwise_mul(&phi_series(&alg, &x_hat))?).scale(&q_inv))?;

    let unit = LamSeries::unit(cfg.order, &MatPoly::zero(cfg.input.dim()));
    let inverse_residual = lam_mul(&alg, &y, &x, Product::Assoc)?.try_sub(&unit)?;
    let exponentials_match = exp_star(&alg, &omega_p)? == x && exp_star(&alg, &-&omega_p)? == y;

    Ok(QMagnusSolution {
        q: cfg.ctx.q().clone(),
        order: cfg.order,
        x_hat_residual: x_hat.try_sub(&x_rhs)?,
        y_hat_residual: y_hat.try_sub(&y_rhs)?,
        omega_prime: omega_p,
        omega_q,
        x,
        y,
        x_hat,
        y_hat,
        inverse_residual,
        exponentials_match,
    })
}

fn graded(order: usize, dim: usize, mut grade: impl FnMut(usize) -> MatPoly) -> Series {
    let grades = (0..=order).map(|n| if n == 0 { MatPoly::zero(dim) } else { grade(n) }).collect();
    LamSeries::from_grades(order, Rat::zero(), grades).expect("one shape")
}

fn factorial_rat(n: usize) -> Rat {
    Rat::from(crate::algebra::factorial(n as u32))
}

/// For constant `a`: grade `n` of `W(lambda a)` is
/// `a^n (1 - q)^{n-1} t^{n-1} / n!`.
pub fn w_closed_form(ctx: &QContext, a: &Mat, order: usize) -> Series {
    graded(order, a.dim(), |n| {
        let c = &ctx.one_minus_q().powu(n as u32 - 1) / &factorial_rat(n);
        MatPoly::monomial(n - 1, a.pow(n as u32).scale(&c))
    })
}

/// For constant `a`: grade `n` of `Omega'(lambda a)` is
/// `(q - 1)^{n-1} t^{n-1} a^n / n`.
pub fn omega_prime_closed_form(ctx: &QContext, a: &Mat, order: usize) -> Series {
    let qm1 = ctx.q() - &Rat::one();
    graded(order, a.dim(), |n| {
        let c = &qm1.powu(n as u32 - 1) / &Rat::from_int(n as i64);
        MatPoly::monomial(n - 1, a.pow(n as u32).scale(&c))
    })
}

/// For constant `a`: grade `n` of `Omega_q(lambda a)` is
/// `(q - 1)^{n-1} t^n a^n / (n [n]_q)`.
pub fn omega_q_closed_form(ctx: &QContext, a: &Mat, order: usize) -> Series {
    let qm1 = ctx.q() - &Rat::one();
    graded(order, a.dim(), |n| {
        let c = &qm1.powu(n as u32 - 1) / &(Rat::from_int(n as i64) * ctx.q_number(n as u32));
        MatPoly::monomial(n, a.pow(n as u32).scale(&c))
    })
}

/// Truncated infinite product against the truncated `E_q` series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QDifferenceReport {
    pub q: Rat,
    pub t0: Rat,
    pub factors: usize,
    pub order: usize,
    /// `prod_{n<K} (1 + (1 - q) q^n t0 U)`
    pub product: Mat,
    /// `sum_{n<=N} q^{n(n-1)/2} (t0 U)^n / [n]_q!`
    pub series: Mat,
    /// max-abs entry of `product - series`
    pub residual: Rat,
    pub residual_approx: f64,
    /// max-abs coefficient of `e_q(tU) E_q(-tU) - 1` up to t-degree `N`
    pub inverse_residual: Rat,
}

impl QDifferenceReport {
    pub fn within(&self, bound: &Rat) -> bool {
        &self.residual < bound && self.inverse_residual.is_zero()
    }
}

pub fn q_difference_check(ctx: &QContext, u: &Mat, t0: &Rat, factors: usize, order: usize) -> Result<QDifferenceReport> {
    ctx.require_twisted()?;
    let dim = u.dim();
    let mut product = Mat::identity(dim);
    let step = &ctx.one_minus_q() * t0;
    for n in 0..factors {
        let c = &step * &ctx.q().powu(n as u32);
        product = &product * &(&Mat::identity(dim) + &u.scale(&c));
    }
    let series = ctx.q_exp_big(u, order).eval(t0);
    let residual = (&product - &series).max_abs();
    let neg = u.scale(&-Rat::one());
    let inv = (&ctx.q_exp_small(u, order) * &ctx.q_exp_big(&neg, order)).truncate(order);
    let inverse_residual = (&inv - &MatPoly::one(dim)).max_abs();
    Ok(QDifferenceReport {
        q: ctx.q().clone(),
        t0: t0.clone(),
        factors,
        order,
        residual_approx: residual.to_f64(),
        product,
        series,
        residual,
        inverse_residual,
    })
}

/// `e_q(lambda a t) e_q(lambda b t)` against `exp(-Omega_q(-lambda b # -lambda a))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BchTransferReport {
    pub q: Rat,
    pub order: usize,
    pub commuting: bool,
    pub lhs: Series,
    pub rhs: Series,
    /// `-lambda b # -lambda a`
    pub sharp: Series,
    pub chain_holds: bool,
    /// For commuting `a, b`: `-lambda b # -lambda a = -lambda (a + b) + lambda^2 (1 - q) ab iota`.
    pub corollary_sharp_holds: Option<bool>,
    /// For commuting `a, b`: the product equals `exp(-Omega_q)` of that element.
    pub corollary_exp_holds: Option<bool>,
}

impl BchTransferReport {
    pub fn passed(&self) -> bool {
        self.chain_holds && self.corollary_sharp_holds != Some(false) && self.corollary_exp_holds != Some(false)
    }
}

/// `exp(-Omega_q(s))` for `s` in `lambda A[[lambda]]`.
fn exp_minus_omega_q(alg: &QDendriform, s: &Series) -> Result<Series> {
    let omega_q = integrate_series(alg, &omega_prime(alg, s)?);
    exp_nilpotent(&PointwiseRing::new(s.order(), &s.proto()), &-&omega_q)
}

pub fn q_bch_transfer_check(ctx: &QContext, a: &Mat, b: &Mat, order: usize) -> Result<BchTransferReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    let alg = QDendriform::new(ctx.clone());
    let lhs = ctx.e_q_series(a, order).pointwise_mul(&ctx.e_q_series(b, order))?;
    let minus = |m: &Mat| lambda(&MatPoly::constant(m.scale(&-Rat::one())), order);
    let s = sharp(&alg, &minus(b), &minus(a))?;
    let rhs = exp_minus_omega_q(&alg, &s)?;
    let chain_holds = lhs == rhs;

    let commuting = a.commutes_with(b);
    let (corollary_sharp_holds, corollary_exp_holds) = if commuting {
        let ab_iota = MatPoly::monomial(1, (a * b).scale(&ctx.one_minus_q()));
        let expected = minus(&(a + b)).try_add(&LamSeries::monomial(order, 2, ab_iota))?;
        let exp_side = exp_minus_omega_q(&alg, &expected)?;
        (Some(s == expected), Some(exp_side == lhs))
    } else {
        (None, None)
    };

    Ok(BchTransferReport {
        q: ctx.q().clone(),
        order,
        commuting,
        lhs,
        rhs,
        sharp: s,
        chain_holds,
        corollary_sharp_holds,
        corollary_exp_holds,
    })
}
