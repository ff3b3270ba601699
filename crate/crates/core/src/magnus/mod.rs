//! The pre-Lie Magnus expansion in a twisted dendriform algebra.
//!
//! Everything lives in `1 + lambda D[[lambda]]` truncated at order `N`, where
//! every recursion terminates after at most `N` steps and results are exact.
//! For `L(w) v = w |> v` acting on the adjoined unit, `L(w) 1 = w`.

mod qmagnus;

pub use qmagnus::{
    magnus_tables, omega_prime_closed_form, omega_q_closed_form, q_bch_transfer_check, q_difference_check,
    q_magnus_solution, w_closed_form, BchTransferReport, MagnusConfig, MagnusTables, QDifferenceReport,
    QMagnusSolution,
};

use crate::algebra::{bernoulli_numbers, exp_nilpotent, lam_mul, log_unipotent, Carrier, LamSeries, Product, Rat};
use crate::algebra::{bch, TruncatedRing};
use crate::dendriform::{Integrating, TwistedDendriform};
use crate::error::{Error, Result};

type Series<D> = LamSeries<<D as TwistedDendriform>::Elem>;

/// `(Dbar[[lambda]], *)` truncated at `order`.
pub struct StarRing<'a, D: TwistedDendriform + ?Sized> {
    alg: &'a D,
    order: usize,
    proto: D::Elem,
}

impl<'a, D: TwistedDendriform + ?Sized> StarRing<'a, D> {
    pub fn new(alg: &'a D, order: usize, proto: &D::Elem) -> Self {
        StarRing { alg, order, proto: proto.zero_like() }
    }

    pub fn for_series(alg: &'a D, s: &Series<D>) -> Self {
        Self::new(alg, s.order(), &s.proto())
    }
}

impl<D: TwistedDendriform + ?Sized> TruncatedRing for StarRing<'_, D> {
    type Elem = Series<D>;

    fn zero(&self) -> Series<D> {
        LamSeries::zero(self.order, &self.proto)
    }

    fn one(&self) -> Series<D> {
        LamSeries::unit(self.order, &self.proto)
    }

    fn add(&self, a: &Series<D>, b: &Series<D>) -> Series<D> {
        a + b
    }

    fn scale(&self, a: &Series<D>, c: &Rat) -> Series<D> {
        a.scale(c)
    }

    fn mul(&self, a: &Series<D>, b: &Series<D>) -> Result<Series<D>> {
        lam_mul(self.alg, a, b, Product::Assoc)
    }

    fn order(&self) -> usize {
        self.order
    }
}

/// `lambda a` as a series of order `order`.
pub fn lambda<C: Carrier>(a: &C, order: usize) -> LamSeries<C> {
    LamSeries::monomial(order, 1, a.clone())
}

pub fn phi_series<D: TwistedDendriform + ?Sized>(alg: &D, s: &Series<D>) -> Series<D> {
    s.map_grades(|g| alg.phi(g))
}

/// `L(w) v = w |> v`, with `L(w) 1 = w` on the unit part of `v`.
pub fn left_action<D: TwistedDendriform + ?Sized>(alg: &D, w: &Series<D>, v: &Series<D>) -> Result<Series<D>> {
    let unit = v.unit_coeff().clone();
    let body = LamSeries::from_grades(v.order(), Rat::zero(), v.grades().to_vec())?;
    let out = lam_mul(alg, w, &body, Product::PreLie)?;
    Ok(if unit.is_zero() { out } else { out.try_add(&w.scale(&unit))? })
}

/// `e^{L(w)} v = sum_k L(w)^k v / k!`.
pub fn exp_left_action<D: TwistedDendriform + ?Sized>(
    alg: &D,
    w: &Series<D>,
    v: &Series<D>,
) -> Result<Series<D>> {
    w.require_augmented_free()?;
    let mut acc = v.clone();
    let mut term = v.clone();
    for k in 1..=v.order() {
        term = left_action(alg, w, &term)?.scale(&Rat::frac(1, k as i64));
        acc = acc.try_add(&term)?;
    }
    Ok(acc)
}

/// `W(a) = e^{L(a)} 1 - 1 = a + 1/2 a |> a + 1/6 a |> (a |> a) + ...`
pub fn w_map<D: TwistedDendriform + ?Sized>(alg: &D, a: &Series<D>) -> Result<Series<D>> {
    let one = LamSeries::unit(a.order(), &a.proto());
    exp_left_action(alg, a, &one)?.try_sub(&one)
}

/// `Omega'(a) = sum_m B_m / m! L(Omega')^m (a)`, solved grade by grade:
/// grade `n` on the right only involves grades below `n` of `Omega'`.
pub fn omega_prime<D: TwistedDendriform + ?Sized>(alg: &D, a: &Series<D>) -> Result<Series<D>> {
    let b = bernoulli_numbers(a.order());
    omega_recursion(a, |w, x| lam_mul(alg, w, x, Product::PreLie), |m| b[m].clone())
}

/// The same element from `sum_m (-1)^m B_m / m! R(Omega')^m (a)` with
/// `R(w) x = x <| w`.
pub fn omega_prime_right<D: TwistedDendriform + ?Sized>(alg: &D, a: &Series<D>) -> Result<Series<D>> {
    let b = bernoulli_numbers(a.order());
    omega_recursion(
        a,
        |w, x| lam_mul(alg, x, w, Product::RightPreLie),
        |m| if m % 2 == 1 { -b[m].clone() } else { b[m].clone() },
    )
}

fn omega_recursion<C, Op, Coef>(a: &LamSeries<C>, op: Op, coef: Coef) -> Result<LamSeries<C>>
where
    C: Carrier,
    Op: Fn(&LamSeries<C>, &LamSeries<C>) -> Result<LamSeries<C>>,
    Coef: Fn(usize) -> Rat,
{
    a.require_augmented_free()?;
    let n = a.order();
    let mut omega = a.with_order(1);
    for k in 2..=n {
        let ak = a.with_order(k);
        let w = omega.with_order(k);
        let mut acc = ak.clone();
        let mut term = ak;
        let mut fact = Rat::one();
        for m in 1..k {
            term = op(&w, &term)?;
            fact = fact * Rat::from_int(m as i64);
            let c = coef(m);
            if !c.is_zero() {
                acc = acc.try_add(&term.scale(&(&c / &fact)))?;
            }
        }
        omega = acc;
    }
    Ok(omega.with_order(n))
}

pub fn exp_star<D: TwistedDendriform + ?Sized>(alg: &D, x: &Series<D>) -> Result<Series<D>> {
    x.require_augmented_free()?;
    exp_nilpotent(&StarRing::for_series(alg, x), x)
}

pub fn log_star<D: TwistedDendriform + ?Sized>(alg: &D, u: &Series<D>) -> Result<Series<D>> {
    if !u.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    log_unipotent(&StarRing::for_series(alg, u), u)
}

/// `BCH(x, y) = log*(exp*(x) * exp*(y))` for the Lie bracket of `*`.
pub fn bch_classical<D: TwistedDendriform + ?Sized>(alg: &D, x: &Series<D>, y: &Series<D>) -> Result<Series<D>> {
    x.require_augmented_free()?;
    y.require_augmented_free()?;
    bch(&StarRing::for_series(alg, x), x, y)
}

/// `X = 1 + a < phi(X)` for `a` in `lambda D[[lambda]]` (usually `lambda a`).
pub fn solve_dend_left<D: TwistedDendriform + ?Sized>(alg: &D, a: &Series<D>) -> Result<Series<D>> {
    a.require_augmented_free()?;
    let one = LamSeries::unit(a.order(), &a.proto());
    let mut x = one.clone();
    for _ in 0..a.order() {
        x = one.try_add(&lam_mul(alg, a, &phi_series(alg, &x), Product::Prec)?)?;
    }
    Ok(x)
}

/// `Y = 1 - Y > a`.
pub fn solve_dend_right<D: TwistedDendriform + ?Sized>(alg: &D, a: &Series<D>) -> Result<Series<D>> {
    a.require_augmented_free()?;
    let one = LamSeries::unit(a.order(), &a.proto());
    let mut y = one.clone();
    for _ in 0..a.order() {
        y = one.try_sub(&lam_mul(alg, &y, a, Product::Succ)?)?;
    }
    Ok(y)
}

/// `a # b = a + e^{L(Omega'(a))} b`, the BCH group law carried through `W`.
pub fn sharp<D: TwistedDendriform + ?Sized>(alg: &D, a: &Series<D>, b: &Series<D>) -> Result<Series<D>> {
    b.require_augmented_free()?;
    let w = omega_prime(alg, a)?;
    a.try_add(&exp_left_action(alg, &w, b)?)
}

/// `a^{#-1} = e^{-L(Omega'(a))} 1 - 1`.
pub fn sharp_inverse<D: TwistedDendriform + ?Sized>(alg: &D, a: &Series<D>) -> Result<Series<D>> {
    let w = omega_prime(alg, a)?;
    let one = LamSeries::unit(a.order(), &a.proto());
    exp_left_action(alg, &-&w, &one)?.try_sub(&one)
}

/// Applies the integration operator grade-wise, sending the adjoined unit
/// to the constant function 1. The result lives in `A[[lambda]]`.
pub fn integrate_series<D: Integrating + ?Sized>(alg: &D, s: &Series<D>) -> Series<D> {
    let unit = s.unit_coeff().clone();
    let proto = s.proto();
    let grades: Vec<_> = s.grades().iter().map(|g| alg.integrate(g)).collect();
    let mut out = LamSeries::from_grades(s.order(), Rat::zero(), grades).expect("same shape");
    if !unit.is_zero() {
        let g0 = out.grade(0).plus(&proto.one_like().scaled(&unit));
        out = out.with_grade(0, g0);
    }
    out
}

#[cfg(test)]
mod tests;
