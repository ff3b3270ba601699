//! Jackson q-calculus on matrix-coefficient polynomials.
//!
//! Every operator here is diagonal on monomials `a t^k`, so it is computed
//! exactly term by term.

use serde::{Deserialize, Serialize};

use crate::algebra::{LamSeries, Mat, MatPoly, Rat};
use crate::error::{Error, Result};

/// The deformation parameter `0 < q <= 1` and the default matrix dimension.
/// `q = 1` is the classical (untwisted) limit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QContext {
    q: Rat,
    dim: usize,
}

impl QContext {
    pub fn new(q: Rat, dim: usize) -> Result<Self> {
        if !q.is_positive() || q > Rat::one() {
            return Err(Error::InvalidQ(q.to_string()));
        }
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        Ok(QContext { q, dim })
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_classical(&self) -> bool {
        self.q.is_one()
    }

    pub fn require_twisted(&self) -> Result<()> {
        if self.is_classical() {
            Err(Error::RequiresTwisted)
        } else {
            Ok(())
        }
    }

    /// `1 - q`.
    pub fn one_minus_q(&self) -> Rat {
        Rat::one() - &self.q
    }

    /// `[k]_q = 1 + q + ... + q^{k-1}`.
    pub fn q_number(&self, k: u32) -> Rat {
        (0..k).map(|i| self.q.powu(i)).sum()
    }

    /// `[k]_q! = [1]_q [2]_q ... [k]_q`.
    pub fn q_factorial(&self, k: u32) -> Rat {
        (1..=k).map(|i| self.q_number(i)).product()
    }

    /// `d_q f(t) = (f(qt) - f(t)) / ((q - 1) t)`; `t^k -> [k]_q t^{k-1}`.
    pub fn q_derive(&self, f: &MatPoly) -> MatPoly {
        diagonal(f, |k| (k > 0).then(|| (k - 1, self.q_number(k as u32))))
    }

    /// Jackson integral from 0; `t^k -> t^{k+1} / [k+1]_q`.
    pub fn jackson_integral(&self, f: &MatPoly) -> MatPoly {
        diagonal(f, |k| {
            let c = self.q_number(k as u32 + 1).recip().expect("[k+1]_q > 0");
            Some((k + 1, c))
        })
    }

    /// `M_q f(t) = f(qt)`.
    pub fn q_dilate(&self, f: &MatPoly) -> MatPoly {
        diagonal(f, |k| Some((k, self.q.powu(k as u32))))
    }

    /// The twisting automorphism `phi = q M_q`.
    pub fn phi(&self, f: &MatPoly) -> MatPoly {
        diagonal(f, |k| Some((k, self.q.powu(k as u32 + 1))))
    }

    pub fn phi_inv(&self, f: &MatPoly) -> MatPoly {
        let r = self.q.recip().expect("q > 0");
        diagonal(f, |k| Some((k, r.powu(k as u32 + 1))))
    }

    /// `P_q f(t) = sum_{n > 0} f(q^n t)`; `t^k -> q^k / (1 - q^k) t^k`.
    /// Diverges on a nonzero constant term and at `q = 1`.
    pub fn p_operator(&self, f: &MatPoly) -> Result<MatPoly> {
        self.require_twisted()?;
        if !f.coeff(0).is_zero() {
            return Err(Error::Divergent);
        }
        Ok(diagonal(f, |k| {
            let qk = self.q.powu(k as u32);
            let c = &qk / &(Rat::one() - &qk);
            Some((k, c))
        }))
    }

    /// `P^_q = id + P_q`; `t^k -> 1 / (1 - q^k) t^k`.
    pub fn p_hat(&self, f: &MatPoly) -> Result<MatPoly> {
        Ok(f + &self.p_operator(f)?)
    }

    /// `e_q(tu) = sum_{n <= N} (tu)^n / [n]_q!`, truncated at t-degree `N`.
    pub fn q_exp_small(&self, u: &Mat, order: usize) -> MatPoly {
        self.q_exp_with(u, order, |_| Rat::one())
    }

    /// `E_q(tu) = sum_{n <= N} q^{n(n-1)/2} (tu)^n / [n]_q!`.
    pub fn q_exp_big(&self, u: &Mat, order: usize) -> MatPoly {
        self.q_exp_with(u, order, |n| self.q.powu((n * n.saturating_sub(1) / 2) as u32))
    }

    fn q_exp_with(&self, u: &Mat, order: usize, weight: impl Fn(usize) -> Rat) -> MatPoly {
        let terms = (0..=order).map(|n| (n, self.q_exp_coeff(u, n, &weight)));
        MatPoly::from_terms(u.dim(), terms).expect("single dimension")
    }

    fn q_exp_coeff(&self, u: &Mat, n: usize, weight: &impl Fn(usize) -> Rat) -> Mat {
        let c = &weight(n) / &self.q_factorial(n as u32);
        u.pow(n as u32).scale(&c)
    }

    /// `e_q(lambda u t)` as a series in `lambda` over `A`: grade `n` is
    /// `u^n t^n / [n]_q!`.
    pub fn e_q_series(&self, u: &Mat, order: usize) -> LamSeries<MatPoly> {
        self.exp_series_with(u, order, |_| Rat::one())
    }

    /// `E_q(lambda u t)`: grade `n` is `q^{n(n-1)/2} u^n t^n / [n]_q!`.
    pub fn big_e_q_series(&self, u: &Mat, order: usize) -> LamSeries<MatPoly> {
        self.exp_series_with(u, order, |n| self.q.powu((n * n.saturating_sub(1) / 2) as u32))
    }

    fn exp_series_with(&self, u: &Mat, order: usize, weight: impl Fn(usize) -> Rat) -> LamSeries<MatPoly> {
        let grades = (0..=order).map(|n| MatPoly::monomial(n, self.q_exp_coeff(u, n, &weight))).collect();
        LamSeries::from_grades(order, Rat::zero(), grades).expect("grades of one shape")
    }
}

/// `a t^k -> c(k) a t^{k'}` for `(k', c(k)) = f(k)`; `None` kills the term.
fn diagonal<F>(p: &MatPoly, f: F) -> MatPoly
where
    F: Fn(usize) -> Option<(usize, Rat)>,
{
    p.map_terms(|k, m| Ok(f(k).map(|(k2, c)| (k2, m.scale(&c))))).expect("infallible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;
    use proptest::prelude::*;

    fn ctx(p: i64, r: i64) -> QContext {
        QContext::new(Rat::frac(p, r), 2).unwrap()
    }

    fn t(k: usize) -> MatPoly {
        MatPoly::monomial(k, Mat::identity(2))
    }

    #[test]
    fn rejects_bad_q() {
        for q in [Rat::zero(), Rat::frac(-1, 2), Rat::frac(3, 2)] {
            assert!(matches!(QContext::new(q, 2), Err(Error::InvalidQ(_))));
        }
        assert!(QContext::new(Rat::one(), 2).unwrap().is_classical());
        assert!(QContext::new(Rat::one(), 0).is_err());
    }

    #[test]
    fn q_numbers_and_factorials() {
        let c = ctx(1, 2);
        assert_eq!(c.q_number(0), Rat::zero());
        assert_eq!(c.q_number(1), Rat::one());
        assert_eq!(c.q_number(3), Rat::frac(7, 4));
        assert_eq!(c.q_factorial(0), Rat::one());
        assert_eq!(c.q_factorial(1), Rat::one());
        assert_eq!(c.q_factorial(3), Rat::frac(21, 8));
        // [k]_q = (1 - q^k) / (1 - q)
        for k in 0..10u32 {
            let closed = (Rat::one() - c.q().powu(k)) / c.one_minus_q();
            assert_eq!(c.q_number(k), closed);
        }
        let one = ctx(1, 1);
        assert_eq!(one.q_number(5), Rat::from_int(5));
        assert_eq!(one.q_factorial(5), Rat::from_int(120));
    }

    #[test]
    fn derivative_and_integral_on_monomials() {
        let c = ctx(1, 2);
        assert_eq!(c.q_derive(&t(3)), t(2).scale(&c.q_number(3)));
        assert!(c.q_derive(&t(0)).is_zero());
        let one = ctx(1, 1);
        assert_eq!(one.q_derive(&t(4)), t(3).scale(&Rat::from_int(4)));
        for k in 0..6 {
            let expect = t(k + 1).scale(&c.q_number(k as u32 + 1).recip().unwrap());
            assert_eq!(c.jackson_integral(&t(k)), expect);
        }
        assert!(c.jackson_integral(&MatPoly::zero(2)).is_zero());
        let a = Mat::from_ints(&[&[1, 2], &[3, 4]]);
        assert_eq!(c.jackson_integral(&MatPoly::constant(a.clone())), MatPoly::monomial(1, a));
    }

    #[test]
    fn dilation_and_phi() {
        let c = ctx(2, 3);
        let q = c.q().clone();
        assert_eq!(c.q_dilate(&t(2)), t(2).scale(&q.powu(2)));
        let a = MatPoly::constant(Mat::from_ints(&[&[1, 2], &[3, 4]]));
        assert_eq!(c.q_dilate(&a), a);
        assert_eq!(c.phi(&a), a.scale(&q));
        assert_eq!(c.phi(&MatPoly::iota(2)), MatPoly::iota(2).scale(&q.powu(2)));
        for k in 0..5 {
            let lhs = c.q_dilate(&c.jackson_integral(&t(k)));
            assert_eq!(lhs, c.jackson_integral(&c.q_dilate(&t(k))).scale(&q));
        }
    }

    #[test]
    fn p_operator_values() {
        let c = ctx(1, 2);
        assert_eq!(c.p_operator(&t(1)).unwrap(), t(1));
        assert_eq!(c.p_operator(&t(2)).unwrap(), t(2).scale(&Rat::frac(1, 3)));
        assert_eq!(c.p_operator(&t(0)), Err(Error::Divergent));
        assert_eq!(ctx(1, 1).p_operator(&t(1)), Err(Error::RequiresTwisted));
        // (1 - q) P^_q(iota f) = I_q(f)
        for k in 0..6 {
            let lhs = c.p_hat(&(&MatPoly::iota(2) * &t(k))).unwrap().scale(&c.one_minus_q());
            assert_eq!(lhs, c.jackson_integral(&t(k)));
        }
    }

    /// P_q(t^k) as a partial geometric sum, compared with the closed form.
    #[test]
    fn p_operator_is_a_geometric_sum() {
        let c = ctx(1, 3);
        for k in 1..4u32 {
            let qk = c.q().powu(k);
            let partial: Rat = (1..=40).map(|n| qk.powu(n)).sum();
            let closed = c.p_operator(&t(k as usize)).unwrap().coeff(k as usize).get(0, 0).clone();
            let gap = (&closed - &partial).to_f64();
            assert!((0.0..1e-15).contains(&gap), "k = {k}, gap = {gap}");
        }
    }

    #[test]
    fn q_exponentials() {
        let c = ctx(1, 2);
        let zero = Mat::zero(2);
        assert_eq!(c.q_exp_small(&zero, 6), MatPoly::one(2));
        assert_eq!(c.q_exp_big(&zero, 6), MatPoly::one(2));
        let u = Mat::from_ints(&[&[1, 2], &[0, -1]]);
        assert_eq!(c.q_exp_small(&u, 6).coeff(1), u);
        assert_eq!(c.q_exp_big(&u, 6).coeff(1), u);
        let n = 10;
        let e = c.q_exp_small(&Mat::identity(1), n);
        let big = c.q_exp_big(&Mat::identity(1).scale(&-Rat::one()), n);
        assert_eq!((&e * &big).truncate(n), MatPoly::one(1));
    }

    #[test]
    fn series_forms_agree_with_polynomials() {
        let c = ctx(3, 4);
        let u = Mat::from_ints(&[&[0, 1], &[2, 3]]);
        let s = c.e_q_series(&u, 5);
        let b = c.big_e_q_series(&u, 5);
        for n in 0..=5 {
            assert_eq!(s.grade(n), &MatPoly::monomial(n, c.q_exp_small(&u, 5).coeff(n)));
            assert_eq!(b.grade(n), &MatPoly::monomial(n, c.q_exp_big(&u, 5).coeff(n)));
        }
    }

    #[test]
    fn q_exp_is_an_eigenfunction() {
        let c = ctx(2, 5);
        let u = Mat::from_ints(&[&[1, -1], &[2, 0]]);
        let n = 8;
        let e = c.q_exp_small(&u, n);
        assert_eq!(c.q_derive(&e), e.left_mul_mat(&u).truncate(n - 1));
        // d_q E_q(tu) = u E_q(qtu)
        let big = c.q_exp_big(&u, n);
        assert_eq!(c.q_derive(&big), c.q_dilate(&big).left_mul_mat(&u).truncate(n - 1));
    }

    fn arb_q() -> impl Strategy<Value = QContext> {
        (1i64..10, 1i64..10).prop_filter_map("0 < q <= 1", |(p, r)| QContext::new(Rat::frac(p, r), 2).ok())
    }

    fn twisted_q() -> impl Strategy<Value = QContext> {
        arb_q().prop_filter("q < 1", |c| !c.is_classical())
    }

    proptest! {
        #[test]
        fn derivative_inverts_integral(c in arb_q(), seed in any::<u64>()) {
            let f = Sampler::new(seed).matpoly(2, 4);
            prop_assert_eq!(c.q_derive(&c.jackson_integral(&f)), f.clone());
            let back = c.jackson_integral(&c.q_derive(&f));
            prop_assert_eq!(back, &f - &MatPoly::constant(f.coeff(0)));
        }

        #[test]
        fn q_leibniz(c in arb_q(), seed in any::<u64>()) {
            let mut s = Sampler::new(seed);
            let (f, g) = (s.matpoly(2, 3), s.matpoly(2, 3));
            let lhs = c.q_derive(&(&f * &g));
            let rhs = &(&c.q_derive(&f) * &c.q_dilate(&g)) + &(&f * &c.q_derive(&g));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn twisted_rota_baxter(c in arb_q(), seed in any::<u64>()) {
            let mut s = Sampler::new(seed);
            let (f, g) = (s.matpoly(2, 3), s.matpoly(2, 3));
            let i = |p: &MatPoly| c.jackson_integral(p);
            let lhs = i(&(&(&f * &c.q_dilate(&i(&g))) + &(&i(&f) * &g)));
            prop_assert_eq!(lhs, &i(&f) * &i(&g));
        }

        #[test]
        fn mixed_identity(c in arb_q(), seed in any::<u64>()) {
            let mut s = Sampler::new(seed);
            let (f, g) = (s.matpoly(2, 3), s.matpoly(2, 3));
            let i = |p: &MatPoly| c.jackson_integral(p);
            let fig = &(&f * &MatPoly::iota(2)) * &g;
            let lhs = &(&i(&f) * &i(&g)) + &i(&fig).scale(&c.one_minus_q());
            let rhs = i(&(&(&i(&f) * &g) + &(&f * &i(&g))));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn p_operator_weight_one(c in twisted_q(), seed in any::<u64>()) {
            let mut s = Sampler::new(seed);
            let (f, g) = (s.monomial_positive(2, 3), s.monomial_positive(2, 3));
            let p = |x: &MatPoly| c.p_operator(x).unwrap();
            let lhs = &p(&f) * &p(&g);
            let rhs = &(&p(&(&p(&f) * &g)) + &p(&(&f * &p(&g)))) + &p(&(&f * &g));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn p_hat_weight_minus_one(c in twisted_q(), seed in any::<u64>()) {
            let mut s = Sampler::new(seed);
            let (f, g) = (s.monomial_positive(2, 3), s.monomial_positive(2, 3));
            let p = |x: &MatPoly| c.p_hat(x).unwrap();
            let lhs = &p(&f) * &p(&g);
            let rhs = &(&p(&(&p(&f) * &g)) + &p(&(&f * &p(&g)))) - &p(&(&f * &g));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn phi_is_an_invertible_morphism(c in arb_q(), seed in any::<u64>()) {
            let mut s = Sampler::new(seed);
            let (f, g) = (s.matpoly(2, 3), s.matpoly(2, 3));
            prop_assert_eq!(c.phi_inv(&c.phi(&f)), f.clone());
            prop_assert_eq!(c.q_dilate(&(&f * &g)), &c.q_dilate(&f) * &c.q_dilate(&g));
        }
    }
}
