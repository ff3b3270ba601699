use super::*;
use crate::algebra::{Mat, MatPoly, PointwiseRing};
use crate::dendriform::QDendriform;
use crate::qcalc::QContext;
use crate::sample::Sampler;
use proptest::prelude::*;

fn ctx(p: i64, r: i64) -> QContext {
    QContext::new(Rat::frac(p, r), 2).unwrap()
}

fn alg(p: i64, r: i64) -> QDendriform {
    QDendriform::new(ctx(p, r))
}

fn la(a: &Mat, order: usize) -> LamSeries<MatPoly> {
    lambda(&MatPoly::constant(a.clone()), order)
}

/// A random element of `lambda D[[lambda]]` with constant-matrix grades.
fn random_series(s: &mut Sampler, order: usize) -> LamSeries<MatPoly> {
    let mut out = LamSeries::zero(order, &MatPoly::zero(2));
    for n in 1..=order {
        out = out.with_grade(n, MatPoly::constant(s.mat(2)));
    }
    out
}

fn a0() -> Mat {
    Mat::from_ints(&[&[1, 2], &[-1, 0]])
}

#[test]
fn displayed_first_terms() {
    let d = alg(1, 2);
    let a = MatPoly::constant(a0());
    let om = omega_prime(&d, &lambda(&a, 4)).unwrap();
    let aa = d.pre_lie(&a, &a);
    assert_eq!(om.grade(1), &a);
    assert_eq!(om.grade(2), &aa.scale(&Rat::frac(-1, 2)));
    let g3 = d.pre_lie(&aa, &a).scale(&Rat::frac(1, 4)).plus(&d.pre_lie(&a, &aa).scale(&Rat::frac(1, 12)));
    assert_eq!(om.grade(3), &g3);
}

#[test]
fn left_and_right_recursions_agree() {
    let d = alg(2, 3);
    let mut s = Sampler::new(4);
    for _ in 0..3 {
        let x = random_series(&mut s, 5);
        assert_eq!(omega_prime(&d, &x).unwrap(), omega_prime_right(&d, &x).unwrap());
    }
}

#[test]
fn w_of_a_constant() {
    for (p, r) in [(1, 2), (3, 4), (1, 1)] {
        let c = ctx(p, r);
        let d = QDendriform::new(c.clone());
        let w = w_map(&d, &la(&a0(), 9)).unwrap();
        assert_eq!(w, w_closed_form(&c, &a0(), 9), "q = {p}/{r}");
    }
    // q = 1 and a |> a = 0: W(a) = a
    let d = alg(1, 1);
    let x = la(&Mat::from_ints(&[&[2, 0], &[0, 2]]), 5);
    assert_eq!(w_map(&d, &x).unwrap(), x);
}

#[test]
fn second_grade_of_w_is_half_a_prelie_square() {
    let c = ctx(1, 3);
    let d = QDendriform::new(c.clone());
    let a = Mat::from_ints(&[&[2, 1], &[0, 2]]);
    let w = w_map(&d, &la(&a, 3)).unwrap();
    let expect = MatPoly::monomial(1, (&a * &a).scale(&(c.one_minus_q() / Rat::from_int(2))));
    assert_eq!(w.grade(2), &expect);
}

#[test]
fn omega_closed_forms() {
    for (p, r) in [(1, 2), (2, 3), (1, 1)] {
        let c = ctx(p, r);
        let tables = magnus_tables(&MagnusConfig::constant(c.clone(), 8, a0()).unwrap()).unwrap();
        assert_eq!(tables.omega_prime, omega_prime_closed_form(&c, &a0(), 8));
        assert_eq!(tables.omega_q, omega_q_closed_form(&c, &a0(), 8));
    }
}

#[test]
fn w_and_omega_are_inverse() {
    let d = alg(3, 5);
    let mut s = Sampler::new(12);
    for _ in 0..3 {
        let x = random_series(&mut s, 5);
        assert_eq!(w_map(&d, &omega_prime(&d, &x).unwrap()).unwrap(), x);
        assert_eq!(omega_prime(&d, &w_map(&d, &x).unwrap()).unwrap(), x);
    }
}

#[test]
fn exp_and_log_star() {
    let d = alg(1, 2);
    let zero = LamSeries::zero(5, &MatPoly::zero(2));
    assert_eq!(exp_star(&d, &zero).unwrap(), LamSeries::unit(5, &MatPoly::zero(2)));
    let x = random_series(&mut Sampler::new(2), 5);
    assert_eq!(log_star(&d, &exp_star(&d, &x).unwrap()).unwrap(), x);
    assert_eq!(log_star(&d, &x), Err(Error::NotUnipotent));
    let bad = LamSeries::constant(5, MatPoly::one(2));
    assert_eq!(exp_star(&d, &bad), Err(Error::NonzeroGradeZero));
}

#[test]
fn linear_equations_and_their_exponential_solutions() {
    let c = ctx(1, 2);
    let d = QDendriform::new(c.clone());
    let a = MatPoly::constant(a0());
    let x = solve_dend_left(&d, &lambda(&a, 8)).unwrap();
    let y = solve_dend_right(&d, &lambda(&a, 8)).unwrap();
    assert_eq!(x.grade(1), &a);
    assert_eq!(x.grade(2), &d.prec(&a, &d.phi(&a)));
    assert_eq!(x.grade(3), &d.prec(&a, &d.phi(&d.prec(&a, &d.phi(&a)))));
    assert_eq!(y.grade(1), &a.negated());
    assert_eq!(y.grade(2), &d.succ(&a, &a));
    assert_eq!(y.grade(3), &d.succ(&d.succ(&a, &a), &a).negated());
    let om = omega_prime(&d, &lambda(&a, 8)).unwrap();
    assert_eq!(exp_star(&d, &om).unwrap(), x);
    assert_eq!(exp_star(&d, &-&om).unwrap(), y);
}

#[test]
fn q_magnus_solution_identities() {
    for (p, r) in [(1, 2), (5, 7), (1, 1)] {
        let c = ctx(p, r);
        let cfg = MagnusConfig::constant(c.clone(), 7, a0()).unwrap();
        let sol = q_magnus_solution(&cfg).unwrap();
        assert!(sol.passed(), "q = {p}/{r}");
        // exp(Omega_q(lambda a)) = E_q(lambda a t); Y^ = exp(-Omega_q(lambda a))
        let ring = PointwiseRing::new(7, &MatPoly::zero(2));
        assert_eq!(exp_nilpotent(&ring, &sol.omega_q).unwrap(), c.big_e_q_series(&a0(), 7));
        assert_eq!(exp_nilpotent(&ring, &-&sol.omega_q).unwrap(), sol.y_hat);
        assert_eq!(sol.x_hat, c.big_e_q_series(&a0(), 7));
        // exp(-Omega_q(-lambda a)) = e_q(lambda a t)
        let flipped = sol.omega_q.rescale_lambda(&-Rat::one());
        assert_eq!(exp_nilpotent(&ring, &-&flipped).unwrap(), c.e_q_series(&a0(), 7));
    }
}

#[test]
fn sharp_product_examples() {
    let d = alg(1, 2);
    let mut s = Sampler::new(21);
    let (x, y) = (random_series(&mut s, 5), random_series(&mut s, 5));
    let zero = LamSeries::zero(5, &MatPoly::zero(2));
    assert_eq!(sharp(&d, &zero, &y).unwrap(), y);
    let inv = sharp_inverse(&d, &x).unwrap();
    assert!(sharp(&d, &x, &inv).unwrap().is_zero());
    assert!(sharp(&d, &inv, &x).unwrap().is_zero());
    // associativity
    let z = random_series(&mut s, 5);
    let left = sharp(&d, &sharp(&d, &x, &y).unwrap(), &z).unwrap();
    let right = sharp(&d, &x, &sharp(&d, &y, &z).unwrap()).unwrap();
    assert_eq!(left, right);
}

#[test]
fn sharp_transports_bch() {
    let d = alg(2, 3);
    let mut s = Sampler::new(5);
    let (x, y) = (random_series(&mut s, 4), random_series(&mut s, 4));
    let (wx, wy) = (w_map(&d, &x).unwrap(), w_map(&d, &y).unwrap());
    let lhs = sharp(&d, &wx, &wy).unwrap();
    assert_eq!(lhs, w_map(&d, &bch_classical(&d, &x, &y).unwrap()).unwrap());
    assert_eq!(lhs, wx.try_add(&exp_left_action(&d, &x, &wy).unwrap()).unwrap());
}

#[test]
fn sharp_is_affine_in_its_second_argument() {
    let d = alg(1, 2);
    let mut s = Sampler::new(8);
    let (x, b1, b2) = (random_series(&mut s, 5), random_series(&mut s, 5), random_series(&mut s, 5));
    let lhs = sharp(&d, &x, &b1.try_add(&b2).unwrap()).unwrap();
    let rhs = sharp(&d, &x, &b1).unwrap().try_add(&sharp(&d, &x, &b2).unwrap()).unwrap().try_sub(&x).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn commuting_sharp_is_prelie_plus_sum() {
    let c = ctx(3, 4);
    let d = QDendriform::new(c.clone());
    let (a, b) = Sampler::new(3).commuting_pair(2);
    let (x, y) = (la(&a, 6), la(&b, 6));
    let pre = lam_mul(&d, &x, &y, Product::PreLie).unwrap();
    assert_eq!(sharp(&d, &x, &y).unwrap(), x.try_add(&y).unwrap().try_add(&pre).unwrap());
}

#[test]
fn bch_examples() {
    let d = alg(1, 2);
    let mut s = Sampler::new(30);
    let (x, y) = (random_series(&mut s, 4), random_series(&mut s, 4));
    let zero = LamSeries::zero(4, &MatPoly::zero(2));
    assert_eq!(bch_classical(&d, &x, &zero).unwrap(), x);
    // grade 2: x_2 + y_2 + 1/2 [x_1, y_1]
    let z = bch_classical(&d, &x, &y).unwrap();
    let half = d.bracket(x.grade(1), y.grade(1)).scale(&Rat::frac(1, 2));
    assert_eq!(z.grade(2), &x.grade(2).plus(y.grade(2)).plus(&half));
    // *-commuting elements: multiples of one another
    let x2 = x.scale(&Rat::frac(-2, 3));
    assert_eq!(bch_classical(&d, &x, &x2).unwrap(), x.try_add(&x2).unwrap());
}

#[test]
fn infinite_product_against_series() {
    let c = ctx(1, 2);
    let one = Mat::identity(1);
    let rep = q_difference_check(&c, &one, &Rat::frac(1, 2), 20, 20).unwrap();
    assert!(rep.within(&Rat::one().checked_div(&Rat::from_int(2).powu(20)).unwrap()), "{}", rep.residual_approx);
    let zero = q_difference_check(&c, &Mat::zero(2), &Rat::frac(1, 2), 5, 5).unwrap();
    assert!(zero.residual.is_zero());
    assert_eq!(zero.product, Mat::identity(2));
    let u = Sampler::new(6).mat(2);
    assert!(q_difference_check(&c, &u, &Rat::frac(1, 3), 4, 10).unwrap().inverse_residual.is_zero());
    assert_eq!(q_difference_check(&ctx(1, 1), &one, &Rat::one(), 3, 3), Err(Error::RequiresTwisted));
}

#[test]
fn bch_transfer() {
    let c = ctx(1, 2);
    let (a, b) = Sampler::new(17).noncommuting_pair(2);
    let rep = q_bch_transfer_check(&c, &a, &b, 4).unwrap();
    assert!(rep.chain_holds && rep.passed());
    assert_eq!(rep.corollary_sharp_holds, None);
    let rep = q_bch_transfer_check(&c, &a, &Mat::zero(2), 4).unwrap();
    assert_eq!(rep.lhs, c.e_q_series(&a, 4));
    assert!(rep.passed());
    let (a, b) = Sampler::new(18).commuting_pair(2);
    let rep = q_bch_transfer_check(&c, &a, &b, 6).unwrap();
    assert_eq!(rep.corollary_sharp_holds, Some(true));
    assert_eq!(rep.corollary_exp_holds, Some(true));
    assert!(rep.passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn fixed_point_equations(seed in any::<u64>()) {
        let d = alg(2, 5);
        let a = MatPoly::constant(Sampler::new(seed).mat(2));
        let om = omega_prime(&d, &lambda(&a, 6)).unwrap();
        let x = exp_star(&d, &om).unwrap();
        let y = exp_star(&d, &-&om).unwrap();
        let one = LamSeries::unit(6, &MatPoly::zero(2));
        let l = lambda(&a, 6);
        let x_rhs = one.try_add(&lam_mul(&d, &l, &phi_series(&d, &x), Product::Prec).unwrap()).unwrap();
        let y_rhs = one.try_sub(&lam_mul(&d, &y, &l, Product::Succ).unwrap()).unwrap();
        prop_assert_eq!(x, x_rhs);
        prop_assert_eq!(y, y_rhs);
    }
}

#[test]
fn fourth_grade_both_forms() {
    let d = alg(2, 3);
    let mut s = Sampler::new(44);
    for _ in 0..3 {
        let u = s.matpoly(2, 2);
        let om = omega_prime(&d, &lambda(&u, 4)).unwrap();
        let p = |x: &MatPoly, y: &MatPoly| d.pre_lie(x, y);
        let uu = p(&u, &u);
        let recursion = p(&p(&uu, &u), &u)
            .scale(&Rat::frac(-1, 8))
            .plus(&p(&p(&u, &uu), &u).scale(&Rat::frac(-1, 24)))
            .plus(&p(&u, &p(&uu, &u)).scale(&Rat::frac(-1, 24)))
            .plus(&p(&uu, &uu).scale(&Rat::frac(-1, 24)));
        let displayed = p(&p(&uu, &u), &u)
            .scale(&Rat::frac(-1, 6))
            .plus(&p(&u, &p(&uu, &u)).scale(&Rat::frac(-1, 12)));
        assert_eq!(om.grade(4), &recursion);
        assert_eq!(om.grade(4), &displayed);
    }
}
