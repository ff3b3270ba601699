//! The seeded law suite behind `qmagnus verify`.
//!
//! Every suite evaluates exact identities on deterministic samples. Laws
//! that do not apply at the chosen `q` are listed as skipped, never dropped.

use serde::Serialize;

use crate::algebra::{free_mul, Carrier, FreeSeries, LamSeries, Mat, MatPoly, Rat};
use crate::algebra::{exp_nilpotent, lam_mul, PointwiseRing, Product};
use crate::dendriform::{
    check_derived_products, check_twisted_axioms, nfold_coefficient, nfold_prelie_closed_form,
    nfold_prelie_commuting, QDendriform, TwistedDendriform,
};
use crate::error::{Error, Result};
use crate::finitediff::{fd_derivative_residual, fd_residual, rb_check_h, solve_fd, solve_fd_dendriform, FdDendriform, GridFn};
use crate::magnus::{
    exp_star, lambda, magnus_tables, omega_prime, omega_prime_closed_form, omega_prime_right, omega_q_closed_form,
    phi_series, q_bch_transfer_check, q_difference_check, q_magnus_solution, w_closed_form, w_map, MagnusConfig,
};
use crate::qbch::{free_eval, free_q_exp, q_bch, q_commutator};
use crate::qcalc::QContext;
use crate::report::{check_law, LawReport};
use crate::sample::Sampler;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub ctx: QContext,
    pub order: usize,
    pub seed: u64,
    /// Samples per algebraic law; the series suites use an eighth of it
    /// (at least 4).
    pub samples: usize,
}

impl VerifyConfig {
    pub fn new(ctx: QContext, order: usize, seed: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter("order must be at least 1".into()));
        }
        Ok(VerifyConfig { ctx, order, seed, samples: 64 })
    }

    fn series_samples(&self) -> usize {
        (self.samples / 8).max(4)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub laws: Vec<LawReport>,
    pub skipped: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.into(), laws: Vec::new(), skipped: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawReport::passed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub q: Rat,
    pub dim: usize,
    pub order: usize,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn law_count(&self) -> usize {
        self.suites.iter().map(|s| s.laws.len()).sum()
    }

    pub fn failures(&self) -> impl Iterator<Item = (&str, &LawReport)> {
        self.suites.iter().flat_map(|s| s.laws.iter().filter(|l| !l.passed()).map(move |l| (s.name.as_str(), l)))
    }

    pub fn skipped(&self) -> impl Iterator<Item = (&str, &str)> {
        self.suites.iter().flat_map(|s| s.skipped.iter().map(move |k| (s.name.as_str(), k.as_str())))
    }
}

/// Suites in a fixed order; each draws from its own stream of the seed.
pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let suites = vec![
        dendriform_suite(cfg),
        rota_baxter_suite(cfg),
        magnus_suite(cfg)?,
        closed_form_suite(cfg)?,
        exponential_suite(cfg)?,
        bch_chain_suite(cfg)?,
        q_bch_suite(cfg)?,
        lemma_suite(cfg)?,
        appendix_suite(cfg)?,
        classical_suite(cfg)?,
    ];
    Ok(VerifyReport { q: cfg.ctx.q().clone(), dim: cfg.ctx.dim(), order: cfg.order, seed: cfg.seed, suites })
}

fn sampler(cfg: &VerifyConfig, stream: u64) -> Sampler {
    Sampler::new(cfg.seed.wrapping_mul(31).wrapping_add(stream))
}

fn dendriform_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut s = sampler(cfg, 1);
    let d = cfg.ctx.dim();
    let triples: Vec<_> = (0..cfg.samples).map(|_| (s.matpoly(d, 3), s.matpoly(d, 3), s.matpoly(d, 3))).collect();
    let alg = QDendriform::new(cfg.ctx.clone());
    let mut suite = SuiteReport::new("twisted dendriform axioms and pre-Lie products");
    suite.laws = check_twisted_axioms(&alg, &triples);
    suite.laws.extend(check_derived_products(&alg, &triples));
    suite
}

fn rota_baxter_suite(cfg: &VerifyConfig) -> SuiteReport {
    let c = &cfg.ctx;
    let d = c.dim();
    let mut s = sampler(cfg, 2);
    let pairs: Vec<_> = (0..cfg.samples).map(|_| (s.matpoly(d, 3), s.matpoly(d, 3))).collect();
    let i = |p: &MatPoly| c.jackson_integral(p);
    let mut suite = SuiteReport::new("Rota-Baxter laws");
    suite.laws.push(check_law("I(f M_q I(g) + I(f) g) = I(f) I(g)", &pairs, |(f, g)| {
        Ok((i(&(&(f * &c.q_dilate(&i(g))) + &(&i(f) * g))), &i(f) * &i(g)))
    }));
    suite.laws.push(check_law("I(f) I(g) + (1 - q) I(f t g) = I(I(f) g + f I(g))", &pairs, |(f, g)| {
        let ftg = &(f * &MatPoly::iota(d)) * g;
        Ok((&(&i(f) * &i(g)) + &i(&ftg).scale(&c.one_minus_q()), i(&(&(&i(f) * g) + &(f * &i(g))))))
    }));
    suite.laws.push(check_law("d_q I(f) = f", &pairs, |(f, _)| Ok((c.q_derive(&i(f)), f.clone()))));
    if c.is_classical() {
        suite.skipped.push("P_q weight 1 and P^_q weight -1: P_q diverges at q = 1".into());
    } else {
        let mono: Vec<_> = (0..cfg.samples).map(|_| (s.monomial_positive(d, 3), s.monomial_positive(d, 3))).collect();
        suite.laws.push(check_law("P(f) P(g) = P(P(f) g + f P(g) + f g)", &mono, |(f, g)| {
            let p = |x: &MatPoly| c.p_operator(x);
            Ok((&p(f)? * &p(g)?, p(&(&(&(&p(f)? * g) + &(f * &p(g)?)) + &(f * g)))?))
        }));
        suite.laws.push(check_law("P^(f) P^(g) = P^(P^(f) g + f P^(g) - f g)", &mono, |(f, g)| {
            let p = |x: &MatPoly| c.p_hat(x);
            Ok((&p(f)? * &p(g)?, p(&(&(&(&p(f)? * g) + &(f * &p(g)?)) - &(f * g)))?))
        }));
    }
    let h = Rat::frac(1, 2);
    let grids: Vec<_> = (0..cfg.samples)
        .map(|_| {
            let f = GridFn::from_fn(h.clone(), 16, |_| s.mat(d)).expect("valid grid");
            let g = GridFn::from_fn(h.clone(), 16, |_| s.mat(d)).expect("valid grid");
            (f, g)
        })
        .collect();
    suite.laws.push(check_law("S_h(f S_h g + S_h f g + h f g) = S_h f S_h g", &grids, |(f, g)| {
        let r = rb_check_h(f, g)?;
        Ok((r.lhs, r.rhs))
    }));
    suite
}

fn magnus_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let c = &cfg.ctx;
    let d = c.dim();
    let n = cfg.order;
    let alg = QDendriform::new(c.clone());
    let mut s = sampler(cfg, 3);
    let mats: Vec<Mat> = (0..cfg.series_samples()).map(|_| s.mat(d)).collect();
    let la = |a: &Mat| lambda(&MatPoly::constant(a.clone()), n);
    let one = LamSeries::unit(n, &MatPoly::zero(d));
    let mut suite = SuiteReport::new("pre-Lie Magnus expansion");
    suite.laws.push(check_law("X = 1 + lambda a < phi(X) for X = exp*(Omega'(lambda a))", &mats, |a| {
        let x = exp_star(&alg, &omega_prime(&alg, &la(a))?)?;
        let rhs = one.try_add(&lam_mul(&alg, &la(a), &phi_series(&alg, &x), Product::Prec)?)?;
        Ok((x, rhs))
    }));
    suite.laws.push(check_law("Y = 1 - Y > lambda a for Y = exp*(-Omega'(lambda a))", &mats, |a| {
        let y = exp_star(&alg, &-&omega_prime(&alg, &la(a))?)?;
        let rhs = one.try_sub(&lam_mul(&alg, &y, &la(a), Product::Succ)?)?;
        Ok((y, rhs))
    }));
    suite.laws.push(check_law("left (L) and right (R) Bernoulli recursions agree", &mats, |a| {
        Ok((omega_prime(&alg, &la(a))?, omega_prime_right(&alg, &la(a))?))
    }));
    let polys: Vec<_> = (0..cfg.series_samples()).map(|_| s.matpoly(d, 2)).collect();
    suite.laws.push(check_law("W(Omega'(lambda u)) = lambda u", &polys, |u| {
        let x = lambda(u, n);
        Ok((w_map(&alg, &omega_prime(&alg, &x)?)?, x))
    }));
    suite.laws.push(check_law("Omega'(W(lambda u)) = lambda u", &polys, |u| {
        let x = lambda(u, n);
        Ok((omega_prime(&alg, &w_map(&alg, &x)?)?, x))
    }));
    suite.laws.push(check_law("first grades of Omega'", &polys, |u| {
        let om = omega_prime(&alg, &lambda(u, n.max(3)))?;
        let p = |x: &MatPoly, y: &MatPoly| alg.pre_lie(x, y);
        let uu = p(u, u);
        let g3 = p(&uu, u).scale(&Rat::frac(1, 4)).plus(&p(u, &uu).scale(&Rat::frac(1, 12)));
        Ok((vec![om.grade(1).clone(), om.grade(2).clone(), om.grade(3).clone()], vec![u.clone(), uu.scale(&Rat::frac(-1, 2)), g3]))
    }));
    suite.laws.push(check_law("integrated equations, Y * X = 1, exp*(+-Omega') = X, Y", &mats, |a| {
        let sol = q_magnus_solution(&MagnusConfig::constant(c.clone(), n, a.clone())?)?;
        Ok((sol.passed(), true))
    }));
    Ok(suite)
}

fn closed_form_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let c = &cfg.ctx;
    let n = cfg.order;
    let mut s = sampler(cfg, 4);
    let mats: Vec<Mat> = (0..cfg.series_samples()).map(|_| s.mat(c.dim())).collect();
    let ring = PointwiseRing::new(n, &MatPoly::zero(c.dim()));
    let mut suite = SuiteReport::new("closed forms for constant a");
    let tables = |a: &Mat| magnus_tables(&MagnusConfig::constant(c.clone(), n, a.clone())?);
    suite.laws.push(check_law("W(lambda a) grade n = a^n (1-q)^{n-1} t^{n-1} / n!", &mats, |a| {
        Ok((tables(a)?.w, w_closed_form(c, a, n)))
    }));
    suite.laws.push(check_law("Omega' grade n = (q-1)^{n-1} t^{n-1} a^n / n", &mats, |a| {
        Ok((tables(a)?.omega_prime, omega_prime_closed_form(c, a, n)))
    }));
    suite.laws.push(check_law("Omega_q grade n = (q-1)^{n-1} t^n a^n / (n [n]_q)", &mats, |a| {
        Ok((tables(a)?.omega_q, omega_q_closed_form(c, a, n)))
    }));
    suite.laws.push(check_law("exp(Omega_q(lambda a)) = E_q(lambda a t)", &mats, |a| {
        Ok((exp_nilpotent(&ring, &tables(a)?.omega_q)?, c.big_e_q_series(a, n)))
    }));
    suite.laws.push(check_law("exp(-Omega_q(-lambda a)) = e_q(lambda a t)", &mats, |a| {
        let om = tables(&-a)?.omega_q;
        Ok((exp_nilpotent(&ring, &-&om)?, c.e_q_series(a, n)))
    }));
    Ok(suite)
}

fn exponential_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let c = &cfg.ctx;
    let n = cfg.order;
    let mut s = sampler(cfg, 5);
    let mats: Vec<Mat> = (0..cfg.series_samples()).map(|_| s.mat(c.dim())).collect();
    let mut suite = SuiteReport::new("q-exponentials");
    suite.laws.push(check_law("e_q(tU) E_q(-tU) = 1", &mats, |u| {
        Ok(((&c.q_exp_small(u, n) * &c.q_exp_big(&-u, n)).truncate(n), MatPoly::one(c.dim())))
    }));
    suite.laws.push(check_law("d_q e_q(tU) = U e_q(tU)", &mats, |u| {
        let e = c.q_exp_small(u, n);
        Ok((c.q_derive(&e), e.left_mul_mat(u).truncate(n - 1)))
    }));
    if c.is_classical() {
        suite.skipped.push("infinite product for E_q: needs q < 1".into());
    } else {
        // enough factors that the tail q^K t0 is far below the bound
        let factors = ((24.0 / -c.q().to_f64().log2()).ceil() as usize).clamp(8, 400);
        let bound = Rat::from_int(2).powu(20).recip()?;
        let rep = q_difference_check(c, &Mat::identity(1), &Rat::frac(1, 2), factors, factors)?;
        suite.laws.push(check_law(
            &format!("prod_(n<{factors}) (1 + (1-q) q^n t0) vs E_q(t0), t0 = 1/2, residual < 2^-20"),
            &[rep.residual_approx],
            |_| Ok((rep.within(&bound), true)),
        ));
    }
    Ok(suite)
}

fn bch_chain_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let c = &cfg.ctx;
    let n = cfg.order;
    let mut s = sampler(cfg, 6);
    let d = c.dim().max(2);
    let ctx = QContext::new(c.q().clone(), d)?;
    let mut suite = SuiteReport::new("BCH through the # product");
    if c.dim() < 2 {
        suite.skipped.push("non-commuting pairs need dim >= 2; using 2x2 matrices".into());
    }
    let pairs: Vec<_> = (0..cfg.series_samples()).map(|_| s.noncommuting_pair(d)).collect();
    suite.laws.push(check_law("e_q(at) e_q(bt) = exp(-Omega_q(-lambda b # -lambda a))", &pairs, |(a, b)| {
        let r = q_bch_transfer_check(&ctx, a, b, n)?;
        Ok((r.lhs, r.rhs))
    }));
    let commuting: Vec<_> = (0..cfg.series_samples()).map(|_| s.commuting_pair(d)).collect();
    suite.laws.push(check_law("commuting a, b: -lambda b # -lambda a = -lambda(a+b) + lambda^2 (1-q) ab t", &commuting, |(a, b)| {
        let r = q_bch_transfer_check(&ctx, a, b, n)?;
        Ok(((r.chain_holds, r.corollary_sharp_holds, r.corollary_exp_holds), (true, Some(true), Some(true))))
    }));
    Ok(suite)
}

fn q_bch_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let c = &cfg.ctx;
    let q = c.q().clone();
    let n = cfg.order.clamp(3, 6);
    let res = q_bch(c, n)?;
    let mut suite = SuiteReport::new("q-BCH series");
    let x = FreeSeries::x(n);
    let y = FreeSeries::y(n);
    let unit: [(); 1] = [()];
    suite.laws.push(check_law("e_q(BCH_q(x, y)) = e_q(x) e_q(y)", &unit, |_| {
        Ok((free_q_exp(c, &res.terms, n)?, free_mul(&free_q_exp(c, &x, n)?, &free_q_exp(c, &y, n)?)))
    }));
    suite.laws.push(check_law("degree 2 = -(1/[2]_q) [y, x]_q", &unit, |_| {
        Ok((res.degree(2).clone(), q_commutator(&q, &y, &x).scale(&-c.q_number(2).recip()?)))
    }));
    suite.laws.push(check_law("degree 3 = -q/([2]_q [3]_q!) ([[x,y]_q,x]_q + [y,[x,y]_q]_q)", &unit, |_| {
        let xy = q_commutator(&q, &x, &y);
        let k = -(&q / &(c.q_number(2) * c.q_factorial(3)));
        Ok((res.degree(3).clone(), q_commutator(&q, &xy, &x).plus(&q_commutator(&q, &y, &xy)).scale(&k)))
    }));
    suite.laws.push(check_law("components are homogeneous", &unit, |_| {
        Ok(((1..=n).all(|k| res.degree(k).is_homogeneous(k)), true))
    }));
    // yx = q xy
    let xm = Mat::from_rows(vec![vec![Rat::one(), Rat::zero()], vec![Rat::zero(), q.clone()]])?;
    let ym = Mat::from_ints(&[&[0, 1], &[0, 0]]);
    suite.laws.push(check_law("yx = q xy: BCH_q(x, y) = x + y", &[(xm.clone(), ym.clone())], |(a, b)| {
        let parts = free_eval(&res.terms, a, b)?;
        let rest: Vec<Mat> = parts[2..].to_vec();
        Ok(((parts[1].clone(), rest), (a + b, vec![Mat::zero(2); n - 1])))
    }));
    Ok(suite)
}

fn lemma_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let c = &cfg.ctx;
    let mut s = sampler(cfg, 7);
    let polys: Vec<_> = (0..cfg.series_samples()).map(|_| s.commuting_matpoly(c.dim(), 2)).collect();
    let mut suite = SuiteReport::new("n-fold pre-Lie products with commuting coefficients");
    for n in 1..=5 {
        suite.laws.push(check_law(&format!("{n}-fold product = (1-q)^{} P^{n} t^{}", n - 1, n - 1), &polys, |p| {
            Ok((nfold_prelie_commuting(c, p, n)?, nfold_prelie_closed_form(c, p, n)))
        }));
        suite.laws.push(check_law(&format!("{n}-fold coefficients b_(m,{n})"), &polys, |p| {
            let prod = nfold_prelie_commuting(c, p, n)?;
            let top = 2 * n;
            let lhs: Vec<Mat> = (0..=top).map(|m| prod.coeff(m + n - 1)).collect();
            let rhs = (0..=top).map(|m| nfold_coefficient(c, p, m, n)).collect::<Result<Vec<_>>>()?;
            Ok((lhs, rhs))
        }));
    }
    Ok(suite)
}

fn appendix_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let d = cfg.ctx.dim();
    let mut s = sampler(cfg, 8);
    let h = Rat::frac(1, 2);
    let mut grid = |steps: usize| GridFn::from_fn(h.clone(), steps, |_| s.mat(d));
    let triples = (0..cfg.samples / 4)
        .map(|_| Ok((grid(8)?, grid(8)?, grid(8)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut suite = SuiteReport::new("finite differences");
    suite.laws = check_twisted_axioms(&FdDendriform, &triples);
    suite.laws.extend(check_derived_products(&FdDendriform, &triples));
    let us = (0..cfg.series_samples()).map(|_| grid(32)).collect::<Result<Vec<_>>>()?;
    suite.laws.push(check_law("F = 1 + S_h(F U) and D_h F = F U", &us, |u| {
        let f = solve_fd(u);
        Ok(((fd_residual(&f, u)?.is_zero(), fd_derivative_residual(&f, u)?.is_zero()), (true, true)))
    }));
    let short: Vec<_> = us.iter().map(|u| u.restricted(7)).collect();
    suite.laws.push(check_law("X = 1 + X > lambda U, F = S_h(X)", &short, |u| Ok((solve_fd_dendriform(u, 6)?, solve_fd(u)))));
    Ok(suite)
}

/// `t^k -> t^{k+1} / (k + 1)`.
fn riemann(f: &MatPoly) -> MatPoly {
    f.map_terms(|k, m| Ok(Some((k + 1, m.scale(&Rat::frac(1, k as i64 + 1)))))).expect("infallible")
}

fn classical_suite(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let c = &cfg.ctx;
    let mut suite = SuiteReport::new("classical limit");
    if !c.is_classical() {
        suite.skipped.push("Riemann pre-Lie Magnus terms: only at q = 1".into());
        return Ok(suite);
    }
    let mut s = sampler(cfg, 9);
    let polys: Vec<_> = (0..cfg.series_samples()).map(|_| s.matpoly(c.dim(), 2)).collect();
    let alg = QDendriform::new(c.clone());
    let p = |u: &MatPoly, v: &MatPoly| &(&riemann(u) * v) - &(v * &riemann(u));
    suite.laws.push(check_law("Omega' grades 1-4 from the Riemann integral", &polys, |u| {
        let om = omega_prime(&alg, &lambda(u, 4))?;
        let uu = p(u, u);
        let g3 = &p(&uu, u).scale(&Rat::frac(1, 4)) + &p(u, &uu).scale(&Rat::frac(1, 12));
        let g4 = &p(&p(&uu, u), u).scale(&Rat::frac(-1, 6)) + &p(u, &p(&uu, u)).scale(&Rat::frac(-1, 12));
        let lhs: Vec<MatPoly> = (1..=4).map(|k| om.grade(k).clone()).collect();
        Ok((lhs, vec![u.clone(), uu.scale(&Rat::frac(-1, 2)), g3, g4]))
    }));
    Ok(suite)
}
