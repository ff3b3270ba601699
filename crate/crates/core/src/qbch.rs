//! The q-deformed BCH series in the free algebra on `x, y`.
//!
//! `BCH_q(x, y)` is the unique `Z` without constant term such that
//! `e_q(Z) = e_q(x) e_q(y)`, computed word-length by word-length.

use serde::Serialize;

use crate::algebra::{free_mul, FreeSeries, Letter, Mat, Rat, Word};
use crate::error::{Error, Result};
use crate::qcalc::QContext;

/// `sum_{n<=N} z^n / [n]_q!` truncated at word-length `order`.
pub fn free_q_exp(ctx: &QContext, z: &FreeSeries, order: usize) -> Result<FreeSeries> {
    if !z.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let z = z.truncate(order);
    let mut acc = FreeSeries::one(order);
    let mut power = FreeSeries::one(order);
    for n in 1..=order {
        power = free_mul(&power, &z);
        acc = acc.plus(&power.scale(&ctx.q_factorial(n as u32).recip()?));
    }
    Ok(acc)
}

/// Inverse of [`free_q_exp`]: the degree-`n` part of `Z` is whatever
/// `s_n` still lacks after exponentiating the lower parts.
pub fn free_q_log(ctx: &QContext, s: &FreeSeries, order: usize) -> Result<FreeSeries> {
    if !s.constant_term().is_one() {
        return Err(Error::ConstantTermNotOne);
    }
    let mut z = FreeSeries::zero(order);
    for n in 1..=order {
        let missing = s.truncate(order).minus(&free_q_exp(ctx, &z, order)?).degree_part(n);
        z = z.plus(&missing);
    }
    Ok(z)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QBchResult {
    pub q: Rat,
    pub order: usize,
    pub terms: FreeSeries,
    /// `by_degree[n - 1]` is the word-length `n` component.
    pub by_degree: Vec<FreeSeries>,
}

impl QBchResult {
    pub fn degree(&self, n: usize) -> &FreeSeries {
        &self.by_degree[n - 1]
    }

    /// Each component written with `[a, b]_q = ab - q ba` where a
    /// decomposition is found, raw words otherwise.
    pub fn rendered(&self) -> Vec<String> {
        self.by_degree.iter().enumerate().map(|(i, c)| render_component(&self.q, c, i + 1)).collect()
    }
}

pub fn q_bch(ctx: &QContext, order: usize) -> Result<QBchResult> {
    if order == 0 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    let ex = free_q_exp(ctx, &FreeSeries::x(order), order)?;
    let ey = free_q_exp(ctx, &FreeSeries::y(order), order)?;
    let terms = free_q_log(ctx, &free_mul(&ex, &ey), order)?;
    let by_degree = (1..=order).map(|n| terms.degree_part(n)).collect();
    Ok(QBchResult { q: ctx.q().clone(), order, terms, by_degree })
}

/// `[a, b]_q = ab - q ba`.
pub fn q_commutator(q: &Rat, a: &FreeSeries, b: &FreeSeries) -> FreeSeries {
    free_mul(a, b).minus(&free_mul(b, a).scale(q))
}

/// Substitutes matrices for `x` and `y`; entry `n` is the image of the
/// word-length `n` component.
pub fn free_eval(s: &FreeSeries, x: &Mat, y: &Mat) -> Result<Vec<Mat>> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch { left: x.dim(), right: y.dim() });
    }
    let dim = x.dim();
    let mut out = vec![Mat::zero(dim); s.order() + 1];
    for (w, c) in s.terms() {
        let m = w.letters().iter().fold(Mat::identity(dim), |acc, l| match l {
            Letter::X => &acc * x,
            Letter::Y => &acc * y,
        });
        out[w.len()] = &out[w.len()] + &m.scale(c);
    }
    Ok(out)
}

/// Sum of all components of [`free_eval`].
pub fn free_eval_sum(s: &FreeSeries, x: &Mat, y: &Mat) -> Result<Mat> {
    let parts = free_eval(s, x, y)?;
    Ok(parts.iter().skip(1).fold(parts[0].clone(), |acc, m| &acc + m))
}

struct Bracket {
    label: String,
    value: FreeSeries,
}

/// All binary q-bracketings of words of length `n`, the forms appearing in
/// low degrees first.
fn brackets(q: &Rat, n: usize) -> Vec<Bracket> {
    let mut out = Vec::new();
    let x = FreeSeries::x(n);
    let y = FreeSeries::y(n);
    match n {
        2 => out.push(Bracket { label: "[y,x]_q".into(), value: q_commutator(q, &y, &x) }),
        3 => {
            let xy = q_commutator(q, &x, &y);
            out.push(Bracket {
                label: "([[x,y]_q,x]_q + [y,[x,y]_q]_q)".into(),
                value: q_commutator(q, &xy, &x).plus(&q_commutator(q, &y, &xy)),
            });
        }
        _ => {}
    }
    for w in Word::all_of_length(n) {
        out.extend(bracketings(q, w.letters(), n));
    }
    out
}

fn bracketings(q: &Rat, letters: &[Letter], order: usize) -> Vec<Bracket> {
    if letters.len() == 1 {
        let w = Word::new(letters.to_vec());
        return vec![Bracket { label: w.to_string(), value: FreeSeries::word(order, w, Rat::one()) }];
    }
    let mut out = Vec::new();
    for split in 1..letters.len() {
        for l in bracketings(q, &letters[..split], order) {
            for r in bracketings(q, &letters[split..], order) {
                out.push(Bracket {
                    label: format!("[{},{}]_q", l.label, r.label),
                    value: q_commutator(q, &l.value, &r.value),
                });
            }
        }
    }
    out
}

/// Writes `target` in terms of the first independent candidates found by
/// elimination, if it lies in their span.
fn decompose(candidates: &[Bracket], target: &FreeSeries) -> Option<Vec<(usize, Rat)>> {
    // (reduced vector, its pivot word, combination of candidates)
    let mut basis: Vec<(FreeSeries, Word, Vec<Rat>)> = Vec::new();
    let reduce = |basis: &[(FreeSeries, Word, Vec<Rat>)], v: &mut FreeSeries, combo: &mut Vec<Rat>| {
        for (b, pivot, bc) in basis {
            let c = v.coeff(pivot);
            if c.is_zero() {
                continue;
            }
            let f = &c / &b.coeff(pivot);
            *v = v.minus(&b.scale(&f));
            for (k, x) in bc.iter().enumerate() {
                combo[k] = &combo[k] - &(x * &f);
            }
        }
    };
    for (i, cand) in candidates.iter().enumerate() {
        let mut v = cand.value.clone();
        let mut combo = vec![Rat::zero(); candidates.len()];
        combo[i] = Rat::one();
        reduce(&basis, &mut v, &mut combo);
        if let Some(pivot) = v.terms().keys().next().cloned() {
            basis.push((v, pivot, combo));
        }
    }
    let mut rest = target.clone();
    let mut combo = vec![Rat::zero(); candidates.len()];
    reduce(&basis, &mut rest, &mut combo);
    if !rest.is_zero() {
        return None;
    }
    Some(combo.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, -c)).collect())
}

fn render_component(q: &Rat, component: &FreeSeries, n: usize) -> String {
    if component.is_zero() {
        return "0".into();
    }
    if n >= 2 {
        let cands = brackets(q, n);
        if let Some(parts) = decompose(&cands, component) {
            return signed_sum(parts.iter().map(|(k, c)| (c.clone(), cands[*k].label.clone())));
        }
    }
    signed_sum(component.terms().iter().map(|(w, c)| (c.clone(), w.to_string())))
}

/// `c1 a - c2 b + ..` with unit coefficients dropped.
fn signed_sum(terms: impl Iterator<Item = (Rat, String)>) -> String {
    let mut out = String::new();
    for (c, label) in terms {
        let sign = if c.is_negative() { "-" } else { "+" };
        match (out.is_empty(), c.is_negative()) {
            (true, false) => {}
            (true, true) => out.push('-'),
            (false, _) => out.push_str(&format!(" {sign} ")),
        }
        let abs = c.abs();
        if abs.is_one() {
            out.push_str(&label);
        } else {
            out.push_str(&format!("{abs} {label}"));
        }
    }
    out
}
