//! Truncated series in a formal parameter `lambda`.
//!
//! A [`LamSeries`] is `alpha 1 + sum_{n=0}^{N} lambda^n c_n` where `1` is the
//! unit adjoined to a dendriform algebra (not the constant function) and the
//! `c_n` live in a [`Carrier`]. Elements of `lambda D[[lambda]]` have
//! `alpha = 0` and `c_0 = 0`; elements of `1 + lambda D[[lambda]]` have
//! `alpha = 1` and `c_0 = 0`. Series over `A[[lambda]]` with the pointwise
//! product (for instance `exp(Omega_q)`) use `c_0` and leave `alpha = 0`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Carrier, MatPoly, Rat, TermJson};
use crate::dendriform::TwistedDendriform;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct LamSeries<C> {
    order: usize,
    unit: Rat,
    grades: Vec<C>,
}

/// Bilinear products that extend grade-wise to series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Product {
    /// `x * y = x > y + x < phi(y)`
    Assoc,
    Prec,
    Succ,
    /// Left pre-Lie `x |> y = x > y - y < phi(x)`.
    PreLie,
    /// Right pre-Lie `x <| y = x < phi(y) - y > x`.
    RightPreLie,
    /// The associative product of the carrier itself.
    Pointwise,
}

impl Product {
    fn name(self) -> &'static str {
        match self {
            Product::Assoc => "associative product",
            Product::Prec => "left half-product",
            Product::Succ => "right half-product",
            Product::PreLie => "left pre-Lie product",
            Product::RightPreLie => "right pre-Lie product",
            Product::Pointwise => "pointwise product",
        }
    }
}

impl<C: Carrier> LamSeries<C> {
    pub fn zero(order: usize, proto: &C) -> Self {
        LamSeries { order, unit: Rat::zero(), grades: vec![proto.zero_like(); order + 1] }
    }

    /// The adjoined dendriform unit.
    pub fn unit(order: usize, proto: &C) -> Self {
        let mut s = Self::zero(order, proto);
        s.unit = Rat::one();
        s
    }

    /// `c` placed in grade 0, for series in `A[[lambda]]`.
    pub fn constant(order: usize, c: C) -> Self {
        Self::monomial(order, 0, c)
    }

    /// `lambda^grade c`; zero when `grade > order`.
    pub fn monomial(order: usize, grade: usize, c: C) -> Self {
        let mut s = Self::zero(order, &c);
        if grade <= order {
            s.grades[grade] = c;
        }
        s
    }

    pub fn from_grades(order: usize, unit: Rat, grades: Vec<C>) -> Result<Self> {
        if grades.len() != order + 1 {
            return Err(Error::InvalidParameter(format!(
                "series of order {order} needs {} grades, got {}",
                order + 1,
                grades.len()
            )));
        }
        for g in &grades[1..] {
            grades[0].compatible(g)?;
        }
        Ok(LamSeries { order, unit, grades })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of the adjoined unit.
    pub fn unit_coeff(&self) -> &Rat {
        &self.unit
    }

    pub fn has_unit(&self) -> bool {
        !self.unit.is_zero()
    }

    pub fn grade(&self, n: usize) -> &C {
        &self.grades[n]
    }

    pub fn grades(&self) -> &[C] {
        &self.grades
    }

    /// A zero carrier element of the right shape.
    pub fn proto(&self) -> C {
        self.grades[0].zero_like()
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero() && self.grades.iter().all(Carrier::is_zero)
    }

    /// Membership in `lambda D[[lambda]]`.
    pub fn is_augmented_free(&self) -> bool {
        self.unit.is_zero() && self.grades[0].is_zero()
    }

    /// Membership in `1 + lambda D[[lambda]]`.
    pub fn is_unipotent(&self) -> bool {
        self.unit.is_one() && self.grades[0].is_zero()
    }

    pub fn require_augmented_free(&self) -> Result<()> {
        if self.is_augmented_free() {
            Ok(())
        } else {
            Err(Error::NonzeroGradeZero)
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        self.grades[0].compatible(&other.grades[0])
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(LamSeries {
            order: self.order,
            unit: &self.unit + &other.unit,
            grades: self.grades.iter().zip(&other.grades).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(LamSeries {
            order: self.order,
            unit: &self.unit - &other.unit,
            grades: self.grades.iter().zip(&other.grades).map(|(a, b)| a.minus(b)).collect(),
        })
    }

    pub(crate) fn plus(&self, other: &Self) -> Self {
        self.try_add(other).expect("compatible series")
    }

    pub fn scale(&self, c: &Rat) -> Self {
        LamSeries {
            order: self.order,
            unit: &self.unit * c,
            grades: self.grades.iter().map(|g| g.scaled(c)).collect(),
        }
    }

    /// Substitutes `lambda -> c lambda`: grade `n` is multiplied by `c^n`.
    pub fn rescale_lambda(&self, c: &Rat) -> Self {
        LamSeries {
            order: self.order,
            unit: self.unit.clone(),
            grades: self
                .grades
                .iter()
                .enumerate()
                .map(|(n, g)| g.scaled(&c.powu(n as u32)))
                .collect(),
        }
    }

    /// Applies a linear map grade-wise; the unit coefficient is kept, which
    /// is right for maps fixing the adjoined unit (such as `phi`).
    pub fn map_grades<F: FnMut(&C) -> C>(&self, f: F) -> Self {
        LamSeries { order: self.order, unit: self.unit.clone(), grades: self.grades.iter().map(f).collect() }
    }

    pub fn try_map_grades<F: FnMut(&C) -> Result<C>>(&self, f: F) -> Result<Self> {
        let grades = self.grades.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(LamSeries { order: self.order, unit: self.unit.clone(), grades })
    }

    /// Drops grades above `order` (or pads with zeros when raising it).
    pub fn with_order(&self, order: usize) -> Self {
        let proto = self.proto();
        let grades = (0..=order).map(|n| self.grades.get(n).cloned().unwrap_or_else(|| proto.clone())).collect();
        LamSeries { order, unit: self.unit.clone(), grades }
    }

    /// Keeps grades `0..=upto`, zeroing the rest, without changing the order.
    pub fn truncated_at(&self, upto: usize) -> Self {
        let mut s = self.clone();
        for g in s.grades.iter_mut().skip(upto + 1) {
            *g = g.zero_like();
        }
        s
    }

    pub fn with_grade(mut self, n: usize, c: C) -> Self {
        self.grades[n] = c;
        self
    }

    /// Product through the carrier's own multiplication.
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.has_unit() || other.has_unit() {
            return Err(Error::UnitInPointwiseProduct);
        }
        let n = self.order;
        let mut grades = vec![self.proto(); n + 1];
        for (i, a) in self.grades.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.grades.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    grades[i + j] = grades[i + j].plus(&a.times(b));
                }
            }
        }
        Ok(LamSeries { order: n, unit: Rat::zero(), grades })
    }
}

/// Grade-wise extension of a product to series:
/// grade `n` of the result is `sum_{i+j=n} prod(u_i, v_j)`, truncated at the
/// common order. The adjoined unit follows
/// `a < 1 = a = 1 > a`, `1 < a = 0 = a > 1`, `a * 1 = 1 * a = a`, `1 * 1 = 1`;
/// the pre-Lie products vanish against the unit. `1 < 1` and `1 > 1` (and
/// hence the pre-Lie products of the unit with itself) are errors.
pub fn lam_mul<D>(
    alg: &D,
    u: &LamSeries<D::Elem>,
    v: &LamSeries<D::Elem>,
    prod: Product,
) -> Result<LamSeries<D::Elem>>
where
    D: TwistedDendriform + ?Sized,
{
    if prod == Product::Pointwise {
        return u.pointwise_mul(v);
    }
    u.check(v)?;
    let both_units = u.has_unit() && v.has_unit();
    if both_units && prod != Product::Assoc {
        return Err(Error::UndefinedUnitProduct(prod.name()));
    }
    let n = u.order;
    let apply = |a: &D::Elem, b: &D::Elem| match prod {
        Product::Assoc => alg.assoc(a, b),
        Product::Prec => alg.prec(a, b),
        Product::Succ => alg.succ(a, b),
        Product::PreLie => alg.pre_lie(a, b),
        Product::RightPreLie => alg.right_pre_lie(a, b),
        Product::Pointwise => unreachable!(),
    };
    let mut grades = vec![u.proto(); n + 1];
    for (i, a) in u.grades.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in v.grades.iter().enumerate().take(n + 1 - i) {
            if !b.is_zero() {
                grades[i + j] = grades[i + j].plus(&apply(a, b));
            }
        }
    }
    // unit on the left: 1 * b = b, 1 > b = b
    if u.has_unit() && matches!(prod, Product::Assoc | Product::Succ) {
        for (g, b) in grades.iter_mut().zip(&v.grades) {
            *g = g.plus(&b.scaled(&u.unit));
        }
    }
    // unit on the right: a * 1 = a, a < 1 = a
    if v.has_unit() && matches!(prod, Product::Assoc | Product::Prec) {
        for (g, a) in grades.iter_mut().zip(&u.grades) {
            *g = g.plus(&a.scaled(&v.unit));
        }
    }
    let unit = if prod == Product::Assoc { &u.unit * &v.unit } else { Rat::zero() };
    Ok(LamSeries { order: n, unit, grades })
}

impl<C: Carrier> Add for &LamSeries<C> {
    type Output = LamSeries<C>;
    fn add(self, rhs: &LamSeries<C>) -> LamSeries<C> {
        self.try_add(rhs).expect("compatible series")
    }
}

impl<C: Carrier> Sub for &LamSeries<C> {
    type Output = LamSeries<C>;
    fn sub(self, rhs: &LamSeries<C>) -> LamSeries<C> {
        self.try_sub(rhs).expect("compatible series")
    }
}

impl<C: Carrier> Neg for &LamSeries<C> {
    type Output = LamSeries<C>;
    fn neg(self) -> LamSeries<C> {
        self.scale(&-Rat::one())
    }
}

impl<C: Carrier> fmt::Debug for LamSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if self.has_unit() {
            write!(f, "{}*1", self.unit)?;
            first = false;
        }
        for (n, g) in self.grades.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "l^{n}({g:?})")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(l^{})", self.order + 1)
    }
}

#[derive(Serialize, Deserialize)]
struct GradeJson {
    grade: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct LamSeriesJson {
    dim: usize,
    order: usize,
    unit: Rat,
    grades: Vec<GradeJson>,
}

/// `{"dim": d, "order": N, "unit": "p/r", "grades": [{"grade": n, "terms":
/// [{"degree": k, "matrix": [[...]]}]}]}`; zero grades are omitted.
impl Serialize for LamSeries<MatPoly> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let grades = self
            .grades
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(n, g)| GradeJson { grade: n, terms: g.terms_json() })
            .collect();
        LamSeriesJson { dim: self.grades[0].dim(), order: self.order, unit: self.unit.clone(), grades }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LamSeries<MatPoly> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = LamSeriesJson::deserialize(deserializer)?;
        if raw.dim == 0 {
            return Err(D::Error::custom("dim must be positive"));
        }
        let mut s = LamSeries::zero(raw.order, &MatPoly::zero(raw.dim));
        s.unit = raw.unit;
        for g in raw.grades {
            if g.grade > raw.order {
                return Err(D::Error::custom(format!("grade {} exceeds order {}", g.grade, raw.order)));
            }
            let p = MatPoly::from_terms_json(raw.dim, g.terms).map_err(D::Error::custom)?;
            s.grades[g.grade] = s.grades[g.grade].plus(&p);
        }
        Ok(s)
    }
}
