//! Polynomials in `t` with square-matrix coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Carrier, Mat, Rat};
use crate::error::{Error, Result};

/// `sum_k a_k t^k` with `a_k` square matrices of a common dimension.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatPoly {
    dim: usize,
    coeffs: BTreeMap<usize, Mat>,
}

impl MatPoly {
    pub fn zero(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        MatPoly { dim, coeffs: BTreeMap::new() }
    }

    /// The constant function `1_A`.
    pub fn one(dim: usize) -> Self {
        Self::constant(Mat::identity(dim))
    }

    pub fn constant(m: Mat) -> Self {
        Self::monomial(0, m)
    }

    /// `m t^degree`.
    pub fn monomial(degree: usize, m: Mat) -> Self {
        let mut p = Self::zero(m.dim());
        if !m.is_zero() {
            p.coeffs.insert(degree, m);
        }
        p
    }

    /// The identity function `iota(t) = t 1_B`.
    pub fn iota(dim: usize) -> Self {
        Self::monomial(1, Mat::identity(dim))
    }

    /// Builds a polynomial from `(degree, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Mat)>,
    {
        let mut p = Self::zero(dim);
        for (k, m) in terms {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: m.dim() });
            }
            p.add_term(k, &m);
        }
        Ok(p)
    }

    fn add_term(&mut self, k: usize, m: &Mat) {
        if m.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&k) {
            Some(c) => {
                *c = &*c + m;
                if c.is_zero() {
                    self.coeffs.remove(&k);
                }
            }
            None => {
                self.coeffs.insert(k, m.clone());
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.keys().next().copied()
    }

    pub fn coeff(&self, k: usize) -> Mat {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| Mat::zero(self.dim))
    }

    /// Nonzero terms in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Mat)> {
        self.coeffs.iter().map(|(k, m)| (*k, m))
    }

    pub fn constant_term(&self) -> Mat {
        self.coeff(0)
    }

    fn check_dim(&self, other: &MatPoly) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MatPoly) -> Result<MatPoly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (k, m) in &other.coeffs {
            out.add_term(*k, m);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MatPoly) -> Result<MatPoly> {
        self.check_dim(other)?;
        self.try_add(&-other)
    }

    /// Cauchy product, coefficient order preserved: `(pr)_n = sum_{i+j=n} p_i r_j`.
    pub fn try_mul(&self, other: &MatPoly) -> Result<MatPoly> {
        self.check_dim(other)?;
        let mut out = MatPoly::zero(self.dim);
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                out.add_term(i + j, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> MatPoly {
        if c.is_zero() {
            return MatPoly::zero(self.dim);
        }
        MatPoly {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|(k, m)| (*k, m.scale(c))).collect(),
        }
    }

    /// `m * self` with `m` a constant matrix.
    pub fn left_mul_mat(&self, m: &Mat) -> MatPoly {
        let terms = self.coeffs.iter().map(|(k, a)| (*k, m * a));
        MatPoly::from_terms(self.dim, terms).expect("dimensions agree")
    }

    /// `self * m` with `m` a constant matrix.
    pub fn right_mul_mat(&self, m: &Mat) -> MatPoly {
        let terms = self.coeffs.iter().map(|(k, a)| (*k, a * m));
        MatPoly::from_terms(self.dim, terms).expect("dimensions agree")
    }

    /// Applies a monomial-wise linear map: `a_k t^k -> f(k, a_k)`, where `f`
    /// returns the target degree and coefficient. Zero results are dropped.
    pub fn map_terms<F>(&self, mut f: F) -> Result<MatPoly>
    where
        F: FnMut(usize, &Mat) -> Result<Option<(usize, Mat)>>,
    {
        let mut out = MatPoly::zero(self.dim);
        for (k, m) in &self.coeffs {
            if let Some((k2, m2)) = f(*k, m)? {
                out.add_term(k2, &m2);
            }
        }
        Ok(out)
    }

    /// Drops all terms of degree greater than `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> MatPoly {
        MatPoly {
            dim: self.dim,
            coeffs: self.coeffs.range(..=max_degree).map(|(k, m)| (*k, m.clone())).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MatPoly {
        (0..exp).fold(MatPoly::one(self.dim), |acc, _| &acc * self)
    }

    /// Evaluates at a rational point (Horner).
    pub fn eval(&self, t: &Rat) -> Mat {
        let Some(deg) = self.degree() else {
            return Mat::zero(self.dim);
        };
        let mut acc = Mat::zero(self.dim);
        for k in (0..=deg).rev() {
            acc = &acc.scale(t) + &self.coeff(k);
        }
        acc
    }

    /// True when all coefficient matrices commute pairwise.
    pub fn coefficients_commute(&self) -> bool {
        let cs: Vec<&Mat> = self.coeffs.values().collect();
        cs.iter().enumerate().all(|(i, a)| cs[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn max_abs(&self) -> Rat {
        self.coeffs.values().map(Mat::max_abs).max().unwrap_or_else(Rat::zero)
    }
}

impl Carrier for MatPoly {
    fn zero_like(&self) -> Self {
        MatPoly::zero(self.dim)
    }

    fn one_like(&self) -> Self {
        MatPoly::one(self.dim)
    }

    fn is_zero(&self) -> bool {
        MatPoly::is_zero(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn scaled(&self, c: &Rat) -> Self {
        self.scale(c)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        self.check_dim(other)
    }
}

impl Add for &MatPoly {
    type Output = MatPoly;
    fn add(self, rhs: &MatPoly) -> MatPoly {
        self.try_add(rhs).expect("polynomial dimensions agree")
    }
}

impl Sub for &MatPoly {
    type Output = MatPoly;
    fn sub(self, rhs: &MatPoly) -> MatPoly {
        self.try_sub(rhs).expect("polynomial dimensions agree")
    }
}

impl Mul for &MatPoly {
    type Output = MatPoly;
    fn mul(self, rhs: &MatPoly) -> MatPoly {
        self.try_mul(rhs).expect("polynomial dimensions agree")
    }
}

impl Neg for &MatPoly {
    type Output = MatPoly;
    fn neg(self) -> MatPoly {
        MatPoly { dim: self.dim, coeffs: self.coeffs.iter().map(|(k, m)| (*k, -m)).collect() }
    }
}

impl fmt::Debug for MatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, m)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{m:?}")?,
                1 => write!(f, "{m:?} t")?,
                _ => write!(f, "{m:?} t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for MatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct TermJson {
    pub degree: usize,
    pub matrix: Mat,
}

#[derive(Serialize, Deserialize)]
struct MatPolyJson {
    dim: usize,
    terms: Vec<TermJson>,
}

impl MatPoly {
    pub(crate) fn terms_json(&self) -> Vec<TermJson> {
        self.coeffs.iter().map(|(k, m)| TermJson { degree: *k, matrix: m.clone() }).collect()
    }

    pub(crate) fn from_terms_json(dim: usize, terms: Vec<TermJson>) -> Result<Self> {
        MatPoly::from_terms(dim, terms.into_iter().map(|t| (t.degree, t.matrix)))
    }
}

/// `{"dim": d, "terms": [{"degree": k, "matrix": [["p/r", ...], ...]}, ...]}`
impl Serialize for MatPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatPolyJson { dim: self.dim, terms: self.terms_json() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MatPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MatPolyJson::deserialize(deserializer)?;
        if raw.dim == 0 {
            return Err(D::Error::custom("dim must be positive"));
        }
        MatPoly::from_terms_json(raw.dim, raw.terms).map_err(D::Error::custom)
    }
}
