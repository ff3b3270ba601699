//! Square matrices over [`Rat`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rat;
use crate::error::{Error, Result};

/// A `dim x dim` matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    dim: usize,
    entries: Vec<Rat>,
}

impl Mat {
    pub fn zero(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Mat { dim, entries: vec![Rat::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Rat::one())
    }

    /// `c` times the identity.
    pub fn scalar(dim: usize, c: Rat) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidParameter("matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::InvalidParameter(format!(
                    "matrix is not square: row of length {} in a {dim}-row matrix",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(Mat { dim, entries })
    }

    /// Convenience constructor from small integers; panics if not square.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
            .collect();
        Self::from_rows(rows).expect("square integer matrix")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Rat {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rat) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Rat>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    fn check_dim(&self, other: &Mat) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Mat) -> Result<Mat> {
        self.check_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Mat { dim: self.dim, entries })
    }

    pub fn try_sub(&self, other: &Mat) -> Result<Mat> {
        self.check_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Mat { dim: self.dim, entries })
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut entries = vec![Rat::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        Ok(Mat { dim: n, entries })
    }

    pub fn scale(&self, c: &Rat) -> Mat {
        Mat { dim: self.dim, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, exp: u32) -> Mat {
        (0..exp).fold(Mat::identity(self.dim), |acc, _| &acc * self)
    }

    pub fn commutes_with(&self, other: &Mat) -> bool {
        self * other == other * self
    }

    /// Largest absolute entry; the residual norm used by numeric checks.
    pub fn max_abs(&self) -> Rat {
        self.entries.iter().map(Rat::abs).max().unwrap_or_else(Rat::zero)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.dim).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// Operator forms panic on dimension mismatch; the `try_*` methods report it.

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        self.try_add(rhs).expect("matrix dimensions agree")
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        self.try_sub(rhs).expect("matrix dimensions agree")
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.try_mul(rhs).expect("matrix dimensions agree")
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat { dim: self.dim, entries: self.entries.iter().map(|a| -a).collect() }
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Mat, D::Error> {
        let rows = Vec::<Vec<Rat>>::deserialize(deserializer)?;
        Mat::from_rows(rows).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_is_noncommutative() {
        let a = Mat::from_ints(&[&[0, 1], &[0, 0]]);
        let b = Mat::from_ints(&[&[0, 0], &[1, 0]]);
        assert_eq!(&a * &b, Mat::from_ints(&[&[1, 0], &[0, 0]]));
        assert_eq!(&b * &a, Mat::from_ints(&[&[0, 0], &[0, 1]]));
        assert!(!a.commutes_with(&b));
    }

    #[test]
    fn mismatched_dimensions_are_reported() {
        let a = Mat::identity(2);
        let b = Mat::identity(3);
        assert_eq!(a.try_mul(&b), Err(Error::DimensionMismatch { left: 2, right: 3 }));
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn json_form() {
        let m: Mat = serde_json::from_str(r#"[[0, 1], ["1/2", "-3"]]"#).unwrap();
        assert_eq!(m.get(1, 0), &Rat::frac(1, 2));
        assert_eq!(
            serde_json::to_string(&m).unwrap(),
            r#"[["0/1","1/1"],["1/2","-3/1"]]"#
        );
        assert!(serde_json::from_str::<Mat>("[[1, 2]]").is_err());
        assert!(serde_json::from_str::<Mat>("[[0.5]]").is_err());
    }

    #[test]
    fn max_abs_norm() {
        let m = Mat::from_ints(&[&[1, -5], &[2, 0]]);
        assert_eq!(m.max_abs(), Rat::from_int(5));
    }
}
