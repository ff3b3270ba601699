//! Deterministic random inputs for law checks.
//!
//! Entries are small integers in `-3..=3`; every law checked in this crate
//! is multilinear, so such samples are as strong as generic ones.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{FreeSeries, Mat, MatPoly, Rat, Word};

pub const ENTRY_RANGE: i64 = 3;

#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn int(&mut self) -> i64 {
        self.rng.gen_range(-ENTRY_RANGE..=ENTRY_RANGE)
    }

    pub fn rat(&mut self) -> Rat {
        Rat::from_int(self.int())
    }

    /// A rational with small numerator and denominator in `1..=4`.
    pub fn small_fraction(&mut self) -> Rat {
        let d = self.rng.gen_range(1..=4);
        Rat::frac(self.int(), d)
    }

    pub fn mat(&mut self, dim: usize) -> Mat {
        let rows = (0..dim).map(|_| (0..dim).map(|_| self.rat()).collect()).collect();
        Mat::from_rows(rows).expect("square")
    }

    /// Like [`Sampler::mat`] but never the zero matrix.
    pub fn nonzero_mat(&mut self, dim: usize) -> Mat {
        loop {
            let m = self.mat(dim);
            if !m.is_zero() {
                return m;
            }
        }
    }

    pub fn matpoly(&mut self, dim: usize, max_degree: usize) -> MatPoly {
        let terms: Vec<_> = (0..=max_degree).map(|k| (k, self.mat(dim))).collect();
        MatPoly::from_terms(dim, terms).expect("dims agree")
    }

    /// A polynomial with vanishing constant term.
    pub fn matpoly_positive(&mut self, dim: usize, max_degree: usize) -> MatPoly {
        let terms: Vec<_> = (1..=max_degree.max(1)).map(|k| (k, self.mat(dim))).collect();
        MatPoly::from_terms(dim, terms).expect("dims agree")
    }

    /// `c t^k` with `1 <= k <= max_degree` and `c` a random matrix.
    pub fn monomial_positive(&mut self, dim: usize, max_degree: usize) -> MatPoly {
        let k = self.rng.gen_range(1..=max_degree.max(1));
        MatPoly::monomial(k, self.mat(dim))
    }

    /// A polynomial whose coefficients are polynomials in one random matrix
    /// `g`, hence pairwise commuting.
    pub fn commuting_matpoly(&mut self, dim: usize, max_degree: usize) -> MatPoly {
        let g = self.mat(dim);
        let terms: Vec<_> = (0..=max_degree).map(|k| (k, self.in_span(&g))).collect();
        MatPoly::from_terms(dim, terms).expect("dims agree")
    }

    /// `c0 + c1 g + c2 g^2`.
    fn in_span(&mut self, g: &Mat) -> Mat {
        let dim = g.dim();
        let c0 = Mat::scalar(dim, self.rat());
        &(&c0 + &g.scale(&self.rat())) + &g.pow(2).scale(&self.rat())
    }

    /// Two commuting matrices: `b = c0 + c1 a`.
    pub fn commuting_pair(&mut self, dim: usize) -> (Mat, Mat) {
        let a = self.nonzero_mat(dim);
        let b = &Mat::scalar(dim, self.rat()) + &a.scale(&self.rat());
        (a, b)
    }

    pub fn noncommuting_pair(&mut self, dim: usize) -> (Mat, Mat) {
        assert!(dim >= 2, "every pair of 1x1 matrices commutes");
        loop {
            let (a, b) = (self.mat(dim), self.mat(dim));
            if !a.commutes_with(&b) {
                return (a, b);
            }
        }
    }

    /// A series with random small coefficients on a random subset of words
    /// of length `<= order`.
    pub fn free_series(&mut self, order: usize) -> FreeSeries {
        let mut terms = Vec::new();
        for n in 0..=order {
            for w in Word::all_of_length(n) {
                if self.rng.gen_bool(0.4) {
                    terms.push((w, self.rat()));
                }
            }
        }
        FreeSeries::from_terms(order, terms)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}
