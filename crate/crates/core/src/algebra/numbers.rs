//! Factorials, binomials and Bernoulli numbers.

use num_bigint::BigInt;
use num_traits::One;

use super::Rat;

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `n! / (k_0! k_1! ...)` where `n = sum k_i`.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let n: u32 = parts.iter().sum();
    parts.iter().fold(factorial(n), |acc, &k| acc / factorial(k))
}

/// `B_0, ..., B_upto` with `B_1 = -1/2`.
///
/// Uses `sum_{j=0}^{m} C(m+1, j) B_j = 0` for `m >= 1`. The sign of `B_1`
/// matters: the Magnus recursion needs `-1/2` to reproduce its first
/// correction `-1/2 a > a`.
pub fn bernoulli_numbers(upto: usize) -> Vec<Rat> {
    let mut b = Vec::with_capacity(upto + 1);
    b.push(Rat::one());
    for m in 1..=upto as u32 {
        let s: Rat = (0..m)
            .map(|j| Rat::from(binomial(m + 1, j)) * &b[j as usize])
            .sum();
        b.push(-(s / Rat::from_int(m as i64 + 1)));
    }
    b
}

pub fn bernoulli(m: usize) -> Rat {
    bernoulli_numbers(m).pop().expect("at least B_0")
}
