//! Truncated series in the free associative algebra on `{x, y}`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ring::TruncatedRing;
use super::Rat;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

/// A word over `{x, y}`, ordered by length first and then lexicographically
/// with `x < y`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// All words of length exactly `n`, in order.
    pub fn all_of_length(n: usize) -> Vec<Word> {
        (0..1usize << n)
            .map(|bits| {
                Word((0..n).map(|i| if bits >> (n - 1 - i) & 1 == 1 { Letter::Y } else { Letter::X }).collect())
            })
            .collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        s.chars()
            .map(|c| match c {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                _ => Err(Error::InvalidParameter(format!("letter {c:?} is not x or y"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FreeSeries {
    order: usize,
    terms: BTreeMap<Word, Rat>,
}

impl FreeSeries {
    pub fn zero(order: usize) -> Self {
        FreeSeries { order, terms: BTreeMap::new() }
    }

    /// The empty word.
    pub fn one(order: usize) -> Self {
        Self::word(order, Word::empty(), Rat::one())
    }

    pub fn x(order: usize) -> Self {
        Self::word(order, Word(vec![Letter::X]), Rat::one())
    }

    pub fn y(order: usize) -> Self {
        Self::word(order, Word(vec![Letter::Y]), Rat::one())
    }

    /// `c * w`, dropped when `w` is longer than `order`.
    pub fn word(order: usize, w: Word, c: Rat) -> Self {
        let mut s = Self::zero(order);
        s.add_term(w, c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Rat)>>(order: usize, terms: I) -> Self {
        let mut s = Self::zero(order);
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    }

    fn add_term(&mut self, w: Word, c: Rat) {
        if c.is_zero() || w.len() > self.order {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rat> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeff_of(&self, w: &str) -> Rat {
        self.coeff(&w.parse().expect("word over x, y"))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Word::empty())
    }

    /// The homogeneous component of word-length `n`.
    pub fn degree_part(&self, n: usize) -> FreeSeries {
        FreeSeries {
            order: self.order,
            terms: self.terms.iter().filter(|(w, _)| w.len() == n).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Drops words longer than `n` and lowers the order to `n`.
    pub fn truncate(&self, n: usize) -> FreeSeries {
        FreeSeries {
            order: n,
            terms: self.terms.iter().filter(|(w, _)| w.len() <= n).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    pub fn is_homogeneous(&self, n: usize) -> bool {
        self.terms.keys().all(|w| w.len() == n)
    }

    pub fn plus(&self, other: &FreeSeries) -> FreeSeries {
        let mut s = FreeSeries { order: self.order.min(other.order), terms: BTreeMap::new() };
        for (w, c) in self.terms.iter().chain(&other.terms) {
            s.add_term(w.clone(), c.clone());
        }
        s
    }

    pub fn minus(&self, other: &FreeSeries) -> FreeSeries {
        self.plus(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> FreeSeries {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        FreeSeries { order: self.order, terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> FreeSeries {
        (0..n).fold(Self::one(self.order), |acc, _| free_mul(&acc, self))
    }
}

/// Concatenation product, truncated at the smaller order of the factors.
pub fn free_mul(u: &FreeSeries, v: &FreeSeries) -> FreeSeries {
    let order = u.order.min(v.order);
    let mut acc: BTreeMap<Word, Rat> = BTreeMap::new();
    for (wu, cu) in &u.terms {
        for (wv, cv) in &v.terms {
            if wu.len() + wv.len() <= order {
                *acc.entry(wu.concat(wv)).or_insert_with(Rat::zero) += &(cu * cv);
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    FreeSeries { order, terms: acc }
}

impl fmt::Debug for FreeSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FreeSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            match (w.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{w}")?,
                (false, false) => write!(f, "{a} {w}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct FreeSeriesJson {
    order: usize,
    terms: BTreeMap<String, Rat>,
}

/// `{"order": N, "terms": {"xy": "p/r", ...}}`; the empty word is `""`.
impl Serialize for FreeSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FreeSeriesJson {
            order: self.order,
            terms: self.terms.iter().map(|(w, c)| (w.to_string(), c.clone())).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FreeSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = FreeSeriesJson::deserialize(deserializer)?;
        let mut s = FreeSeries::zero(raw.order);
        for (w, c) in raw.terms {
            let w: Word = w.parse().map_err(D::Error::custom)?;
            if w.len() > raw.order {
                return Err(D::Error::custom(format!("word {w} exceeds order {}", raw.order)));
            }
            s.add_term(w, c);
        }
        Ok(s)
    }
}

/// The free algebra truncated at word-length `order`.
#[derive(Debug, Clone, Copy)]
pub struct FreeRing {
    pub order: usize,
}

impl TruncatedRing for FreeRing {
    type Elem = FreeSeries;

    fn zero(&self) -> FreeSeries {
        FreeSeries::zero(self.order)
    }

    fn one(&self) -> FreeSeries {
        FreeSeries::one(self.order)
    }

    fn add(&self, a: &FreeSeries, b: &FreeSeries) -> FreeSeries {
        a.plus(b)
    }

    fn scale(&self, a: &FreeSeries, c: &Rat) -> FreeSeries {
        a.scale(c)
    }

    fn mul(&self, a: &FreeSeries, b: &FreeSeries) -> Result<FreeSeries> {
        Ok(free_mul(a, b))
    }

    fn order(&self) -> usize {
        self.order
    }
}
