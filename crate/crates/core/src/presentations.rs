//! Coxeter graphs `A_n`, `B_n`, `Ã_n`, their Artin relations, and the
//! projections onto the finite and affine symmetric groups.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::{Alphabet, GenWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    TypeA,
    TypeB,
    AffineA,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    family: Family,
    rank: u32,
}

impl CoxeterGraph {
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        let min = if family == Family::AffineA { 2 } else { 1 };
        if rank < min {
            return Err(Error::invalid(format!("{family:?} requires n >= {min}, got {rank}")));
        }
        Ok(CoxeterGraph { family, rank })
    }

    pub fn type_a(n: u32) -> Result<Self> {
        Self::new(Family::TypeA, n)
    }

    pub fn type_b(n: u32) -> Result<Self> {
        Self::new(Family::TypeB, n)
    }

    pub fn affine_a(n: u32) -> Result<Self> {
        Self::new(Family::AffineA, n)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn alphabet(&self) -> Alphabet {
        match self.family {
            Family::TypeA => Alphabet::S,
            Family::TypeB => Alphabet::R,
            Family::AffineA => Alphabet::T,
        }
    }

    /// Generator indices: `1..=n` for the finite types, `0..=n` for `Ã_n`.
    pub fn generators(&self) -> Vec<u32> {
        match self.family {
            Family::AffineA => (0..=self.rank).collect(),
            _ => (1..=self.rank).collect(),
        }
    }

    pub fn is_generator(&self, s: u32) -> bool {
        match self.family {
            Family::AffineA => s <= self.rank,
            _ => (1..=self.rank).contains(&s),
        }
    }

    /// Coxeter matrix entry `m(s, t)`.
    pub fn m(&self, s: u32, t: u32) -> Result<u32> {
        if !self.is_generator(s) || !self.is_generator(t) {
            return Err(Error::invalid(format!("generator out of range: ({s}, {t})")));
        }
        if s == t {
            return Ok(1);
        }
        let (lo, hi) = (s.min(t), s.max(t));
        let n = self.rank;
        let m = match self.family {
            Family::TypeA => {
                if hi - lo == 1 {
                    3
                } else {
                    2
                }
            }
            Family::TypeB => {
                if lo == n - 1 && hi == n {
                    4
                } else if hi - lo == 1 {
                    3
                } else {
                    2
                }
            }
            Family::AffineA => {
                let d = (hi - lo) % (n + 1);
                if d == 1 || d == n {
                    3
                } else {
                    2
                }
            }
        };
        Ok(m)
    }
}

/// One Artin relation `Π(s,t,m) = Π(t,s,m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub s: u32,
    pub t: u32,
    pub m: u32,
    pub lhs: GenWord,
    pub rhs: GenWord,
}

/// The alternating word `a b a ...` of length `m`.
pub fn pi_word(alphabet: Alphabet, a: u32, b: u32, m: u32) -> Result<GenWord> {
    if m < 2 {
        return Err(Error::invalid(format!("Π(a,b,m) needs m >= 2, got {m}")));
    }
    Ok(GenWord::positive(alphabet, (0..m).map(|k| if k % 2 == 0 { a } else { b })))
}

/// Alternating product `x y x ...` of length `m` for arbitrary values.
pub fn pi_product<T: Clone>(a: &T, b: &T, m: u32) -> Vec<T> {
    (0..m).map(|k| if k % 2 == 0 { a.clone() } else { b.clone() }).collect()
}

/// One relation per unordered pair of distinct generators.
pub fn relations(g: &CoxeterGraph) -> Vec<Relation> {
    let gens = g.generators();
    let alphabet = g.alphabet();
    let mut out = Vec::new();
    for (k, &s) in gens.iter().enumerate() {
        for &t in &gens[k + 1..] {
            let m = g.m(s, t).expect("generators are valid");
            out.push(Relation {
                s,
                t,
                m,
                lhs: pi_word(alphabet, s, t, m).expect("m >= 2"),
                rhs: pi_word(alphabet, t, s, m).expect("m >= 2"),
            });
        }
    }
    out
}

/// Bijection of `{1..m}`, stored zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinitePermutation {
    images: Vec<u8>,
}

impl FinitePermutation {
    pub fn identity(m: usize) -> Self {
        assert!(m <= u8::MAX as usize, "at most 255 points");
        FinitePermutation { images: (0..m as u8).collect() }
    }

    /// The transposition `(i i+1)`, one-based.
    pub fn transposition(m: usize, i: usize) -> Self {
        let mut p = Self::identity(m);
        assert!(i >= 1 && i < m, "transposition index out of range");
        p.images.swap(i - 1, i);
        p
    }

    /// The order-reversing permutation `i -> m+1-i`.
    pub fn reversal(m: usize) -> Self {
        FinitePermutation { images: (0..m as u8).rev().collect() }
    }

    /// From one-line notation with one-based values.
    pub fn from_one_line(values: &[usize]) -> Result<Self> {
        let m = values.len();
        let mut seen = vec![false; m];
        let mut images = Vec::with_capacity(m);
        for &v in values {
            if v == 0 || v > m || seen[v - 1] {
                return Err(Error::invalid(format!("not a permutation: {values:?}")));
            }
            seen[v - 1] = true;
            images.push((v - 1) as u8);
        }
        Ok(FinitePermutation { images })
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    pub(crate) fn raw_mut(&mut self) -> &mut [u8] {
        &mut self.images
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the one-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.image(i) == i
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        FinitePermutation { images: other.images.iter().map(|&j| self.images[j as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        FinitePermutation { images: inv }
    }

    /// Number of inversions, i.e. the Coxeter length.
    pub fn length(&self) -> usize {
        let p = &self.images;
        (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
    }
}

impl fmt::Display for FinitePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.one_line().iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Element of `W[Ã_n]` in window notation `[f(1), ..., f(n+1)]`, extended
/// to all integers by `f(i + n + 1) = f(i) + n + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffinePermutation {
    n: u32,
    window: Vec<i64>,
}

impl AffinePermutation {
    pub fn identity(n: u32) -> Self {
        AffinePermutation { n, window: (1..=(n as i64 + 1)).collect() }
    }

    pub fn from_window(n: u32, window: Vec<i64>) -> Result<Self> {
        let period = n as i64 + 1;
        if window.len() as i64 != period {
            return Err(Error::invalid(format!("window must have {period} entries")));
        }
        let mut residues: Vec<i64> = window.iter().map(|v| v.rem_euclid(period)).collect();
        residues.sort_unstable();
        residues.dedup();
        if residues.len() as i64 != period {
            return Err(Error::invalid("window residues are not distinct"));
        }
        if window.iter().sum::<i64>() != period * (period + 1) / 2 {
            return Err(Error::invalid("window sum must be (n+1)(n+2)/2"));
        }
        Ok(AffinePermutation { n, window })
    }

    /// The affine reflection `t_k`, swapping `j(n+1)+k` and `j(n+1)+k+1`.
    pub fn generator(n: u32, k: u32) -> Result<Self> {
        if k > n {
            return Err(Error::invalid(format!("t{k} is not a generator of Ã_{n}")));
        }
        let period = n as i64 + 1;
        let k = k as i64;
        let window = (1..=period)
            .map(|x| {
                let r = x.rem_euclid(period);
                if r == k {
                    x + 1
                } else if r == (k + 1) % period {
                    x - 1
                } else {
                    x
                }
            })
            .collect();
        Ok(AffinePermutation { n, window })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// `f(i)` for any integer `i`.
    pub fn eval(&self, i: i64) -> i64 {
        let period = self.n as i64 + 1;
        let r = (i - 1).rem_euclid(period);
        let q = (i - 1 - r) / period;
        self.window[r as usize] + q * period
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        AffinePermutation { n: self.n, window: other.window.iter().map(|&v| self.eval(v)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().zip(1..).all(|(&v, i)| v == i)
    }

    /// Whether the element lies in the finite parabolic subgroup generated
    /// by `t_1..t_n`, i.e. the window is a permutation of `{1..n+1}`.
    pub fn in_finite_parabolic(&self) -> bool {
        let period = self.n as i64 + 1;
        self.window.iter().all(|&v| (1..=period).contains(&v))
    }
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, v) in self.window.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

pub fn affine_in_finite_parabolic(a: &AffinePermutation) -> bool {
    a.in_finite_parabolic()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    Finite(FinitePermutation),
    Affine(AffinePermutation),
}

/// Image of a word under `ω: A[Γ] -> W[Γ]`. The signed permutations of
/// `W[B_n]` are not modelled.
pub fn coxeter_project(w: &GenWord, g: &CoxeterGraph) -> Result<Projection> {
    for &(s, _) in w.letters() {
        if !g.is_generator(s) {
            return Err(Error::invalid(format!("{s} is not a generator index of {:?}_{}", g.family(), g.rank())));
        }
    }
    let odd = w.letters().iter().filter(|&&(_, e)| e % 2 != 0).map(|&(s, _)| s);
    match g.family() {
        Family::TypeA => {
            let m = g.rank() as usize + 1;
            let p = odd.fold(FinitePermutation::identity(m), |acc, s| {
                acc.compose(&FinitePermutation::transposition(m, s as usize))
            });
            Ok(Projection::Finite(p))
        }
        Family::AffineA => {
            let n = g.rank();
            let mut acc = AffinePermutation::identity(n);
            for s in odd {
                acc = acc.compose(&AffinePermutation::generator(n, s)?);
            }
            Ok(Projection::Affine(acc))
        }
        Family::TypeB => Err(Error::invalid("projection to W[B_n] is not supported")),
    }
}
