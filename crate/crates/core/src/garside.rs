//! Braid words on `m` strands and their Garside left normal forms.
//!
//! A simple element (permutation braid) is stored as its permutation. The
//! positive braid `σ_{i_1} ... σ_{i_k}` maps to `s_{i_1} ∘ ... ∘ s_{i_k}`,
//! so the starting set of a simple element is its left descent set and the
//! finishing set its right descent set.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::presentations::FinitePermutation;
use crate::word::{write_letters, Alphabet, GenWord};

/// Largest supported strand count; descent sets are `u64` bitmasks.
pub const MAX_STRANDS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    word: GenWord,
}

impl BraidWord {
    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, word: GenWord::empty(Alphabet::A) }
    }

    /// Builds a word from `(index, exponent)` pairs, indices in `1..strands`.
    pub fn new(strands: usize, letters: impl IntoIterator<Item = (u32, i32)>) -> Result<Self> {
        if !(2..=MAX_STRANDS).contains(&strands) {
            return Err(Error::invalid(format!("strand count must be in 2..={MAX_STRANDS}, got {strands}")));
        }
        let word = GenWord::from_letters(Alphabet::A, letters);
        if let Some(bad) = word.letters().iter().find(|&&(i, _)| i == 0 || i as usize >= strands) {
            return Err(Error::invalid(format!("a{} is not a generator on {strands} strands", bad.0)));
        }
        Ok(BraidWord { strands, word })
    }

    pub fn generator(strands: usize, i: u32, exp: i32) -> Result<Self> {
        Self::new(strands, [(i, exp)])
    }

    /// From signed unit letters: `k > 0` is `σ_k`, `k < 0` is `σ_{|k|}⁻¹`.
    pub fn from_units(strands: usize, units: &[i32]) -> Result<Self> {
        Self::new(strands, units.iter().map(|&u| (u.unsigned_abs(), u.signum())))
    }

    pub fn units(&self) -> Vec<i32> {
        let mut out = Vec::with_capacity(self.len());
        for &(i, e) in self.word.letters() {
            let u = i as i32 * e.signum();
            out.extend(std::iter::repeat_n(u, e.unsigned_abs() as usize));
        }
        out
    }

    /// Parses an ambient word (`a` letters).
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let w = GenWord::parse_in(text, Alphabet::A)?;
        Self::new(strands, w.letters().iter().copied())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(u32, i32)] {
        self.word.letters()
    }

    /// Number of unit letters.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters().iter().all(|&(_, e)| e > 0)
    }

    fn check_strands(&self, other: &BraidWord) -> Result<()> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { left: self.strands, right: other.strands });
        }
        Ok(())
    }

    /// Freely reduced concatenation.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        self.check_strands(other)?;
        Ok(BraidWord { strands: self.strands, word: self.word.concat(&other.word) })
    }

    /// Concatenation of words already known to share a strand count.
    pub fn mul(&self, other: &BraidWord) -> BraidWord {
        self.concat(other).expect("strand counts agree")
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord { strands: self.strands, word: self.word.inverse() }
    }

    pub fn pow(&self, k: i64) -> BraidWord {
        BraidWord { strands: self.strands, word: self.word.pow(k) }
    }

    /// `g · w · g⁻¹`.
    pub fn conjugate(g: &BraidWord, w: &BraidWord) -> Result<BraidWord> {
        Ok(g.concat(w)?.mul(&g.invert()))
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters().iter().map(|&(_, e)| e as i64).sum()
    }

    /// Image in the symmetric group on the strands.
    pub fn underlying_permutation(&self) -> FinitePermutation {
        self.letters()
            .iter()
            .filter(|&&(_, e)| e % 2 != 0)
            .fold(FinitePermutation::identity(self.strands), |acc, &(i, _)| {
                acc.compose(&FinitePermutation::transposition(self.strands, i as usize))
            })
    }

    pub fn normal_form(&self) -> NormalForm {
        normal_form(self)
    }

    /// Word problem: identity of normal forms.
    pub fn equals(&self, other: &BraidWord) -> Result<bool> {
        self.check_strands(other)?;
        Ok(self.normal_form() == other.normal_form())
    }

    /// Whether a positive braid lies in the standard parabolic submonoid
    /// generated by `σ_j, j ∈ support`. `support` must be a contiguous index
    /// range.
    pub fn positive_parabolic_support(&self, support: &[u32]) -> Result<bool> {
        if !self.is_positive() {
            return Err(Error::Precondition("positive_parabolic_support needs a positive word".into()));
        }
        let (lo, hi) = match (support.iter().min(), support.iter().max()) {
            (Some(&lo), Some(&hi)) => (lo as usize, hi as usize),
            _ => return Ok(self.is_empty()),
        };
        if lo == 0 || hi >= self.strands || hi - lo + 1 != support.len() {
            return Err(Error::invalid(format!("support {support:?} is not a contiguous generator range")));
        }
        // Points touched by σ_lo..σ_hi, one-based: lo..=hi+1.
        let inside = |p: &FinitePermutation| (1..=self.strands).all(|i| p.fixes(i) || (lo..=hi + 1).contains(&i));
        let nf = self.normal_form();
        if nf.inf > 0 && !inside(&FinitePermutation::reversal(self.strands)) {
            return Ok(false);
        }
        Ok(nf.factors.iter().all(|f| inside(f.permutation())))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, 'a', self.letters())
    }
}

/// Positive word of the Garside element on `m` strands:
/// `(σ_1 ... σ_{m-1})(σ_1 ... σ_{m-2}) ... (σ_1 σ_2) σ_1`.
pub fn delta_indices(generators: u32) -> Vec<u32> {
    (1..=generators).rev().flat_map(|top| 1..=top).collect()
}

pub fn delta_word(strands: usize) -> Result<BraidWord> {
    if strands < 2 {
        return Err(Error::invalid(format!("Δ needs at least 2 strands, got {strands}")));
    }
    BraidWord::new(strands, delta_indices(strands as u32 - 1).into_iter().map(|i| (i, 1)))
}

/// Permutation braid.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleElement(FinitePermutation);

impl SimpleElement {
    pub fn new(p: FinitePermutation) -> Self {
        SimpleElement(p)
    }

    pub fn permutation(&self) -> &FinitePermutation {
        &self.0
    }

    pub fn strands(&self) -> usize {
        self.0.degree()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn is_delta(&self) -> bool {
        self.0 == FinitePermutation::reversal(self.strands())
    }

    /// Bit `i - 1` is set iff the element begins with `σ_i`.
    pub fn starting_set(&self) -> u64 {
        let inv = self.0.inverse();
        descents(inv.raw())
    }

    /// Bit `i - 1` is set iff the element ends with `σ_i`.
    pub fn finishing_set(&self) -> u64 {
        descents(self.0.raw())
    }

    /// A positive word for the element, reading off left descents.
    pub fn word(&self) -> Vec<u32> {
        let mut p = self.0.clone();
        let mut out = Vec::with_capacity(p.length());
        loop {
            let s = descents(p.inverse().raw());
            if s == 0 {
                return out;
            }
            let i = s.trailing_zeros() as usize;
            swap_values(p.raw_mut(), i);
            out.push(i as u32 + 1);
        }
    }
}

fn descents(one_line: &[u8]) -> u64 {
    one_line.windows(2).enumerate().filter(|(_, w)| w[0] > w[1]).fold(0u64, |acc, (i, _)| acc | (1 << i))
}

/// `p ← s_i ∘ p`: exchange the values `i` and `i+1` (zero-based).
fn swap_values(p: &mut [u8], i: usize) {
    for v in p.iter_mut() {
        if *v as usize == i {
            *v += 1;
        } else if *v as usize == i + 1 {
            *v -= 1;
        }
    }
}

/// Makes the pair `(a, b)` left-weighted without changing the product `ab`.
/// Returns whether anything moved.
fn left_weight(a: &mut FinitePermutation, b: &mut FinitePermutation) -> bool {
    let mut changed = false;
    loop {
        let movable = descents(b.inverse().raw()) & !descents(a.raw());
        if movable == 0 {
            return changed;
        }
        let i = movable.trailing_zeros() as usize;
        a.raw_mut().swap(i, i + 1);
        swap_values(b.raw_mut(), i);
        changed = true;
    }
}

/// Garside left normal form `Δ^inf · f_1 ⋯ f_ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub strands: usize,
    pub inf: i64,
    pub factors: Vec<SimpleElement>,
}

impl NormalForm {
    /// `inf + ℓ`.
    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    /// Expands back into a braid word.
    pub fn to_word(&self) -> BraidWord {
        let delta = delta_word(self.strands).expect("normal forms have >= 2 strands");
        let mut w = delta.pow(self.inf);
        for f in &self.factors {
            let fw = BraidWord::new(self.strands, f.word().into_iter().map(|i| (i, 1))).expect("valid indices");
            w = w.mul(&fw);
        }
        w
    }

    /// Checks the structural invariants: no trivial or `Δ` factors and every
    /// consecutive pair left-weighted.
    pub fn is_valid(&self) -> bool {
        self.factors.iter().all(|f| f.strands() == self.strands && !f.is_identity() && !f.is_delta())
            && self.factors.windows(2).all(|p| p[1].starting_set() & !p[0].finishing_set() == 0)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.inf)?;
        for x in &self.factors {
            write!(f, " | {}", x.permutation())?;
        }
        Ok(())
    }
}

impl FromStr for NormalForm {
    type Err = Error;

    /// Parses `D^<inf> | <perm> | ...`; needs at least one factor or an
    /// explicit strand count, so `D^k` alone is rejected.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse { token: s.to_string(), offset: 0, reason: reason.to_string() };
        let mut parts = s.split('|').map(str::trim);
        let head = parts.next().unwrap_or("");
        let inf: i64 = head
            .strip_prefix("D^")
            .ok_or_else(|| bad("expected `D^<inf>`"))?
            .parse()
            .map_err(|_| bad("Δ exponent is not an integer"))?;
        let mut factors = Vec::new();
        for part in parts {
            let values = part
                .split_whitespace()
                .map(|v| v.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad("permutation entries must be integers"))?;
            factors.push(SimpleElement(FinitePermutation::from_one_line(&values)?));
        }
        let strands = factors.first().map(|f| f.strands()).ok_or_else(|| bad("no factors to infer strands"))?;
        let nf = NormalForm { strands, inf, factors };
        if !nf.is_valid() {
            return Err(bad("factors are not a left-weighted chain"));
        }
        Ok(nf)
    }
}

pub fn normal_form(w: &BraidWord) -> NormalForm {
    let m = w.strands();
    let units = w.units();
    let delta = FinitePermutation::reversal(m);
    let mut negatives_after = units.iter().filter(|&&u| u < 0).count();
    let mut factors: Vec<FinitePermutation> = Vec::with_capacity(units.len());

    for &u in &units {
        let i = u.unsigned_abs() as usize;
        let mut x = FinitePermutation::transposition(m, i);
        if u < 0 {
            negatives_after -= 1;
            // σ_i⁻¹ = Δ⁻¹ · (Δ σ_i⁻¹)
            x = delta.compose(&x);
        }
        // Moving the remaining Δ⁻¹ letters to the front conjugates x by Δ
        // once per letter.
        if negatives_after % 2 == 1 {
            x = delta.compose(&x).compose(&delta);
        }
        factors.push(x);
        let mut j = factors.len() - 1;
        while j > 0 {
            let (left, right) = factors.split_at_mut(j);
            if !left_weight(&mut left[j - 1], &mut right[0]) {
                break;
            }
            j -= 1;
        }
        while factors.last().is_some_and(|f| f.is_identity()) {
            factors.pop();
        }
    }

    let negatives = units.iter().filter(|&&u| u < 0).count() as i64;
    let leading = factors.iter().take_while(|f| **f == delta).count();
    NormalForm {
        strands: m,
        inf: leading as i64 - negatives,
        factors: factors.into_iter().skip(leading).map(SimpleElement).collect(),
    }
}
