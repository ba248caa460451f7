//! Artin's action of the braid group on the free group `F_m`.
//!
//! `σ_i` sends `x_i ↦ x_i x_{i+1} x_i⁻¹`, `x_{i+1} ↦ x_i` and fixes the other
//! generators. The action is faithful, so comparing images gives a word
//! problem solution independent of the Garside machinery, and exact
//! fixation of `x_m` decides membership in `⟨σ_1, ..., σ_{m-2}⟩`.

use std::fmt;

use crate::error::{Error, Result};
use crate::garside::BraidWord;

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Freely reduced word; `k > 0` is `x_k`, `k < 0` is `x_{|k|}⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn generator(k: i32) -> Self {
        FreeWord(vec![k])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut w = FreeWord::default();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, l: i32) {
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    fn extend_inverse_of(&mut self, w: &FreeWord) {
        for &l in w.0.iter().rev() {
            self.push(-l);
        }
    }

    pub fn inverse(&self) -> FreeWord {
        let mut out = FreeWord::default();
        out.extend_inverse_of(self);
        out
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for &l in &other.0 {
            out.push(l);
        }
        out
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut k = 0;
        let mut first = true;
        while k < self.0.len() {
            let l = self.0[k];
            let run = self.0[k..].iter().take_while(|&&x| x == l).count();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let e = run as i64 * l.signum() as i64;
            if e == 1 {
                write!(f, "x{}", l.abs())?;
            } else {
                write!(f, "x{}^{}", l.abs(), e)?;
            }
            k += run;
        }
        Ok(())
    }
}

/// Automorphism of `F_m` given by the images of `x_1, ..., x_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeAutomorphism {
    images: Vec<FreeWord>,
}

impl FreeAutomorphism {
    pub fn identity(rank: usize) -> Self {
        FreeAutomorphism { images: (1..=rank as i32).map(FreeWord::generator).collect() }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    /// Image of `x_k`, one-based.
    pub fn image(&self, k: usize) -> &FreeWord {
        &self.images[k - 1]
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        let mut out = FreeWord::default();
        for &l in &w.0 {
            let img = &self.images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                for &x in &img.0 {
                    out.push(x);
                }
            } else {
                out.extend_inverse_of(img);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FreeAutomorphism) -> FreeAutomorphism {
        FreeAutomorphism { images: other.images.iter().map(|w| self.apply(w)).collect() }
    }

    /// `self ← self ∘ σ_i^{±1}`.
    fn right_multiply(&mut self, unit: i32, budget: usize) -> Result<()> {
        let i = unit.unsigned_abs() as usize - 1;
        let (a, b) = (self.images[i].clone(), self.images[i + 1].clone());
        let (new_a, new_b) = if unit > 0 {
            // x_i ↦ x_i x_{i+1} x_i⁻¹, x_{i+1} ↦ x_i
            let mut w = a.concat(&b);
            w.extend_inverse_of(&a);
            (w, a)
        } else {
            // x_i ↦ x_{i+1}, x_{i+1} ↦ x_{i+1}⁻¹ x_i x_{i+1}
            let mut w = b.inverse().concat(&a);
            for &l in &b.0 {
                w.push(l);
            }
            (b, w)
        };
        for w in [&new_a, &new_b] {
            if w.len() > budget {
                return Err(Error::BudgetExceeded { len: w.len(), budget });
            }
        }
        self.images[i] = new_a;
        self.images[i + 1] = new_b;
        Ok(())
    }
}

impl fmt::Display for FreeAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, w) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "x{} -> {}", k + 1, w)?;
        }
        Ok(())
    }
}

/// The automorphism induced by `w`; a homomorphism, so
/// `artin_action(uv) = artin_action(u) ∘ artin_action(v)`.
pub fn artin_action(w: &BraidWord) -> Result<FreeAutomorphism> {
    artin_action_with_budget(w, DEFAULT_BUDGET)
}

pub fn artin_action_with_budget(w: &BraidWord, budget: usize) -> Result<FreeAutomorphism> {
    let mut phi = FreeAutomorphism::identity(w.strands());
    for u in w.units() {
        phi.right_multiply(u, budget)?;
    }
    Ok(phi)
}

pub fn equals_oracle(w1: &BraidWord, w2: &BraidWord) -> Result<bool> {
    equals_oracle_with_budget(w1, w2, DEFAULT_BUDGET)
}

pub fn equals_oracle_with_budget(w1: &BraidWord, w2: &BraidWord, budget: usize) -> Result<bool> {
    if w1.strands() != w2.strands() {
        return Err(Error::StrandMismatch { left: w1.strands(), right: w2.strands() });
    }
    Ok(artin_action_with_budget(w1, budget)? == artin_action_with_budget(w2, budget)?)
}

/// Whether the induced automorphism fixes `x_m` on the nose, which decides
/// membership in the parabolic subgroup `⟨σ_1, ..., σ_{m-2}⟩`.
pub fn fixes_last_generator(w: &BraidWord) -> Result<bool> {
    fixes_last_generator_with_budget(w, DEFAULT_BUDGET)
}

pub fn fixes_last_generator_with_budget(w: &BraidWord, budget: usize) -> Result<bool> {
    let m = w.strands();
    let phi = artin_action_with_budget(w, budget)?;
    Ok(phi.image(m).letters() == [m as i32])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::garside::delta_word;
    use proptest::prelude::*;

    fn w(m: usize, s: &str) -> BraidWord {
        BraidWord::parse(m, s).unwrap()
    }

    #[test]
    fn generator_rule() {
        let phi = artin_action(&w(2, "a1")).unwrap();
        assert_eq!(phi.image(1).letters(), &[1, 2, -1]);
        assert_eq!(phi.image(2).letters(), &[1]);
        assert_eq!(phi.to_string(), "x1 -> x1 x2 x1^-1, x2 -> x1");
    }

    #[test]
    fn braid_relation_and_boundary() {
        let a = artin_action(&w(3, "a1 a2 a1")).unwrap();
        let b = artin_action(&w(3, "a2 a1 a2")).unwrap();
        assert_eq!(a, b);
        for m in 2..=6usize {
            let boundary = FreeWord::from_letters(1..=m as i32);
            for i in 1..m as u32 {
                for e in [1, -1] {
                    let phi = artin_action(&BraidWord::generator(m, i, e).unwrap()).unwrap();
                    assert_eq!(phi.apply(&boundary), boundary);
                }
            }
        }
    }

    #[test]
    fn oracle_examples() {
        assert!(equals_oracle(&w(3, "a1 a2 a1"), &w(3, "a2 a1 a2")).unwrap());
        assert!(!equals_oracle(&w(3, "a1"), &w(3, "a2")).unwrap());
        assert!(equals_oracle(&w(3, "a1"), &w(4, "a1")).is_err());
    }

    #[test]
    fn delta_squared_conjugates_by_boundary() {
        for m in [3usize, 4] {
            let boundary = FreeWord::from_letters(1..=m as i32);
            let phi = artin_action(&delta_word(m).unwrap().pow(2)).unwrap();
            for k in 1..=m {
                let expected = boundary.concat(&FreeWord::generator(k as i32)).concat(&boundary.inverse());
                assert_eq!(phi.image(k), &expected);
            }
        }
    }

    #[test]
    fn last_generator_fixation() {
        assert!(fixes_last_generator(&w(6, "a1")).unwrap());
        assert!(!fixes_last_generator(&w(6, "a5")).unwrap());
        assert!(fixes_last_generator(&w(6, "a4^-3 a1 a2^2")).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let x = w(3, "a1 a2^-1").pow(12);
        assert!(matches!(artin_action_with_budget(&x, 50), Err(Error::BudgetExceeded { budget: 50, .. })));
        assert!(artin_action(&x).is_ok());
    }

    fn word(m: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
        proptest::collection::vec((1..m as i32, any::<bool>()), 0..=max_len).prop_map(move |v| {
            let units: Vec<i32> = v.into_iter().map(|(i, pos)| if pos { i } else { -i }).collect();
            BraidWord::from_units(m, &units).unwrap()
        })
    }

    proptest! {
        #[test]
        fn action_is_homomorphism(u in word(5, 15), v in word(5, 15)) {
            let lhs = artin_action(&u.mul(&v)).unwrap();
            let rhs = artin_action(&u).unwrap().compose(&artin_action(&v).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn parabolic_words_fix_last(u in word(5, 20)) {
            let p = BraidWord::new(6, u.letters().iter().copied()).unwrap();
            prop_assert!(fixes_last_generator(&p).unwrap());
        }

        #[test]
        fn moving_last_point_is_detected(u in word(6, 20)) {
            if u.underlying_permutation().image(6) != 6 {
                prop_assert!(!fixes_last_generator(&u).unwrap());
            }
        }
    }
}
