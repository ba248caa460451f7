//! Seeded random words for property checks and the self-test suite.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::endo::AutStar;
use crate::garside::BraidWord;
use crate::word::{Alphabet, GenWord};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Unit letters `±i`, `1 <= i < strands`.
pub fn random_units<R: Rng>(rng: &mut R, strands: usize, len: usize) -> Vec<i32> {
    (0..len)
        .map(|_| {
            let i = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect()
}

pub fn random_braid<R: Rng>(rng: &mut R, strands: usize, len: usize) -> BraidWord {
    BraidWord::from_units(strands, &random_units(rng, strands, len)).expect("indices in range")
}

/// Random word in `t_0, ..., t_n` with `len` unit letters.
pub fn random_tword<R: Rng>(rng: &mut R, n: u32, len: usize) -> GenWord {
    let mut w = GenWord::empty(Alphabet::T);
    for _ in 0..len {
        w.push(rng.gen_range(0..=n), if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    w
}

pub fn random_autstar<R: Rng>(rng: &mut R, n: u32) -> AutStar {
    AutStar::new(n, rng.gen_range(0..=n as i64), rng.gen_bool(0.5), rng.gen_bool(0.5)).expect("n >= 2")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Move {
    Insert,
    Cancel(usize),
    Commute(usize),
    Braid(usize),
}

/// Applies `steps` random moves that preserve the braid: free insertions
/// and cancellations of `x x⁻¹`, far commutations and braid relations
/// `aba ↔ bab` (all letters of one sign).
pub fn rewrite<R: Rng>(rng: &mut R, w: &BraidWord, steps: usize) -> BraidWord {
    let m = w.strands();
    let mut u = w.units();
    for _ in 0..steps {
        let mut moves = vec![Move::Insert];
        for j in 0..u.len().saturating_sub(1) {
            let (a, b) = (u[j], u[j + 1]);
            if a == -b {
                moves.push(Move::Cancel(j));
            }
            if (a.abs() - b.abs()).abs() >= 2 {
                moves.push(Move::Commute(j));
            }
            if j + 2 < u.len() {
                let c = u[j + 2];
                if a == c && (a.abs() - b.abs()).abs() == 1 && a.signum() == b.signum() {
                    moves.push(Move::Braid(j));
                }
            }
        }
        match *moves.choose(rng).expect("insert is always available") {
            Move::Insert => {
                let pos = rng.gen_range(0..=u.len());
                let x = random_units(rng, m, 1)[0];
                u.splice(pos..pos, [x, -x]);
            }
            Move::Cancel(j) => {
                u.drain(j..j + 2);
            }
            Move::Commute(j) => u.swap(j, j + 1),
            Move::Braid(j) => {
                let (a, b) = (u[j], u[j + 1]);
                u[j..j + 3].copy_from_slice(&[b, a, b]);
            }
        }
    }
    BraidWord::from_units(m, &u).expect("indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_action::equals_oracle;

    #[test]
    fn seeded_is_reproducible() {
        let a = random_braid(&mut seeded(7), 5, 20);
        let b = random_braid(&mut seeded(7), 5, 20);
        assert_eq!(a, b);
        assert!(a.len() <= 20);
    }

    #[test]
    fn rewrites_preserve_the_braid() {
        let mut rng = seeded(11);
        for _ in 0..50 {
            let m = rng.gen_range(2..=6);
            let len = rng.gen_range(0..=15);
            let w = random_braid(&mut rng, m, len);
            let v = rewrite(&mut rng, &w, 25);
            assert!(equals_oracle(&w, &v).unwrap());
        }
    }
}
