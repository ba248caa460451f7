//! Generator words and the shared text grammar.
//!
//! A word is a whitespace-separated list of tokens `<letter><index>` with an
//! optional `^<exponent>`, e.g. `t0 t1^-1 t2^3`. The letter selects the
//! alphabet: `s` for `A[A_n]`, `r` for `A[B_n]`, `t` for `A[Ã_n]` and `a` for
//! the ambient braid group.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    S,
    R,
    T,
    A,
}

impl Alphabet {
    pub fn letter(self) -> char {
        match self {
            Alphabet::S => 's',
            Alphabet::R => 'r',
            Alphabet::T => 't',
            Alphabet::A => 'a',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        match c {
            's' => Some(Alphabet::S),
            'r' => Some(Alphabet::R),
            't' => Some(Alphabet::T),
            'a' => Some(Alphabet::A),
            _ => None,
        }
    }
}

/// A word in one alphabet. Adjacent letters with equal index are merged and
/// zero exponents are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenWord {
    alphabet: Alphabet,
    letters: Vec<(u32, i32)>,
}

impl GenWord {
    pub fn empty(alphabet: Alphabet) -> Self {
        GenWord { alphabet, letters: Vec::new() }
    }

    pub fn from_letters(alphabet: Alphabet, letters: impl IntoIterator<Item = (u32, i32)>) -> Self {
        let mut w = GenWord::empty(alphabet);
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    /// Positive word `g_1 g_2 ... g_k` from a list of indices.
    pub fn positive(alphabet: Alphabet, indices: impl IntoIterator<Item = u32>) -> Self {
        GenWord::from_letters(alphabet, indices.into_iter().map(|g| (g, 1)))
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[(u32, i32)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of unit letters, i.e. the sum of absolute exponents.
    pub fn len(&self) -> usize {
        self.letters.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn push(&mut self, gen: u32, exp: i32) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.0 == gen {
                last.1 += exp;
                if last.1 == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push((gen, exp));
    }

    pub fn concat(&self, other: &GenWord) -> GenWord {
        let mut w = self.clone();
        w.extend(other);
        w
    }

    pub fn extend(&mut self, other: &GenWord) {
        for &(g, e) in &other.letters {
            self.push(g, e);
        }
    }

    pub fn inverse(&self) -> GenWord {
        GenWord { alphabet: self.alphabet, letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> GenWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = GenWord::empty(self.alphabet);
        for _ in 0..k.unsigned_abs() {
            w.extend(&base);
        }
        w
    }

    /// Same letters read in another alphabet.
    pub fn relabel(&self, alphabet: Alphabet) -> GenWord {
        GenWord { alphabet, letters: self.letters.clone() }
    }

    /// Applies `f` to each generator index.
    pub fn map_indices(&self, mut f: impl FnMut(u32) -> u32) -> GenWord {
        GenWord::from_letters(self.alphabet, self.letters.iter().map(|&(g, e)| (f(g), e)))
    }

    pub fn max_index(&self) -> Option<u32> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    pub fn min_index(&self) -> Option<u32> {
        self.letters.iter().map(|&(g, _)| g).min()
    }

    /// Parses a word of the shared grammar. All tokens must share one
    /// alphabet; the empty string parses to the empty ambient word.
    pub fn parse(text: &str) -> Result<GenWord> {
        let tokens = tokenize(text)?;
        let alphabet = tokens.first().map(|t| t.alphabet).unwrap_or(Alphabet::A);
        let mut w = GenWord::empty(alphabet);
        for t in tokens {
            if t.alphabet != alphabet {
                return Err(Error::Parse {
                    token: t.text.to_string(),
                    offset: t.offset,
                    reason: format!("mixes alphabet `{}` into a `{}` word", t.alphabet.letter(), alphabet.letter()),
                });
            }
            w.push(t.index, t.exp);
        }
        Ok(w)
    }

    /// Parses and requires the given alphabet (the empty word is accepted).
    pub fn parse_in(text: &str, alphabet: Alphabet) -> Result<GenWord> {
        let tokens = tokenize(text)?;
        let mut w = GenWord::empty(alphabet);
        for t in tokens {
            if t.alphabet != alphabet {
                return Err(Error::Parse {
                    token: t.text.to_string(),
                    offset: t.offset,
                    reason: format!("expected letter `{}`", alphabet.letter()),
                });
            }
            w.push(t.index, t.exp);
        }
        Ok(w)
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, self.alphabet.letter(), &self.letters)
    }
}

pub(crate) fn write_letters(f: &mut fmt::Formatter<'_>, letter: char, letters: &[(u32, i32)]) -> fmt::Result {
    for (k, &(g, e)) in letters.iter().enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        if e == 1 {
            write!(f, "{letter}{g}")?;
        } else {
            write!(f, "{letter}{g}^{e}")?;
        }
    }
    Ok(())
}

struct Token<'a> {
    text: &'a str,
    offset: usize,
    alphabet: Alphabet,
    index: u32,
    exp: i32,
}

fn tokenize(text: &str) -> Result<Vec<Token<'_>>> {
    let mut out = Vec::new();
    let mut rest = text;
    let mut base = 0;
    loop {
        let trimmed = rest.trim_start();
        base += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            break;
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let tok = &trimmed[..end];
        out.push(parse_token(tok, base)?);
        base += end;
        rest = &trimmed[end..];
    }
    Ok(out)
}

fn parse_token(tok: &str, offset: usize) -> Result<Token<'_>> {
    let err = |reason: &str| Error::Parse { token: tok.to_string(), offset, reason: reason.to_string() };
    let mut chars = tok.chars();
    let first = chars.next().ok_or_else(|| err("empty token"))?;
    let alphabet = Alphabet::from_letter(first).ok_or_else(|| err("unknown generator letter"))?;
    let body = &tok[first.len_utf8()..];
    let (idx, exp) = match body.split_once('^') {
        Some((i, e)) => (i, Some(e)),
        None => (body, None),
    };
    if idx.is_empty() || !idx.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err("generator index must be a non-negative integer"));
    }
    let index: u32 = idx.parse().map_err(|_| err("generator index out of range"))?;
    let exp = match exp {
        None => 1,
        Some(e) => {
            let v: i32 = e.parse().map_err(|_| err("exponent must be an integer"))?;
            if v == 0 {
                return Err(err("exponent 0 is not allowed"));
            }
            v
        }
    };
    Ok(Token { text: tok, offset, alphabet, index, exp })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exponents_and_merges() {
        let w = GenWord::parse("t0 t1^-1 t2^3").unwrap();
        assert_eq!(w.alphabet(), Alphabet::T);
        assert_eq!(w.letters(), &[(0, 1), (1, -1), (2, 3)]);
        assert_eq!(w.to_string(), "t0 t1^-1 t2^3");

        let w = GenWord::parse("s1 s1^2 s2 s2^-1").unwrap();
        assert_eq!(w.letters(), &[(1, 3)]);
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn rejects_zero_exponent_with_offset() {
        let e = GenWord::parse("t0  t1^0").unwrap_err();
        assert_eq!(e, Error::Parse { token: "t1^0".into(), offset: 4, reason: "exponent 0 is not allowed".into() });
    }

    #[test]
    fn rejects_bad_tokens() {
        assert!(matches!(GenWord::parse("x1"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(GenWord::parse("t"), Err(Error::Parse { .. })));
        assert!(matches!(GenWord::parse("t1^"), Err(Error::Parse { .. })));
        assert!(matches!(GenWord::parse("t-1"), Err(Error::Parse { .. })));
        assert!(matches!(GenWord::parse("t1 s2"), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(GenWord::parse_in("t1", Alphabet::S), Err(Error::Parse { .. })));
    }

    #[test]
    fn empty_and_inverse() {
        assert!(GenWord::parse("  ").unwrap().is_empty());
        let w = GenWord::parse("s1 s2").unwrap();
        assert_eq!(w.inverse().to_string(), "s2^-1 s1^-1");
        assert!(w.concat(&w.inverse()).is_empty());
        assert_eq!(w.pow(-2).to_string(), "s2^-1 s1^-1 s2^-1 s1^-1");
    }
}
