//! The embedding chain `A[A_n] -> A[Ã_n] -> A[B_{n+1}] -> A[A_{n+1}]`.
//!
//! Everything is stored as a word on `n + 2` strands (generators
//! `σ_1..σ_{n+1}`). The maps are
//!
//! * `ι_Y(s_i) = t_i`,
//! * `ι_B(r_i) = σ_i` for `i ≤ n`, `ι_B(r_{n+1}) = σ_{n+1}²`,
//! * `t_i = σ_i` for `1 ≤ i ≤ n` and `t_0 = ρ_B σ_n ρ_B⁻¹` with
//!   `ρ_B = σ_1 ⋯ σ_n σ_{n+1}²`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::free_action;
use crate::garside::{delta_indices, BraidWord};
use crate::presentations::{coxeter_project, AffinePermutation, CoxeterGraph, Projection};
use crate::word::{Alphabet, GenWord};

pub fn ambient_strands(n: u32) -> usize {
    n as usize + 2
}

fn check_affine_rank(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid(format!("A[Ã_n] needs n >= 2, got {n}")));
    }
    Ok(())
}

fn check_b_rank(n: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::invalid("A[B_{n+1}] needs n >= 1"));
    }
    Ok(())
}

/// `σ_1 ⋯ σ_n σ_{n+1}²`, the image of `ρ_B = r_1 ⋯ r_{n+1}`.
pub fn rho_b_ambient(n: u32) -> BraidWord {
    let m = ambient_strands(n);
    BraidWord::new(m, (1..=n).map(|i| (i, 1)).chain([(n + 1, 2)])).expect("valid indices")
}

/// Ambient word of `t_0`: `σ_1 ⋯ σ_n σ_{n+1}² σ_n σ_{n+1}⁻² σ_n⁻¹ ⋯ σ_1⁻¹`.
pub fn t0_ambient(n: u32) -> BraidWord {
    let m = ambient_strands(n);
    let rho = rho_b_ambient(n);
    BraidWord::conjugate(&rho, &BraidWord::generator(m, n, 1).expect("valid index")).expect("same strands")
}

/// Element of `A[Ã_n]`: its ambient word, plus the `t`-word it was built
/// from when there is one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineElement {
    n: u32,
    ambient: BraidWord,
    tword: Option<GenWord>,
}

impl AffineElement {
    /// Checks that the last strand is pure and `z = 0`.
    pub fn from_ambient(n: u32, ambient: BraidWord) -> Result<Self> {
        check_affine_rank(n)?;
        if ambient.strands() != ambient_strands(n) {
            return Err(Error::StrandMismatch { left: ambient.strands(), right: ambient_strands(n) });
        }
        let z = z_scan(&ambient)?;
        if z != 0 {
            return Err(Error::invalid(format!("z = {z} != 0, element is not in A[Ã_{n}]")));
        }
        Ok(AffineElement { n, ambient, tword: None })
    }

    pub fn from_tword(n: u32, tword: &GenWord) -> Result<Self> {
        iota_affine(n, tword)
    }

    pub fn parse(n: u32, text: &str) -> Result<Self> {
        let w = GenWord::parse(text)?;
        if w.is_empty() {
            return Ok(Self::identity(n));
        }
        match w.alphabet() {
            Alphabet::T => iota_affine(n, &w),
            Alphabet::S => iota_y(n, &w),
            _ => AffineElement::from_ambient(n, embed(n, &w)?),
        }
    }

    pub fn identity(n: u32) -> Self {
        AffineElement { n, ambient: BraidWord::identity(ambient_strands(n)), tword: Some(GenWord::empty(Alphabet::T)) }
    }

    pub fn generator(n: u32, i: u32) -> Result<Self> {
        iota_affine(n, &GenWord::positive(Alphabet::T, [i]))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn ambient(&self) -> &BraidWord {
        &self.ambient
    }

    pub fn tword(&self) -> Option<&GenWord> {
        self.tword.as_ref()
    }

    pub fn mul(&self, other: &AffineElement) -> AffineElement {
        assert_eq!(self.n, other.n, "rank mismatch");
        AffineElement {
            n: self.n,
            ambient: self.ambient.mul(&other.ambient),
            tword: match (&self.tword, &other.tword) {
                (Some(a), Some(b)) => Some(a.concat(b)),
                _ => None,
            },
        }
    }

    pub fn inverse(&self) -> AffineElement {
        AffineElement { n: self.n, ambient: self.ambient.invert(), tword: self.tword.as_ref().map(GenWord::inverse) }
    }

    pub fn pow(&self, k: i64) -> AffineElement {
        AffineElement { n: self.n, ambient: self.ambient.pow(k), tword: self.tword.as_ref().map(|w| w.pow(k)) }
    }

    /// `g · self · g⁻¹`.
    pub fn conjugated_by(&self, g: &AffineElement) -> AffineElement {
        g.mul(self).mul(&g.inverse())
    }

    pub fn equals(&self, other: &AffineElement) -> bool {
        self.n == other.n && self.ambient.equals(&other.ambient).expect("same strand count")
    }

    /// `ω(self)` in window notation; needs the `t`-word.
    pub fn omega(&self) -> Option<AffinePermutation> {
        let g = CoxeterGraph::affine_a(self.n).ok()?;
        match coxeter_project(self.tword.as_ref()?, &g).ok()? {
            Projection::Affine(p) => Some(p),
            Projection::Finite(_) => None,
        }
    }

    pub fn in_ay(&self) -> Result<bool> {
        free_action::fixes_last_generator(&self.ambient)
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.tword {
            Some(w) => write!(f, "{w}"),
            None => write!(f, "{}", self.ambient),
        }
    }
}

/// Element of `A[B_{n+1}]` (last strand pure).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BElement {
    n: u32,
    ambient: BraidWord,
    rword: Option<GenWord>,
}

impl BElement {
    pub fn from_ambient(n: u32, ambient: BraidWord) -> Result<Self> {
        check_b_rank(n)?;
        let m = ambient_strands(n);
        if ambient.strands() != m {
            return Err(Error::StrandMismatch { left: ambient.strands(), right: m });
        }
        if !ambient.underlying_permutation().fixes(m) {
            return Err(Error::invalid(format!("strand {m} is not pure, element is not in A[B_{}]", n + 1)));
        }
        Ok(BElement { n, ambient, rword: None })
    }

    /// `n` as in `A[B_{n+1}]`.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn ambient(&self) -> &BraidWord {
        &self.ambient
    }

    pub fn rword(&self) -> Option<&GenWord> {
        self.rword.as_ref()
    }

    pub fn mul(&self, other: &BElement) -> BElement {
        assert_eq!(self.n, other.n, "rank mismatch");
        BElement {
            n: self.n,
            ambient: self.ambient.mul(&other.ambient),
            rword: match (&self.rword, &other.rword) {
                (Some(a), Some(b)) => Some(a.concat(b)),
                _ => None,
            },
        }
    }

    pub fn inverse(&self) -> BElement {
        BElement { n: self.n, ambient: self.ambient.invert(), rword: self.rword.as_ref().map(GenWord::inverse) }
    }

    pub fn pow(&self, k: i64) -> BElement {
        BElement { n: self.n, ambient: self.ambient.pow(k), rword: self.rword.as_ref().map(|w| w.pow(k)) }
    }

    pub fn conjugated_by(&self, g: &BElement) -> BElement {
        g.mul(self).mul(&g.inverse())
    }

    pub fn equals(&self, other: &BElement) -> bool {
        self.n == other.n && self.ambient.equals(&other.ambient).expect("same strand count")
    }
}

impl fmt::Display for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rword {
            Some(w) => write!(f, "{w}"),
            None => write!(f, "{}", self.ambient),
        }
    }
}

impl From<AffineElement> for BElement {
    fn from(a: AffineElement) -> Self {
        BElement {
            n: a.n,
            ambient: a.ambient,
            rword: a.tword.map(|w| w.relabel(Alphabet::R)).filter(|w| w.min_index() != Some(0)),
        }
    }
}

fn check_indices(w: &GenWord, expected: Alphabet, lo: u32, hi: u32) -> Result<()> {
    if w.alphabet() != expected && !w.is_empty() {
        return Err(Error::invalid(format!(
            "expected a `{}` word, got `{}` letters",
            expected.letter(),
            w.alphabet().letter()
        )));
    }
    if let Some(&(g, _)) = w.letters().iter().find(|&&(g, _)| g < lo || g > hi) {
        return Err(Error::invalid(format!("{}{g} out of range {lo}..={hi}", expected.letter())));
    }
    Ok(())
}

/// `ι_Y`: `s_i ↦ t_i`.
pub fn iota_y(n: u32, w: &GenWord) -> Result<AffineElement> {
    check_affine_rank(n)?;
    check_indices(w, Alphabet::S, 1, n)?;
    iota_affine(n, &w.relabel(Alphabet::T))
}

/// `ι_B`: `r_i ↦ σ_i` (`i ≤ n`), `r_{n+1} ↦ σ_{n+1}²`.
pub fn iota_b(n: u32, w: &GenWord) -> Result<BElement> {
    check_b_rank(n)?;
    check_indices(w, Alphabet::R, 1, n + 1)?;
    let ambient = BraidWord::new(
        ambient_strands(n),
        w.letters().iter().map(|&(g, e)| if g == n + 1 { (g, 2 * e) } else { (g, e) }),
    )?;
    Ok(BElement { n, ambient, rword: Some(w.relabel(Alphabet::R)) })
}

/// Embedding of `A[Ã_n]` into the ambient group.
pub fn iota_affine(n: u32, w: &GenWord) -> Result<AffineElement> {
    check_affine_rank(n)?;
    check_indices(w, Alphabet::T, 0, n)?;
    let m = ambient_strands(n);
    let t0 = t0_ambient(n);
    let mut ambient = BraidWord::identity(m);
    for &(g, e) in w.letters() {
        let piece = if g == 0 { t0.pow(e as i64) } else { BraidWord::generator(m, g, e)? };
        ambient = ambient.mul(&piece);
    }
    Ok(AffineElement { n, ambient, tword: Some(w.relabel(Alphabet::T)) })
}

/// Any word of the shared grammar as an ambient word on `n + 2` strands.
pub fn embed(n: u32, w: &GenWord) -> Result<BraidWord> {
    if w.is_empty() {
        return Ok(BraidWord::identity(ambient_strands(n)));
    }
    match w.alphabet() {
        Alphabet::S => Ok(iota_y(n, w)?.ambient),
        Alphabet::T => Ok(iota_affine(n, w)?.ambient),
        Alphabet::R => Ok(iota_b(n, w)?.ambient),
        Alphabet::A => BraidWord::new(ambient_strands(n), w.letters().iter().copied()),
    }
}

/// Half the signed number of crossings involving the strand that starts in
/// the last position. Fails if that strand is not pure.
pub fn z_scan(w: &BraidWord) -> Result<i64> {
    let m = w.strands();
    if !w.underlying_permutation().fixes(m) {
        return Err(Error::Precondition(format!("strand {m} is not pure")));
    }
    let mut pos = m as u32;
    let mut total: i64 = 0;
    for u in w.units() {
        let i = u.unsigned_abs();
        if pos == i || pos == i + 1 {
            total += u.signum() as i64;
            pos = if pos == i { i + 1 } else { i };
        }
    }
    if total % 2 != 0 {
        return Err(Error::Internal(format!("odd crossing count {total} for a pure strand")));
    }
    Ok(total / 2)
}

/// `z: A[B_{n+1}] -> Z`, `z(r_i) = 0` for `i ≤ n`, `z(r_{n+1}) = 1`.
pub fn z_value(w: &BElement) -> Result<i64> {
    z_scan(&w.ambient)
}

pub fn rho_b(n: u32) -> Result<BElement> {
    iota_b(n, &GenWord::positive(Alphabet::R, 1..=n + 1))
}

/// `w = g_1 · ρ_B^m` with `m = z(w)` and `g_1 ∈ A[Ã_n]`.
pub fn split_b_element(w: &BElement) -> Result<(i64, AffineElement)> {
    let n = w.n;
    let m = z_value(w)?;
    let rho = rho_b(n)?;
    let g1 = w.mul(&rho.pow(-m));
    Ok((m, AffineElement::from_ambient(n, g1.ambient)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Name {
    Rho,
    RhoPrime,
    RhoB,
    U0,
    U1,
    V0,
    V1,
    DeltaY,
    DeltaB,
    DeltaAmbient,
    R0,
}

impl Name {
    pub const ALL: [Name; 11] = [
        Name::Rho,
        Name::RhoPrime,
        Name::RhoB,
        Name::U0,
        Name::U1,
        Name::V0,
        Name::V1,
        Name::DeltaY,
        Name::DeltaB,
        Name::DeltaAmbient,
        Name::R0,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Name::Rho => "rho",
            Name::RhoPrime => "rho_prime",
            Name::RhoB => "rho_B",
            Name::U0 => "u0",
            Name::U1 => "u1",
            Name::V0 => "v0",
            Name::V1 => "v1",
            Name::DeltaY => "delta_Y",
            Name::DeltaB => "delta_B",
            Name::DeltaAmbient => "delta_ambient",
            Name::R0 => "r0",
        }
    }
}

impl FromStr for Name {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Name::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown element name `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distinguished {
    Affine(AffineElement),
    B(BElement),
    Ambient(BraidWord),
}

impl Distinguished {
    pub fn ambient(&self) -> &BraidWord {
        match self {
            Distinguished::Affine(a) => a.ambient(),
            Distinguished::B(b) => b.ambient(),
            Distinguished::Ambient(w) => w,
        }
    }
}

impl fmt::Display for Distinguished {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distinguished::Affine(a) => a.fmt(f),
            Distinguished::B(b) => b.fmt(f),
            Distinguished::Ambient(w) => w.fmt(f),
        }
    }
}

fn tword(n: u32, letters: impl IntoIterator<Item = (u32, i32)>) -> AffineElement {
    iota_affine(n, &GenWord::from_letters(Alphabet::T, letters)).expect("indices in range")
}

pub fn rho(n: u32) -> Result<AffineElement> {
    check_affine_rank(n)?;
    Ok(tword(n, (1..=n).map(|i| (i, 1))))
}

pub fn rho_prime(n: u32) -> Result<AffineElement> {
    check_affine_rank(n)?;
    Ok(tword(n, (1..=n).map(|i| (i, -1))))
}

/// Garside element of `A_Y = ⟨t_1, ..., t_n⟩`.
pub fn delta_y(n: u32) -> Result<AffineElement> {
    check_affine_rank(n)?;
    Ok(tword(n, delta_indices(n).into_iter().map(|i| (i, 1))))
}

/// `v_0 = ρ t_n ρ⁻¹`.
pub fn v0(n: u32) -> Result<AffineElement> {
    Ok(tword(n, [(n, 1)]).conjugated_by(&rho(n)?))
}

/// `v_1 = ρ' t_n ρ'⁻¹`.
pub fn v1(n: u32) -> Result<AffineElement> {
    Ok(tword(n, [(n, 1)]).conjugated_by(&rho_prime(n)?))
}

pub fn u0(n: u32) -> Result<AffineElement> {
    AffineElement::generator(n, 0)
}

/// `u_1 = Δ_Y⁻¹ t_0 Δ_Y`.
pub fn u1(n: u32) -> Result<AffineElement> {
    Ok(u0(n)?.conjugated_by(&delta_y(n)?.inverse()))
}

/// `Δ[B_{n+1}] = (r_1 ⋯ r_{n+1})^{n+1}`.
pub fn delta_b(n: u32) -> Result<BElement> {
    Ok(rho_b(n)?.pow(n as i64 + 1))
}

/// `r_0 = ρ_B r_n ρ_B⁻¹`.
pub fn r0(n: u32) -> Result<BElement> {
    let rn = iota_b(n, &GenWord::positive(Alphabet::R, [n]))?;
    Ok(rn.conjugated_by(&rho_b(n)?))
}

/// `Δ[A_{n+1}]` on `n + 2` strands.
pub fn delta_ambient(n: u32) -> BraidWord {
    crate::garside::delta_word(ambient_strands(n)).expect("at least 2 strands")
}

pub fn distinguished(name: Name, n: u32) -> Result<Distinguished> {
    Ok(match name {
        Name::Rho => Distinguished::Affine(rho(n)?),
        Name::RhoPrime => Distinguished::Affine(rho_prime(n)?),
        Name::U0 => Distinguished::Affine(u0(n)?),
        Name::U1 => Distinguished::Affine(u1(n)?),
        Name::V0 => Distinguished::Affine(v0(n)?),
        Name::V1 => Distinguished::Affine(v1(n)?),
        Name::DeltaY => Distinguished::Affine(delta_y(n)?),
        Name::RhoB => Distinguished::B(rho_b(n)?),
        Name::DeltaB => Distinguished::B(delta_b(n)?),
        Name::R0 => Distinguished::B(r0(n)?),
        Name::DeltaAmbient => {
            check_b_rank(n)?;
            Distinguished::Ambient(delta_ambient(n))
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Floor {
    Ambient,
    B,
    Affine,
    AY,
}

impl FromStr for Floor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ambient" => Ok(Floor::Ambient),
            "b" => Ok(Floor::B),
            "affine" => Ok(Floor::Affine),
            "ay" => Ok(Floor::AY),
            _ => Err(Error::invalid(format!("unknown floor `{s}` (ambient|b|affine|ay)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub member: bool,
    pub reason: String,
}

/// Membership of an ambient word on `n + 2` strands in one floor of the
/// tower, with a short reason.
pub fn membership_verdict(w: &BraidWord, floor: Floor) -> Result<Verdict> {
    membership_verdict_with_budget(w, floor, free_action::DEFAULT_BUDGET)
}

/// As [`membership_verdict`], with an explicit free-word length budget for
/// the `A_Y` test.
pub fn membership_verdict_with_budget(w: &BraidWord, floor: Floor, budget: usize) -> Result<Verdict> {
    let m = w.strands();
    let verdict = |member: bool, reason: String| Ok(Verdict { member, reason });
    match floor {
        Floor::Ambient => verdict(true, "every braid is ambient".into()),
        Floor::B => {
            let target = w.underlying_permutation().image(m);
            if target == m {
                verdict(true, format!("fixes point {m}"))
            } else {
                verdict(false, format!("moves point {m} to {target}"))
            }
        }
        Floor::Affine => {
            let b = membership_verdict_with_budget(w, Floor::B, budget)?;
            if !b.member {
                return Ok(b);
            }
            let z = z_scan(w)?;
            verdict(z == 0, format!("z = {z}"))
        }
        Floor::AY => {
            if free_action::fixes_last_generator_with_budget(w, budget)? {
                verdict(true, format!("fixes x{m}"))
            } else {
                verdict(false, format!("moves x{m}"))
            }
        }
    }
}

pub fn membership(w: &BraidWord, floor: Floor) -> Result<bool> {
    Ok(membership_verdict(w, floor)?.member)
}

/// Named boolean sub-checks.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub checks: Vec<(String, bool)>,
}

impl CheckReport {
    pub fn push(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect()
    }
}

/// `Δ[A_{n+1}]² = Δ[B_{n+1}]` together with the two long-form
/// factorizations and `z = n + 1` on both sides.
pub fn delta_squared_check(n: u32) -> Result<CheckReport> {
    check_b_rank(n)?;
    let mut report = CheckReport::default();
    let delta_sq = delta_ambient(n).pow(2);
    let db = delta_b(n)?;
    report.push("Δ[B] = Δ²", db.ambient().equals(&delta_sq)?);

    // (s_1 ⋯ s_n s_{n+1}² s_n ⋯ s_1)(s_2 ⋯ s_{n+1}² ⋯ s_2) ⋯ (s_n s_{n+1}² s_n) s_{n+1}²
    let mut a_long = GenWord::empty(Alphabet::A);
    let mut b_long = GenWord::empty(Alphabet::R);
    for k in 1..=n + 1 {
        let up: Vec<u32> = (k..=n).collect();
        for &i in &up {
            a_long.push(i, 1);
            b_long.push(i, 1);
        }
        a_long.push(n + 1, 2);
        b_long.push(n + 1, 1);
        for &i in up.iter().rev() {
            a_long.push(i, 1);
            b_long.push(i, 1);
        }
    }
    let a_long = embed(n, &a_long)?;
    let b_long = iota_b(n, &b_long)?;
    report.push("Δ² long form", a_long.equals(&delta_sq)?);
    report.push("Δ[B] long form", b_long.ambient().equals(db.ambient())?);
    let expected = n as i64 + 1;
    report.push("z(Δ²) = n+1", z_scan(&delta_sq)? == expected);
    report.push("z(Δ[B]) = n+1", z_value(&db)? == expected);
    Ok(report)
}

/// Conjugation by `ρ_B` cycles `r_0, ..., r_n` and realizes `ζ` on `A[Ã_n]`.
pub fn kent_peifer_check(n: u32) -> Result<CheckReport> {
    check_affine_rank(n)?;
    let mut report = CheckReport::default();
    let rho = rho_b(n)?;
    let r = |i: u32| -> Result<BElement> {
        if i == 0 {
            r0(n)
        } else {
            iota_b(n, &GenWord::positive(Alphabet::R, [i]))
        }
    };
    for i in 0..n {
        report.push(format!("ρ_B r{i} ρ_B⁻¹ = r{}", i + 1), r(i)?.conjugated_by(&rho).equals(&r(i + 1)?));
    }
    report.push("ρ_B rn ρ_B⁻¹ = r0", r(n)?.conjugated_by(&rho).equals(&r(0)?));
    report.push("ρ_B² rn ρ_B⁻² = r1", r(n)?.conjugated_by(&rho.pow(2)).equals(&r(1)?));
    report.push("r0 = t0", r(0)?.ambient().equals(&t0_ambient(n))?);
    let z0 = z_value(&r(0)?)?;
    let zn1 = z_value(&r(n + 1)?)?;
    report.push("z(r0) = 0", z0 == 0);
    report.push("z(r_{n+1}) = 1", zn1 == 1);
    for i in 0..=n {
        let t = AffineElement::generator(n, i)?;
        let next = AffineElement::generator(n, (i + 1) % (n + 1))?;
        let conj = BraidWord::conjugate(rho.ambient(), t.ambient())?;
        report.push(format!("ρ_B t{i} ρ_B⁻¹ = ζ(t{i})"), conj.equals(next.ambient())?);
    }
    Ok(report)
}
