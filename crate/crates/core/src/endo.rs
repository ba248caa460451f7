//! Homomorphisms out of `A[Ã_n]` given by the images of `t_0, ..., t_n`.
//!
//! The built-in families are the graph automorphisms `ζ`, `η`, the
//! inversion `μ`, the non-injective endomorphisms `α_p`, `β_p`, cyclic
//! homomorphisms, and homomorphisms `A[Ã_n] -> A[A_{n+1}]` of the shape
//! `t_i ↦ g σ_i^ε Δ_Y^{2p} Δ^{2q} g⁻¹`, `t_0 ↦ g w^ε Δ_Y^{2p} Δ^{2q} g⁻¹`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::garside::{BraidWord, NormalForm};
use crate::presentations::{pi_product, relations, CoxeterGraph};
use crate::tower::{self, ambient_strands, AffineElement};
use crate::word::{Alphabet, GenWord};

/// Smallest rank for which the classification of endomorphisms is claimed.
pub const CLASSIFICATION_MIN_RANK: u32 = 4;

pub fn rank_warning(n: u32) -> Option<String> {
    (n < CLASSIFICATION_MIN_RANK).then(|| {
        format!("classification of endomorphisms is only guaranteed for n >= {CLASSIFICATION_MIN_RANK} (n = {n})")
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Codomain {
    /// `A[Ã_n]` itself.
    Affine,
    /// The ambient braid group `A[A_{n+1}]`.
    Ambient,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Image {
    ambient: BraidWord,
    tword: Option<GenWord>,
}

impl Image {
    fn from_element(a: &AffineElement) -> Self {
        Image { ambient: a.ambient().clone(), tword: a.tword().cloned() }
    }

    fn pow(&self, k: i64) -> Image {
        Image { ambient: self.ambient.pow(k), tword: self.tword.as_ref().map(|w| w.pow(k)) }
    }

    fn mul(&self, other: &Image) -> Image {
        Image {
            ambient: self.ambient.mul(&other.ambient),
            tword: match (&self.tword, &other.tword) {
                (Some(a), Some(b)) => Some(a.concat(b)),
                _ => None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenImageHom {
    n: u32,
    codomain: Codomain,
    images: Vec<Image>,
    verified: bool,
}

impl GenImageHom {
    /// Homomorphism `A[Ã_n] -> A[Ã_n]`, unverified.
    pub fn new(n: u32, images: Vec<AffineElement>) -> Result<Self> {
        CoxeterGraph::affine_a(n)?;
        if images.len() != n as usize + 1 {
            return Err(Error::invalid(format!("expected {} images, got {}", n + 1, images.len())));
        }
        if let Some(bad) = images.iter().find(|a| a.n() != n) {
            return Err(Error::invalid(format!("image of rank {} in a rank {n} homomorphism", bad.n())));
        }
        Ok(GenImageHom {
            n,
            codomain: Codomain::Affine,
            images: images.iter().map(Image::from_element).collect(),
            verified: false,
        })
    }

    /// Homomorphism `A[Ã_n] -> A[A_{n+1}]`, unverified.
    pub fn new_ambient(n: u32, images: Vec<BraidWord>) -> Result<Self> {
        CoxeterGraph::affine_a(n)?;
        if images.len() != n as usize + 1 {
            return Err(Error::invalid(format!("expected {} images, got {}", n + 1, images.len())));
        }
        let m = ambient_strands(n);
        if let Some(bad) = images.iter().find(|w| w.strands() != m) {
            return Err(Error::StrandMismatch { left: bad.strands(), right: m });
        }
        Ok(GenImageHom {
            n,
            codomain: Codomain::Ambient,
            images: images.into_iter().map(|ambient| Image { ambient, tword: None }).collect(),
            verified: false,
        })
    }

    /// Parses one image per generator; words may use `t`, `s` or `a` letters.
    pub fn parse_images(n: u32, texts: &[&str]) -> Result<Self> {
        let images = texts.iter().map(|t| AffineElement::parse(n, t)).collect::<Result<Vec<_>>>()?;
        Self::new(n, images)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn codomain(&self) -> Codomain {
        self.codomain
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Ambient word of the image of `t_i`.
    pub fn image(&self, i: u32) -> &BraidWord {
        &self.images[i as usize].ambient
    }

    pub fn image_tword(&self, i: u32) -> Option<&GenWord> {
        self.images[i as usize].tword.as_ref()
    }

    /// Image of `t_i` as an element of `A[Ã_n]` (affine codomain only).
    pub fn image_element(&self, i: u32) -> Option<AffineElement> {
        if self.codomain != Codomain::Affine {
            return None;
        }
        let img = &self.images[i as usize];
        match &img.tword {
            Some(w) => tower::iota_affine(self.n, w).ok(),
            None => AffineElement::from_ambient(self.n, img.ambient.clone()).ok(),
        }
    }

    /// First defining relation of `Ã_n` whose image fails, if any.
    pub fn failed_relation(&self) -> Option<(u32, u32)> {
        let g = CoxeterGraph::affine_a(self.n).expect("rank checked at construction");
        relations(&g).into_iter().find_map(|r| {
            let (a, b) = (&self.images[r.s as usize].ambient, &self.images[r.t as usize].ambient);
            let lhs = product(&pi_product(a, b, r.m), a.strands());
            let rhs = product(&pi_product(b, a, r.m), a.strands());
            (!lhs.equals(&rhs).expect("same strands")).then_some((r.s, r.t))
        })
    }

    /// Checks every defining relation on the images and records the result.
    pub fn verify(&mut self) -> bool {
        self.verified = self.failed_relation().is_none();
        self.verified
    }

    pub fn verified(mut self) -> Result<Self> {
        if let Some((s, t)) = self.failed_relation() {
            return Err(Error::invalid(format!("relation between t{s} and t{t} is not preserved")));
        }
        self.verified = true;
        Ok(self)
    }

    fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::Unverified)
        }
    }

    fn apply_image(&self, w: &GenWord) -> Image {
        let m = ambient_strands(self.n);
        let mut acc = Image { ambient: BraidWord::identity(m), tword: Some(GenWord::empty(Alphabet::T)) };
        for &(g, e) in w.letters() {
            acc = acc.mul(&self.images[g as usize].pow(e as i64));
        }
        acc
    }

    /// Image of a `t`-word, as an ambient word.
    pub fn apply(&self, w: &GenWord) -> Result<BraidWord> {
        if w.alphabet() != Alphabet::T && !w.is_empty() {
            return Err(Error::invalid("homomorphisms act on `t` words"));
        }
        if w.max_index().is_some_and(|g| g > self.n) {
            return Err(Error::invalid("generator out of range"));
        }
        Ok(self.apply_image(w).ambient)
    }

    /// Equality as homomorphisms, checked on generators.
    pub fn equals(&self, other: &GenImageHom) -> bool {
        self.n == other.n
            && self.images.iter().zip(&other.images).all(|(a, b)| a.ambient.equals(&b.ambient).expect("same strands"))
    }

    pub fn is_cyclic(&self) -> bool {
        let first = &self.images[0].ambient;
        self.images[1..].iter().all(|img| img.ambient.equals(first).expect("same strands"))
    }

    pub fn identity(n: u32) -> Result<Self> {
        AutStar::identity(n)?.hom()
    }

    /// `t_i ↦ target` for every `i`; always a homomorphism.
    pub fn cyclic(target: &AffineElement) -> Self {
        let n = target.n();
        GenImageHom {
            n,
            codomain: Codomain::Affine,
            images: vec![Image::from_element(target); n as usize + 1],
            verified: true,
        }
    }
}

impl fmt::Display for GenImageHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, img) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            match &img.tword {
                Some(w) => write!(f, "t{i} -> {w}")?,
                None => write!(f, "t{i} -> {}", img.ambient)?,
            }
        }
        Ok(())
    }
}

fn product(words: &[BraidWord], strands: usize) -> BraidWord {
    words.iter().fold(BraidWord::identity(strands), |acc, w| acc.mul(w))
}

/// `outer ∘ inner`. The inner images must carry `t`-words.
pub fn compose_hom(outer: &GenImageHom, inner: &GenImageHom) -> Result<GenImageHom> {
    outer.require_verified()?;
    inner.require_verified()?;
    if outer.n != inner.n {
        return Err(Error::invalid("rank mismatch"));
    }
    if inner.codomain != Codomain::Affine {
        return Err(Error::invalid("inner homomorphism must land in A[Ã_n]"));
    }
    let images = inner
        .images
        .iter()
        .map(|img| {
            img.tword
                .as_ref()
                .map(|w| outer.apply_image(w))
                .ok_or_else(|| Error::invalid("inner image has no t-word to substitute into"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GenImageHom { n: outer.n, codomain: outer.codomain, images, verified: true })
}

/// `conj_a ∘ h`.
pub fn conjugate_hom(a: &AffineElement, h: &GenImageHom) -> Result<GenImageHom> {
    h.require_verified()?;
    if a.n() != h.n {
        return Err(Error::invalid("rank mismatch"));
    }
    let g = Image::from_element(a);
    let g_inv = g.pow(-1);
    let images = h.images.iter().map(|img| g.mul(img).mul(&g_inv)).collect();
    Ok(GenImageHom { images, ..h.clone() })
}

/// Conjugation by an arbitrary ambient braid; the result lands in the
/// ambient group.
pub fn conjugate_hom_ambient(g: &BraidWord, h: &GenImageHom) -> Result<GenImageHom> {
    h.require_verified()?;
    let images = h
        .images
        .iter()
        .map(|img| Ok(Image { ambient: BraidWord::conjugate(g, &img.ambient)?, tword: None }))
        .collect::<Result<Vec<_>>>()?;
    Ok(GenImageHom { n: h.n, codomain: Codomain::Ambient, images, verified: true })
}

/// Element `ζ^zeta ∘ η^eta ∘ μ^mu` of `Aut*(Ã_n) ≅ D_{2(n+1)} × Z/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AutStar {
    n: u32,
    pub zeta: u32,
    pub eta: bool,
    pub mu: bool,
}

impl AutStar {
    pub fn new(n: u32, zeta: i64, eta: bool, mu: bool) -> Result<Self> {
        CoxeterGraph::affine_a(n)?;
        Ok(AutStar { n, zeta: zeta.rem_euclid(n as i64 + 1) as u32, eta, mu })
    }

    pub fn identity(n: u32) -> Result<Self> {
        Self::new(n, 0, false, false)
    }

    pub fn zeta(n: u32) -> Result<Self> {
        Self::new(n, 1, false, false)
    }

    pub fn eta(n: u32) -> Result<Self> {
        Self::new(n, 0, true, false)
    }

    pub fn mu(n: u32) -> Result<Self> {
        Self::new(n, 0, false, true)
    }

    /// All `4(n + 1)` canonical forms.
    pub fn all(n: u32) -> Result<Vec<Self>> {
        CoxeterGraph::affine_a(n)?;
        let mut out = Vec::with_capacity(4 * (n as usize + 1));
        for zeta in 0..=n {
            for eta in [false, true] {
                for mu in [false, true] {
                    out.push(AutStar { n, zeta, eta, mu });
                }
            }
        }
        Ok(out)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `self ∘ other`, using `ηζη = ζ⁻¹` and `μ` central.
    pub fn compose(&self, other: &AutStar) -> AutStar {
        assert_eq!(self.n, other.n);
        let period = self.n as i64 + 1;
        let shift = if self.eta { -(other.zeta as i64) } else { other.zeta as i64 };
        AutStar {
            n: self.n,
            zeta: (self.zeta as i64 + shift).rem_euclid(period) as u32,
            eta: self.eta ^ other.eta,
            mu: self.mu ^ other.mu,
        }
    }

    pub fn inverse(&self) -> AutStar {
        let period = self.n as i64 + 1;
        let zeta = if self.eta { self.zeta as i64 } else { -(self.zeta as i64) };
        AutStar { n: self.n, zeta: zeta.rem_euclid(period) as u32, eta: self.eta, mu: self.mu }
    }

    /// `ψ(t_i) = t_j^sign`.
    pub fn on_generator(&self, i: u32) -> (u32, i32) {
        let period = self.n as i64 + 1;
        let base = if self.eta { self.n as i64 - i as i64 } else { i as i64 };
        let j = (base + self.zeta as i64).rem_euclid(period) as u32;
        (j, if self.mu { -1 } else { 1 })
    }

    pub fn hom(&self) -> Result<GenImageHom> {
        let images = (0..=self.n)
            .map(|i| {
                let (j, e) = self.on_generator(i);
                tower::iota_affine(self.n, &GenWord::from_letters(Alphabet::T, [(j, e)]))
            })
            .collect::<Result<Vec<_>>>()?;
        GenImageHom::new(self.n, images)?.verified()
    }
}

impl fmt::Display for AutStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ζ^{}∘η^{}∘μ^{}", self.zeta, self.eta as u8, self.mu as u8)
    }
}

/// `Δ_Y^{2p}`.
fn delta_y_power(n: u32, p: i64) -> Result<AffineElement> {
    Ok(tower::delta_y(n)?.pow(2 * p))
}

fn alpha_beta(p: i64, n: u32, head: AffineElement) -> Result<GenImageHom> {
    let d = delta_y_power(n, p)?;
    let mut images = vec![head.mul(&d)];
    for i in 1..=n {
        images.push(AffineElement::generator(n, i)?.mul(&d));
    }
    GenImageHom::new(n, images)?.verified()
}

/// `α_p`: `t_i ↦ t_i Δ_Y^{2p}`, `t_0 ↦ v_0 Δ_Y^{2p}`.
pub fn alpha(p: i64, n: u32) -> Result<GenImageHom> {
    alpha_beta(p, n, tower::v0(n)?)
}

/// `β_p`: `t_i ↦ t_i Δ_Y^{2p}`, `t_0 ↦ v_1 Δ_Y^{2p}`.
pub fn beta(p: i64, n: u32) -> Result<GenImageHom> {
    alpha_beta(p, n, tower::v1(n)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AmbientFamily {
    /// `w ∈ {u_0, u_1}`; no `Δ_Y` factor allowed.
    U,
    /// `w ∈ {v_0, v_1}`.
    V,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientParams {
    pub family: AmbientFamily,
    pub k: u8,
    pub eps: i32,
    pub p: i64,
    pub q: i64,
    pub g: BraidWord,
}

/// `t_i ↦ g σ_i^ε Δ_Y^{2p} Δ^{2q} g⁻¹`, `t_0 ↦ g w^ε Δ_Y^{2p} Δ^{2q} g⁻¹`
/// into `A[A_{n+1}]`, verified.
pub fn ambient_family_hom(n: u32, params: &AmbientParams) -> Result<GenImageHom> {
    let AmbientParams { family, k, eps, p, q, g } = params;
    if *k > 1 {
        return Err(Error::invalid(format!("k must be 0 or 1, got {k}")));
    }
    if eps.abs() != 1 {
        return Err(Error::invalid(format!("ε must be ±1, got {eps}")));
    }
    if *family == AmbientFamily::U && *p != 0 {
        return Err(Error::invalid("the u family has no Δ_Y factor: p must be 0"));
    }
    let m = ambient_strands(n);
    if g.strands() != m {
        return Err(Error::StrandMismatch { left: g.strands(), right: m });
    }
    let w = match (family, k) {
        (AmbientFamily::U, 0) => tower::u0(n)?,
        (AmbientFamily::U, _) => tower::u1(n)?,
        (AmbientFamily::V, 0) => tower::v0(n)?,
        (AmbientFamily::V, _) => tower::v1(n)?,
    };
    let tail = delta_y_power(n, *p)?.ambient().mul(&tower::delta_ambient(n).pow(2 * q));
    let g_inv = g.invert();
    let wrap = |x: &BraidWord| g.mul(&x.pow(*eps as i64)).mul(&tail).mul(&g_inv);
    let mut images = vec![wrap(w.ambient())];
    for i in 1..=n {
        images.push(wrap(&BraidWord::generator(m, i, 1)?));
    }
    GenImageHom::new_ambient(n, images)?
        .verified()
        .map_err(|e| Error::Internal(format!("family member failed verification: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub n: u32,
    pub codomain: Codomain,
    /// Exponent sums of the generator images.
    pub x_values: Vec<i64>,
    pub is_cyclic: bool,
    /// `z` of each image, when it lies in `A[B_{n+1}]`.
    pub z_values: Vec<Option<i64>>,
    /// Underlying permutations, one-line notation.
    pub permutations: Vec<Vec<usize>>,
    /// Whether each image lies in `A_Y`.
    pub in_ay: Vec<bool>,
    /// `p` with `|x(h(t_1))| = |1 + p n(n+1)|`, when integral.
    pub candidate_p: Option<i64>,
    pub candidate_cases: Vec<CertCase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// `p` such that `x = ±(1 + p n(n+1))`; unique when it exists.
pub fn recover_p(x: i64, n: u32) -> Option<i64> {
    let period = n as i64 * (n as i64 + 1);
    [x - 1, -x - 1].into_iter().find(|v| v % period == 0).map(|v| v / period)
}

pub fn invariant_screen(h: &GenImageHom) -> Result<InvariantReport> {
    invariant_screen_with_budget(h, crate::free_action::DEFAULT_BUDGET)
}

/// As [`invariant_screen`], with an explicit free-word length budget for
/// the `A_Y` flags.
pub fn invariant_screen_with_budget(h: &GenImageHom, budget: usize) -> Result<InvariantReport> {
    h.require_verified()?;
    let m = ambient_strands(h.n);
    let x_values: Vec<i64> = h.images.iter().map(|img| img.ambient.exponent_sum()).collect();
    let is_cyclic = h.is_cyclic();
    let z_values = h
        .images
        .iter()
        .map(|img| img.ambient.underlying_permutation().fixes(m).then(|| tower::z_scan(&img.ambient)).transpose())
        .collect::<Result<Vec<_>>>()?;
    let permutations = h.images.iter().map(|img| img.ambient.underlying_permutation().one_line()).collect();
    let in_ay = h
        .images
        .iter()
        .map(|img| crate::free_action::fixes_last_generator_with_budget(&img.ambient, budget))
        .collect::<Result<Vec<_>>>()?;
    let candidate_p = recover_p(x_values[1], h.n);
    let candidate_cases = if is_cyclic {
        vec![CertCase::Cyclic]
    } else {
        match candidate_p {
            Some(0) => vec![CertCase::Autstar, CertCase::Alpha, CertCase::Beta],
            Some(_) => vec![CertCase::Alpha, CertCase::Beta],
            None => vec![],
        }
    };
    Ok(InvariantReport {
        n: h.n,
        codomain: h.codomain,
        x_values,
        is_cyclic,
        z_values,
        permutations,
        in_ay,
        candidate_p,
        candidate_cases,
        warning: rank_warning(h.n),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertCase {
    Cyclic,
    Autstar,
    Alpha,
    Beta,
}

impl CertCase {
    pub const ALL: [CertCase; 4] = [CertCase::Cyclic, CertCase::Autstar, CertCase::Alpha, CertCase::Beta];
}

/// Classification data: `h = conj_g ∘ ψ ∘ family` (or cyclic with a
/// target).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub case: CertCase,
    pub conjugator: AffineElement,
    pub psi: Option<AutStar>,
    pub p: Option<i64>,
    pub target: Option<AffineElement>,
}

impl Certificate {
    pub fn cyclic(conjugator: AffineElement, target: AffineElement) -> Self {
        Certificate { case: CertCase::Cyclic, conjugator, psi: None, p: None, target: Some(target) }
    }

    pub fn autstar(conjugator: AffineElement, psi: AutStar) -> Self {
        Certificate { case: CertCase::Autstar, conjugator, psi: Some(psi), p: None, target: None }
    }

    pub fn alpha(conjugator: AffineElement, psi: AutStar, p: i64) -> Self {
        Certificate { case: CertCase::Alpha, conjugator, psi: Some(psi), p: Some(p), target: None }
    }

    pub fn beta(conjugator: AffineElement, psi: AutStar, p: i64) -> Self {
        Certificate { case: CertCase::Beta, conjugator, psi: Some(psi), p: Some(p), target: None }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.conjugator.n();
        let (psi, p, target) = (self.psi.is_some(), self.p.is_some(), self.target.is_some());
        let ok = match self.case {
            CertCase::Cyclic => !psi && !p && target,
            CertCase::Autstar => psi && !p && !target,
            CertCase::Alpha | CertCase::Beta => psi && p && !target,
        };
        if !ok {
            return Err(Error::MalformedCertificate(format!("fields do not match case {:?}", self.case)));
        }
        if self.psi.is_some_and(|s| s.n() != n) || self.target.as_ref().is_some_and(|t| t.n() != n) {
            return Err(Error::MalformedCertificate("rank mismatch between fields".into()));
        }
        Ok(())
    }

    /// The homomorphism the certificate describes.
    pub fn build(&self) -> Result<GenImageHom> {
        self.validate()?;
        let n = self.conjugator.n();
        let core = match self.case {
            CertCase::Cyclic => GenImageHom::cyclic(self.target.as_ref().expect("validated")),
            CertCase::Autstar => self.psi.expect("validated").hom()?,
            CertCase::Alpha => {
                compose_hom(&self.psi.expect("validated").hom()?, &alpha(self.p.expect("validated"), n)?)?
            }
            CertCase::Beta => compose_hom(&self.psi.expect("validated").hom()?, &beta(self.p.expect("validated"), n)?)?,
        };
        conjugate_hom(&self.conjugator, &core)
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            case: self.case,
            conjugator: self.conjugator.to_string(),
            psi: self.psi.map(|s| PsiJson { zeta: s.zeta as i64, eta: s.eta as u8, mu: s.mu as u8 }),
            p: self.p,
            target: self.target.as_ref().map(|t| t.to_string()),
        }
    }

    pub fn from_json(n: u32, json: &CertificateJson) -> Result<Self> {
        let bit = |v: u8, name: &str| match v {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(Error::MalformedCertificate(format!("{name} must be 0 or 1"))),
        };
        let psi =
            json.psi.as_ref().map(|p| AutStar::new(n, p.zeta, bit(p.eta, "eta")?, bit(p.mu, "mu")?)).transpose()?;
        let cert = Certificate {
            case: json.case,
            conjugator: AffineElement::parse(n, &json.conjugator)?,
            psi,
            p: json.p,
            target: json.target.as_deref().map(|t| AffineElement::parse(n, t)).transpose()?,
        };
        cert.validate()?;
        Ok(cert)
    }

    pub fn parse_json(n: u32, text: &str) -> Result<Self> {
        let json: CertificateJson =
            serde_json::from_str(text).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
        Self::from_json(n, &json)
    }
}

/// Wire form of a [`Certificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub case: CertCase,
    pub conjugator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<PsiJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiJson {
    pub zeta: i64,
    pub eta: u8,
    pub mu: u8,
}

/// Whether `h` agrees on every generator with the homomorphism described
/// by `cert`.
pub fn certificate_check(h: &GenImageHom, cert: &Certificate) -> Result<bool> {
    h.require_verified()?;
    if cert.conjugator.n() != h.n {
        return Err(Error::MalformedCertificate(format!(
            "certificate rank {} vs hom rank {}",
            cert.conjugator.n(),
            h.n
        )));
    }
    Ok(cert.build()?.equals(h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Alpha,
    Beta,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub first: AffineElement,
    pub second: AffineElement,
    /// Common image of both witnesses.
    pub image: BraidWord,
}

/// Two distinct elements with the same image under `α_p` (resp. `β_p`):
/// `t_0` and `v_0` (resp. `v_1`). The images are checked equal, and the
/// elements are told apart by `ω`: `ω(t_0) ∉ W_Y` while `ω(v_k) ∈ W_Y`.
pub fn noninjectivity_witness(family: Family, p: i64, n: u32) -> Result<Witness> {
    let (h, second) = match family {
        Family::Alpha => (alpha(p, n)?, tower::v0(n)?),
        Family::Beta => (beta(p, n)?, tower::v1(n)?),
    };
    let first = tower::u0(n)?;
    let image = h.apply(first.tword().expect("built from a t-word"))?;
    let other = h.apply(second.tword().expect("built from a t-word"))?;
    if !image.equals(&other)? {
        return Err(Error::Internal("witness images differ".into()));
    }
    let screen = |a: &AffineElement| a.omega().map(|w| w.in_finite_parabolic());
    if screen(&first) != Some(false) || screen(&second) != Some(true) {
        return Err(Error::Internal("ω-screen does not separate the witnesses".into()));
    }
    Ok(Witness { first, second, image })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinguisherReport {
    pub n: u32,
    pub p: i64,
    pub q: i64,
    pub x_alpha_p: i64,
    pub x_alpha_q: i64,
    /// `1 + p n(n+1) = ±(1 + q n(n+1))`.
    pub sign_match: bool,
    /// `sign_match` holds exactly when `p = q`.
    pub arithmetic_ok: bool,
    /// `α_p(t_0) ≠ β_p(t_0)`.
    pub alpha_beta_distinct: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl DistinguisherReport {
    pub fn passed(&self) -> bool {
        self.arithmetic_ok && self.alpha_beta_distinct
    }
}

pub fn x_distinguishers(p: i64, q: i64, n: u32) -> Result<DistinguisherReport> {
    let a_p = alpha(p, n)?;
    let a_q = alpha(q, n)?;
    let x_alpha_p = a_p.image(1).exponent_sum();
    let x_alpha_q = a_q.image(1).exponent_sum();
    let sign_match = x_alpha_p == x_alpha_q || x_alpha_p == -x_alpha_q;
    let b_p = beta(p, n)?;
    Ok(DistinguisherReport {
        n,
        p,
        q,
        x_alpha_p,
        x_alpha_q,
        sign_match,
        arithmetic_ok: sign_match == (p == q),
        alpha_beta_distinct: !a_p.image(0).equals(b_p.image(0))?,
        warning: rank_warning(n),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Certificate),
    /// No certificate with a conjugator of at most this many `t` letters.
    NotFoundWithin(usize),
}

/// Bounded search for a certificate: tries every freely reduced conjugator
/// `t`-word up to `max_len` letters, every `ψ ∈ Aut*` and the `p` suggested
/// by the invariant screen. Incomplete by nature.
pub fn search_certificate(h: &GenImageHom, max_len: usize) -> Result<SearchOutcome> {
    h.require_verified()?;
    let n = h.n;
    let report = invariant_screen(h)?;
    if report.is_cyclic {
        let target = h.image_element(0).ok_or_else(|| Error::invalid("cyclic target does not lie in A[Ã_n]"))?;
        return Ok(SearchOutcome::Found(Certificate::cyclic(AffineElement::identity(n), target)));
    }

    let identity = AffineElement::identity(n);
    let mut table: HashMap<Vec<NormalForm>, Certificate> = HashMap::new();
    for psi in AutStar::all(n)? {
        let mut candidates = Vec::new();
        if report.candidate_cases.contains(&CertCase::Autstar) {
            candidates.push(Certificate::autstar(identity.clone(), psi));
        }
        if let Some(p) = report.candidate_p {
            candidates.push(Certificate::alpha(identity.clone(), psi, p));
            candidates.push(Certificate::beta(identity.clone(), psi, p));
        }
        for c in candidates {
            let key = (0..=n).map(|i| c.build().map(|b| b.image(i).normal_form())).collect::<Result<Vec<_>>>()?;
            table.entry(key).or_insert(c);
        }
    }

    let letters: Vec<(u32, i32)> = (0..=n).flat_map(|g| [(g, 1), (g, -1)]).collect();
    let mut frontier = vec![GenWord::empty(Alphabet::T)];
    for len in 0..=max_len {
        for g in &frontier {
            let conj = tower::iota_affine(n, g)?;
            let inv = conj.ambient().invert();
            let key: Vec<NormalForm> = (0..=n).map(|i| inv.mul(h.image(i)).mul(conj.ambient()).normal_form()).collect();
            if let Some(c) = table.get(&key) {
                return Ok(SearchOutcome::Found(Certificate { conjugator: conj, ..c.clone() }));
            }
        }
        if len == max_len {
            break;
        }
        frontier = frontier
            .iter()
            .flat_map(|w| {
                letters.iter().filter_map(move |&(g, e)| {
                    let last = w.letters().last();
                    (last != Some(&(g, -e))).then(|| {
                        let mut next = w.clone();
                        next.push(g, e);
                        next
                    })
                })
            })
            .filter(|w| w.len() == len + 1)
            .collect();
    }
    Ok(SearchOutcome::NotFoundWithin(max_len))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: u32, s: &str) -> AffineElement {
        AffineElement::parse(n, s).unwrap()
    }

    #[test]
    fn make_and_verify() {
        let n = 4;
        let mut id = GenImageHom::new(n, (0..=n).map(|i| AffineElement::generator(n, i).unwrap()).collect()).unwrap();
        assert!(!id.is_verified());
        assert!(id.verify());
        assert!(id.is_verified());

        let cyc = GenImageHom::new(n, vec![t(n, "t1"); 5]).unwrap().verified().unwrap();
        assert!(cyc.is_cyclic());

        assert!(GenImageHom::new(n, vec![t(n, "t1"); 4]).is_err());
        assert!(GenImageHom::new(n, vec![t(3, "t1"); 5]).is_err());

        // t2 ↦ t1, others ↦ t2: t0 t2 = t2 t0 becomes t2 t1 = t1 t2.
        let mut bad = GenImageHom::parse_images(n, &["t2", "t2", "t1", "t2", "t2"]).unwrap();
        assert!(!bad.verify());
        assert_eq!(bad.failed_relation(), Some((0, 2)));
        assert!(!t(n, "t2 t1").equals(&t(n, "t1 t2")));
    }

    #[test]
    fn unverified_inputs_are_rejected() {
        let n = 3;
        let h = GenImageHom::parse_images(n, &["t0", "t1", "t2", "t3"]).unwrap();
        assert_eq!(compose_hom(&h, &h), Err(Error::Unverified));
        assert_eq!(conjugate_hom(&t(n, "t1"), &h), Err(Error::Unverified));
        assert!(matches!(invariant_screen(&h), Err(Error::Unverified)));
    }

    #[test]
    fn autstar_laws_by_index_arithmetic() {
        for n in 2..=5 {
            let period = n as i64 + 1;
            let zeta = |i: i64| (i + 1).rem_euclid(period);
            let eta = |i: i64| (n as i64 - i).rem_euclid(period);
            let z = AutStar::zeta(n).unwrap();
            let e = AutStar::eta(n).unwrap();
            let eze = e.compose(&z).compose(&e);
            for i in 0..=n {
                assert_eq!(eze.on_generator(i).0 as i64, eta(zeta(eta(i as i64))));
                assert_eq!((eta(zeta(eta(i as i64))) + 1).rem_euclid(period), i as i64);
            }
            assert_eq!(eze, z.inverse());
            let all = AutStar::all(n).unwrap();
            assert_eq!(all.len(), 4 * (n as usize + 1));
            for a in &all {
                for b in &all {
                    let c = a.compose(b);
                    for i in 0..=n {
                        let (j, s) = b.on_generator(i);
                        let (k, s2) = a.on_generator(j);
                        assert_eq!(c.on_generator(i), (k, s * s2));
                    }
                }
                assert_eq!(a.compose(&a.inverse()), AutStar::identity(n).unwrap());
            }
        }
    }

    #[test]
    fn autstar_homs() {
        let n = 4;
        let zeta = AutStar::zeta(n).unwrap().hom().unwrap();
        let mu = AutStar::mu(n).unwrap().hom().unwrap();
        let id = GenImageHom::identity(n).unwrap();
        assert!(compose_hom(&mu, &mu).unwrap().equals(&id));
        let zn = AutStar::new(n, n as i64, false, false).unwrap().hom().unwrap();
        assert!(compose_hom(&zeta, &zn).unwrap().equals(&id));
        assert!(compose_hom(&mu, &zeta).unwrap().equals(&compose_hom(&zeta, &mu).unwrap()));
        let homs: Vec<_> = AutStar::all(n).unwrap().iter().map(|a| a.hom().unwrap()).collect();
        for (i, a) in homs.iter().enumerate() {
            for b in &homs[i + 1..] {
                assert!(!a.equals(b));
            }
        }
    }

    #[test]
    fn fix_y_identity() {
        let n = 4;
        let ze = AutStar::new(n, 1, true, false).unwrap().hom().unwrap();
        let fix = conjugate_hom(&tower::delta_y(n).unwrap(), &ze).unwrap();
        for i in 1..=n {
            assert!(fix.image(i).equals(AffineElement::generator(n, i).unwrap().ambient()).unwrap());
        }
        for p in -1..=1 {
            let a = alpha(p, n).unwrap();
            assert!(compose_hom(&fix, &a).unwrap().equals(&a));
            let cert = Certificate::alpha(tower::delta_y(n).unwrap(), AutStar::new(n, 1, true, false).unwrap(), p);
            assert!(certificate_check(&a, &cert).unwrap());
        }
    }

    #[test]
    fn alpha_beta_values() {
        let n = 4;
        let a0 = alpha(0, n).unwrap();
        assert!(a0.image(0).equals(tower::v0(n).unwrap().ambient()).unwrap());
        for p in -2..=2 {
            let a = alpha(p, n).unwrap();
            assert_eq!(a.image(1).exponent_sum(), 1 + p * 20);
            let b = beta(p, n).unwrap();
            for i in 0..=n {
                assert!(crate::free_action::fixes_last_generator(a.image(i)).unwrap());
                assert!(crate::free_action::fixes_last_generator(b.image(i)).unwrap());
            }
        }
    }

    #[test]
    fn ambient_family_examples() {
        let n = 4;
        let m = ambient_strands(n);
        let id = BraidWord::identity(m);
        for p in -1..=1 {
            let h = ambient_family_hom(
                n,
                &AmbientParams { family: AmbientFamily::V, k: 0, eps: 1, p, q: 0, g: id.clone() },
            )
            .unwrap();
            assert!(h.equals(&alpha(p, n).unwrap()));
            // ε = -1: μ ∘ β_{-p}, since μ(v_0) = v_1⁻¹.
            let h = ambient_family_hom(
                n,
                &AmbientParams { family: AmbientFamily::V, k: 0, eps: -1, p, q: 0, g: id.clone() },
            )
            .unwrap();
            let mu = AutStar::mu(n).unwrap().hom().unwrap();
            assert!(h.equals(&compose_hom(&mu, &beta(-p, n).unwrap()).unwrap()));
        }
        let inc =
            ambient_family_hom(n, &AmbientParams { family: AmbientFamily::U, k: 0, eps: 1, p: 0, q: 0, g: id.clone() })
                .unwrap();
        assert!(inc.equals(&GenImageHom::identity(n).unwrap()));
        assert!(ambient_family_hom(n, &AmbientParams { family: AmbientFamily::U, k: 1, eps: 1, p: 1, q: 0, g: id })
            .is_err());
    }

    #[test]
    fn screen() {
        let n = 4;
        for p in -2..=2 {
            let r = invariant_screen(&alpha(p, n).unwrap()).unwrap();
            assert!(!r.is_cyclic);
            assert_eq!(r.candidate_p, Some(p));
            assert!(r.candidate_cases.contains(&CertCase::Alpha));
            assert!(r.in_ay.iter().all(|&b| b));
            assert!(r.warning.is_none());
        }
        let r = invariant_screen(&GenImageHom::identity(n).unwrap()).unwrap();
        assert!(r.x_values.iter().all(|&x| x == 1));
        assert_eq!(r.candidate_p, Some(0));
        assert_eq!(r.z_values, vec![Some(0); 5]);
        let r = invariant_screen(&GenImageHom::cyclic(&t(n, "t1"))).unwrap();
        assert!(r.is_cyclic);
        assert_eq!(r.candidate_cases, vec![CertCase::Cyclic]);
        assert!(invariant_screen(&GenImageHom::identity(2).unwrap()).unwrap().warning.is_some());
    }

    #[test]
    fn certificates() {
        let n = 4;
        let g = t(n, "t0 t2^-1 t3");
        let id_psi = AutStar::identity(n).unwrap();
        let h = conjugate_hom(&g, &alpha(1, n).unwrap()).unwrap();
        assert!(certificate_check(&h, &Certificate::alpha(g.clone(), id_psi, 1)).unwrap());
        assert!(!certificate_check(&h, &Certificate::alpha(g.clone(), id_psi, 0)).unwrap());
        for psi in AutStar::all(n).unwrap() {
            assert!(!certificate_check(&alpha(1, n).unwrap(), &Certificate::beta(g.clone(), psi, 1)).unwrap());
        }
        let malformed = Certificate { p: None, ..Certificate::alpha(g.clone(), id_psi, 1) };
        assert!(matches!(certificate_check(&h, &malformed), Err(Error::MalformedCertificate(_))));
    }

    #[test]
    fn certificate_json() {
        let n = 4;
        let text = r#"{"case":"alpha","p":1,"psi":{"zeta":2,"eta":0,"mu":1},"conjugator":"t0 t1^-1"}"#;
        let cert = Certificate::parse_json(n, text).unwrap();
        assert_eq!(cert.case, CertCase::Alpha);
        assert_eq!(cert.psi, Some(AutStar::new(n, 2, false, true).unwrap()));
        let back = serde_json::to_string(&cert.to_json()).unwrap();
        assert_eq!(Certificate::parse_json(n, &back).unwrap(), cert);
        assert!(Certificate::parse_json(n, r#"{"case":"alpha","conjugator":""}"#).is_err());
        assert!(Certificate::parse_json(n, r#"{"case":"gamma","conjugator":""}"#).is_err());
        assert!(Certificate::parse_json(n, r#"{"case":"cyclic","conjugator":"","target":"t1","p":1}"#).is_err());
    }

    #[test]
    fn witnesses() {
        let n = 4;
        for p in -1..=1 {
            for fam in [Family::Alpha, Family::Beta] {
                let w = noninjectivity_witness(fam, p, n).unwrap();
                assert!(!w.first.equals(&w.second));
            }
        }
    }

    #[test]
    fn distinguishers() {
        let r = x_distinguishers(1, 1, 4).unwrap();
        assert_eq!((r.x_alpha_p, r.x_alpha_q), (21, 21));
        assert!(r.passed());
        let r = x_distinguishers(1, -1, 4).unwrap();
        assert_eq!((r.x_alpha_p, r.x_alpha_q), (21, -19));
        assert!(!r.sign_match);
        assert!(r.passed());
        assert!(x_distinguishers(0, 0, 3).unwrap().warning.is_some());
    }

    #[test]
    fn recover_p_is_unique() {
        for n in 2..=6u32 {
            for p in -5..=5i64 {
                let x = 1 + p * (n as i64) * (n as i64 + 1);
                assert_eq!(recover_p(x, n), Some(p));
                assert_eq!(recover_p(-x, n), Some(p));
            }
            assert_eq!(recover_p(3, n), None);
        }
    }

    #[test]
    fn bounded_search() {
        let n = 3;
        let g = t(n, "t1 t0^-1");
        let psi = AutStar::new(n, 2, true, false).unwrap();
        let h = conjugate_hom(&g, &compose_hom(&psi.hom().unwrap(), &beta(1, n).unwrap()).unwrap()).unwrap();
        let SearchOutcome::Found(cert) = search_certificate(&h, 2).unwrap() else { panic!("not found") };
        assert!(certificate_check(&h, &cert).unwrap());
        let far = conjugate_hom(&t(n, "t1 t0^-1 t2 t3"), &alpha(0, n).unwrap()).unwrap();
        assert_eq!(search_certificate(&far, 1).unwrap(), SearchOutcome::NotFoundWithin(1));
    }
}
