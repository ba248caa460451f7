//! The acceptance suite: eleven exact algebraic checks over fixed parameter
//! ranges, each with a wall-clock budget.

use std::time::{Duration, Instant};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::endo::{self, AmbientFamily, AmbientParams, AutStar, CertCase, Certificate, Family, GenImageHom};
use crate::error::Result;
use crate::free_action::equals_oracle;
use crate::garside::BraidWord;
use crate::presentations::{relations, CoxeterGraph};
use crate::sampling::{self, SeededRng};
use crate::tower::{self, AffineElement, Floor};
use crate::word::GenWord;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// `n ∈ {2, 4}`, `p ∈ {-1, 0, 1}`, fewer samples.
    Quick,
    /// The full acceptance ranges.
    Full,
}

impl std::str::FromStr for Profile {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(crate::Error::invalid(format!("unknown profile `{s}` (quick|full)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub profile: Profile,
    pub seed: u64,
    /// Run criteria on separate threads.
    pub parallel: bool,
    /// Test hook: breaks one relation image in the tower check.
    pub corrupt_relation: bool,
}

impl Options {
    pub fn new(profile: Profile) -> Self {
        Options { profile, seed: DEFAULT_SEED, parallel: true, corrupt_relation: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    /// First few failing checks, by name.
    pub failures: Vec<String>,
    pub millis: u64,
    pub budget_millis: u64,
}

impl CriterionResult {
    pub fn within_budget(&self) -> bool {
        self.millis <= self.budget_millis
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub profile: Profile,
    pub seed: u64,
    pub passed: bool,
    pub results: Vec<CriterionResult>,
}

const MAX_LISTED_FAILURES: usize = 20;

#[derive(Default)]
struct Log {
    checks: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Log {
    fn check(&mut self, ok: bool, name: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(name());
            }
        }
    }
}

struct Ctx<'a> {
    opts: &'a Options,
}

impl Ctx<'_> {
    fn full(&self) -> bool {
        self.opts.profile == Profile::Full
    }

    fn pick<T: Clone>(&self, full: &[T], quick: &[T]) -> Vec<T> {
        if self.full() { full } else { quick }.to_vec()
    }

    fn rng(&self, id: u8) -> SeededRng {
        sampling::seeded(self.opts.seed ^ ((id as u64) << 32))
    }
}

type CriterionFn = fn(&Ctx, &mut Log) -> Result<()>;

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Duration,
    run: CriterionFn,
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, name: "tower relation preservation", budget: Duration::from_secs(5), run: c1_tower_relations },
    Criterion { id: 2, name: "garside / free-action agreement", budget: Duration::from_secs(60), run: c2_oracle },
    Criterion { id: 3, name: "Δ² = Δ[B]", budget: Duration::from_secs(5), run: c3_delta_squared },
    Criterion { id: 4, name: "Kent-Peifer splitting", budget: Duration::from_secs(5), run: c4_kent_peifer },
    Criterion { id: 5, name: "endomorphism families verify", budget: Duration::from_secs(120), run: c5_families },
    Criterion { id: 6, name: "Aut* structure", budget: Duration::from_secs(10), run: c6_autstar },
    Criterion { id: 7, name: "Fix(Y) identity", budget: Duration::from_secs(10), run: c7_fix_y },
    Criterion { id: 8, name: "non-injectivity witnesses", budget: Duration::from_secs(10), run: c8_witnesses },
    Criterion { id: 9, name: "x-arithmetic distinguishers", budget: Duration::from_secs(30), run: c9_distinguishers },
    Criterion { id: 10, name: "certificate soundness", budget: Duration::from_secs(120), run: c10_certificates },
    Criterion { id: 11, name: "normal-form canonicality", budget: Duration::from_secs(30), run: c11_canonicality },
];

pub fn criterion_ids() -> impl Iterator<Item = u8> {
    CRITERIA.iter().map(|c| c.id)
}

pub fn run_criterion(id: u8, opts: &Options) -> Option<CriterionResult> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    let ctx = Ctx { opts };
    let mut log = Log::default();
    let start = Instant::now();
    if let Err(e) = (c.run)(&ctx, &mut log) {
        log.check(false, || format!("error: {e}"));
    }
    let millis = start.elapsed().as_millis() as u64;
    Some(CriterionResult {
        id: c.id,
        name: c.name.to_string(),
        passed: log.failed == 0 && log.checks > 0,
        checks: log.checks,
        failures: log.failures,
        millis,
        budget_millis: c.budget.as_millis() as u64,
    })
}

pub fn run(opts: &Options) -> SelftestReport {
    let results: Vec<CriterionResult> = if opts.parallel {
        std::thread::scope(|s| {
            let handles: Vec<_> =
                criterion_ids().map(|id| s.spawn(move || run_criterion(id, opts).expect("known id"))).collect();
            handles.into_iter().map(|h| h.join().expect("criterion thread panicked")).collect()
        })
    } else {
        criterion_ids().map(|id| run_criterion(id, opts).expect("known id")).collect()
    };
    SelftestReport { profile: opts.profile, seed: opts.seed, passed: results.iter().all(|r| r.passed), results }
}

fn affine_ranks(ctx: &Ctx) -> Vec<u32> {
    ctx.pick(&[2, 3, 4, 5], &[2, 4])
}

fn c1_tower_relations(ctx: &Ctx, log: &mut Log) -> Result<()> {
    for (rank_index, n) in affine_ranks(ctx).into_iter().enumerate() {
        let maps: [(&str, CoxeterGraph); 3] = [
            ("iota_Y", CoxeterGraph::type_a(n)?),
            ("iota_B", CoxeterGraph::type_b(n + 1)?),
            ("iota_affine", CoxeterGraph::affine_a(n)?),
        ];
        for (k, (name, graph)) in maps.iter().enumerate() {
            for (j, r) in relations(graph).iter().enumerate() {
                let mut rhs = r.rhs.clone();
                if ctx.opts.corrupt_relation && rank_index == 0 && k == 0 && j == 0 {
                    rhs.push(r.s, 1);
                }
                let ok = tower::embed(n, &r.lhs)?.equals(&tower::embed(n, &rhs)?)?;
                log.check(ok, || format!("{name} n={n}: {} = {}", r.lhs, rhs));
            }
        }
    }
    Ok(())
}

fn c2_oracle(ctx: &Ctx, log: &mut Log) -> Result<()> {
    let mut rng = ctx.rng(2);
    let (independent, rewritten) = if ctx.full() { (1000, 250) } else { (200, 50) };
    let mut agree_true = 0;
    for k in 0..independent + rewritten {
        let m = rng.gen_range(2..=7);
        let len1 = rng.gen_range(0..=30);
        let u = sampling::random_braid(&mut rng, m, len1);
        let v = if k < independent {
            let len2 = rng.gen_range(0..=30);
            sampling::random_braid(&mut rng, m, len2)
        } else {
            sampling::rewrite(&mut rng, &u, 12)
        };
        let garside = u.equals(&v)?;
        let oracle = equals_oracle(&u, &v)?;
        agree_true += (garside && oracle) as usize;
        log.check(garside == oracle, || format!("disagreement on ({u}) vs ({v}) with {m} strands"));
    }
    log.check(agree_true >= rewritten, || format!("only {agree_true} equal pairs exercised"));
    Ok(())
}

fn absorb(log: &mut Log, prefix: &str, report: &tower::CheckReport) {
    for (name, ok) in &report.checks {
        log.check(*ok, || format!("{prefix}: {name}"));
    }
}

fn c3_delta_squared(ctx: &Ctx, log: &mut Log) -> Result<()> {
    for n in ctx.pick(&[1, 2, 3, 4], &[1, 2]) {
        absorb(log, &format!("n={n}"), &tower::delta_squared_check(n)?);
    }
    Ok(())
}

fn c4_kent_peifer(ctx: &Ctx, log: &mut Log) -> Result<()> {
    for n in affine_ranks(ctx) {
        absorb(log, &format!("n={n}"), &tower::kent_peifer_check(n)?);
    }
    Ok(())
}

fn p_range(ctx: &Ctx) -> Vec<i64> {
    ctx.pick(&[-3, -2, -1, 0, 1, 2, 3], &[-1, 0, 1])
}

/// Re-runs relation verification on a fresh copy.
fn verifies(h: &GenImageHom) -> bool {
    h.failed_relation().is_none()
}

fn c5_families(ctx: &Ctx, log: &mut Log) -> Result<()> {
    for n in ctx.pick(&[2, 4, 5], &[2, 4]) {
        for psi in AutStar::all(n)? {
            log.check(verifies(&psi.hom()?), || format!("n={n}: {psi}"));
        }
        for p in p_range(ctx) {
            log.check(verifies(&endo::alpha(p, n)?), || format!("n={n}: alpha_{p}"));
            log.check(verifies(&endo::beta(p, n)?), || format!("n={n}: beta_{p}"));
        }
        let m = tower::ambient_strands(n);
        let conjugators =
            [("id", BraidWord::identity(m)), ("t0", tower::t0_ambient(n)), ("rho", tower::rho(n)?.ambient().clone())];
        for family in [AmbientFamily::U, AmbientFamily::V] {
            let ps: &[i64] = if family == AmbientFamily::U { &[0] } else { &[-1, 0, 1] };
            for k in [0, 1] {
                for eps in [1, -1] {
                    for &p in ps {
                        for q in [-1, 0, 1] {
                            for (gname, g) in &conjugators {
                                let params = AmbientParams { family, k, eps, p, q, g: g.clone() };
                                let ok = endo::ambient_family_hom(n, &params).map(|h| verifies(&h)).unwrap_or(false);
                                log.check(ok, || format!("n={n}: {family:?} k={k} ε={eps} p={p} q={q} g={gname}"));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn c6_autstar(ctx: &Ctx, log: &mut Log) -> Result<()> {
    for n in ctx.pick(&[4, 5], &[4]) {
        let all = AutStar::all(n)?;
        log.check(all.len() == 4 * (n as usize + 1), || format!("n={n}: {} canonical forms", all.len()));
        let homs = all.iter().map(|a| a.hom()).collect::<Result<Vec<_>>>()?;
        for i in 0..homs.len() {
            for j in i + 1..homs.len() {
                log.check(!homs[i].equals(&homs[j]), || format!("n={n}: {} = {}", all[i], all[j]));
            }
        }
        // Canonical composition agrees with composition of homomorphisms.
        for (a, ha) in all.iter().zip(&homs) {
            for (b, hb) in all.iter().zip(&homs) {
                let direct = endo::compose_hom(ha, hb)?;
                log.check(direct.equals(&a.compose(b).hom()?), || format!("n={n}: {a} ∘ {b}"));
            }
        }

        let id = GenImageHom::identity(n)?;
        let zeta = AutStar::zeta(n)?.hom()?;
        let eta = AutStar::eta(n)?.hom()?;
        let mu = AutStar::mu(n)?.hom()?;
        let c = endo::compose_hom;
        let mut zeta_pow = id.clone();
        for _ in 0..=n {
            zeta_pow = c(&zeta, &zeta_pow)?;
        }
        log.check(zeta_pow.equals(&id), || format!("n={n}: ζ^(n+1) = id"));
        log.check(c(&eta, &eta)?.equals(&id), || format!("n={n}: η² = id"));
        let zeta_inv = AutStar::zeta(n)?.inverse().hom()?;
        log.check(c(&c(&eta, &zeta)?, &eta)?.equals(&zeta_inv), || format!("n={n}: ηζη = ζ⁻¹"));
        log.check(c(&zeta, &zeta_inv)?.equals(&id), || format!("n={n}: ζζ⁻¹ = id"));
        log.check(c(&mu, &mu)?.equals(&id), || format!("n={n}: μ² = id"));
        for (name, x) in [("ζ", &zeta), ("η", &eta)] {
            log.check(c(&mu, x)?.equals(&c(x, &mu)?), || format!("n={n}: μ{name} = {name}μ"));
        }
    }
    Ok(())
}

fn c7_fix_y(ctx: &Ctx, log: &mut Log) -> Result<()> {
    let n = 4;
    let delta_y = tower::delta_y(n)?;
    let fix = endo::conjugate_hom(&delta_y, &AutStar::new(n, 1, true, false)?.hom()?)?;
    for i in 1..=n {
        log.check(fix.image(i).equals(AffineElement::generator(n, i)?.ambient())?, || format!("fixes t{i}"));
    }
    for p in ctx.pick(&[-1, 0, 1], &[-1, 0, 1]) {
        let a = endo::alpha(p, n)?;
        log.check(endo::compose_hom(&fix, &a)?.equals(&a), || format!("conj ∘ ζ ∘ η ∘ α_{p} = α_{p}"));
    }
    Ok(())
}

fn c8_witnesses(ctx: &Ctx, log: &mut Log) -> Result<()> {
    let n = 4;
    let t0 = AffineElement::generator(n, 0)?;
    log.check(!tower::membership(t0.ambient(), Floor::AY)?, || "t0 in A_Y".into());
    for p in ctx.pick(&[-1, 0, 1], &[-1, 0, 1]) {
        for family in [Family::Alpha, Family::Beta] {
            // Internal consistency failures surface as errors.
            let ok = endo::noninjectivity_witness(family, p, n).is_ok_and(|w| !w.first.equals(&w.second));
            log.check(ok, || format!("{family:?}_{p}: witness"));
        }
        let a = endo::alpha(p, n)?;
        let v0 = tower::v0(n)?;
        let same = a.apply(t0.tword().expect("generator"))?.equals(&a.apply(v0.tword().expect("t-word"))?)?;
        log.check(same, || format!("α_{p}(t0) = α_{p}(v0)"));
        for h in [a, endo::beta(p, n)?] {
            for i in 0..=n {
                log.check(tower::membership(h.image(i), Floor::AY)?, || format!("p={p}: image of t{i} in A_Y"));
            }
        }
    }
    let separated = t0.omega().is_some_and(|w| !w.in_finite_parabolic())
        && tower::v0(n)?.omega().is_some_and(|w| w.in_finite_parabolic());
    log.check(separated, || "ω separates t0 from v0".into());
    Ok(())
}

fn c9_distinguishers(ctx: &Ctx, log: &mut Log) -> Result<()> {
    for n in ctx.pick(&[4, 5], &[4]) {
        let period = n as i64 * (n as i64 + 1);
        let ps = p_range(ctx);
        for &p in &ps {
            let a = endo::alpha(p, n)?;
            let b = endo::beta(p, n)?;
            let x = a.image(1).exponent_sum();
            log.check(x == 1 + p * period, || format!("n={n}: x(α_{p}(t1)) = {x}"));
            for (name, h) in [("α", &a), ("β", &b)] {
                let screen = endo::invariant_screen(h)?;
                log.check(screen.candidate_p == Some(p), || format!("n={n}: screen recovers p for {name}_{p}"));
            }
            log.check(!a.image(0).equals(b.image(0))?, || format!("n={n}: α_{p}(t0) ≠ β_{p}(t0)"));
            for &q in &ps {
                let x_q = 1 + q * period;
                let sign_match = x == x_q || x == -x_q;
                log.check(sign_match == (p == q), || format!("n={n}: x separates p={p}, q={q}"));
            }
        }
    }
    Ok(())
}

fn c10_certificates(ctx: &Ctx, log: &mut Log) -> Result<()> {
    let n = 4;
    let mut rng = ctx.rng(10);
    let instances = if ctx.full() { 100 } else { 20 };
    for k in 0..instances {
        let g_len = rng.gen_range(0..=12);
        let g = tower::iota_affine(n, &sampling::random_tword(&mut rng, n, g_len))?;
        let psi = sampling::random_autstar(&mut rng, n);
        let p = rng.gen_range(-2..=2);
        let case = CertCase::ALL[k % 4];
        let target_len = rng.gen_range(1..=4);
        let target_word = sampling::random_tword(&mut rng, n, target_len);
        let target = tower::iota_affine(n, &target_word)?;
        let psi_hom = psi.hom()?;
        let core = match case {
            CertCase::Cyclic => endo::compose_hom(&psi_hom, &GenImageHom::cyclic(&target))?,
            CertCase::Autstar => psi_hom.clone(),
            CertCase::Alpha => endo::compose_hom(&psi_hom, &endo::alpha(p, n)?)?,
            CertCase::Beta => endo::compose_hom(&psi_hom, &endo::beta(p, n)?)?,
        };
        let h = endo::conjugate_hom(&g, &core)?;
        let psi_target = tower::iota_affine(n, &apply_autstar(&psi, &target_word))?;
        for label in CertCase::ALL {
            let cert = match label {
                CertCase::Cyclic => Certificate::cyclic(g.clone(), psi_target.clone()),
                CertCase::Autstar => Certificate::autstar(g.clone(), psi),
                CertCase::Alpha => Certificate::alpha(g.clone(), psi, p),
                CertCase::Beta => Certificate::beta(g.clone(), psi, p),
            };
            let verdict = endo::certificate_check(&h, &cert)?;
            log.check(verdict == (label == case), || {
                format!(
                    "instance {k}: {case:?} hom, {label:?} certificate gave {verdict} (g = {g}, ψ = {psi}, p = {p})"
                )
            });
        }
    }
    Ok(())
}

fn apply_autstar(psi: &AutStar, w: &GenWord) -> GenWord {
    let mut out = GenWord::empty(w.alphabet());
    for &(i, e) in w.letters() {
        let (j, s) = psi.on_generator(i);
        out.push(j, e * s);
    }
    out
}

fn c11_canonicality(ctx: &Ctx, log: &mut Log) -> Result<()> {
    let mut rng = ctx.rng(11);
    let pairs = if ctx.full() { 1000 } else { 200 };
    for _ in 0..pairs {
        let m = rng.gen_range(2..=7);
        let len = rng.gen_range(0..=30);
        let w = sampling::random_braid(&mut rng, m, len);
        let v = sampling::rewrite(&mut rng, &w, 20);
        let (nf_w, nf_v) = (w.normal_form(), v.normal_form());
        log.check(nf_w == nf_v, || format!("({w}) and rewrite ({v}) have different normal forms"));
        log.check(nf_w.is_valid() && nf_v.is_valid(), || format!("({w}): factor chain not left-weighted"));
        log.check(nf_w.to_word().normal_form() == nf_w, || format!("({w}): re-expansion does not round-trip"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_relation_is_named() {
        let opts = Options { corrupt_relation: true, ..Options::new(Profile::Quick) };
        let r = run_criterion(1, &opts).unwrap();
        assert!(!r.passed);
        assert_eq!(r.failures.len(), 1);
        assert!(r.failures[0].starts_with("iota_Y n=2"), "{}", r.failures[0]);
        assert!(run_criterion(1, &Options::new(Profile::Quick)).unwrap().passed);
    }

    #[test]
    fn unknown_criterion() {
        assert!(run_criterion(12, &Options::new(Profile::Quick)).is_none());
    }
}
