//! `artin`: command-line front end for the braid-group tower library.
//!
//! Exit codes: 0 success or true, 1 verified false, 2 usage or parse error,
//! 3 free-word budget exceeded, 4 internal error.

mod homspec;

use std::process::ExitCode;
use std::str::FromStr;

use artin_tower::endo::{self, Certificate, Family, GenImageHom};
use artin_tower::free_action::DEFAULT_BUDGET;
use artin_tower::selftest::{self, Options, Profile};
use artin_tower::tower::{self, AffineElement, Floor, Name};
use artin_tower::{BraidWord, Error, GenWord};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "artin",
    version,
    about = "Braid-group tower: normal forms, membership, endomorphisms and certificates"
)]
struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Exactly one of `--n` (words on n + 2 strands, any alphabet) or
/// `--strands` (plain `a` words).
#[derive(Args)]
struct Group {
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    strands: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Garside left normal form of a word.
    Nf {
        #[command(flatten)]
        group: Group,
        word: String,
    },
    /// Word problem: exit 0 if equal, 1 if not.
    Eq {
        #[command(flatten)]
        group: Group,
        first: String,
        second: String,
    },
    /// Invariant screen of a homomorphism.
    Inv {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        hom: String,
    },
    /// Membership in a floor of the tower (ambient, b, affine, ay).
    Member {
        #[arg(long)]
        floor: String,
        #[arg(long)]
        n: u32,
        word: String,
    },
    /// Print a distinguished element.
    Gen {
        #[arg(long)]
        n: u32,
        name: String,
    },
    /// Check the defining relations on the images.
    HomVerify {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        hom: String,
    },
    /// `outer ∘ inner`.
    HomCompose {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        outer: String,
        #[arg(long, allow_hyphen_values = true)]
        inner: String,
    },
    /// `conj_g ∘ hom`.
    HomConj {
        #[arg(long)]
        n: u32,
        #[arg(long = "by", allow_hyphen_values = true)]
        conjugator: String,
        #[arg(long, allow_hyphen_values = true)]
        hom: String,
    },
    /// Check a classification certificate (JSON text, or @path).
    CertCheck {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        hom: String,
        #[arg(long)]
        cert: String,
    },
    /// Non-injectivity witness for alpha_p or beta_p.
    Witness {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        family: String,
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long, default_value = "quick")]
        profile: String,
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
        /// Run criteria one after another.
        #[arg(long)]
        serial: bool,
        #[arg(long, hide = true)]
        corrupt_relation: bool,
    },
}

/// Result of a verb: truth value, human text and JSON.
struct Outcome {
    ok: bool,
    text: String,
    json: Value,
}

impl Outcome {
    fn new(ok: bool, text: impl Into<String>, json: Value) -> Self {
        Outcome { ok, text: text.into(), json }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::Internal(_) => 4,
        _ => 2,
    }
}

fn budget() -> artin_tower::Result<usize> {
    match std::env::var("GT_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("GT_BUDGET must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn group_word(group: &Group, text: &str) -> artin_tower::Result<BraidWord> {
    match (group.n, group.strands) {
        (Some(n), None) => tower::embed(n, &GenWord::parse(text)?),
        (None, Some(m)) => BraidWord::parse(m, text),
        (Some(_), Some(_)) => Err(usage("give either --n or --strands, not both")),
        (None, None) => Err(usage("missing --n or --strands")),
    }
}

fn ambient_word(n: u32, text: &str) -> artin_tower::Result<BraidWord> {
    tower::embed(n, &GenWord::parse(text)?)
}

fn hom_json(h: &GenImageHom) -> Value {
    let images: Vec<String> = (0..=h.n())
        .map(|i| h.image_tword(i).map(|w| w.to_string()).unwrap_or_else(|| h.image(i).to_string()))
        .collect();
    json!({ "n": h.n(), "codomain": h.codomain(), "verified": h.is_verified(), "images": images })
}

/// Verifies an unverified hom in place; `Err` outcome when it fails.
fn ensure_verified(h: &mut GenImageHom) -> Result<(), Outcome> {
    if h.is_verified() || h.verify() {
        return Ok(());
    }
    let (s, t) = h.failed_relation().expect("verification failed");
    Err(Outcome::new(
        false,
        format!("not a homomorphism: relation between t{s} and t{t} fails"),
        json!({ "verified": false, "failed_relation": [s, t] }),
    ))
}

fn verified_hom(n: u32, spec: &str) -> artin_tower::Result<Result<GenImageHom, Outcome>> {
    let mut h = homspec::parse(n, spec)?;
    Ok(ensure_verified(&mut h).map(|_| h))
}

macro_rules! verified {
    ($n:expr, $spec:expr) => {
        match verified_hom($n, $spec)? {
            Ok(h) => h,
            Err(outcome) => return Ok(outcome),
        }
    };
}

fn run(cmd: Cmd) -> artin_tower::Result<Outcome> {
    match cmd {
        Cmd::Nf { group, word } => {
            let w = group_word(&group, &word)?;
            let nf = w.normal_form();
            let json = json!({ "normal_form": nf.to_string(), "inf": nf.inf, "sup": nf.sup(), "word": nf.to_word().to_string() });
            Ok(Outcome::new(true, nf.to_string(), json))
        }
        Cmd::Eq { group, first, second } => {
            let equal = group_word(&group, &first)?.equals(&group_word(&group, &second)?)?;
            Ok(Outcome::new(equal, equal.to_string(), json!({ "equal": equal })))
        }
        Cmd::Inv { n, hom } => {
            let h = verified!(n, &hom);
            let report = endo::invariant_screen_with_budget(&h, budget()?)?;
            let list = |items: Vec<String>| items.join(" ");
            let mut text = format!(
                "x: {}\ncyclic: {}\nz: {}\nin A_Y: {}\ncandidate p: {}\ncandidate cases: {}",
                list(report.x_values.iter().map(i64::to_string).collect()),
                report.is_cyclic,
                list(report.z_values.iter().map(|z| z.map_or("-".into(), |z| z.to_string())).collect()),
                list(report.in_ay.iter().map(bool::to_string).collect()),
                report.candidate_p.map_or("none".to_string(), |p| p.to_string()),
                list(report.candidate_cases.iter().map(|c| format!("{c:?}").to_lowercase()).collect()),
            );
            if let Some(w) = &report.warning {
                text.push_str(&format!("\nwarning: {w}"));
            }
            let json = serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?;
            Ok(Outcome::new(true, text, json))
        }
        Cmd::Member { floor, n, word } => {
            let floor = Floor::from_str(&floor)?;
            let w = ambient_word(n, &word)?;
            let v = tower::membership_verdict_with_budget(&w, floor, budget()?)?;
            let text = format!("{} ({})", v.member, v.reason);
            Ok(Outcome::new(v.member, text, json!({ "member": v.member, "reason": v.reason })))
        }
        Cmd::Gen { n, name } => {
            let name = Name::from_str(&name)?;
            let d = tower::distinguished(name, n)?;
            let json =
                json!({ "name": name.as_str(), "n": n, "word": d.to_string(), "ambient": d.ambient().to_string() });
            Ok(Outcome::new(true, d.to_string(), json))
        }
        Cmd::HomVerify { n, hom } => {
            let h = verified!(n, &hom);
            Ok(Outcome::new(true, format!("verified\n{h}"), hom_json(&h)))
        }
        Cmd::HomCompose { n, outer, inner } => {
            let outer = verified!(n, &outer);
            let inner = verified!(n, &inner);
            let h = endo::compose_hom(&outer, &inner)?;
            Ok(Outcome::new(true, h.to_string(), hom_json(&h)))
        }
        Cmd::HomConj { n, conjugator, hom } => {
            let h = verified!(n, &hom);
            let g = AffineElement::parse(n, &conjugator)?;
            let c = endo::conjugate_hom(&g, &h)?;
            Ok(Outcome::new(true, c.to_string(), hom_json(&c)))
        }
        Cmd::CertCheck { n, hom, cert } => {
            let h = verified!(n, &hom);
            let text = match cert.strip_prefix('@') {
                Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?,
                None => cert,
            };
            let cert = Certificate::parse_json(n, &text)?;
            let ok = endo::certificate_check(&h, &cert)?;
            Ok(Outcome::new(ok, ok.to_string(), json!({ "valid": ok })))
        }
        Cmd::Witness { n, family, p } => {
            let family = match family.as_str() {
                "alpha" => Family::Alpha,
                "beta" => Family::Beta,
                other => return Err(usage(format!("family must be alpha or beta, got `{other}`"))),
            };
            let w = endo::noninjectivity_witness(family, p, n)?;
            let omega = |a: &AffineElement| a.omega().map(|o| o.to_string()).unwrap_or_default();
            let text = format!(
                "{} and {} have the same image {}\nomega: {} (outside W_Y) vs {} (inside W_Y)",
                w.first,
                w.second,
                w.image,
                omega(&w.first),
                omega(&w.second)
            );
            let json = json!({
                "first": w.first.to_string(),
                "second": w.second.to_string(),
                "image": w.image.to_string(),
                "omega_first": omega(&w.first),
                "omega_second": omega(&w.second),
            });
            Ok(Outcome::new(true, text, json))
        }
        Cmd::Selftest { profile, seed, serial, corrupt_relation } => {
            let opts = Options { profile: Profile::from_str(&profile)?, seed, parallel: !serial, corrupt_relation };
            let report = selftest::run(&opts);
            let mut lines = Vec::new();
            for r in &report.results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                lines.push(format!("[{status}] {:>2} {} ({} checks, {} ms)", r.id, r.name, r.checks, r.millis));
                lines.extend(r.failures.iter().map(|f| format!("       {f}")));
            }
            let json = serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?;
            Ok(Outcome::new(report.passed, lines.join("\n"), json))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.cmd) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                println!("{}", json!({ "error": e.to_string(), "exit": code }));
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
