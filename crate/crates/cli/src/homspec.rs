//! Textual homomorphism specifications.
//!
//! ```text
//! id | zeta[:k] | eta | mu | autstar:m,e,f | alpha:p | beta:p
//! cyclic:<word> | images:<w0>;<w1>;...;<wn> | ambient:<u|v>,k,eps,p,q[,<g>]
//! ```

use artin_tower::endo::{self, AmbientFamily, AmbientParams, AutStar, GenImageHom};
use artin_tower::tower::{self, AffineElement};
use artin_tower::{BraidWord, Error, GenWord, Result};

pub const GRAMMAR: &str =
    "id | zeta[:k] | eta | mu | autstar:m,e,f | alpha:p | beta:p | cyclic:<word> | images:<w0>;...;<wn> | ambient:<u|v>,k,eps,p,q[,<g>]";

fn bad(spec: &str, offset: usize, reason: impl Into<String>) -> Error {
    Error::Parse { token: spec.to_string(), offset, reason: reason.into() }
}

fn int<T: std::str::FromStr>(spec: &str, offset: usize, text: &str, what: &str) -> Result<T> {
    text.trim().parse().map_err(|_| bad(spec, offset, format!("{what} must be an integer, got `{text}`")))
}

fn bit(spec: &str, offset: usize, text: &str, what: &str) -> Result<bool> {
    match text.trim() {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(bad(spec, offset, format!("{what} must be 0 or 1, got `{other}`"))),
    }
}

/// Comma-separated fields with their byte offsets in `spec`.
fn fields(start: usize, arg: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut offset = start;
    for part in arg.split(',') {
        out.push((offset, part.to_string()));
        offset += part.len() + 1;
    }
    out
}

pub fn parse(n: u32, spec: &str) -> Result<GenImageHom> {
    let spec = spec.trim();
    let (kind, arg) = match spec.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (spec, None),
    };
    let start = kind.len() + 1;
    let need = |what: &str| arg.ok_or_else(|| bad(spec, spec.len(), format!("`{kind}` needs {what}")));
    let no_arg = || match arg {
        Some(_) => Err(bad(spec, start, format!("`{kind}` takes no argument"))),
        None => Ok(()),
    };
    match kind {
        "id" => {
            no_arg()?;
            GenImageHom::identity(n)
        }
        "zeta" => {
            let k = arg.map(|a| int(spec, start, a, "rotation")).transpose()?.unwrap_or(1);
            AutStar::new(n, k, false, false)?.hom()
        }
        "eta" => {
            no_arg()?;
            AutStar::eta(n)?.hom()
        }
        "mu" => {
            no_arg()?;
            AutStar::mu(n)?.hom()
        }
        "autstar" => {
            let f = fields(start, need("m,e,f")?);
            if f.len() != 3 {
                return Err(bad(spec, start, "autstar takes three fields m,e,f"));
            }
            let m = int(spec, f[0].0, &f[0].1, "m")?;
            AutStar::new(n, m, bit(spec, f[1].0, &f[1].1, "e")?, bit(spec, f[2].0, &f[2].1, "f")?)?.hom()
        }
        "alpha" => endo::alpha(int(spec, start, need("p")?, "p")?, n),
        "beta" => endo::beta(int(spec, start, need("p")?, "p")?, n),
        "cyclic" => Ok(GenImageHom::cyclic(&AffineElement::parse(n, need("a target word")?)?)),
        "images" => {
            let texts: Vec<&str> = need("one image per generator")?.split(';').collect();
            GenImageHom::parse_images(n, &texts)
        }
        "ambient" => {
            let f = fields(start, need("family,k,eps,p,q[,g]")?);
            if !(5..=6).contains(&f.len()) {
                return Err(bad(spec, start, "ambient takes family,k,eps,p,q and an optional conjugator"));
            }
            let family = match f[0].1.trim() {
                "u" => AmbientFamily::U,
                "v" => AmbientFamily::V,
                other => return Err(bad(spec, f[0].0, format!("family must be u or v, got `{other}`"))),
            };
            let g = match f.get(5) {
                Some((_, w)) => tower::embed(n, &GenWord::parse(w)?)?,
                None => BraidWord::identity(tower::ambient_strands(n)),
            };
            let params = AmbientParams {
                family,
                k: int(spec, f[1].0, &f[1].1, "k")?,
                eps: int(spec, f[2].0, &f[2].1, "eps")?,
                p: int(spec, f[3].0, &f[3].1, "p")?,
                q: int(spec, f[4].0, &f[4].1, "q")?,
                g,
            };
            endo::ambient_family_hom(n, &params)
        }
        _ => Err(bad(spec, 0, format!("unknown homomorphism `{kind}`; expected {GRAMMAR}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        let n = 4;
        assert!(parse(n, "id").unwrap().equals(&GenImageHom::identity(n).unwrap()));
        assert!(parse(n, "zeta").unwrap().equals(&parse(n, "autstar:1,0,0").unwrap()));
        assert!(parse(n, "zeta:6").unwrap().equals(&parse(n, "zeta:1").unwrap()));
        assert!(parse(n, "alpha:-1").unwrap().equals(&endo::alpha(-1, n).unwrap()));
        assert!(parse(n, "ambient:v,0,1,1,0").unwrap().equals(&endo::alpha(1, n).unwrap()));
        assert!(parse(n, "cyclic:t1 t2").unwrap().is_cyclic());
        let h = parse(n, "images:t0;t1;t2;t3;t4").unwrap();
        assert!(!h.is_verified());
    }

    #[test]
    fn errors_carry_offsets() {
        let n = 4;
        match parse(n, "autstar:1,2,0") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 10),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse(n, "gamma:1"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse(n, "alpha"), Err(Error::Parse { .. })));
        assert!(matches!(parse(n, "id:3"), Err(Error::Parse { .. })));
        assert!(parse(n, "ambient:u,0,1,1,0").is_err());
    }
}
