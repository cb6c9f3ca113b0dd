//! Text forms of counting targets.
//!
//! The grammar mirrors the `Display` output of [`TargetSpec`]:
//!
//! ```text
//! fiber:Id | fiber:-Id | fiber:J+ | fiber:J- | fiber:xi(λ) | fiber:[[a,b],[c,d]]
//! xstratum:W0 … xstratum:W3 | xstratum:W4 | xstratum:W4(λ)
//! zbar22 | zbar23 | zbar24:λ | zbar34:λ | zbar44:λ1,λ2
//! zfull:A,B        (A, B class specs as for xstratum)
//! thmp:λ,μ,t2[,t1]
//! ```
//!
//! In a template any `λ` position may read `all`; [`expand`] then produces one
//! target per admissible value at the given prime.

use charvar_core::classes::GeometricClassSpec;
use charvar_core::{FiberTarget, TargetSpec, ZbarCase};

use crate::config::ConfigError;

fn bad(text: &str) -> ConfigError {
    ConfigError::Parse {
        what: "a target",
        text: text.to_string(),
    }
}

fn num<T: std::str::FromStr>(s: &str, whole: &str) -> Result<T, ConfigError> {
    s.trim().parse().map_err(|_| bad(whole))
}

pub fn parse_class_spec(s: &str) -> Result<GeometricClassSpec, ConfigError> {
    let t = s.trim();
    Ok(match t.to_ascii_uppercase().as_str() {
        "W0" => GeometricClassSpec::W0,
        "W1" => GeometricClassSpec::W1,
        "W2" => GeometricClassSpec::W2,
        "W3" => GeometricClassSpec::W3,
        "W4" => GeometricClassSpec::W4Any,
        u => {
            let inner = u
                .strip_prefix("W4(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| bad(s))?;
            GeometricClassSpec::W4 {
                lambda: num(inner, s)?,
            }
        }
    })
}

fn parse_fiber(s: &str, whole: &str) -> Result<FiberTarget, ConfigError> {
    let t = s.trim();
    Ok(match t {
        "Id" | "id" | "I" => FiberTarget::Identity,
        "-Id" | "-id" | "-I" => FiberTarget::MinusIdentity,
        "J+" | "j+" => FiberTarget::JPlus,
        "J-" | "j-" => FiberTarget::JMinus,
        _ if t.starts_with('[') => {
            let flat: String = t.chars().filter(|c| *c != '[' && *c != ']').collect();
            let v: Vec<i64> = flat
                .split(',')
                .map(|x| num(x, whole))
                .collect::<Result<_, _>>()?;
            let entries: [i64; 4] = v.try_into().map_err(|_| bad(whole))?;
            FiberTarget::Matrix { entries }
        }
        _ => {
            let inner = t
                .strip_prefix("xi(")
                .or_else(|| t.strip_prefix("ξ("))
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| bad(whole))?;
            FiberTarget::Xi {
                lambda: num(inner, whole)?,
            }
        }
    })
}

/// Parses a concrete target (no `all` placeholders).
pub fn parse_target(text: &str) -> Result<TargetSpec, ConfigError> {
    let t = text.trim();
    let (head, rest) = match t.split_once(':') {
        Some((h, r)) => (h.trim().to_ascii_lowercase(), Some(r)),
        None => (t.to_ascii_lowercase(), None),
    };
    let args = |n: std::ops::RangeInclusive<usize>| -> Result<Vec<&str>, ConfigError> {
        let parts: Vec<&str> = rest
            .ok_or_else(|| bad(text))?
            .split(',')
            .map(str::trim)
            .collect();
        if n.contains(&parts.len()) {
            Ok(parts)
        } else {
            Err(bad(text))
        }
    };
    Ok(match head.as_str() {
        "fiber" => TargetSpec::CommFiber(parse_fiber(rest.ok_or_else(|| bad(text))?, text)?),
        "xstratum" => TargetSpec::Xstratum(parse_class_spec(rest.ok_or_else(|| bad(text))?)?),
        "zbar22" | "zbar23" if rest.is_none() => TargetSpec::Zbar(if head == "zbar22" {
            ZbarCase::Zbar22
        } else {
            ZbarCase::Zbar23
        }),
        "zbar24" => TargetSpec::Zbar(ZbarCase::Zbar24 {
            lambda: num(args(1..=1)?[0], text)?,
        }),
        "zbar34" => TargetSpec::Zbar(ZbarCase::Zbar34 {
            lambda: num(args(1..=1)?[0], text)?,
        }),
        "zbar44" => {
            let a = args(2..=2)?;
            TargetSpec::Zbar(ZbarCase::Zbar44 {
                lambda1: num(a[0], text)?,
                lambda2: num(a[1], text)?,
            })
        }
        "zfull" => {
            let a = args(2..=2)?;
            TargetSpec::ZFull(parse_class_spec(a[0])?, parse_class_spec(a[1])?)
        }
        "thmp" => {
            let a = args(3..=4)?;
            TargetSpec::ThmPFiber {
                lambda: num(a[0], text)?,
                mu: num(a[1], text)?,
                t2: num(a[2], text)?,
                t1: a.get(3).map(|x| num(x, text)).transpose()?,
            }
        }
        _ => return Err(bad(text)),
    })
}

fn placeholders(text: &str) -> usize {
    text.to_ascii_lowercase().matches("all").count()
}

/// Checks a template's syntax without a prime.
pub fn check_template(text: &str) -> Result<(), ConfigError> {
    parse_target(&text.to_ascii_lowercase().replace("all", "2")).map(|_| ())
}

/// Every concrete target a template stands for at `p`, in lexicographic
/// order of the substituted values. Empty when a placeholder has no
/// admissible value at `p`.
pub fn expand(text: &str, p: u32) -> Result<Vec<TargetSpec>, ConfigError> {
    let n = placeholders(text);
    if n == 0 {
        return Ok(vec![parse_target(text)?]);
    }
    let values: Vec<u32> = (2..p.saturating_sub(1)).collect();
    let lower = text.to_ascii_lowercase();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    if values.is_empty() {
        return Ok(out);
    }
    loop {
        let mut s = lower.clone();
        for &i in &idx {
            s = s.replacen("all", &values[i].to_string(), 1);
        }
        out.push(parse_target(&s)?);
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < values.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}
