//! Input parsing: complex literals, weight vectors, presets.

use crate::su11::{intelligent_weight_su11, Su11Family};
use crate::su2::{intelligent_weight_su2, Su2Family};
use crate::{C64, Error, Result};

use super::Group;

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`; exponents allowed.
pub fn parse_complex(s: &str) -> Result<C64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("cannot read {s:?} as a complex number"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is neither leading nor part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| (bytes[p] == b'+' || bytes[p] == b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(p) => (&body[..p], &body[p..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(C64::new(re, im))
}

/// Three comma-separated complex components.
pub fn parse_beta(s: &str) -> Result<[C64; 3]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("--beta needs three components, got {}", parts.len())));
    }
    Ok([parse_complex(parts[0])?, parse_complex(parts[1])?, parse_complex(parts[2])?])
}

fn real_arg(args: &[String], i: usize, what: &str) -> Result<f64> {
    let s = args.get(i).ok_or_else(|| Error::Parse(format!("preset needs {what}")))?;
    s.parse().map_err(|_| Error::Parse(format!("{what} = {s:?} is not a number")))
}

/// Weight vector of a named preset:
/// - `su2-sphere θ φ`: `(sinθ cosφ, sinθ sinφ, cosθ)`
/// - `su11-hyperboloid χ φ`: `(sinhχ cosφ, sinhχ sinφ, coshχ)`
/// - `is-generalized η`: `(η, -i, 0)`
/// - `is-ordinary PAIR γ` with `PAIR` one of `12`, `13`, `23`
///
/// Arguments may also arrive as one whitespace-separated string.
pub fn preset_beta(group: Group, args: &[String]) -> Result<[C64; 3]> {
    let args: Vec<String> = args.iter().flat_map(|a| a.split_whitespace()).map(String::from).collect();
    let name = args.first().map(String::as_str).unwrap_or("");
    let re = |x: f64| C64::new(x, 0.0);
    match name {
        "su2-sphere" => {
            let (th, ph) = (real_arg(&args, 1, "θ")?, real_arg(&args, 2, "φ")?);
            Ok([re(th.sin() * ph.cos()), re(th.sin() * ph.sin()), re(th.cos())])
        }
        "su11-hyperboloid" => {
            let (chi, ph) = (real_arg(&args, 1, "χ")?, real_arg(&args, 2, "φ")?);
            Ok([re(chi.sinh() * ph.cos()), re(chi.sinh() * ph.sin()), re(chi.cosh())])
        }
        "is-generalized" => {
            let eta = parse_complex(args.get(1).ok_or_else(|| Error::Parse("preset needs η".into()))?)?;
            Ok(match group {
                Group::Su2 => intelligent_weight_su2(Su2Family::Generalized(eta)).betas(),
                Group::Su11 => intelligent_weight_su11(Su11Family::Generalized(eta)).0.betas(),
            })
        }
        "is-ordinary" => {
            let pair = args.get(1).map(String::as_str).unwrap_or("");
            let g = real_arg(&args, 2, "γ")?;
            let digits: String = pair.chars().filter(char::is_ascii_digit).collect();
            Ok(match (group, digits.as_str()) {
                (Group::Su2, "12") => intelligent_weight_su2(Su2Family::J1J2(g)).betas(),
                (Group::Su2, "13") => intelligent_weight_su2(Su2Family::J1J3(g)).betas(),
                (Group::Su2, "23") => intelligent_weight_su2(Su2Family::J2J3(g)).betas(),
                (Group::Su11, "12") => intelligent_weight_su11(Su11Family::K1K2(g)).0.betas(),
                (Group::Su11, "13") => intelligent_weight_su11(Su11Family::K1K3(g)).0.betas(),
                (Group::Su11, "23") => intelligent_weight_su11(Su11Family::K2K3(g)).0.betas(),
                _ => return Err(Error::Parse(format!("unknown generator pair {pair:?}; use 12, 13 or 23"))),
            })
        }
        _ => Err(Error::Parse(format!(
            "unknown preset {name:?}; expected su2-sphere, su11-hyperboloid, is-generalized or is-ordinary"
        ))),
    }
}
