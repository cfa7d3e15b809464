//! The `aeskit` command line: `solve`, `classify`, `moments`, `verify`.
//!
//! Results go to stdout (JSON by default), diagnostics to stderr. Exit
//! codes: 0 success, 1 a residual or invariant check failed, 2 the input
//! is inadmissible (unparseable, forbidden region, no eigenstate, label
//! not in the spectrum).

mod output;
mod parse;
mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use output::render;
pub use parse::{parse_beta, parse_complex, preset_beta};
pub use verify::{run_checks, CheckOutcome, Scope};

use crate::oracle::{eigen_residual, nullspace_vector, truncated_residual};
use crate::su11::{self, classify_with_reason, Su11Label, Su11Weight};
use crate::su2::{self, Su2Case, Su2Weight};
use crate::{C64, Error, HalfInt, Result};

/// Residual tolerance when neither `--tol` nor `AESKIT_TOL` is given.
pub const DEFAULT_TOL_SU2: f64 = 1e-10;
pub const DEFAULT_TOL_SU11: f64 = 1e-8;
/// Relative agreement required between closed-form and summed moments.
pub const DEFAULT_TOL_MOMENTS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Group {
    Su2,
    Su11,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Parser, Debug)]
#[command(name = "aeskit", version, about = "SU(2) and SU(1,1) algebra eigenstates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Eigenstate, eigenvalue, normalization factor and residual.
    Solve(ProblemArgs),
    /// Spectrum class and derived weight quantities.
    Classify(ProblemArgs),
    /// ⟨J₃⟩/⟨K₃⟩ and variance, closed form against direct sums.
    Moments(MomentsArgs),
    /// Run the built-in invariant suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ProblemArgs {
    #[arg(long, value_enum)]
    pub group: Group,
    /// SU(2) representation label (half-integer, e.g. 3/2 or 1.5).
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<HalfInt>,
    /// SU(1,1) discrete-series label (half-integer ≥ 1/2).
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<HalfInt>,
    /// Weight vector "β₁,β₂,β₃", each as a+bi.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "preset")]
    pub beta: Option<String>,
    /// Named weight: su2-sphere θ φ | su11-hyperboloid χ φ |
    /// is-generalized η | is-ordinary PAIR γ. Quote it as one argument
    /// when a value starts with a minus sign and is not a plain number.
    #[arg(long, num_args = 1..=3, allow_negative_numbers = true)]
    pub preset: Option<Vec<String>>,
    /// SU(2) eigenvalue label m₀.
    #[arg(long, allow_hyphen_values = true)]
    pub m0: Option<HalfInt>,
    /// SU(1,1) discrete label l = 0, 1, 2, …
    #[arg(long)]
    pub l: Option<usize>,
    /// SU(1,1) eigenvalue λ (continuous and b = 0 classes).
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Initial SU(1,1) truncation (number of basis states).
    #[arg(long, default_value_t = su11::DEFAULT_TRUNCATION)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Residual tolerance; overrides AESKIT_TOL.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Largest l in a discrete-class sweep.
    #[arg(long, default_value_t = 5)]
    pub lmax: usize,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub scope: Scope,
    /// Seed of the random parameter corpora.
    #[arg(long, default_value_t = 20240611)]
    pub seed: u64,
    /// Perturb every closed-form value before comparison (negative control).
    #[arg(long)]
    pub corrupt: bool,
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Label {
    M0(HalfInt),
    L(usize),
    Lambda(C64),
}

/// Validated problem description shared by `solve`, `classify` and
/// `moments`.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub group: Group,
    pub rep: Option<HalfInt>,
    pub beta: [C64; 3],
    pub label: Option<Label>,
    pub truncation: usize,
    pub format: Format,
    /// From `--tol`, else `AESKIT_TOL`; replaces every default tolerance.
    pub tol_override: Option<f64>,
}

impl RunConfig {
    pub fn from_args(a: &ProblemArgs) -> Result<Self> {
        let rep = match (a.group, a.j, a.k) {
            (_, Some(_), Some(_)) => return Err(Error::Parse("give only one of --j and --k".into())),
            (Group::Su2, None, Some(_)) => return Err(Error::Parse("SU(2) takes --j, not --k".into())),
            (Group::Su11, Some(_), None) => return Err(Error::Parse("SU(1,1) takes --k, not --j".into())),
            (_, j, k) => j.or(k),
        };
        let beta = match (&a.beta, &a.preset) {
            (Some(b), None) => parse_beta(b)?,
            (None, Some(p)) => preset_beta(a.group, p)?,
            _ => return Err(Error::Parse("give --beta or --preset".into())),
        };
        let mut labels = Vec::new();
        if let Some(m0) = a.m0 {
            labels.push(Label::M0(m0));
        }
        if let Some(l) = a.l {
            labels.push(Label::L(l));
        }
        if let Some(s) = &a.lambda {
            labels.push(Label::Lambda(parse_complex(s)?));
        }
        if labels.len() > 1 {
            return Err(Error::Parse("give at most one of --m0, --l, --lambda".into()));
        }
        let label = labels.pop();
        match (a.group, label) {
            (Group::Su2, Some(Label::L(_) | Label::Lambda(_))) => {
                return Err(Error::Parse("SU(2) eigenstates are labelled by --m0".into()))
            }
            (Group::Su11, Some(Label::M0(_))) => {
                return Err(Error::Parse("SU(1,1) eigenstates are labelled by --l or --lambda".into()))
            }
            _ => {}
        }
        let tol_override = match a.tol {
            Some(t) => Some(t),
            None => env_tol()?,
        };
        Ok(RunConfig { group: a.group, rep, beta, label, truncation: a.n, format: a.format, tol_override })
    }

    pub fn residual_tol(&self) -> f64 {
        self.tol_override.unwrap_or(match self.group {
            Group::Su2 => DEFAULT_TOL_SU2,
            Group::Su11 => DEFAULT_TOL_SU11,
        })
    }

    pub fn moments_tol(&self) -> f64 {
        self.tol_override.unwrap_or(DEFAULT_TOL_MOMENTS)
    }

    fn rep(&self) -> Result<HalfInt> {
        self.rep.ok_or_else(|| {
            Error::Parse(match self.group {
                Group::Su2 => "--j is required".into(),
                Group::Su11 => "--k is required".into(),
            })
        })
    }

    fn su2_weight(&self) -> Su2Weight {
        Su2Weight::new(self.beta[0], self.beta[1], self.beta[2])
    }

    fn su11_weight(&self) -> Su11Weight {
        Su11Weight::new(self.beta[0], self.beta[1], self.beta[2])
    }

    fn su11_label(&self) -> Result<Su11Label> {
        match self.label {
            Some(Label::L(l)) => Ok(Su11Label::L(l)),
            Some(Label::Lambda(z)) => Ok(Su11Label::Lambda(z)),
            _ => Err(Error::Parse("SU(1,1) solve needs --l or --lambda".into())),
        }
    }
}

fn env_tol() -> Result<Option<f64>> {
    match std::env::var("AESKIT_TOL") {
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|t| *t > 0.0)
            .map(Some)
            .ok_or_else(|| Error::Parse(format!("AESKIT_TOL = {s:?} is not a positive number"))),
        Err(_) => Ok(None),
    }
}

/// Exit status for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidRep(_)
        | Error::InvalidQuantumNumber { .. }
        | Error::ZeroWeight
        | Error::ClassMismatch(_)
        | Error::ForbiddenRegion(_)
        | Error::NoEigenstate(_)
        | Error::OutsideUnitDisk(_)
        | Error::Parse(_) => 2,
        _ => 1,
    }
}

/// A rendered result together with its exit status.
pub struct Outcome {
    pub stdout: String,
    pub failure: Option<String>,
}

fn c2(z: C64) -> Value {
    json!([z.re, z.im])
}

fn beta_json(beta: &[C64; 3]) -> Value {
    Value::Array(beta.iter().map(|&b| c2(b)).collect())
}

fn opt_c(z: Option<C64>) -> Value {
    z.map(c2).unwrap_or(Value::Null)
}

fn opt_f(x: Option<f64>) -> Value {
    x.map(Value::from).unwrap_or(Value::Null)
}

pub fn cmd_solve(cfg: &RunConfig) -> Result<Outcome> {
    let rep = cfg.rep()?;
    let (v, residual) = match cfg.group {
        Group::Su2 => {
            let w = cfg.su2_weight();
            let m0 = match (cfg.label, Su2Case::of(&w)?) {
                (Some(Label::M0(m0)), _) => m0,
                // λ = 0 is forced when b = 0
                (None, Su2Case::DegenerateCoherent | Su2Case::LowestWeight | Su2Case::HighestWeight) => HalfInt::from_twice(0),
                _ => return Err(Error::Parse("SU(2) solve needs --m0".into())),
            };
            let sol = su2::solve_aes(rep, &w, m0)?;
            let m = w.matrix(rep)?;
            let psi = &sol.state.amplitudes;
            let residual = eigen_residual(&m, sol.lambda, psi);
            let overlap = nullspace_vector(&m.shift(sol.lambda)).map(|v| psi.fidelity(&v).sqrt()).ok();
            let amps: Vec<Value> = rep
                .ladder()
                .zip(psi.iter())
                .map(|(m, c)| json!({"m": m.value(), "c": c2(*c)}))
                .collect();
            let v = json!({
                "group": "su2",
                "j": rep.value(),
                "beta": beta_json(&cfg.beta),
                "case": format!("{:?}", sol.case),
                "m0": sol.m0.map(|m| Value::from(m.value())).unwrap_or(Value::Null),
                "lambda": c2(sol.lambda),
                "norm_factor": sol.norm_factor,
                "residual": residual,
                "oracle_overlap": opt_f(overlap),
                "tolerance": cfg.residual_tol(),
                "amplitudes": amps,
            });
            (v, residual)
        }
        Group::Su11 => {
            let w = cfg.su11_weight();
            let sol = su11::solve_aes_su11(rep, &w, cfg.su11_label()?, cfg.truncation)?;
            let m = w.matrix(rep, sol.state.truncation());
            let residual = truncated_residual(&m, sol.lambda, &sol.state.amplitudes);
            let amps: Vec<Value> =
                sol.state.amplitudes.iter().enumerate().map(|(n, c)| json!({"n": n, "c": c2(*c)})).collect();
            let v = json!({
                "group": "su11",
                "k": rep.value(),
                "beta": beta_json(&cfg.beta),
                "class": format!("{:?}", sol.class),
                "l": sol.l,
                "r": opt_c(sol.r),
                "lambda": c2(sol.lambda),
                "norm_factor": sol.norm_factor,
                "truncation": sol.state.truncation(),
                "tail_bound": sol.state.tail_bound,
                "residual": residual,
                "tolerance": cfg.residual_tol(),
                "amplitudes": amps,
            });
            (v, residual)
        }
    };
    let tol = cfg.residual_tol();
    let failure = (!(residual <= tol)).then(|| format!("eigen-residual {residual:e} exceeds tolerance {tol:e}"));
    Ok(Outcome { stdout: render(&v, Some("amplitudes"), cfg.format), failure })
}

pub fn cmd_classify(cfg: &RunConfig) -> Result<Outcome> {
    let v = match cfg.group {
        Group::Su2 => {
            let w = cfg.su2_weight();
            let case = Su2Case::of(&w)?;
            let spectrum = match cfg.rep {
                Some(j) => Value::Array(su2::spectrum(j, &w)?.into_iter().map(c2).collect()),
                None => Value::Null,
            };
            json!({
                "group": "su2",
                "beta": beta_json(&cfg.beta),
                "case": format!("{case:?}"),
                "b": c2(w.b),
                "beta_plus": c2(w.beta_plus),
                "beta_minus": c2(w.beta_minus),
                "tau_plus": opt_c(w.tau_plus),
                "tau_minus": opt_c(w.tau_minus),
                "kappa": opt_c(w.kappa()),
                "x": opt_c(w.x()),
                "t": opt_f(w.t()),
                "s_plus": opt_f(w.s_plus()),
                "s_minus": opt_f(w.s_minus()),
                "y": opt_f(w.y()),
                "spectrum": spectrum,
            })
        }
        Group::Su11 => {
            let w = cfg.su11_weight();
            let (class, reason) = classify_with_reason(&w)?;
            json!({
                "group": "su11",
                "beta": beta_json(&cfg.beta),
                "class": format!("{class:?}"),
                "admissible": class.is_admissible(),
                "reason": reason,
                "b": c2(w.b),
                "beta_plus": c2(w.beta_plus),
                "beta_minus": c2(w.beta_minus),
                "tau_plus": opt_c(w.tau_plus),
                "tau_minus": opt_c(w.tau_minus),
                "kappa": opt_c(w.kappa()),
                "x": opt_c(w.x()),
                "t": opt_f(w.t()),
                "s_plus": opt_f(w.s_plus()),
                "s_minus": opt_f(w.s_minus()),
                "y": opt_f(w.y()),
                "h": opt_f(w.h()),
            })
        }
    };
    Ok(Outcome { stdout: render(&v, None, cfg.format), failure: None })
}

fn gap(closed: (f64, f64), direct: (f64, f64)) -> f64 {
    let scale = 1.0 + direct.0.abs() + direct.1.abs();
    (closed.0 - direct.0).abs().max((closed.1 - direct.1).abs()) / scale
}

pub fn cmd_moments(cfg: &RunConfig, lmax: usize) -> Result<Outcome> {
    let rep = cfg.rep()?;
    let tol = cfg.moments_tol();
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    match cfg.group {
        Group::Su2 => {
            let w = cfg.su2_weight();
            let labels: Vec<HalfInt> = match cfg.label {
                Some(Label::M0(m0)) => vec![m0],
                _ => rep.ladder().collect(),
            };
            for m0 in labels {
                let closed = su2::j3_moments(rep, &w, m0)?;
                let direct = su2::solve_aes(rep, &w, m0)?.state.j3_direct();
                let g = gap(closed, direct);
                worst = worst.max(g);
                rows.push(json!({"label": m0.to_string(), "mean": closed.0, "variance": closed.1, "closed_form_vs_direct_gap": g}));
            }
        }
        Group::Su11 => {
            let w = cfg.su11_weight();
            let (class, reason) = classify_with_reason(&w)?;
            let labels: Vec<Su11Label> = match cfg.label {
                Some(Label::L(l)) => vec![Su11Label::L(l)],
                Some(Label::Lambda(z)) => vec![Su11Label::Lambda(z)],
                _ if class.is_discrete() => (0..=lmax).map(Su11Label::L).collect(),
                _ if !class.is_admissible() => {
                    return Err(match class {
                        su11::SpectrumClass::DegenerateNoEigenstate => Error::NoEigenstate(reason.unwrap_or_default()),
                        _ => Error::ForbiddenRegion(reason.unwrap_or_default()),
                    })
                }
                _ => return Err(Error::Parse("continuous spectrum: give --lambda".into())),
            };
            for label in labels {
                let closed = su11::k3_moments(rep, &w, label)?;
                let direct = su11::solve_aes_su11(rep, &w, label, cfg.truncation)?.state.k3_direct();
                let g = gap(closed, direct);
                worst = worst.max(g);
                let name = match label {
                    Su11Label::L(l) => format!("l={l}"),
                    Su11Label::Lambda(z) => format!("lambda={}{:+}i", z.re, z.im),
                };
                rows.push(json!({"label": name, "mean": closed.0, "variance": closed.1, "closed_form_vs_direct_gap": g}));
            }
        }
    }
    let v = json!({
        "group": match cfg.group { Group::Su2 => "su2", Group::Su11 => "su11" },
        "rep": rep.value(),
        "beta": beta_json(&cfg.beta),
        "tolerance": tol,
        "rows": rows,
    });
    let failure = (!(worst <= tol)).then(|| format!("closed-form moments differ from direct sums by {worst:e}"));
    Ok(Outcome { stdout: render(&v, Some("rows"), cfg.format), failure })
}

pub fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let outcomes = run_checks(args.scope, args.seed, args.corrupt);
    let failed: Vec<&CheckOutcome> = outcomes.iter().filter(|o| !o.passed).collect();
    let rows: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({"check": o.name, "status": if o.passed { "PASS" } else { "FAIL" }, "detail": o.detail}))
        .collect();
    let v = json!({
        "scope": format!("{:?}", args.scope).to_lowercase(),
        "seed": args.seed,
        "passed": outcomes.len() - failed.len(),
        "failed": failed.len(),
        "checks": rows,
    });
    let failure = (!failed.is_empty()).then(|| {
        let names: Vec<&str> = failed.iter().map(|o| o.name).collect();
        format!("violated invariants: {}", names.join(", "))
    });
    Outcome { stdout: render(&v, Some("checks"), args.format), failure }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => Ok(cmd_verify(a)),
        Command::Solve(a) => RunConfig::from_args(a).and_then(|c| cmd_solve(&c)),
        Command::Classify(a) => RunConfig::from_args(a).and_then(|c| cmd_classify(&c)),
        Command::Moments(a) => RunConfig::from_args(&a.problem).and_then(|c| cmd_moments(&c, a.lmax)),
    };
    match result {
        Ok(o) => {
            let _ = out.write_all(o.stdout.as_bytes());
            match o.failure {
                Some(msg) => {
                    let _ = writeln!(err, "invariant failure: {msg}");
                    1
                }
                None => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
