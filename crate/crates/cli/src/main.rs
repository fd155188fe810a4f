//! `orlicz`: evaluate Young functions, compute Orlicz norms, and decide
//! inclusions from the command line. Every report is JSON.
//!
//! Exit codes: 0 success or holds, 1 verified failure, 2 input error,
//! 3 inconclusive or non-convergent.

mod input;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use orlicz::inclusion::{
    find_min_constant, inclusion_verdict, product_norm_bound, InclusionConfig, MinConstant, Status,
};
use orlicz::suite::{run_suites, VerifyOptions};
use orlicz::{luxemburg_norm, weak_norm, NormResult, OrliczError, ToleranceConfig, YoungFunction};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use input::InputError;

#[derive(Parser)]
#[command(name = "orlicz", version, about = "Orlicz norms and inclusion certificates")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// JSON config document holding every default.
    #[arg(long, global = true, env = "ORLICZ_CONFIG")]
    config: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
    #[arg(long, global = true)]
    max_bisect_iters: Option<usize>,
    /// Points in the log-spaced verification grid.
    #[arg(long, global = true)]
    grid_points: Option<usize>,
    #[arg(long, global = true)]
    t_min: Option<f64>,
    #[arg(long, global = true)]
    t_max: Option<f64>,
    /// Seed for every sampled family.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of sampled functions.
    #[arg(long, global = true)]
    samples: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Φ(t).
    Eval {
        #[arg(long)]
        phi: String,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// The generalized inverse Φ⁻¹(s).
    Inverse {
        #[arg(long)]
        phi: String,
        #[arg(long, allow_negative_numbers = true)]
        s: f64,
    },
    /// Luxemburg norm ‖f‖_Φ.
    Norm {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        f: String,
    },
    /// Weak quasi-norm ‖f‖_{wΦ}.
    WeakNorm {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        f: String,
    },
    /// Least C with Φ(t) ≤ Ψ(Ct) for every t > 0.
    MinConstant {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
    },
    /// All five inclusion statements for L_Ψ ⊆ L_Φ.
    CheckInclusion {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
    },
    /// ‖fg‖_{Φ₃} ≤ 2‖f‖_{Φ₁}‖g‖_{Φ₂}.
    ProductBound {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        phi1: String,
        #[arg(long)]
        phi2: String,
        #[arg(long)]
        phi3: String,
    },
    /// Run the invariant suites.
    Verify {
        /// Run only this suite label; repeatable.
        #[arg(long)]
        only: Vec<String>,
        /// Add a Young function to the tested family; repeatable.
        #[arg(long)]
        inject: Vec<String>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct VerifySettings {
    samples: usize,
    points: usize,
}

impl Default for VerifySettings {
    fn default() -> Self {
        let d = VerifyOptions::default();
        VerifySettings {
            samples: d.samples,
            points: d.points,
        }
    }
}

/// The config document; flags override individual fields.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Settings {
    tolerance: ToleranceConfig,
    inclusion: InclusionConfig,
    /// Seed shared by `check-inclusion` and `verify`; overrides `inclusion.samples.seed`.
    seed: Option<u64>,
    verify: VerifySettings,
}

enum Failure {
    Input(InputError),
    Compute(OrliczError),
    Io(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<OrliczError> for Failure {
    fn from(e: OrliczError) -> Self {
        Failure::Compute(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) | Failure::Io(_) => 2,
            Failure::Compute(e) => match e {
                OrliczError::NonConvergence { .. } | OrliczError::Quadrature(_) | OrliczError::InverseOverflow { .. } => 3,
                _ => 2,
            },
        }
    }

    fn report(&self) -> Value {
        match self {
            Failure::Input(e) => serde_json::to_value(e).expect("plain struct"),
            Failure::Io(msg) => json!({ "error": msg }),
            Failure::Compute(e) => {
                let field = match e {
                    OrliczError::MalformedYoung { path, .. } | OrliczError::MalformedFunction { path, .. } => {
                        Some(path.trim_start_matches("$.").trim_start_matches('$').to_string())
                    }
                    _ => None,
                };
                let argument = match e {
                    OrliczError::InvalidArgument { name, .. } => Some(format!("--{name}")),
                    OrliczError::InvalidConfig(_) => Some("--config".to_string()),
                    _ => None,
                };
                json!({ "error": e.to_string(), "argument": argument, "field": field })
            }
        }
    }
}

fn settings(g: &Global) -> Result<Settings, Failure> {
    let mut s: Settings = match &g.config {
        Some(path) => input::read_config(path)?,
        None => Settings::default(),
    };
    let tol = &mut s.tolerance;
    if let Some(v) = g.rel_tol {
        tol.rel_tol = v;
    }
    if let Some(v) = g.abs_tol {
        tol.abs_tol = v;
    }
    if let Some(v) = g.max_bisect_iters {
        tol.max_bisect_iters = v;
    }
    if let Some(v) = g.grid_points {
        tol.grid_points = v;
    }
    if let Some(v) = g.t_min {
        tol.grid_range.0 = v;
    }
    if let Some(v) = g.t_max {
        tol.grid_range.1 = v;
    }
    if let Some(v) = g.seed {
        s.seed = Some(v);
    }
    if let Some(seed) = s.seed {
        s.inclusion.samples.seed = seed;
    }
    if let Some(v) = g.samples {
        s.inclusion.samples.count = v;
        s.verify.samples = v;
    }
    s.tolerance.validate()?;
    s.inclusion.validate()?;
    Ok(s)
}

fn norm_report(r: NormResult) -> (Value, u8) {
    let code = if r.converged { 0 } else { 3 };
    (serde_json::to_value(r).expect("serializable"), code)
}

fn run(cli: &Cli) -> Result<(Value, u8), Failure> {
    let s = settings(&cli.global)?;
    let cfg = &s.tolerance;
    let out = match &cli.command {
        Command::Eval { phi, t } => {
            let phi = input::young("--phi", phi)?;
            let e = phi.evaluate_flagged(*t)?;
            (json!({ "t": t, "value": e.value, "saturated": e.saturated }), 0)
        }
        Command::Inverse { phi, s } => {
            let phi = input::young("--phi", phi)?;
            let v = phi.generalized_inverse(*s, cfg)?;
            (json!({ "s": s, "value": v }), 0)
        }
        Command::Norm { phi, f } => {
            let phi = input::young("--phi", phi)?;
            let f = input::function("--f", f)?;
            norm_report(luxemburg_norm(&f, &phi, cfg)?)
        }
        Command::WeakNorm { phi, f } => {
            let phi = input::young("--phi", phi)?;
            let f = input::function("--f", f)?;
            norm_report(weak_norm(&f, &phi, cfg)?)
        }
        Command::MinConstant { phi, psi } => {
            let phi = input::young("--phi", phi)?;
            let psi = input::young("--psi", psi)?;
            let r = find_min_constant(&phi, &psi, cfg)?;
            let code = match r {
                MinConstant::Found { .. } => 0,
                MinConstant::None { .. } => 1,
                MinConstant::Inconclusive { .. } => 3,
            };
            (serde_json::to_value(r).expect("serializable"), code)
        }
        Command::CheckInclusion { phi, psi } => {
            let phi = input::young("--phi", phi)?;
            let psi = input::young("--psi", psi)?;
            let v = inclusion_verdict(&phi, &psi, cfg, &s.inclusion)?;
            let code = match v.status {
                Status::Holds => 0,
                Status::Fails => 1,
                Status::Inconclusive => 3,
            };
            (serde_json::to_value(v).expect("serializable"), code)
        }
        Command::ProductBound { f, g, phi1, phi2, phi3 } => {
            let f = input::simple("--f", f)?;
            let g = input::simple("--g", g)?;
            let phi1 = input::young("--phi1", phi1)?;
            let phi2 = input::young("--phi2", phi2)?;
            let phi3 = input::young("--phi3", phi3)?;
            let r = product_norm_bound(&f, &g, &phi1, &phi2, &phi3, cfg)?;
            let code = if r.holds { 0 } else { 1 };
            (serde_json::to_value(r).expect("serializable"), code)
        }
        Command::Verify { only, inject } => {
            let inject = inject
                .iter()
                .enumerate()
                .map(|(i, raw)| input::young(&format!("--inject[{i}]"), raw))
                .collect::<Result<Vec<YoungFunction>, _>>()?;
            let opts = VerifyOptions {
                seed: s.seed.unwrap_or(VerifyOptions::default().seed),
                only: only.clone(),
                inject,
                samples: s.verify.samples,
                points: s.verify.points,
            };
            let r = run_suites(cfg, &opts)?;
            let code = if r.passed { 0 } else { 1 };
            (serde_json::to_value(r).expect("serializable"), code)
        }
    };
    Ok(out)
}

fn emit(report: &Value, output: Option<&PathBuf>) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(report).expect("serializable");
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write standard output: {e}")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                // --help and --version
                return ExitCode::SUCCESS;
            }
            let msg = e.kind().to_string();
            let _ = emit(&json!({ "error": msg, "argument": null, "field": null }), None);
            return ExitCode::from(2);
        }
    };
    let (report, code) = match run(&cli) {
        Ok(r) => r,
        Err(f) => (f.report(), f.code()),
    };
    if let Err(msg) = emit(&report, cli.global.output.as_ref()) {
        let _ = emit(&Failure::Io(msg).report(), None);
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
