//! `qentropy` subcommands. Every command prints one JSON document holding the
//! verbatim argv, the parsed configuration and the result.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 usage or input error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use qentropy_core::classical::{
    classical_entropy, majorizes, opposite_ranking, MajorizationVerdict,
};
use qentropy_core::composite::{
    quantum_conditional_i, quantum_conditional_j, quantum_mutual_i, werner_scan,
};
use qentropy_core::functionals::{named_family_grid, EntropicPair, FamilySpec};
use qentropy_core::quantum::{entropy_bounds_q, jensen_divergence, quantum_entropy};
use qentropy_core::random::ALGORITHM;
use qentropy_core::verify::{run_suites, SuiteConfig, SUITES};
use serde::Serialize;
use serde_json::{json, Value};

use crate::format::round_json;
use crate::io::{parse_distribution, read_density, read_text};
use crate::scan::{
    alpha_grid, write_boundary, write_scan, BOUNDARY_FILE, DEFAULT_ALPHAS, SCAN_FILE,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "qentropy",
    version,
    about = "Generalized (h, phi)-entropies of quantum states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Family grammar: `[family=]<name>[,alpha=v][,kappa=v][,r=v,s=v][,f=ln|linear]`.
/// The separate flags override fields of the string.
#[derive(Debug, Args, Serialize)]
pub struct FamilyArgs {
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub s: Option<f64>,
}

impl FamilyArgs {
    fn spec(&self, default: &str) -> Result<FamilySpec, String> {
        let mut spec: FamilySpec = self
            .family
            .as_deref()
            .unwrap_or(default)
            .parse()
            .map_err(|e| format!("--family: {e}"))?;
        spec.alpha = self.alpha.or(spec.alpha);
        spec.kappa = self.kappa.or(spec.kappa);
        spec.r = self.r.or(spec.r);
        spec.s = self.s.or(spec.s);
        Ok(spec)
    }

    fn pair(&self) -> Result<EntropicPair, String> {
        self.spec("shannon")?
            .to_pair()
            .map_err(|e| format!("--family: {e}"))
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Entropy of a density operator (JSON object) or probability vector (JSON array).
    Entropy {
        #[command(flatten)]
        family: FamilyArgs,
        state: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// H((rho + sigma)/2) - [H(rho) + H(sigma)]/2.
    Divergence {
        #[command(flatten)]
        family: FamilyArgs,
        rho: PathBuf,
        sigma: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Majorization relation between two distributions or spectra.
    Majorize {
        p: PathBuf,
        q: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Z(alpha, omega) on the Werner family, plus the boundary omega*(alpha).
    WernerScan {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 101)]
        omega_steps: usize,
        #[arg(long)]
        alpha_min: Option<f64>,
        #[arg(long)]
        alpha_max: Option<f64>,
        #[arg(long)]
        alpha_steps: Option<usize>,
        /// Directory receiving the two CSV files.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// J- and I-conditional entropies and mutual informations of a bipartite state.
    Conditional {
        #[command(flatten)]
        family: FamilyArgs,
        state: PathBuf,
        /// Subsystem dimensions `dA,dB`.
        #[arg(long)]
        dims: String,
        /// Haar restarts of the measurement search.
        #[arg(long, default_value_t = 8)]
        restarts: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized property suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Largest local dimension drawn.
        #[arg(long, default_value_t = 4)]
        dims: usize,
        /// Print the suite names and descriptions and exit.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Outcome {
    result: Value,
    code: i32,
}

fn ok(result: Value) -> Result<Outcome, String> {
    Ok(Outcome {
        result,
        code: EXIT_OK,
    })
}

fn input<T, E: std::fmt::Display>(path: &Path, r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_dims(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || format!("--dims: expected `dA,dB`, got `{s}`");
    if parts.len() != 2 {
        return Err(bad());
    }
    let a = parts[0].parse().map_err(|_| bad())?;
    let b = parts[1].parse().map_err(|_| bad())?;
    if a == 0 || b == 0 {
        return Err(bad());
    }
    Ok((a, b))
}

fn entropy_cmd(family: &FamilyArgs, state: &Path) -> Result<Outcome, String> {
    let pair = family.pair()?;
    let text = input(state, read_text(state))?;
    let is_vector = text.trim_start().starts_with('[');
    if is_vector {
        let p = input(state, parse_distribution(&text))?;
        return ok(json!({
            "family": pair.to_string(),
            "kind": "probability_vector",
            "entropy": classical_entropy(&pair, &p),
            "distribution": p.components(),
        }));
    }
    let rho = input(state, read_density(state))?;
    let b = entropy_bounds_q(&pair, &rho).map_err(|e| e.to_string())?;
    ok(json!({
        "family": pair.to_string(),
        "kind": "density_operator",
        "dim": rho.dim(),
        "entropy": quantum_entropy(&pair, &rho),
        "rank": rho.rank(),
        "spectrum": rho.spectrum().components(),
        "bounds": {"lower": b.lower, "support_upper": b.tight_upper, "dimension_upper": b.dim_upper},
    }))
}

fn divergence_cmd(family: &FamilyArgs, a: &Path, b: &Path) -> Result<Outcome, String> {
    let pair = family.pair()?;
    let rho = input(a, read_density(a))?;
    let sigma = input(b, read_density(b))?;
    let d = jensen_divergence(&pair, &rho, &sigma).map_err(|e| e.to_string())?;
    ok(json!({
        "family": pair.to_string(),
        "divergence": d.value,
        "concave_h": d.concave_h,
    }))
}

fn verdict_name(v: MajorizationVerdict) -> &'static str {
    match v {
        MajorizationVerdict::FirstMajorized => "p_majorized_by_q",
        MajorizationVerdict::SecondMajorized => "q_majorized_by_p",
        MajorizationVerdict::Equal => "equal",
        MajorizationVerdict::Incomparable => "incomparable",
    }
}

fn majorize_cmd(p: &Path, q: &Path, tol: f64) -> Result<Outcome, String> {
    let pv = input(
        p,
        read_text(p)
            .map_err(|e| e.to_string())
            .and_then(|t| parse_distribution(&t).map_err(|e| e.to_string())),
    )?;
    let qv = input(
        q,
        read_text(q)
            .map_err(|e| e.to_string())
            .and_then(|t| parse_distribution(&t).map_err(|e| e.to_string())),
    )?;
    let rel = majorizes(&pv, &qv);
    let mut result = json!({
        "verdict": verdict_name(rel.verdict),
        "partial_sums_p": rel.partial_sums.0,
        "partial_sums_q": rel.partial_sums.1,
    });
    if rel.verdict == MajorizationVerdict::Incomparable {
        let fams = named_family_grid();
        result["opposite_ranking"] = match opposite_ranking(&fams, &pv, &qv, tol) {
            Some((i, j)) => json!([fams[i].to_string(), fams[j].to_string()]),
            None => Value::Null,
        };
    }
    ok(result)
}

fn werner_cmd(
    family: &FamilyArgs,
    omega_steps: usize,
    range: (Option<f64>, Option<f64>, Option<usize>),
    out: &Path,
) -> Result<Outcome, String> {
    let spec = family.spec("f_alpha")?;
    if spec.name != "f_alpha" {
        return Err(format!(
            "--family: werner-scan needs an f_alpha family, got `{}`",
            spec.name
        ));
    }
    let f = spec.outer().map_err(|e| format!("--family: {e}"))?;
    let alphas = match (range, spec.alpha) {
        ((None, None, None), Some(a)) => vec![a],
        ((None, None, None), None) => DEFAULT_ALPHAS.to_vec(),
        ((Some(lo), Some(hi), steps), _) => {
            alpha_grid(lo, hi, steps.unwrap_or(DEFAULT_ALPHAS.len()))
        }
        _ => return Err("--alpha-min and --alpha-max must be given together".into()),
    };
    if omega_steps < 2 {
        return Err("--omega-steps must be at least 2".into());
    }
    let scan = werner_scan(&f, &alphas, omega_steps).map_err(|e| e.to_string())?;
    fs::create_dir_all(out).map_err(|e| format!("{}: {e}", out.display()))?;
    let write = |name: &str, w: &dyn Fn(fs::File) -> csv::Result<()>| -> Result<String, String> {
        let path = out.join(name);
        let file = fs::File::create(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        w(file).map_err(|e| format!("{}: {e}", path.display()))?;
        Ok(path.display().to_string())
    };
    let scan_path = write(SCAN_FILE, &|f| write_scan(&scan, f))?;
    let boundary_path = write(BOUNDARY_FILE, &|f| write_boundary(&scan, f))?;
    let boundary: Vec<Value> = scan
        .alphas
        .iter()
        .zip(&scan.boundary)
        .map(|(a, b)| json!({"alpha": a, "omega_star": b}))
        .collect();
    ok(json!({
        "outer_function": f.label(),
        "omega_steps": omega_steps,
        "scan_csv": scan_path,
        "boundary_csv": boundary_path,
        "boundary": boundary,
    }))
}

fn conditional_cmd(
    family: &FamilyArgs,
    state: &Path,
    dims: &str,
    restarts: usize,
    seed: u64,
) -> Result<Outcome, String> {
    let pair = family.pair()?;
    let dims = parse_dims(dims)?;
    let rho = input(state, read_density(state))?;
    let e = |e: qentropy_core::Error| e.to_string();
    let j = quantum_conditional_j(&pair, &rho, dims, None, restarts, seed).map_err(e)?;
    let i = quantum_conditional_i(&pair, &rho, dims).map_err(e)?;
    let h_a = quantum_entropy(
        &pair,
        &rho.partial_trace(&[dims.0, dims.1], &[0]).map_err(e)?,
    );
    ok(json!({
        "family": pair.to_string(),
        "conditional_j": j.value,
        "conditional_j_minimized": j.minimized,
        "conditional_i": i,
        "mutual_j": h_a - j.value,
        "mutual_i": quantum_mutual_i(&pair, &rho, dims).map_err(e)?,
        "rng": ALGORITHM,
    }))
}

fn verify_cmd(suite: &str, cfg: SuiteConfig, list: bool) -> Result<Outcome, String> {
    if list {
        let suites: Vec<Value> = SUITES
            .iter()
            .map(|s| json!({"name": s.name, "description": s.description}))
            .collect();
        return ok(json!({ "suites": suites }));
    }
    if cfg.max_dim == 0 {
        return Err("--dims must be at least 1".into());
    }
    let reports = run_suites(suite, &cfg).map_err(|e| format!("--suite: {e}"))?;
    let passed = reports.iter().all(|r| r.passed());
    let suites: Vec<Value> = reports
        .iter()
        .map(|r| {
            let checks: Vec<Value> = r
                .checks
                .iter()
                .map(|c| {
                    let mut v = json!({
                        "name": c.name,
                        "status": if c.passed { "PASS" } else { "FAIL" },
                        "trials": c.trials,
                        "worst_slack": c.worst,
                    });
                    if let Some(ce) = &c.counterexample {
                        v["counterexample"] = json!(ce);
                    }
                    v
                })
                .collect();
            json!({
                "suite": r.suite,
                "description": r.description,
                "status": if r.passed() { "PASS" } else { "FAIL" },
                "checks": checks,
            })
        })
        .collect();
    Ok(Outcome {
        result: json!({ "passed": passed, "rng": ALGORITHM, "suites": suites }),
        code: if passed {
            EXIT_OK
        } else {
            EXIT_PROPERTY_FAILURE
        },
    })
}

fn dispatch(cmd: &Command) -> Result<Outcome, String> {
    match cmd {
        Command::Entropy { family, state, .. } => entropy_cmd(family, state),
        Command::Divergence {
            family, rho, sigma, ..
        } => divergence_cmd(family, rho, sigma),
        Command::Majorize { p, q, tol, .. } => majorize_cmd(p, q, *tol),
        Command::WernerScan {
            family,
            omega_steps,
            alpha_min,
            alpha_max,
            alpha_steps,
            out,
        } => werner_cmd(
            family,
            *omega_steps,
            (*alpha_min, *alpha_max, *alpha_steps),
            out,
        ),
        Command::Conditional {
            family,
            state,
            dims,
            restarts,
            seed,
            ..
        } => conditional_cmd(family, state, dims, *restarts, *seed),
        Command::Verify {
            suite,
            trials,
            seed,
            tol,
            dims,
            list,
            ..
        } => verify_cmd(
            suite,
            SuiteConfig {
                trials: *trials,
                seed: *seed,
                tol: *tol,
                max_dim: *dims,
            },
            *list,
        ),
    }
}

fn json_out(cmd: &Command) -> Option<&Path> {
    match cmd {
        Command::Entropy { out, .. }
        | Command::Divergence { out, .. }
        | Command::Majorize { out, .. }
        | Command::Conditional { out, .. }
        | Command::Verify { out, .. } => out.as_deref(),
        Command::WernerScan { .. } => None,
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Entropy { .. } => "entropy",
        Command::Divergence { .. } => "divergence",
        Command::Majorize { .. } => "majorize",
        Command::WernerScan { .. } => "werner-scan",
        Command::Conditional { .. } => "conditional",
        Command::Verify { .. } => "verify",
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let outcome = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let config = serde_json::to_value(&cli.command).expect("config serializes");
    let mut doc = json!({
        "command": command_name(&cli.command),
        "argv": argv,
        "config": config,
        "result": outcome.result,
    });
    round_json(&mut doc);
    let text = serde_json::to_string_pretty(&doc).expect("document serializes") + "\n";
    if let Some(path) = json_out(&cli.command) {
        if let Err(e) = fs::write(path, &text) {
            let _ = writeln!(stderr, "error: {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    let _ = stdout.write_all(text.as_bytes());
    outcome.code
}
