//! The `ltsr` command line: certificate generation and verification, the
//! bounds calculator, subgroup conjugation and seeded input generation.
//!
//! Exit codes: 0 verified, 1 malformed input or configuration, 2 mathematical
//! failure. Diagnostics go to standard error, written file paths to standard
//! output.

pub mod config;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use ltsr_core::bounds::{bounds_report, BoundsInput};
use ltsr_core::certificate::{self, Certificate, VerifyError};
use ltsr_core::elimination::{ltsr_lower_obstruction, ltsr_upper_certificate};
use ltsr_core::moebius::{rotation_action_of, FiniteCyclicSubgroup, RotationAction, SU11Element};
use ltsr_core::random::{crossed_element, rng_from_seed};
use ltsr_core::{json, CrossedElement, EliminationError, GroupSpec, MoebiusError};
use serde::Serialize;
use thiserror::Error;

pub use config::RunConfig;

/// Largest hyperbolic parameter of random conjugators.
const SUBGROUP_SPREAD: f64 = 1.5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Malformed(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => 1,
            CliError::Failed(_) => 2,
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Malformed(m) => CliError::Malformed(m),
            failed => CliError::Failed(failed.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ltsr", version, about = "Stable-rank certificates for crossed products of the disk algebra")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Seed of the ChaCha stream behind every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Group order.
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,
    /// Selects omega = exp(2 pi i m / n); must be coprime to n.
    #[arg(long, global = true, default_value_t = 1, allow_negative_numbers = true)]
    m: i64,
    /// Accuracy of approximations (cert-lower: radius delta around z delta^0).
    #[arg(long, global = true, default_value_t = 0.1)]
    epsilon: f64,
    /// Largest component degree generated or accepted.
    #[arg(long = "degree-cap", global = true, default_value_t = 4)]
    degree_cap: usize,
    /// Circle samples for winding numbers (power of two, at least 64).
    #[arg(long, global = true, default_value_t = 1024)]
    samples: usize,
    /// Output file (directory for `random`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Tolerance override NAME=VALUE (certificate, agreement).
    #[arg(long = "tol", global = true, value_parser = config::parse_tolerance)]
    tol: Vec<(String, f64)>,
}

impl CommonArgs {
    fn config(&self) -> RunConfig {
        let mut c = RunConfig {
            seed: self.seed,
            n: self.n,
            m: self.m,
            degree_cap: self.degree_cap,
            epsilon: self.epsilon,
            samples: self.samples,
            ..RunConfig::default()
        };
        c.tolerances.extend(self.tol.iter().cloned());
        c
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bezout certificate that a pair close to (X, Y) generates the algebra.
    CertUpper { x: PathBuf, y: PathBuf },
    /// Winding-number obstruction around z delta^0.
    CertLower {
        /// Exponent e in the guard (1 - delta)^e > n! delta^e; defaults to n.
        #[arg(long)]
        margin_exponent: Option<u32>,
    },
    /// Re-verify certificate files from their stored data.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Stable-rank bounds calculator.
    Bounds {
        #[arg(long = "ltsr-a", default_value_t = 2)]
        ltsr_a: u64,
        #[arg(long = "matrix-size", default_value_t = 1)]
        matrix_size: u64,
        #[arg(long = "ltsr-b")]
        ltsr_b: Option<u64>,
    },
    /// Conjugate a finite subgroup of SU(1,1) into U(1).
    Conjugate { subgroup: PathBuf },
    /// Random crossed elements.
    Random {
        #[arg(long, default_value_t = 2)]
        count: usize,
        /// Take (n, m) from the "spec" field of a JSON file, e.g. a conjugation result.
        #[arg(long = "spec-from")]
        spec_from: Option<PathBuf>,
    },
    /// Random finite cyclic subgroup of order --n, conjugated out of U(1).
    RandomSubgroup,
}

/// Output of `conjugate`.
#[derive(Serialize)]
pub struct ConjugationReport<'a> {
    pub subgroup: &'a FiniteCyclicSubgroup,
    pub spec: &'a GroupSpec,
    pub action: &'a RotationAction,
}

/// Runs the command line with explicit streams and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    1
                }
            };
        }
    };
    let config = cli.common.config();
    let out = cli.common.out.clone();
    let result = config.validate().and_then(|()| match &cli.command {
        Command::CertUpper { x, y } => cert_upper(&config, x, y, out, stderr),
        Command::CertLower { margin_exponent } => cert_lower(&config, *margin_exponent, out, stderr),
        Command::Verify { files } => return Ok(verify_files(files, stdout, stderr)),
        Command::Bounds {
            ltsr_a,
            matrix_size,
            ltsr_b,
        } => bounds(&config, *ltsr_a, *matrix_size, *ltsr_b, out, stderr),
        Command::Conjugate { subgroup } => conjugate(subgroup, out, stderr),
        Command::Random { count, spec_from } => random(&config, *count, spec_from.as_deref(), out),
        Command::RandomSubgroup => random_subgroup(&config, out, stderr),
    }
    .map(|paths| {
        for p in paths {
            let _ = writeln!(stdout, "{}", p.display());
        }
        0
    }));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.code()
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
    json::from_str(&text).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<PathBuf, CliError> {
    let mut text = json::to_string(value).map_err(|e| CliError::Malformed(e.to_string()))?;
    text.push('\n');
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::Malformed(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
    Ok(path.to_path_buf())
}

fn check_degrees(x: &CrossedElement, cap: usize, label: &str) -> Result<(), CliError> {
    match x.comps().iter().filter_map(|f| f.degree()).max() {
        Some(d) if d > cap => Err(CliError::Malformed(format!(
            "{label} has degree {d} above --degree-cap {cap}"
        ))),
        _ => Ok(()),
    }
}

fn elimination_error(e: EliminationError) -> CliError {
    match e {
        EliminationError::PerturbationExhausted { .. } | EliminationError::Poly(_) => {
            CliError::Failed(e.to_string())
        }
        other => CliError::Malformed(other.to_string()),
    }
}

fn verified(cert: &Certificate, path: &Path, stderr: &mut dyn Write) -> Result<(), CliError> {
    let v = certificate::verify(cert)?;
    for (name, value) in &v.recomputed {
        let _ = writeln!(stderr, "  {name} = {value:e}");
    }
    v.into_result().map(|_| ()).map_err(|e| {
        CliError::Failed(format!("{} does not verify: {e}", path.display()))
    })
}

fn cert_upper(
    config: &RunConfig,
    x_path: &Path,
    y_path: &Path,
    out: Option<PathBuf>,
    stderr: &mut dyn Write,
) -> Result<Vec<PathBuf>, CliError> {
    let x: CrossedElement = read_json(x_path)?;
    let y: CrossedElement = read_json(y_path)?;
    if x.spec() != y.spec() {
        return Err(CliError::Malformed(format!(
            "inputs live in different algebras: (n={}, m={}) vs (n={}, m={})",
            x.spec().n(),
            x.spec().m(),
            y.spec().n(),
            y.spec().m()
        )));
    }
    check_degrees(&x, config.degree_cap, "x")?;
    check_degrees(&y, config.degree_cap, "y")?;
    let mut rng = rng_from_seed(config.seed);
    let mut cert =
        ltsr_upper_certificate(&x, &y, config.epsilon, &mut rng).map_err(elimination_error)?;
    cert.seed = Some(config.seed);
    cert.tolerances.certificate = config.tolerance("certificate");
    cert.tolerances.agreement = config.tolerance("agreement");
    let _ = writeln!(
        stderr,
        "bezout certificate for n={}: residual {:e}, distances {:e} {:e}, attempts {} + {}",
        cert.n,
        cert.residual,
        cert.distances[0],
        cert.distances[1],
        cert.diagnostics.attempts_first,
        cert.diagnostics.attempts_second
    );
    let cert = Certificate::Bezout(cert);
    let path = write_json(&out.unwrap_or_else(|| "certificate.json".into()), &cert)?;
    verified(&cert, &path, stderr)?;
    Ok(vec![path])
}

fn cert_lower(
    config: &RunConfig,
    margin_exponent: Option<u32>,
    out: Option<PathBuf>,
    stderr: &mut dyn Write,
) -> Result<Vec<PathBuf>, CliError> {
    let spec = GroupSpec::new(config.n, config.m).map_err(|e| CliError::Malformed(e.to_string()))?;
    let mut rng = rng_from_seed(config.seed);
    let mut obs = ltsr_lower_obstruction(&spec, config.epsilon, config.samples, margin_exponent, &mut rng)
        .map_err(elimination_error)?;
    obs.seed = Some(config.seed);
    let _ = writeln!(
        stderr,
        "winding obstruction for n={}: winding {} (refined {}), circle min {:e}, {} perturbations",
        obs.n,
        obs.winding,
        obs.winding_refined,
        obs.circle_min,
        obs.perturbations.len()
    );
    let cert = Certificate::Winding(obs);
    let path = write_json(&out.unwrap_or_else(|| "obstruction.json".into()), &cert)?;
    verified(&cert, &path, stderr)?;
    Ok(vec![path])
}

/// Verifies every file on its own thread. The exit code is 2 if any file
/// fails verification, otherwise 1 if any is malformed.
fn verify_files(files: &[PathBuf], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let results: Vec<Result<certificate::Verification, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = files
            .iter()
            .map(|path| {
                scope.spawn(move || {
                    let text = fs::read_to_string(path)
                        .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
                    certificate::verify_str(&text)?.into_result().map_err(CliError::from)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(CliError::Failed("verifier panicked".into()))))
            .collect()
    });
    let mut code = 0;
    for (path, result) in files.iter().zip(results) {
        match result {
            Ok(v) => {
                let summary: Vec<String> =
                    v.recomputed.iter().map(|(k, x)| format!("{k}={x:e}")).collect();
                let _ = writeln!(stderr, "{}: {} ok ({})", path.display(), v.kind, summary.join(", "));
                let _ = writeln!(stdout, "{}", path.display());
            }
            Err(e) => {
                let _ = writeln!(stderr, "{}: {e}", path.display());
                code = code.max(e.code());
            }
        }
    }
    code
}

fn bounds(
    config: &RunConfig,
    ltsr_a: u64,
    matrix_size: u64,
    ltsr_b: Option<u64>,
    out: Option<PathBuf>,
    stderr: &mut dyn Write,
) -> Result<Vec<PathBuf>, CliError> {
    let report = bounds_report(BoundsInput {
        ltsr_a,
        n: config.n as u64,
        matrix_size,
        ltsr_b,
    })
    .map_err(|e| CliError::Malformed(e.to_string()))?;
    let o = &report.outputs;
    let _ = writeln!(
        stderr,
        "crossed product <= {}, cyclic <= {}, matrix algebra = {}{}",
        o.crossed_product_bound,
        o.cyclic_bound,
        o.matrix_formula,
        o.reverse_bound
            .map(|r| format!(", reverse <= {r}"))
            .unwrap_or_default()
    );
    Ok(vec![write_json(&out.unwrap_or_else(|| "bounds.json".into()), &report)?])
}

fn conjugate(path: &Path, out: Option<PathBuf>, stderr: &mut dyn Write) -> Result<Vec<PathBuf>, CliError> {
    let k: FiniteCyclicSubgroup = read_json(path)?;
    let action = rotation_action_of(&k).map_err(|e| match e {
        MoebiusError::Algebra(_) | MoebiusError::NotInSU11(_) | MoebiusError::NotInSL2R(_) => {
            CliError::Malformed(e.to_string())
        }
        other => CliError::Failed(other.to_string()),
    })?;
    let _ = writeln!(
        stderr,
        "order {} conjugated into U(1): residual {:e}, omega = exp(2 pi i {}/{}), intertwining {:e}",
        k.order(),
        action.conjugation.residual,
        action.spec.m(),
        action.spec.n(),
        action.intertwining_residual
    );
    let report = ConjugationReport {
        subgroup: &k,
        spec: &action.spec,
        action: &action,
    };
    Ok(vec![write_json(&out.unwrap_or_else(|| "conjugation.json".into()), &report)?])
}

fn spec_from(path: &Path) -> Result<GroupSpec, CliError> {
    let value: serde_json::Value = read_json(path)?;
    let spec = value
        .get("spec")
        .ok_or_else(|| CliError::Malformed(format!("{}: no \"spec\" field", path.display())))?;
    serde_json::from_value(spec.clone()).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn random(
    config: &RunConfig,
    count: usize,
    spec_file: Option<&Path>,
    out: Option<PathBuf>,
) -> Result<Vec<PathBuf>, CliError> {
    let spec = match spec_file {
        Some(p) => spec_from(p)?,
        None => GroupSpec::new(config.n, config.m).map_err(|e| CliError::Malformed(e.to_string()))?,
    };
    let dir = out.unwrap_or_else(|| ".".into());
    let mut rng = rng_from_seed(config.seed);
    (0..count)
        .map(|k| {
            let x = crossed_element(&mut rng, &spec, config.degree_cap);
            write_json(&dir.join(format!("element-{k}.json")), &x)
        })
        .collect()
}

fn random_subgroup(
    config: &RunConfig,
    out: Option<PathBuf>,
    stderr: &mut dyn Write,
) -> Result<Vec<PathBuf>, CliError> {
    let mut rng = rng_from_seed(config.seed);
    let h = SU11Element::random(&mut rng, SUBGROUP_SPREAD);
    let k = ltsr_core::moebius::make_finite_subgroup(config.n, &h, config.m)
        .map_err(|e| CliError::Malformed(e.to_string()))?;
    let _ = writeln!(
        stderr,
        "subgroup of order {} (sign {:+}) conjugated by {}",
        k.order(),
        k.sign(),
        h
    );
    Ok(vec![write_json(&out.unwrap_or_else(|| "subgroup.json".into()), &k)?])
}
