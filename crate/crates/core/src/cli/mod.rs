//! Command-line front end. [`run`] parses arguments, applies `--config`
//! overrides, dispatches to the library and maps errors to exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, or a search finding |
//! | 1 | a verification suite ran and some check failed |
//! | 2 | usage error or invalid input |
//! | 3 | numerical failure |
//! | 4 | no discrete spectrum |

mod args;
mod commands;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::Path;

use clap::Parser;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Map, Value};

pub use args::{
    Cli, Command, DiagonalsArgs, LocalArgs, P2Args, PolygonArgs, SampleArgs, SearchArgs,
    SpectrumArgs, StationarityArgs, Suite, SweepArgs,
};

use crate::geometry::{CLOSURE_TOL, GEOMETRY_TOL};
use crate::search::{CANDIDATE_THRESHOLD, P2_BOUND_TOL, REVERIFY_TOL};
use crate::spectral::RESIDUAL_TOL;
use crate::stationarity::STATIONARITY_TOL;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_NO_SPECTRUM: i32 = 4;

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoDiscreteSpectrum { .. } => EXIT_NO_SPECTRUM,
        Error::Numerical(_) | Error::Sampler(_) | Error::Io(_) | Error::Csv(_) => EXIT_NUMERICAL,
        Error::InvalidParameter(_)
        | Error::NotClosed { .. }
        | Error::ChartDomain(_)
        | Error::DegenerateConfiguration(_)
        | Error::Domain(_)
        | Error::Json(_) => EXIT_USAGE,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidParameter(_) => "invalid_parameter",
        Error::NotClosed { .. } => "not_closed",
        Error::ChartDomain(_) => "chart_domain",
        Error::DegenerateConfiguration(_) => "degenerate_configuration",
        Error::Domain(_) => "domain",
        Error::NoDiscreteSpectrum { .. } => "no_discrete_spectrum",
        Error::Numerical(_) => "numerical",
        Error::Sampler(_) => "sampler",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
        Error::Csv(_) => "csv",
    }
}

/// Machine-readable error document.
pub fn error_json(e: &Error) -> Value {
    let mut body = json!({
        "kind": error_kind(e),
        "message": e.to_string(),
        "exit_code": exit_code(e),
    });
    if let Error::NoDiscreteSpectrum { alpha, alpha_crit } = e {
        body["alpha"] = json!(alpha);
        body["alpha_crit"] = json!(alpha_crit);
    }
    json!({ "tool": "isopoly", "version": crate::VERSION, "error": body })
}

#[derive(Clone, Debug, Serialize)]
pub struct Tolerances {
    pub geometry: f64,
    pub closure: f64,
    pub spectral_residual: f64,
    pub stationarity: f64,
    pub candidate_threshold: f64,
    pub reverify: f64,
    pub p2_bound: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            geometry: GEOMETRY_TOL,
            closure: CLOSURE_TOL,
            spectral_residual: RESIDUAL_TOL,
            stationarity: STATIONARITY_TOL,
            candidate_threshold: CANDIDATE_THRESHOLD,
            reverify: REVERIFY_TOL,
            p2_bound: P2_BOUND_TOL,
        }
    }
}

/// Reproduction data attached to every result.
#[derive(Clone, Debug, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: Option<u64>,
    pub threads: usize,
    pub tolerances: Tolerances,
    /// Fully resolved arguments (flags merged with `--config`).
    pub config: Value,
}

/// Failure of a command, before mapping to an exit code.
#[derive(Debug)]
pub(crate) enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Merges `overrides` into `args` by serialized field name.
pub(crate) fn apply_overrides<T: Serialize + DeserializeOwned>(
    args: &T,
    overrides: &Map<String, Value>,
) -> Result<T, Failure> {
    let mut value = serde_json::to_value(args).map_err(|e| Failure::Lib(e.into()))?;
    let fields = value
        .as_object_mut()
        .expect("argument structs serialize to objects");
    for (k, v) in overrides {
        if !fields.contains_key(k) {
            let mut known: Vec<&String> = fields.keys().collect();
            known.sort();
            return Err(Failure::Usage(format!(
                "unknown config key {k:?} (expected one of {known:?})"
            )));
        }
        fields.insert(k.clone(), v.clone());
    }
    serde_json::from_value(value).map_err(|e| Failure::Usage(format!("bad config value: {e}")))
}

fn read_config(path: &Path) -> Result<Map<String, Value>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
    match serde_json::from_str(&text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(Failure::Usage("config file must hold a JSON object".into())),
        Err(e) => Err(Failure::Usage(format!("config file is not valid JSON: {e}"))),
    }
}

/// Writes the result envelope to `path`, or to `stdout` when absent.
pub(crate) fn emit(
    stdout: &mut dyn Write,
    path: Option<&Path>,
    metadata: &Metadata,
    result: &impl Serialize,
) -> Result<(), Failure> {
    let doc = json!({ "metadata": metadata, "result": result });
    let text = serde_json::to_string_pretty(&doc).map_err(Error::from)? + "\n";
    match path {
        Some(p) => fs::write(p, text).map_err(Error::from)?,
        None => stdout.write_all(text.as_bytes()).map_err(Error::from)?,
    }
    Ok(())
}

/// Runs the tool on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let outcome = (|| -> Result<i32, Failure> {
        let mut overrides = match &cli.config {
            Some(p) => read_config(p)?,
            None => Map::new(),
        };
        let threads = match overrides.remove("threads") {
            Some(v) => Some(
                v.as_u64()
                    .ok_or_else(|| Failure::Usage("threads must be a positive integer".into()))?
                    as usize,
            ),
            None => cli.threads,
        };
        if threads == Some(0) {
            return Err(Failure::Usage("--threads must be positive".into()));
        }
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(t) = threads {
            builder = builder.num_threads(t);
        }
        let pool = builder
            .build()
            .map_err(|e| Failure::Usage(format!("cannot start thread pool: {e}")))?;
        let ctx = commands::Context {
            overrides,
            threads: pool.current_num_threads(),
        };
        // Output is buffered so that the worker pool never touches `stdout`.
        let mut buf = Vec::new();
        let code = pool.install(|| commands::dispatch(&cli.command, &ctx, &mut buf));
        stdout.write_all(&buf).map_err(Error::from)?;
        code
    })();
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            let doc = json!({
                "tool": "isopoly",
                "version": crate::VERSION,
                "error": {"kind": "usage", "message": msg, "exit_code": EXIT_USAGE},
            });
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&doc).unwrap_or_default());
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            let _ = writeln!(
                stdout,
                "{}",
                serde_json::to_string_pretty(&error_json(&e)).unwrap_or_default()
            );
            exit_code(&e)
        }
    }
}
