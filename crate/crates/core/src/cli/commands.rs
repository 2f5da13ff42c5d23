//! Subcommand implementations.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use super::args::*;
use super::{apply_overrides, emit, Failure, Metadata, Tolerances, EXIT_OK, EXIT_VERIFY_FAILED};
use crate::geometry::{
    diagonal_sum, mean_diagonal_from_angles, random_equilateral, regular_polygon,
    vertices_to_angles, Dim, DiagonalReport, PolygonJson, VertexPolygon,
};
use crate::objective::Objective;
use crate::search::{maximize_objective, verify_p2_global, AnnealingOptions, SearchConfig};
use crate::spectral::{existence_check, ground_state, lambda_min_grid, SpectralResult};
use crate::stationarity::{
    closing_inequality_scan, inequality_sweep, local_max_verify, stationarity_report, sweep_rows,
    LocalMaxConfig,
};
use crate::table::write_csv;
use crate::Error;

pub(crate) struct Context {
    pub overrides: Map<String, Value>,
    pub threads: usize,
}

impl Context {
    fn resolve<T: Serialize + DeserializeOwned>(&self, args: &T) -> Result<T, Failure> {
        apply_overrides(args, &self.overrides)
    }

    fn metadata(&self, command: &str, seed: Option<u64>, args: &impl Serialize) -> Metadata {
        Metadata {
            tool: "isopoly",
            version: crate::VERSION,
            command: command.to_string(),
            seed,
            threads: self.threads,
            tolerances: Tolerances::default(),
            config: serde_json::to_value(args).unwrap_or(Value::Null),
        }
    }
}

pub(crate) fn dispatch(cmd: &Command, ctx: &Context, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Spectrum(a) => spectrum(&ctx.resolve(a)?, ctx, stdout),
        Command::Diagonals(a) => diagonals(&ctx.resolve(a)?, ctx, stdout),
        Command::Search(a) => search(&ctx.resolve(a)?, ctx, stdout),
        Command::Sample(a) => sample(&ctx.resolve(a)?, ctx, stdout),
        Command::Verify { suite } => match suite {
            Suite::Sweeps(a) => sweeps(&ctx.resolve(a)?, ctx, stdout),
            Suite::Local(a) => local(&ctx.resolve(a)?, ctx, stdout),
            Suite::P2(a) => p2(&ctx.resolve(a)?, ctx, stdout),
            Suite::Stationarity(a) => stationarity(&ctx.resolve(a)?, ctx, stdout),
        },
    }
}

fn dim(d: usize) -> Result<Dim, Failure> {
    Ok(Dim::try_from(d)?)
}

fn write_rows<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), Failure> {
    write_csv(rows, BufWriter::new(File::create(path).map_err(Error::from)?))?;
    Ok(())
}

fn resolve_polygon(a: &PolygonArgs) -> Result<VertexPolygon, Failure> {
    let d = dim(a.d)?;
    if let Some(src) = &a.polygon {
        let text = if src.trim_start().starts_with('{') {
            src.clone()
        } else {
            fs::read_to_string(src)
                .map_err(|e| Failure::Usage(format!("cannot read polygon {src}: {e}")))?
        };
        let json: PolygonJson = serde_json::from_str(&text)
            .map_err(|e| Failure::Usage(format!("malformed polygon JSON: {e}")))?;
        return Ok(json.to_polygon(Some(d))?);
    }
    let n = a
        .n
        .ok_or_else(|| Failure::Usage("give --polygon or --N".into()))?;
    Ok(match a.random {
        Some(seed) => random_equilateral(n, d, a.l, seed)?,
        None => regular_polygon(n, a.l, d)?,
    })
}

fn parse_grid(spec: &str) -> Result<(f64, f64, usize), Failure> {
    let bad = || Failure::Usage(format!("--grid expects kmin:kmax:count, got {spec:?}"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    Ok((
        parts[0].parse().map_err(|_| bad())?,
        parts[1].parse().map_err(|_| bad())?,
        parts[2].parse().map_err(|_| bad())?,
    ))
}

#[derive(Serialize)]
struct GridRow {
    kappa: f64,
    lambda_min: f64,
}

#[derive(Serialize)]
struct SpectrumOutput {
    #[serde(rename = "N")]
    n: usize,
    d: usize,
    alpha: f64,
    alpha_crit: Option<f64>,
    #[serde(flatten)]
    ground: SpectralResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<Vec<GridRow>>,
}

fn spectrum(a: &SpectrumArgs, ctx: &Context, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let p = resolve_polygon(&a.polygon)?;
    let grid = a.grid.as_deref().map(parse_grid).transpose()?;
    let existence = existence_check(p.points(), a.alpha)?;
    let ground = ground_state(p.points(), a.alpha)?;
    let mut rows = None;
    if let Some((kmin, kmax, count)) = grid {
        let g: Vec<GridRow> = lambda_min_grid(p.points(), a.alpha, kmin, kmax, count)?
            .into_iter()
            .map(|(kappa, lambda_min)| GridRow { kappa, lambda_min })
            .collect();
        match &a.csv {
            Some(path) => write_rows(path, &g)?,
            None => rows = Some(g),
        }
    }
    let out = SpectrumOutput {
        n: p.n(),
        d: p.dim().get(),
        alpha: a.alpha,
        alpha_crit: existence.alpha_crit,
        ground,
        grid: rows,
    };
    let meta = ctx.metadata("spectrum", a.polygon.random, a);
    emit(stdout, a.out.as_deref(), &meta, &out)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct DiagonalRow {
    #[serde(flatten)]
    report: DiagonalReport,
    /// Mean from the bending-angle chart (planar polygons).
    mean_from_angles: Option<f64>,
}

#[derive(Serialize)]
struct DiagonalsOutput {
    #[serde(rename = "N")]
    n: usize,
    d: usize,
    l: f64,
    diagonals: Vec<DiagonalRow>,
}

#[derive(Serialize)]
struct DiagonalCsvRow {
    m: usize,
    count: usize,
    total: f64,
    mean: f64,
    regular_total: f64,
    gap: f64,
}

fn diagonals(a: &DiagonalsArgs, ctx: &Context, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let p = resolve_polygon(&a.polygon)?;
    let orders: Vec<usize> = match a.m {
        Some(m) => vec![m],
        None => (2..=p.n() / 2).collect(),
    };
    let angles = match p.dim() {
        Dim::Two => Some(vertices_to_angles(&p)?),
        Dim::Three => vertices_to_angles(&p).ok(),
    };
    let mut rows = Vec::new();
    for m in orders {
        let report = diagonal_sum(&p, m)?;
        let mean_from_angles = match &angles {
            Some(ang) => Some(mean_diagonal_from_angles(ang, m)?),
            None => None,
        };
        rows.push(DiagonalRow {
            report,
            mean_from_angles,
        });
    }
    if let Some(path) = &a.csv {
        let csv: Vec<DiagonalCsvRow> = rows
            .iter()
            .map(|r| DiagonalCsvRow {
                m: r.report.m,
                count: r.report.count,
                total: r.report.total,
                mean: r.report.mean,
                regular_total: r.report.regular_total,
                gap: r.report.gap,
            })
            .collect();
        write_rows(path, &csv)?;
    }
    let out = DiagonalsOutput {
        n: p.n(),
        d: p.dim().get(),
        l: p.edge(),
        diagonals: rows,
    };
    let meta = ctx.metadata("diagonals", a.polygon.random, a);
    emit(stdout, a.out.as_deref(), &meta, &out)?;
    Ok(EXIT_OK)
}

fn verdict(passed: bool) -> i32 {
    if passed {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn sweeps(a: &SweepArgs, ctx: &Context, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let summary = inequality_sweep(a.n_max)?;
    let closing = closing_inequality_scan(a.n_max, a.scan_grid)?;
    if let Some(path) = &a.csv {
        let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path).map_err(Error::from)?));
        for n in 4..=a.n_max {
            for row in sweep_rows(n)? {
                w.serialize(row).map_err(Error::from)?;
            }
        }
        w.flush().map_err(Error::from)?;
    }
    let out = serde_json::json!({ "sweep": summary, "closing_scan": closing });
    let meta = ctx.metadata("verify sweeps", None, a);
    emit(stdout, a.out.as_deref(), &meta, &out)?;
    Ok(verdict(summary.passed))
}

fn local(a: &LocalArgs, ctx: &Context, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let objective = match (&a.objective, a.m) {
        (Some(name), m) => parse_objective(name, m, a.alpha)?,
        (None, Some(m)) => Objective::DiagonalSum { m },
        (None, None) => match a.alpha {
            Some(alpha) => Objective::GroundEnergy { alpha },
            None => return Err(Failure::Usage("give --m, --alpha or --objective".into())),
        },
    };
    let amplitudes = a
        .amplitudes
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::Usage(format!("bad --amplitudes {:?}", a.amplitudes)))?;
    let cfg = LocalMaxConfig {
        n: a.n,
        dim: dim(a.d)?,
        edge: a.l,
        objective,
        amplitudes,
        trials: a.trials,
        seed: a.seed,
    };
    let report = local_max_verify(&cfg)?;
    if let Some(path) = &a.csv {
        write_rows(path, &report.rows())?;
    }
    let meta = ctx.metadata("verify local", Some(a.seed), a);
    emit(stdout, a.out.as_deref(), &meta, &report)?;
    Ok(verdict(report.passed))
}

fn p2(a: &P2Args, ctx: &Context, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let report = verify_p2_global(a.n, dim(a.d)?, a.samples, a.seed, a.l)?;
    let meta = ctx.metadata("verify p2", Some(a.seed), a);
    emit(stdout, a.out.as_deref(), &meta, &report)?;
    Ok(verdict(report.passed != Some(false)))
}

fn stationarity(a: &StationarityArgs, ctx: &Context, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let d = dim(a.d)?;
    let orders: Vec<usize> = match a.m {
        Some(m) => vec![m],
        None => (2..=a.n / 2).collect(),
    };
    if orders.is_empty() {
        return Err(Failure::Usage(format!("N = {} has no diagonals", a.n)));
    }
    let reports = orders
        .into_iter()
        .map(|m| stationarity_report(a.n, m, d, a.l))
        .collect::<crate::Result<Vec<_>>>()?;
    let passed = reports.iter().all(|r| r.passed);
    let meta = ctx.metadata("verify stationarity", None, a);
    emit(stdout, a.out.as_deref(), &meta, &reports)?;
    Ok(verdict(passed))
}

/// Parses an objective name; a bare `D` or `M` takes its order from `m`.
fn parse_objective(name: &str, m: Option<usize>, alpha: Option<f64>) -> Result<Objective, Failure> {
    let full = match (name, m) {
        ("D" | "M", Some(m)) => format!("{name}{m}"),
        ("D" | "M", None) => return Err(Failure::Usage(format!("objective {name} needs --m"))),
        _ => name.to_string(),
    };
    Ok(Objective::parse(&full, alpha)?)
}

fn search(a: &SearchArgs, ctx: &Context, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let objective = parse_objective(&a.objective, a.m, a.alpha)?;
    let cfg = SearchConfig {
        n: a.n,
        dim: dim(a.d)?,
        edge: a.l,
        objective,
        restarts: a.restarts,
        budget: a.budget,
        seed: a.seed,
        annealing: AnnealingOptions {
            enabled: !a.no_anneal,
            temperature: a.temperature,
            cooling: a.cooling,
            epochs: a.epochs,
            steps_per_epoch: a.steps_per_epoch,
            step: a.anneal_step,
        },
        gradient_tol: SearchConfig::new(a.n, dim(a.d)?, objective).gradient_tol,
    };
    let outcome = maximize_objective(&cfg)?;
    if let Some(path) = &a.csv {
        write_rows(path, &outcome.trace_rows())?;
    }
    let meta = ctx.metadata("search", Some(a.seed), a);
    emit(stdout, a.out.as_deref(), &meta, &outcome)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SampleOutput {
    polygon: PolygonJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    angles: Option<PolygonJson>,
}

fn sample(a: &SampleArgs, ctx: &Context, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let d = dim(a.d)?;
    if a.angles && d != Dim::Two {
        return Err(Failure::Usage("--angles needs --d 2".into()));
    }
    let polygons = (0..a.count)
        .map(|i| {
            let p = random_equilateral(a.n, d, a.l, crate::seeds::derive(a.seed, i as u64))?;
            let angles = if a.angles {
                Some(vertices_to_angles(&p)?.to_json())
            } else {
                None
            };
            Ok(SampleOutput {
                polygon: p.to_json(),
                angles,
            })
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let meta = ctx.metadata("sample", Some(a.seed), a);
    emit(stdout, a.out.as_deref(), &meta, &polygons)?;
    Ok(EXIT_OK)
}
