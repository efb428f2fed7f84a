//! Command-line front end: emits bifurcation sets, Landau coefficients,
//! buckled shapes, and area–pressure data as CSV or JSON.
//!
//! Exit codes: 0 success, 1 verification/numerical failure, 2 usage
//! error. Config precedence: command-line flags > `--config` key=value
//! file > built-in defaults; unknown config keys are rejected.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use elastic_ring::bvp::{self, AreaSource};
use elastic_ring::engine::{reduce, EngineConfig};
use elastic_ring::error::{Result, RingError};
use elastic_ring::format::{round12, sig12};
use elastic_ring::landau::{self, CoeffSource, LandauPolynomial, DETERMINACY_TOL};
use elastic_ring::params::ModelParams;
use elastic_ring::ring::{kernel_mode, ring_landau, RingFunctional};
use elastic_ring::shapes;
use elastic_ring::verify;

#[derive(Parser)]
#[command(
    name = "elastic-ring",
    version,
    about = "Bifurcation analysis of a pressurized extensible elastic ring"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Flat key=value config file supplying defaults for the command's
    /// options (command-line flags win).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}' (csv|json)")),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Critical curves mu2_crit(mu1) for the requested modes, with
    /// first/second-order labels along n = 2.
    BifurcationSet {
        #[arg(long)]
        mu1_min: Option<f64>,
        #[arg(long)]
        mu1_max: Option<f64>,
        #[arg(long)]
        count: Option<usize>,
        /// Comma-separated mode list, e.g. "2,3,4".
        #[arg(long)]
        modes: Option<String>,
    },
    /// Landau coefficients (a2, a4, a6) at one parameter point.
    Landau {
        #[arg(long)]
        mu1: Option<f64>,
        #[arg(long)]
        mu2: Option<f64>,
        /// closed | engine | both
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        num_modes: Option<usize>,
    },
    /// The tricritical point separating first- and second-order regimes.
    Tricritical,
    /// Post-buckling centerline profile at (mu1, alpha).
    Shape {
        #[arg(long)]
        mu1: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Equilibrium-selected enclosed area against pressure at fixed mu2.
    AreaCurve {
        #[arg(long)]
        mu2: Option<f64>,
        #[arg(long)]
        mu1_min: Option<f64>,
        #[arg(long)]
        mu1_max: Option<f64>,
        #[arg(long)]
        count: Option<usize>,
        /// asymptotic | bvp | both
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        num_modes: Option<usize>,
    },
    /// Full numerical splitting-lemma reduction at one parameter point.
    Reduce {
        #[arg(long)]
        mu1: Option<f64>,
        #[arg(long)]
        mu2: Option<f64>,
        #[arg(long)]
        num_modes: Option<usize>,
        #[arg(long)]
        alpha_max: Option<f64>,
        /// Grid points per sign of alpha.
        #[arg(long)]
        points: Option<usize>,
    },
    /// Run the full oracle suite and report pass/fail per check.
    Verify {
        /// Also list per-check tolerances and details.
        #[arg(long)]
        verbose: bool,
        #[arg(long)]
        num_modes: Option<usize>,
    },
}

/// Key=value config file contents; consumed key by key so leftovers can
/// be rejected.
struct ConfigMap(BTreeMap<String, String>);

impl ConfigMap {
    fn load(path: Option<&PathBuf>) -> Result<Self> {
        let mut map = BTreeMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path).map_err(|source| RingError::Io {
                path: path.display().to_string(),
                source,
            })?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    RingError::Usage(format!(
                        "config line {} is not key=value: '{line}'",
                        lineno + 1
                    ))
                })?;
                map.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(Self(map))
    }

    /// Value for `key` parsed as T, removing it from the map.
    fn take<T: FromStr>(&mut self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.0.remove(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|e| {
                RingError::Usage(format!("config key '{key}': cannot parse '{raw}': {e}"))
            }),
        }
    }

    fn finish(self) -> Result<()> {
        if let Some(key) = self.0.keys().next() {
            return Err(RingError::Usage(format!("unknown config key '{key}'")));
        }
        Ok(())
    }
}

fn require<T>(value: Option<T>, key: &str) -> Result<T> {
    value.ok_or_else(|| RingError::Usage(format!("missing required option --{key}")))
}

/// A rendered table plus its JSON form.
struct Report {
    /// Echo of the resolved configuration.
    config: Value,
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    results: Value,
}

fn provenance() -> Value {
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "tolerances": {
            "newton_gtol": EngineConfig::default().gtol,
            "bvp_gtol": bvp::GTOL,
            "kernel_rank_tol": EngineConfig::default().rank_tol,
            "determinacy_tol": DETERMINACY_TOL,
        },
    })
}

/// Round every float in a JSON tree to the 12 significant digits the
/// CSV rendering uses, including values that arrived via struct
/// serialization rather than [`num`].
fn round_json(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if let Some(x) = n.as_f64() {
                if n.as_i64().is_none() && n.as_u64().is_none() {
                    if let Some(rounded) = serde_json::Number::from_f64(round12(x)) {
                        *value = Value::Number(rounded);
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = report.headers.join(",");
            out.push('\n');
            for row in &report.rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let mut doc = json!({
                "config": report.config,
                "results": report.results,
                "provenance": provenance(),
            });
            round_json(&mut doc);
            let mut text = serde_json::to_string_pretty(&doc).expect("JSON serialization");
            text.push('\n');
            text
        }
    }
}

fn num(x: f64) -> Value {
    json!(round12(x))
}

fn poly_row(source: &str, mu1: f64, mu2: f64, p: &LandauPolynomial) -> Vec<String> {
    vec![
        source.to_string(),
        sig12(mu1),
        sig12(mu2),
        sig12(p.a2),
        sig12(p.a4),
        sig12(p.a6),
        p.determinacy.to_string(),
    ]
}

fn poly_json(p: &LandauPolynomial) -> Value {
    json!({
        "a2": num(p.a2),
        "a4": num(p.a4),
        "a6": num(p.a6),
        "determinacy": p.determinacy,
        "source": match p.source { CoeffSource::ClosedForm => "closed", CoeffSource::EngineFit => "engine" },
    })
}

fn cmd_bifurcation_set(mu1_min: f64, mu1_max: f64, count: usize, modes: &[u32]) -> Result<Report> {
    if count < 2 || mu1_min >= mu1_max || mu1_min <= 0.0 {
        return Err(RingError::Usage(format!(
            "need 0 < mu1-min < mu1-max and count >= 2, got [{mu1_min}, {mu1_max}] x {count}"
        )));
    }
    let (tri_mu1, _) = landau::tricritical_point();
    let mut rows = Vec::new();
    let mut results = Vec::new();
    for &n in modes {
        if n < 2 {
            return Err(RingError::Usage(format!("modes must be >= 2, got {n}")));
        }
        let window = (n * n - 1) as f64;
        for i in 0..count {
            let mu1 = mu1_min + (mu1_max - mu1_min) * i as f64 / (count - 1) as f64;
            if mu1 >= window {
                continue;
            }
            let mu2 = landau::critical_mu2(n, mu1)?;
            let label = if n == 2 {
                let a4 = landau::coeff_a4(mu1, mu2);
                // The a4 = 0 crossing lands between grid points; label
                // the sample nearest the tricritical μ1 explicitly.
                let spacing = (mu1_max - mu1_min) / (count - 1) as f64;
                if (mu1 - tri_mu1).abs() <= 0.5 * spacing {
                    "tricritical"
                } else if a4 > 0.0 {
                    "second-order"
                } else {
                    "first-order"
                }
            } else {
                "unclassified"
            };
            rows.push(vec![
                n.to_string(),
                sig12(mu1),
                sig12(mu2),
                label.to_string(),
            ]);
            results.push(json!({
                "n": n,
                "mu1": num(mu1),
                "mu2_critical": num(mu2),
                "branch_label": label,
            }));
        }
    }
    Ok(Report {
        config: json!({
            "command": "bifurcation-set",
            "mu1_min": num(mu1_min),
            "mu1_max": num(mu1_max),
            "count": count,
            "modes": modes,
        }),
        headers: vec!["n", "mu1", "mu2_critical", "branch_label"],
        rows,
        results: Value::Array(results),
    })
}

fn cmd_landau(mu1: f64, mu2: f64, source: &str, num_modes: usize) -> Result<Report> {
    let params = ModelParams::new(mu1, mu2)?;
    let mut rows = Vec::new();
    let mut results = Vec::new();
    if source == "closed" || source == "both" {
        let p = landau::closed_form(mu1, mu2);
        rows.push(poly_row("closed", mu1, mu2, &p));
        results.push(poly_json(&p));
    }
    if source == "engine" || source == "both" {
        let red = ring_landau(&params, num_modes)?;
        rows.push(poly_row("engine", mu1, mu2, &red.polynomial));
        results.push(poly_json(&red.polynomial));
    }
    if rows.is_empty() {
        return Err(RingError::Usage(format!(
            "unknown source '{source}' (closed|engine|both)"
        )));
    }
    Ok(Report {
        config: json!({
            "command": "landau",
            "mu1": num(mu1),
            "mu2": num(mu2),
            "source": source,
            "num_modes": num_modes,
        }),
        headers: vec!["source", "mu1", "mu2", "a2", "a4", "a6", "determinacy"],
        rows,
        results: Value::Array(results),
    })
}

fn cmd_tricritical() -> Result<Report> {
    let (mu1, mu2) = landau::tricritical_point();
    let a6 = landau::coeff_a6(mu1, mu2);
    Ok(Report {
        config: json!({ "command": "tricritical" }),
        headers: vec!["mu1", "mu2", "a6"],
        rows: vec![vec![sig12(mu1), sig12(mu2), sig12(a6)]],
        results: json!({ "mu1": num(mu1), "mu2": num(mu2), "a6": num(a6) }),
    })
}

fn cmd_shape(mu1: f64, alpha: f64, samples: usize) -> Result<Report> {
    let state = shapes::asymptotic_state(mu1, alpha)?;
    let profile = shapes::to_cartesian(&state, samples)?;
    let area_formula = shapes::enclosed_area(mu1, alpha, 1.0);
    let rows = profile
        .samples
        .iter()
        .map(|&(s, x, y)| vec![sig12(s), sig12(x), sig12(y)])
        .collect();
    let samples_json: Vec<Value> = profile
        .samples
        .iter()
        .map(|&(s, x, y)| json!([num(s), num(x), num(y)]))
        .collect();
    Ok(Report {
        config: json!({
            "command": "shape",
            "mu1": num(mu1),
            "alpha": num(alpha),
            "samples": samples,
        }),
        headers: vec!["S", "x", "y"],
        rows,
        results: json!({
            "samples": samples_json,
            "closed": profile.closed,
            "area_polygon": num(profile.area),
            "area_formula": num(area_formula),
        }),
    })
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(sig12).unwrap_or_default()
}

fn opt_num(v: Option<f64>) -> Value {
    v.map(num).unwrap_or(Value::Null)
}

fn cmd_area_curve(
    mu2: f64,
    mu1_min: f64,
    mu1_max: f64,
    count: usize,
    source: &str,
    num_modes: usize,
) -> Result<Report> {
    let source_enum = match source {
        "asymptotic" => AreaSource::Asymptotic,
        "bvp" => AreaSource::Bvp,
        "both" => AreaSource::Both,
        other => {
            return Err(RingError::Usage(format!(
                "unknown source '{other}' (asymptotic|bvp|both)"
            )))
        }
    };
    let curve = bvp::area_pressure_curve(mu2, mu1_min, mu1_max, count, source_enum, num_modes)?;
    let mut rows = Vec::new();
    let mut results = Vec::new();
    for pt in &curve.points {
        rows.push(vec![
            sig12(pt.mu1),
            sig12(pt.area_circular),
            sig12(pt.area_stable),
            sig12(pt.alpha_stable),
            opt_cell(pt.area_metastable),
            opt_cell(pt.area_bvp),
            String::new(),
        ]);
        results.push(json!({
            "mu1": num(pt.mu1),
            "area_circular": num(pt.area_circular),
            "area_stable": num(pt.area_stable),
            "alpha_stable": num(pt.alpha_stable),
            "area_metastable": opt_num(pt.area_metastable),
            "area_bvp": opt_num(pt.area_bvp),
        }));
    }
    if let Some((mu1_j, before, after)) = curve.jump {
        rows.push(vec![
            sig12(mu1_j),
            String::new(),
            sig12(after),
            String::new(),
            sig12(before),
            String::new(),
            "maxwell-jump".to_string(),
        ]);
    }
    Ok(Report {
        config: json!({
            "command": "area-curve",
            "mu2": num(mu2),
            "mu1_min": num(mu1_min),
            "mu1_max": num(mu1_max),
            "count": count,
            "source": source,
            "num_modes": num_modes,
        }),
        headers: vec![
            "mu1",
            "area_circular",
            "area_stable",
            "alpha_stable",
            "area_metastable",
            "area_bvp",
            "annotation",
        ],
        rows,
        results: json!({
            "transition": serde_json::to_value(curve.transition).expect("report serialization"),
            "maxwell_jump": curve.jump.map(|(m, b, a)| json!({
                "mu1": num(m), "area_before": num(b), "area_after": num(a),
            })).unwrap_or(Value::Null),
            "points": results,
        }),
    })
}

fn cmd_reduce(
    mu1: f64,
    mu2: f64,
    num_modes: usize,
    alpha_max: f64,
    points: usize,
) -> Result<Report> {
    if alpha_max <= 0.0 || alpha_max.is_nan() || points < 3 {
        return Err(RingError::Usage(format!(
            "need alpha-max > 0 and points >= 3, got {alpha_max} x {points}"
        )));
    }
    let params = ModelParams::new(mu1, mu2)?;
    let f = RingFunctional::new(params, num_modes);
    let v = kernel_mode(mu1, &f.basis);
    let mut alphas = vec![0.0];
    for i in 1..=points {
        let a = alpha_max * i as f64 / points as f64;
        alphas.push(a);
        alphas.push(-a);
    }
    let cfg = EngineConfig::default();
    let direct = reduce(&f, &v, &alphas, &cfg)?;
    let jets = ring_landau(&params, num_modes)?;
    let rows = direct
        .g_samples
        .iter()
        .map(|&(a, g)| vec![sig12(a), sig12(g)])
        .collect();
    let g_json: Vec<Value> = direct
        .g_samples
        .iter()
        .map(|&(a, g)| json!([num(a), num(g)]))
        .collect();
    Ok(Report {
        config: json!({
            "command": "reduce",
            "mu1": num(mu1),
            "mu2": num(mu2),
            "num_modes": num_modes,
            "alpha_max": num(alpha_max),
            "points": points,
        }),
        headers: vec!["alpha", "g"],
        rows,
        results: json!({
            "kernel_dimension": 1,
            "g_samples": g_json,
            "fitted_direct": poly_json(&direct.fitted),
            "fitted_jets": poly_json(&jets.polynomial),
            "fit_residual": num(direct.fit_residual),
            "odd_coefficients": direct.odd_coeffs.iter().map(|&c| num(c)).collect::<Vec<_>>(),
        }),
    })
}

fn cmd_verify(verbose: bool, num_modes: usize) -> Result<(Report, bool)> {
    let checks = verify::run_suite(num_modes);
    let passed = verify::all_passed(&checks);
    let mut rows = Vec::new();
    for c in &checks {
        let mut row = vec![
            c.name.to_string(),
            if c.passed { "pass" } else { "fail" }.to_string(),
            sig12(c.max_deviation),
        ];
        if verbose {
            row.push(sig12(c.tolerance));
            row.push(c.detail.replace(',', ";"));
        }
        rows.push(row);
    }
    let headers = if verbose {
        vec!["check", "status", "max_deviation", "tolerance", "detail"]
    } else {
        vec!["check", "status", "max_deviation"]
    };
    let results = serde_json::to_value(&checks).expect("report serialization");
    Ok((
        Report {
            config: json!({
                "command": "verify",
                "verbose": verbose,
                "num_modes": num_modes,
            }),
            headers,
            rows,
            results,
        },
        passed,
    ))
}

fn parse_modes(raw: &str) -> Result<Vec<u32>> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|e| RingError::Usage(format!("bad mode '{s}': {e}")))
        })
        .collect()
}

/// Resolve options (flags > config file > defaults), run the command,
/// and emit the report. Returns the exit code.
fn run(cli: Cli) -> Result<ExitCode> {
    let mut cfg = ConfigMap::load(cli.config.as_ref())?;
    let format = match cli.format {
        Some(f) => f,
        None => cfg.take::<Format>("format")?.unwrap_or(Format::Csv),
    };
    let (report, ok) = match cli.command {
        Command::BifurcationSet {
            mu1_min,
            mu1_max,
            count,
            modes,
        } => {
            let mu1_min = mu1_min.or(cfg.take("mu1-min")?).unwrap_or(0.05);
            let mu1_max = mu1_max.or(cfg.take("mu1-max")?).unwrap_or(2.95);
            let count = count.or(cfg.take("count")?).unwrap_or(60);
            let modes = match modes.or(cfg.take("modes")?) {
                Some(raw) => parse_modes(&raw)?,
                None => vec![2],
            };
            cfg.finish()?;
            (cmd_bifurcation_set(mu1_min, mu1_max, count, &modes)?, true)
        }
        Command::Landau {
            mu1,
            mu2,
            source,
            num_modes,
        } => {
            let mu1 = require(mu1.or(cfg.take("mu1")?), "mu1")?;
            let mu2 = require(mu2.or(cfg.take("mu2")?), "mu2")?;
            let source = source
                .or(cfg.take("source")?)
                .unwrap_or_else(|| "closed".to_string());
            let num_modes = num_modes.or(cfg.take("num-modes")?).unwrap_or(12);
            cfg.finish()?;
            (cmd_landau(mu1, mu2, &source, num_modes)?, true)
        }
        Command::Tricritical => {
            cfg.finish()?;
            (cmd_tricritical()?, true)
        }
        Command::Shape {
            mu1,
            alpha,
            samples,
        } => {
            let mu1 = require(mu1.or(cfg.take("mu1")?), "mu1")?;
            let alpha = require(alpha.or(cfg.take("alpha")?), "alpha")?;
            let samples = samples.or(cfg.take("samples")?).unwrap_or(256);
            cfg.finish()?;
            (cmd_shape(mu1, alpha, samples)?, true)
        }
        Command::AreaCurve {
            mu2,
            mu1_min,
            mu1_max,
            count,
            source,
            num_modes,
        } => {
            let mu2 = require(mu2.or(cfg.take("mu2")?), "mu2")?;
            let mu1_min = require(mu1_min.or(cfg.take("mu1-min")?), "mu1-min")?;
            let mu1_max = require(mu1_max.or(cfg.take("mu1-max")?), "mu1-max")?;
            let count = count.or(cfg.take("count")?).unwrap_or(40);
            let source = source
                .or(cfg.take("source")?)
                .unwrap_or_else(|| "asymptotic".to_string());
            let num_modes = num_modes.or(cfg.take("num-modes")?).unwrap_or(12);
            cfg.finish()?;
            (
                cmd_area_curve(mu2, mu1_min, mu1_max, count, &source, num_modes)?,
                true,
            )
        }
        Command::Reduce {
            mu1,
            mu2,
            num_modes,
            alpha_max,
            points,
        } => {
            let mu1 = require(mu1.or(cfg.take("mu1")?), "mu1")?;
            let mu2 = require(mu2.or(cfg.take("mu2")?), "mu2")?;
            let num_modes = num_modes.or(cfg.take("num-modes")?).unwrap_or(12);
            let alpha_max = alpha_max.or(cfg.take("alpha-max")?).unwrap_or(0.02);
            let points = points.or(cfg.take("points")?).unwrap_or(5);
            cfg.finish()?;
            (cmd_reduce(mu1, mu2, num_modes, alpha_max, points)?, true)
        }
        Command::Verify { verbose, num_modes } => {
            let num_modes = num_modes.or(cfg.take("num-modes")?).unwrap_or(12);
            cfg.finish()?;
            cmd_verify(verbose, num_modes)?
        }
    };
    let text = render(&report, format);
    match &cli.output {
        Some(path) => std::fs::write(path, &text).map_err(|source| RingError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => print!("{text}"),
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                RingError::Usage(_) | RingError::InvalidParameter(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
