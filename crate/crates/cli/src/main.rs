use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use sympoly_core::domains::{in_gammatilde_with, in_gn_with, in_gtilde_with, jn_verdict, kn_verdict};
use sympoly_core::verify::verify_interpolation;
use sympoly_core::{
    interpolate_full, phi_hinf, run_suite, sample, shift, shift_verify, DerivativeData, DomainPoint, MembershipVerdict,
    SampleConfig, SampleMode, ShiftMap, ShiftMapId, Tolerances, Verdict, VerificationReport,
};

/// Membership tests, Schwarz interpolants and dimension shifts for the
/// symmetrized polydisc and its extension.
#[derive(Parser)]
#[command(name = "sympoly", version)]
struct Cli {
    /// Emit flat CSV instead of JSON
    #[arg(long, global = true)]
    csv: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test a point for membership in one of the domains
    Check {
        /// Point JSON (`-` for stdin)
        #[arg(long)]
        point: String,
        #[arg(long, value_enum, default_value_t = Domain::Gtilde)]
        domain: Domain,
        /// Exit with status 1 unless the verdict is Inside
        #[arg(long)]
        expect_inside: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Closed-form sup norm of Phi_j(., y) on the disc
    Norm {
        #[arg(long)]
        point: String,
        #[arg(long)]
        j: usize,
    },
    /// Build the interpolant with psi(0) = 0 and psi'(0) = x
    Interpolate {
        /// Derivative data JSON `{"n": .., "x": [[re, im], ..]}`
        #[arg(long)]
        x: String,
        /// Evaluate psi here (`re` or `re,im`)
        #[arg(long, value_parser = parse_cplx, allow_hyphen_values = true)]
        lambda: Option<Complex64>,
        /// Check membership and the lifted path on this many rays
        #[arg(long)]
        verify_grid: Option<usize>,
    },
    /// Apply a dimension-shift map
    Embed {
        #[arg(long, value_parser = parse_map)]
        map: ShiftMapId,
        /// Read the map on the closed domain
        #[arg(long)]
        closed: bool,
        #[arg(long = "in")]
        input: String,
        /// Write the image here instead of stdout
        #[arg(long)]
        out: Option<String>,
        /// Also sample the membership claims of the map with this many trials
        #[arg(long)]
        verify: Option<usize>,
        #[arg(long, env = "SYMPOLY_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Emit sample points as JSON lines
    Sample {
        #[arg(long, value_parser = parse_mode)]
        mode: SampleMode,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, env = "SYMPOLY_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-4)]
        eps: f64,
        #[arg(long, default_value_t = 0.99)]
        q_radius: f64,
        #[arg(long, default_value_t = 1.5)]
        box_scale: f64,
    },
    /// Run a property suite
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, env = "SYMPOLY_SEED", default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Domain {
    Gtilde,
    Gammatilde,
    Gn,
    Gamman,
    Jn,
    Kn,
}

#[derive(clap::Args)]
struct TolArgs {
    #[arg(long, default_value_t = 1e-9)]
    strict_band: f64,
    #[arg(long, default_value_t = 1e-12)]
    closed_tol: f64,
    #[arg(long, default_value_t = 1e-9)]
    root_tol: f64,
    #[arg(long, default_value_t = 1e-9)]
    proportion_tol: f64,
}

impl From<&TolArgs> for Tolerances {
    fn from(t: &TolArgs) -> Self {
        Tolerances {
            strict_band: t.strict_band,
            closed_tol: t.closed_tol,
            root_tol: t.root_tol,
            proportion_tol: t.proportion_tol,
        }
    }
}

fn parse_cplx(s: &str) -> Result<Complex64, String> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<&str> = t.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("`{p}`: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re` or `re,im`, got `{s}`")),
    }
}

fn parse_map(s: &str) -> Result<ShiftMapId, String> {
    s.parse().map_err(|e: sympoly_core::Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<SampleMode, String> {
    s.parse().map_err(|e: sympoly_core::Error| e.to_string())
}

enum Failure {
    /// Unreadable or malformed input.
    Input(String),
    /// A computation refused its input, or a check did not pass.
    Check(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Check(m) => f.write_str(m),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<sympoly_core::Error> for Failure {
    fn from(e: sympoly_core::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn read_text(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, Failure> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// One CSV record; absent fields are left empty.
#[derive(Serialize, Default)]
struct Row {
    n: usize,
    index: Option<usize>,
    lambda_re: Option<f64>,
    lambda_im: Option<f64>,
    value_re: Option<f64>,
    value_im: Option<f64>,
    margin: Option<f64>,
}

fn point_rows(y: &DomainPoint, lambda: Option<Complex64>, margin: Option<f64>) -> Vec<Row> {
    y.coords()
        .iter()
        .enumerate()
        .map(|(i, z)| Row {
            n: y.n(),
            index: Some(i + 1),
            lambda_re: lambda.map(|l| l.re),
            lambda_im: lambda.map(|l| l.im),
            value_re: Some(z.re),
            value_im: Some(z.im),
            margin,
        })
        .collect()
}

fn write_csv(out: &mut impl Write, rows: &[Row]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(["n", "index", "lambda_re", "lambda_im", "value_re", "value_im", "margin"])?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn report_lines(out: &mut impl Write, csv: bool, r: &VerificationReport) -> Result<(), Failure> {
    if csv {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["suite", "trials", "skipped", "failures", "max_residual", "passed"])?;
        w.write_record([
            r.suite.clone(),
            r.trials.to_string(),
            r.skipped.to_string(),
            r.failure_count.to_string(),
            r.max_residual.to_string(),
            r.passed.to_string(),
        ])?;
        w.flush()?;
    } else {
        writeln!(out, "{}", json(r))?;
    }
    Ok(())
}

fn check(out: &mut impl Write, csv: bool, point: &str, domain: Domain, expect_inside: bool, tol: &TolArgs) -> Outcome {
    let t = Tolerances::from(tol);
    let (n, v): (usize, MembershipVerdict) = if let Domain::Kn = domain {
        let value: serde_json::Value = read_json(point)?;
        let coords = if value.get("x").is_some() {
            let d: DerivativeData = serde_json::from_value(value).map_err(|e| Failure::Input(e.to_string()))?;
            d.x().to_vec()
        } else {
            let y: DomainPoint = serde_json::from_value(value).map_err(|e| Failure::Input(e.to_string()))?;
            y.coords()
        };
        (coords.len(), kn_verdict(&coords, t.proportion_tol))
    } else {
        let y: DomainPoint = read_json(point)?;
        let v = match domain {
            Domain::Gtilde => in_gtilde_with(&y, &t),
            Domain::Gammatilde => in_gammatilde_with(&y, &t),
            Domain::Gn => in_gn_with(&y, false, t.root_tol),
            Domain::Gamman => in_gn_with(&y, true, t.root_tol),
            Domain::Jn => jn_verdict(&y, t.proportion_tol),
            Domain::Kn => unreachable!(),
        };
        (y.n(), v)
    };
    if csv {
        let row = Row { n, index: Some(v.binding_j), margin: Some(v.margin), ..Row::default() };
        write_csv(out, &[row])?;
    } else {
        writeln!(out, "{}", json(&v))?;
    }
    Ok(!expect_inside || v.verdict == Verdict::Inside)
}

#[derive(Serialize)]
struct NormRecord {
    j: usize,
    value: f64,
}

fn norm(out: &mut impl Write, csv: bool, point: &str, j: usize) -> Outcome {
    let y: DomainPoint = read_json(point)?;
    let value = phi_hinf(j, &y)?;
    if csv {
        let row = Row { n: y.n(), index: Some(j), value_re: Some(value), value_im: Some(0.0), ..Row::default() };
        write_csv(out, &[row])?;
    } else {
        writeln!(out, "{}", json(&NormRecord { j, value }))?;
    }
    Ok(true)
}

fn interpolate(out: &mut impl Write, csv: bool, x: &str, lambda: Option<Complex64>, grid: Option<usize>) -> Outcome {
    let d: DerivativeData = read_json(x)?;
    let interp = interpolate_full(&d)?;
    let value = lambda.map(|l| interp.eval(l)).transpose()?;
    let report = match grid {
        Some(0) => return Err(Failure::Input("--verify-grid must be at least 1".into())),
        Some(g) => Some(verify_interpolation(&interp, g)),
        None => None,
    };
    if csv {
        let mut rows = Vec::new();
        if let (Some(l), Some(y)) = (lambda, &value) {
            rows = point_rows(y, Some(l), Some(sympoly_core::in_gtilde(y).margin));
        }
        write_csv(out, &rows)?;
    } else {
        writeln!(out, "{}", json(&interp.spec))?;
        if let Some(y) = &value {
            writeln!(out, "{}", json(y))?;
        }
        if let Some(r) = &report {
            writeln!(out, "{}", json(r))?;
        }
    }
    Ok(report.map_or(true, |r| r.passed))
}

#[allow(clippy::too_many_arguments)]
fn embed(
    out: &mut impl Write,
    csv: bool,
    id: ShiftMapId,
    closed: bool,
    input: &str,
    target: Option<&str>,
    verify: Option<usize>,
    seed: u64,
) -> Outcome {
    let map = ShiftMap { id, closed };
    let y: DomainPoint = read_json(input)?;
    let image = shift(&map, &y)?;
    match target {
        Some(path) => fs::write(path, json(&image) + "\n")?,
        None if csv => write_csv(out, &point_rows(&image, None, None))?,
        None => writeln!(out, "{}", json(&image))?,
    }
    if let Some(samples) = verify {
        let r = shift_verify(&map, y.n(), samples, seed)?;
        report_lines(out, csv, &r)?;
        return Ok(r.passed);
    }
    Ok(true)
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    let csv = cli.csv;
    match cli.command {
        Command::Check { point, domain, expect_inside, tol } => check(out, csv, &point, domain, expect_inside, &tol),
        Command::Norm { point, j } => norm(out, csv, &point, j),
        Command::Interpolate { x, lambda, verify_grid } => interpolate(out, csv, &x, lambda, verify_grid),
        Command::Embed { map, closed, input, out: target, verify, seed } => {
            embed(out, csv, map, closed, &input, target.as_deref(), verify, seed)
        }
        Command::Sample { mode, n, count, seed, eps, q_radius, box_scale } => {
            let cfg = SampleConfig { n, count, seed, mode, q_radius, eps, box_scale };
            let points = sample(&cfg).map_err(|e| Failure::Input(e.to_string()))?;
            if csv {
                let rows: Vec<Row> = points.iter().flat_map(|y| point_rows(y, None, None)).collect();
                write_csv(out, &rows)?;
            } else {
                for y in &points {
                    writeln!(out, "{}", json(y))?;
                }
            }
            Ok(true)
        }
        Command::Verify { suite, n, count, seed } => {
            let cfg = SampleConfig::new(n, count, seed, SampleMode::InsideBeta);
            let r = run_suite(&suite, &cfg).map_err(|e| Failure::Input(e.to_string()))?;
            report_lines(out, csv, &r)?;
            Ok(r.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    if let Err(e) = out.flush() {
        eprintln!("sympoly: {e}");
        return ExitCode::from(1);
    }
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ Failure::Input(_)) => {
            eprintln!("sympoly: {e}");
            ExitCode::from(2)
        }
        Err(e @ Failure::Check(_)) => {
            eprintln!("sympoly: {e}");
            ExitCode::from(1)
        }
    }
}
