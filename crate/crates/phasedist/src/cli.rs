//! Command-line front end.
//!
//! Subcommands: `eval` (one point, one value), `grid` (rectangular grid to
//! a file), `verify` (the quadrature-oracle and limit-check battery),
//! `figures` (the twelve default semiconfined grids over `n`, `a`, `g`),
//! and `spectrum` (energy levels). Exit codes: 0 success, 1 a verification
//! check failed, 2 argument or domain error.
//!
//! All numeric output uses the shortest decimal representation that
//! round-trips the exact f64 value, so identical invocations produce
//! byte-identical files.

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::husimi::{husimi_hermite, husimi_point, PhasePoint};
use crate::limits::{hermite_limit_check, laguerre_to_hermite_check, reduction_check_g0};
use crate::model::{
    derive, energy_hermite, energy_semiconfined, ModelKind, OscillatorParams,
};
use crate::oracle::{
    cross_validation_check, gaussian_identity_check, hermite_table_integral_check,
    normalization_check, orthonormality_check, table_integral_check, QuadratureControl,
    VerificationReport,
};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "phasedist",
    version,
    about = "Husimi phase-space distributions of harmonic and semiconfined oscillators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the distribution at a single phase-space point.
    Eval(EvalArgs),
    /// Evaluate the distribution on a grid and export it.
    Grid(GridArgs),
    /// Run the verification battery (quadrature oracle + limit checks).
    Verify(VerifyArgs),
    /// Emit the twelve default figure grids (n in {0,1}, a in {0.5,2,12}, g in {0,1}).
    Figures(FiguresArgs),
    /// List energy levels.
    Spectrum(SpectrumArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Hermite,
    Semiconfined,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    /// Comma-separated rows (or one report line per check for `verify`).
    Csv,
    /// A single JSON document.
    Doc,
}

#[derive(Args)]
struct ModelArgs {
    /// Oscillator model.
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Semiconfinement length (wall at x = -a); required for the
    /// semiconfined model.
    #[arg(long)]
    a: Option<f64>,
    /// External homogeneous field strength.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    g: f64,
    /// Mass.
    #[arg(long, default_value_t = 1.0)]
    m0: f64,
    /// Angular frequency.
    #[arg(long, default_value_t = 1.0)]
    omega: f64,
    /// Reduced action.
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
}

impl ModelArgs {
    fn resolve(&self) -> Result<(ModelKind, OscillatorParams)> {
        match self.model {
            ModelArg::Hermite => {
                let a = self.a.unwrap_or(f64::INFINITY);
                Ok((
                    ModelKind::Hermite,
                    OscillatorParams::new(self.m0, self.omega, self.hbar, a, self.g)?,
                ))
            }
            ModelArg::Semiconfined => {
                let a = self.a.ok_or_else(|| {
                    Error::domain("the semiconfined model requires --a".to_string())
                })?;
                Ok((
                    ModelKind::Semiconfined,
                    OscillatorParams::semiconfined(self.m0, self.omega, self.hbar, a, self.g)?,
                ))
            }
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// State index.
    #[arg(long, default_value_t = 0)]
    n: u32,
    /// Position.
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    /// Momentum.
    #[arg(long, allow_negative_numbers = true)]
    p: f64,
}

#[derive(Args)]
struct GridArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// State index.
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
    x_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    x_max: f64,
    #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
    p_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    p_max: f64,
    /// Grid points along x.
    #[arg(long, default_value_t = 201)]
    x_steps: usize,
    /// Grid points along p.
    #[arg(long, default_value_t = 201)]
    p_steps: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Relative tolerance for the oracle quadratures.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip the slow full-matrix checks (cross-validation, normalization).
    #[arg(long)]
    quick: bool,
}

#[derive(Args)]
struct FiguresArgs {
    /// Directory for the twelve grid files.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Largest state index to list.
    #[arg(long, default_value_t = 10)]
    n_max: u32,
}

/// Parse `argv` (without the binary name), run the selected subcommand,
/// return the process exit code.
pub fn run(argv: &[String]) -> i32 {
    let full = std::iter::once("phasedist".to_string()).chain(argv.iter().cloned());
    let cli = match Cli::try_parse_from(full) {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{e}");
                return 0;
            }
            eprintln!("{}", first_line(&e.to_string()));
            return 2;
        }
    };
    let result = match cli.command {
        Command::Eval(args) => run_eval(&args),
        Command::Grid(args) => run_grid(&args),
        Command::Verify(args) => run_verify(&args),
        Command::Figures(args) => run_figures(&args),
        Command::Spectrum(args) => run_spectrum(&args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            2
        }
    }
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or(s)
}

fn run_eval(args: &EvalArgs) -> Result<i32> {
    let (model, params) = args.model.resolve()?;
    let w = husimi_point(
        model,
        args.n,
        PhasePoint {
            x: args.x,
            p: args.p,
        },
        &params,
    )?;
    println!("{}", w.value());
    Ok(0)
}

fn write_output(path: Option<&Path>, content: &str) -> Result<i32> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Error::domain(format!("cannot write {}: {e}", p.display())))?,
        None => print!("{content}"),
    }
    Ok(0)
}

fn run_grid(args: &GridArgs) -> Result<i32> {
    let (model, params) = args.model.resolve()?;
    let spec = GridSpec::new(
        args.x_min,
        args.x_max,
        args.p_min,
        args.p_max,
        args.x_steps,
        args.p_steps,
    )?;
    let grid = crate::husimi::husimi_grid(model, args.n, &spec, &params)?;
    let content = match args.format {
        FormatArg::Csv => grid.to_csv_string(),
        FormatArg::Doc => grid.to_json_string(),
    };
    write_output(args.out.as_deref(), &content)
}

/// The twelve default figure parameter sets: states 0 and 1, wall distances
/// 0.5 / 2 / 12, field off and on, all at m0 = omega = hbar = 1.
pub fn figure_parameter_sets() -> Vec<(u32, f64, f64)> {
    let mut sets = Vec::new();
    for &n in &[0u32, 1] {
        for &a in &[0.5, 2.0, 12.0] {
            for &g in &[0.0, 1.0] {
                sets.push((n, a, g));
            }
        }
    }
    sets
}

/// Default figure grid: p in [-5, 5]; x clipped one default cell inside the
/// wall, (-a, 5]; 201 points per axis.
pub fn figure_grid_spec(a: f64) -> GridSpec {
    let x_min = (-5.0f64).max(-a + 0.05);
    GridSpec::new(x_min, 5.0, -5.0, 5.0, 201, 201).expect("static bounds are valid")
}

fn run_figures(args: &FiguresArgs) -> Result<i32> {
    std::fs::create_dir_all(&args.out)
        .map_err(|e| Error::domain(format!("cannot create {}: {e}", args.out.display())))?;
    for (n, a, g) in figure_parameter_sets() {
        let params = OscillatorParams::semiconfined(1.0, 1.0, 1.0, a, g)?;
        let spec = figure_grid_spec(a);
        let grid = crate::husimi::husimi_grid(ModelKind::Semiconfined, n, &spec, &params)?;
        let (content, ext) = match args.format {
            FormatArg::Csv => (grid.to_csv_string(), "csv"),
            FormatArg::Doc => (grid.to_json_string(), "json"),
        };
        let path = args.out.join(format!("fig_n{n}_a{a}_g{g}.{ext}"));
        std::fs::write(&path, content)
            .map_err(|e| Error::domain(format!("cannot write {}: {e}", path.display())))?;
        println!("{}", path.display());
    }
    Ok(0)
}

fn run_spectrum(args: &SpectrumArgs) -> Result<i32> {
    let (model, params) = args.model.resolve()?;
    let mut out = String::from("n,energy\n");
    for n in 0..=args.n_max {
        let e = match model {
            ModelKind::Hermite => energy_hermite(n, &params),
            ModelKind::Semiconfined => energy_semiconfined(n, &params)?,
        };
        writeln!(out, "{n},{e}").expect("write to String cannot fail");
    }
    print!("{out}");
    Ok(0)
}

/// Fold a batch of per-point reports into one line.
fn aggregate(name: &str, reports: Vec<VerificationReport>) -> VerificationReport {
    let mut out = VerificationReport {
        check: name.to_string(),
        max_abs_error: 0.0,
        max_rel_error: 0.0,
        points_tested: 0,
        pass: true,
        notes: String::new(),
    };
    for r in reports {
        out.max_abs_error = out.max_abs_error.max(r.max_abs_error);
        out.max_rel_error = out.max_rel_error.max(r.max_rel_error);
        out.points_tested += r.points_tested;
        if !r.pass {
            out.pass = false;
            if !out.notes.is_empty() {
                out.notes.push_str("; ");
            }
            out.notes.push_str(&format!("failed: {}", r.check));
        }
    }
    if out.notes.is_empty() {
        out.notes = "all points within tolerance".to_string();
    }
    out
}

fn series_report(
    name: String,
    series: &crate::limits::ConvergenceSeries,
    extra_bound: Option<(f64, f64)>, // (last value must be below, scale)
) -> VerificationReport {
    let last = *series.sup_differences.last().unwrap_or(&f64::NAN);
    let mut pass = series.monotone;
    if let Some((bound, scale)) = extra_bound {
        pass = pass && last < bound * scale;
    }
    VerificationReport {
        check: name,
        max_abs_error: last,
        max_rel_error: last,
        points_tested: series.parameter_values.len(),
        pass,
        notes: format!(
            "sup differences {:?} over {:?}{}",
            series.sup_differences,
            series.parameter_values,
            if series.monotone {
                ", strictly decreasing"
            } else {
                ", NOT strictly decreasing"
            }
        ),
    }
}

/// The full verification battery. Deterministic: fixed parameter sets and a
/// fixed-seed generator for the scattered-point identities.
pub fn verification_battery(ctl: &QuadratureControl, quick: bool) -> Result<Vec<VerificationReport>> {
    let mut reports = Vec::new();

    // Gaussian integral identity
    let mut batch = Vec::new();
    for &p in &[0.5, 1.0, 2.0] {
        for q in [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(-2.0, 1.5),
            Complex64::new(0.0, 3.0),
        ] {
            batch.push(gaussian_identity_check(p, q, ctl)?);
        }
    }
    reports.push(aggregate("gaussian-identity (12 cases)", batch));

    // Hermite table integral
    let mut batch = Vec::new();
    for n in 0..=4 {
        for &x in &[-2.0, -1.0, 0.0, 1.0, 2.0] {
            batch.push(hermite_table_integral_check(n, x, ctl)?);
        }
    }
    reports.push(aggregate("hermite-table-integral (n <= 4)", batch));

    // Half-line table integral against the parabolic cylinder function
    for (alpha, q) in [
        (1.0, Complex64::new(0.0, 0.0)),
        (2.5, Complex64::new(1.0, 0.5)),
        (7.0, Complex64::new(-2.0, 1.0)),
        (145.0, Complex64::new(3.0, 0.0)),
    ] {
        reports.push(table_integral_check(alpha, q, ctl)?);
    }

    // Orthonormality, aggregated per parameter set
    for model in [ModelKind::Hermite, ModelKind::Semiconfined] {
        for &a in &[0.5, 2.0] {
            for &g in &[0.0, 1.0] {
                let params = match model {
                    ModelKind::Hermite => OscillatorParams::hermite(1.0, 1.0, 1.0, g)?,
                    ModelKind::Semiconfined => {
                        OscillatorParams::semiconfined(1.0, 1.0, 1.0, a, g)?
                    }
                };
                let mut batch = Vec::new();
                for m in 0..=3u32 {
                    for n in m..=3u32 {
                        batch.push(orthonormality_check(model, m, n, &params, ctl)?);
                    }
                }
                reports.push(aggregate(
                    &format!("orthonormality {model} a={a} g={g} (m,n <= 3)"),
                    batch,
                ));
                if model == ModelKind::Hermite {
                    break; // a is irrelevant without the wall
                }
            }
        }
    }

    // Reduction identity at g = 0, scattered points
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let a: f64 = [0.5, 2.0, 12.0][rng.gen_range(0..3)];
        let n = rng.gen_range(0..4u32);
        let pt = PhasePoint {
            x: rng.gen_range(-a.min(4.0)..4.0),
            p: rng.gen_range(-4.0..4.0),
        };
        let params = OscillatorParams::semiconfined(1.0, 1.0, 1.0, a, 0.0)?;
        worst = worst.max(reduction_check_g0(n, pt, &params)?);
    }
    reports.push(VerificationReport {
        check: "reduction-identity g=0 (100 points)".to_string(),
        max_abs_error: worst,
        max_rel_error: worst,
        points_tested: 100,
        pass: worst <= 1e-12,
        notes: "general-field path vs field-free path".to_string(),
    });

    // Hermite amplitude identity |Q|^2 route vs closed form
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let g = rng.gen_range(-1.0..1.5);
        let params = OscillatorParams::hermite(1.0, 1.0, 1.0, g)?;
        let dp = derive(&params)?;
        let n = rng.gen_range(0..5u32);
        let pt = PhasePoint {
            x: rng.gen_range(-4.0..4.0),
            p: rng.gen_range(-4.0..4.0),
        };
        let q = crate::husimi::q_amp_hermite(n, pt, &params, &dp);
        let via_q = if q.is_zero() {
            0.0
        } else {
            (dp.lambda0.ln() - (2.0 * PI * params.hbar).ln() - 0.5 * PI.ln() + q.log_abs_sq())
                .exp()
        };
        let closed = husimi_hermite(n, pt, &params, &dp).value();
        worst = worst.max((via_q - closed).abs() / closed.max(f64::MIN_POSITIVE));
    }
    reports.push(VerificationReport {
        check: "hermite-amplitude-identity (100 points)".to_string(),
        max_abs_error: worst,
        max_rel_error: worst,
        points_tested: 100,
        pass: worst <= 1e-12,
        notes: "|Q|^2 route vs closed form".to_string(),
    });

    // Limit relations
    let spec = GridSpec::new(-3.0, 3.0, -3.0, 3.0, 21, 21)?;
    let base = OscillatorParams::semiconfined(1.0, 1.0, 1.0, 1.0, 0.0)?;
    for &n in &[0u32, 1] {
        for &g in &[0.0, 1.0] {
            let series = hermite_limit_check(n, g, &[2.0, 4.0, 8.0, 12.0], &spec, &base)?;
            let bound = if n == 0 && g == 0.0 {
                Some((0.02, 1.0))
            } else {
                None
            };
            reports.push(series_report(
                format!("hermite-limit n={n} g={g} (a -> 2,4,8,12)"),
                &series,
                bound,
            ));
        }
    }
    for &(n, x) in &[(1u32, 0.5), (1, -1.0), (2, 0.5), (2, -1.0)] {
        let series = laguerre_to_hermite_check(n, x, &[1e2, 1e3, 1e4, 1e6]);
        let target = crate::specfun::hermite(n, x).abs()
            / (1..=n).map(f64::from).product::<f64>();
        reports.push(series_report(
            format!("laguerre-to-hermite n={n} x={x}"),
            &series,
            Some((1e-2, target)),
        ));
    }

    if !quick {
        // Cross-validation of the closed forms against the quadrature oracle
        let spec = GridSpec::new(-4.0, 4.0, -4.0, 4.0, 11, 11)?;
        for model in [ModelKind::Hermite, ModelKind::Semiconfined] {
            for n in 0..=3u32 {
                for &a in &[0.5, 2.0] {
                    for &g in &[0.0, 1.0] {
                        let params = match model {
                            ModelKind::Hermite => OscillatorParams::hermite(1.0, 1.0, 1.0, g)?,
                            ModelKind::Semiconfined => {
                                OscillatorParams::semiconfined(1.0, 1.0, 1.0, a, g)?
                            }
                        };
                        reports.push(cross_validation_check(model, n, &params, &spec, 1e-8, ctl)?);
                        if model == ModelKind::Hermite {
                            break;
                        }
                    }
                    if model == ModelKind::Hermite {
                        break;
                    }
                }
            }
        }
        // extreme wall distance, relaxed tolerance
        for n in 0..=1u32 {
            for &g in &[0.0, 1.0] {
                let params = OscillatorParams::semiconfined(1.0, 1.0, 1.0, 12.0, g)?;
                reports.push(cross_validation_check(
                    ModelKind::Semiconfined,
                    n,
                    &params,
                    &spec,
                    1e-6,
                    ctl,
                )?);
            }
        }

        // Normalization
        for &n in &[0u32, 1] {
            for &g in &[0.0, 1.0] {
                let params = OscillatorParams::hermite(1.0, 1.0, 1.0, g)?;
                reports.push(normalization_check(ModelKind::Hermite, n, &params, ctl)?);
                for &a in &[0.5, 2.0, 12.0] {
                    let params = OscillatorParams::semiconfined(1.0, 1.0, 1.0, a, g)?;
                    reports.push(normalization_check(ModelKind::Semiconfined, n, &params, ctl)?);
                }
            }
        }
    }

    reports.sort_by(|a, b| a.check.cmp(&b.check));
    Ok(reports)
}

fn run_verify(args: &VerifyArgs) -> Result<i32> {
    if !(args.tol > 0.0) {
        return Err(Error::domain(format!("--tol must be positive, got {}", args.tol)));
    }
    let ctl = QuadratureControl {
        rel_tol: args.tol,
        ..QuadratureControl::default()
    };
    let reports = verification_battery(&ctl, args.quick)?;
    let all_pass = reports.iter().all(|r| r.pass);
    let content = match args.format {
        FormatArg::Csv => {
            let mut s = String::new();
            for r in &reports {
                writeln!(s, "{r}").expect("write to String cannot fail");
            }
            s
        }
        FormatArg::Doc => {
            serde_json::to_string_pretty(&reports).expect("report serialization cannot fail")
                + "\n"
        }
    };
    write_output(args.out.as_deref(), &content)?;
    Ok(if all_pass { 0 } else { 1 })
}
