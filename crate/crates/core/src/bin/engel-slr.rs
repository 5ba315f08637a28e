use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use engel_slr::geodesics::{classify, EllipticMethod, Geodesic, GeodesicCase, SampledCurve};
use engel_slr::hamiltonian::{integrate_normal, Branch, Covector, PhaseState};
use engel_slr::io::{curve_metadata, Format, Table};
use engel_slr::verify::{self, Suite, Tolerances};
use engel_slr::EngelError;

const EXIT_USAGE: u8 = 1;
const EXIT_WRONG_CASE: u8 = 2;
const EXIT_DIVERGENCE: u8 = 3;
const EXIT_VERIFY: u8 = 4;
const EXIT_IO: u8 = 5;

#[derive(Parser, Debug)]
#[command(name = "engel-slr", version, about = "Sub-Lorentzian geodesics of the Engel group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample the closed-form geodesic from the origin.
    Geodesic(GeodesicArgs),
    /// Integrate the normal Hamiltonian system numerically.
    Integrate(IntegrateArgs),
    /// Run the self-check battery and print a JSON report.
    Verify(VerifyArgs),
    /// Write (x1, x2) projections for built-in or custom covectors.
    PlotData(PlotArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Initial costate xi1,xi2,xi3,xi4.
    #[arg(long, value_parser = parse_xi, allow_hyphen_values = true)]
    xi: [f64; 4],
    #[arg(long, default_value_t = 1.0, value_parser = parse_positive)]
    smax: f64,
    #[arg(long, default_value_t = 0.01, value_parser = parse_positive)]
    step: f64,
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GeodesicArgs {
    #[command(flatten)]
    common: Common,
    /// Abnormal multiplier (xi0 = 0) instead of normal (xi0 = -1).
    #[arg(long)]
    abnormal: bool,
    /// Branch of the space-like abnormal extremal.
    #[arg(long, value_enum, default_value_t = BranchArg::Plus)]
    branch: BranchArg,
    /// Fail unless the covector belongs to this case.
    #[arg(long, value_enum)]
    case: Option<CaseArg>,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
}

#[derive(Args, Debug)]
struct IntegrateArgs {
    #[command(flatten)]
    common: Common,
    /// Dormand-Prince 5(4) with step control instead of fixed-step RK4.
    #[arg(long)]
    adaptive: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Restrict to one or more suites.
    #[arg(long, value_parser = parse_suite)]
    suite: Vec<Suite>,
    /// Override a tolerance, e.g. oracle=1e-9.
    #[arg(long, value_name = "KEY=VAL")]
    tolerance: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PlotArgs {
    /// Built-in parameter set.
    #[arg(value_enum)]
    set: Option<FigureSet>,
    #[arg(long, value_parser = parse_xi, allow_hyphen_values = true)]
    xi: Option<[f64; 4]>,
    #[arg(long, default_value_t = 2.0, value_parser = parse_positive)]
    smax: f64,
    #[arg(long, default_value_t = 0.01, value_parser = parse_positive)]
    step: f64,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BranchArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Auto,
    ClosedForm,
    Quadrature,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CaseArg {
    LightLike,
    TimelikeFlat,
    TimelikeHyperbolic,
    TimelikeElliptic,
    AbnormalSpacelike,
    Spacelike,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FigureSet {
    Fig1,
    Fig2,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Csv => Format::Csv,
            OutFormat::Json => Format::Json,
        }
    }
}

impl From<CaseArg> for GeodesicCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::LightLike => GeodesicCase::LightLike,
            CaseArg::TimelikeFlat => GeodesicCase::TimelikeFlat,
            CaseArg::TimelikeHyperbolic => GeodesicCase::TimelikeHyperbolic,
            CaseArg::TimelikeElliptic => GeodesicCase::TimelikeElliptic,
            CaseArg::AbnormalSpacelike => GeodesicCase::AbnormalSpacelike,
            CaseArg::Spacelike => GeodesicCase::Spacelike,
        }
    }
}

fn parse_xi(s: &str) -> Result<[f64; 4], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected four comma-separated numbers, got {s:?}"));
    }
    let mut out = [0.0f64; 4];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.trim().parse().map_err(|_| format!("not a number: {p:?}"))?;
        if !o.is_finite() {
            return Err(format!("not finite: {p:?}"));
        }
    }
    Ok(out)
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("must be positive and finite: {s}"))
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: EngelError| e.to_string())
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<EngelError> for Failure {
    fn from(e: EngelError) -> Self {
        let code = match &e {
            EngelError::Divergence { .. } => EXIT_DIVERGENCE,
            EngelError::Parse(_) | EngelError::InvalidStep(_) => EXIT_USAGE,
            _ => EXIT_WRONG_CASE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: EXIT_IO, message: format!("{}: {e}", path.display()) }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| io_failure(Path::new("<stdout>"), e)),
    }
}

fn covector(xi: [f64; 4], abnormal: bool) -> Covector {
    if abnormal {
        Covector::abnormal(xi[0], xi[1], xi[2], xi[3])
    } else {
        Covector::normal(xi[0], xi[1], xi[2], xi[3])
    }
}

/// Closed-form samples on `[0, smax]`, or integrator samples for normal
/// space-like covectors.
fn sample_geodesic(xi: &Covector, smax: f64, step: f64, method: EllipticMethod, branch: Branch) -> Result<(GeodesicCase, SampledCurve), Failure> {
    xi.validate()?;
    let case = classify(xi);
    if case == GeodesicCase::Spacelike {
        log::info!("space-like normal covector: using the numerical integrator");
        let traj = integrate_normal(&PhaseState::at_origin(*xi), smax, step, false)?;
        return Ok((case, SampledCurve { s: traj.s_values(), points: traj.points() }));
    }
    let g = if case == GeodesicCase::AbnormalSpacelike {
        Geodesic::abnormal(xi, branch)?
    } else {
        Geodesic::with_method(xi, method)?
    };
    let (curve, clipped) = g.sample(smax, step)?;
    if let Some(bound) = clipped {
        let (lo, hi) = g.domain();
        eprintln!("clipped at s = {bound}: pole-free interval is ({lo}, {hi})");
    }
    Ok((case, curve))
}

fn cmd_geodesic(a: GeodesicArgs) -> Result<(), Failure> {
    let c = &a.common;
    let xi = covector(c.xi, a.abnormal);
    xi.validate()?;
    let detected = classify(&xi);
    if let Some(expected) = a.case.map(GeodesicCase::from) {
        if expected != detected {
            return Err(EngelError::WrongCase { expected, detected }.into());
        }
    }
    let method = match a.method {
        MethodArg::Auto => EllipticMethod::Auto,
        MethodArg::ClosedForm => EllipticMethod::ClosedForm,
        MethodArg::Quadrature => EllipticMethod::Quadrature,
    };
    let branch = match a.branch {
        BranchArg::Plus => Branch::Plus,
        BranchArg::Minus => Branch::Minus,
    };
    let (case, curve) = sample_geodesic(&xi, c.smax, c.step, method, branch)?;
    let meta = curve_metadata(case, xi.xi0, xi.xi, c.step, xi.h_at_origin());
    let table = Table::from_curve(&curve, Some(meta));
    emit(c.out.as_deref(), &table.render(c.format.into()))
}

fn cmd_integrate(a: IntegrateArgs) -> Result<(), Failure> {
    let c = &a.common;
    let xi = covector(c.xi, false);
    xi.validate()?;
    let mut traj = integrate_normal(&PhaseState::at_origin(xi), c.smax, c.step, a.adaptive)?;
    traj.meta.case = Some(classify(&xi));
    eprintln!("H drift: {:e} over {} samples", traj.meta.drift, traj.samples.len());
    emit(c.out.as_deref(), &Table::from_trajectory(&traj).render(c.format.into()))
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    let mut tol = Tolerances::default();
    for t in &a.tolerance {
        tol.set_from_str(t)?;
    }
    let suites = if a.suite.is_empty() { Suite::ALL.to_vec() } else { a.suite.clone() };
    let report = verify::run(&suites, &tol);
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    emit(a.out.as_deref(), &(text + "\n"))?;
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("FAIL [{}] {}: measured {:e}, tolerance {:e}", c.suite, c.name, c.measured, c.tolerance);
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure { code: EXIT_VERIFY, message: "verification failed".into() })
    }
}

fn figure_covectors(set: FigureSet) -> Vec<[f64; 4]> {
    let r5 = 5f64.sqrt() / 2.0;
    match set {
        FigureSet::Fig1 => vec![[2f64.sqrt(), 1.0, 1.0, 0.0], [r5, 0.5, 1.0, 0.0], [r5, 0.5, -1.0, 0.0]],
        FigureSet::Fig2 => vec![[1.0, 0.0, 1.0, 1.0], [r5, 0.5, 2.0, 1.0], [r5, 0.5, 1.0, 1.0]],
    }
}

fn cmd_plot_data(a: PlotArgs) -> Result<(), Failure> {
    let jobs: Vec<(String, [f64; 4])> = match (a.set, a.xi) {
        (Some(set), None) => {
            let prefix = match set {
                FigureSet::Fig1 => "fig1",
                FigureSet::Fig2 => "fig2",
            };
            figure_covectors(set)
                .into_iter()
                .enumerate()
                .map(|(i, xi)| (format!("{prefix}_{}.csv", i + 1), xi))
                .collect()
        }
        (None, Some(xi)) => vec![("custom.csv".to_string(), xi)],
        _ => {
            return Err(Failure { code: EXIT_USAGE, message: "give exactly one of a figure set or --xi".into() })
        }
    };
    fs::create_dir_all(&a.out).map_err(|e| io_failure(&a.out, e))?;
    let results: Vec<Result<PathBuf, Failure>> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|(name, xi)| {
                let path = a.out.join(name);
                scope.spawn(move || {
                    let cov = covector(*xi, false);
                    let (_, curve) = sample_geodesic(&cov, a.smax, a.step, EllipticMethod::Auto, Branch::Plus)?;
                    fs::write(&path, Table::projection(&curve).to_csv()).map_err(|e| io_failure(&path, e))?;
                    Ok(path)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    for r in results {
        eprintln!("wrote {}", r?.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Geodesic(a) => cmd_geodesic(a),
        Command::Integrate(a) => cmd_integrate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::PlotData(a) => cmd_plot_data(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
