//! `mfold` command line: bound tables, verification suites, certification
//! probes, membership margins, the exemplar catalog and the reduction matrix.
//!
//! Exit codes: 0 success, 1 verification or certification failure, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use crate::bounds::{
    applicable_corollaries, class_bounds, reduction_matrix, ParamGrid, Parent, Range,
};
use crate::error::{Error, Result};
use crate::exemplars::{audit_1fold_pairings, catalog};
use crate::functional::{membership_margin, MarginGrid};
use crate::params::{ClassKind, ClassParams};
use crate::report::{
    format_complex, parse_complex, parse_int_list, parse_range, parse_real_list, Cell, Format,
    Report, Table,
};
use crate::sampling::{probe_bounds, Strategy};
use crate::series::MFoldFn;
use crate::verify::{run_all, Fault, VerifyOptions};

/// Directory for reports when `--output` is not given; unset means stdout.
pub const OUT_DIR_ENV: &str = "MFOLD_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "mfold",
    version,
    about = "Coefficient bounds for m-fold symmetric bi-univalent classes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, default_value = "csv")]
    pub format: Format,
    /// Report path; defaults to $MFOLD_OUT_DIR/<command>.<ext>, else stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(short, long, global = true)]
    pub verbose: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bound table over a parameter grid.
    Bounds(BoundsArgs),
    /// Closed-form versus oracle suites and the reduction matrix.
    Verify(VerifyArgs),
    /// Certify the bounds on sampled constraint data.
    Probe(ProbeArgs),
    /// Sampled membership margins of a truncated function.
    Membership(MembershipArgs),
    /// Exemplar pairs and the 1-fold pairing audit.
    Exemplars(ExemplarArgs),
    /// Corollaries against their parent bounds.
    Reduce,
}

#[derive(Args, Debug, Clone)]
pub struct ClassArgs {
    /// q or theta.
    #[arg(long, default_value = "q")]
    pub class: String,
    /// Complex literal, e.g. 1, 0.5+0.2i.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub tau: String,
    #[arg(long, default_value = "1")]
    pub lambda: String,
    #[arg(long, default_value = "0")]
    pub gamma: String,
    #[arg(long, default_value = "0")]
    pub delta: String,
    #[arg(long, default_value = "1")]
    pub m: String,
    #[arg(long, default_value = "1")]
    pub alpha: String,
    #[arg(long, default_value = "0")]
    pub beta: String,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    /// Range for |tau| (start:stop:count); the phase comes from --tau.
    #[arg(long)]
    pub tau_abs: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Args, Debug)]
pub struct ProbeArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    #[arg(long, default_value = "random")]
    pub strategy: Strategy,
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct MembershipArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    /// Coefficients a_{m+1}, a_{2m+1}, ... as complex literals.
    #[arg(long = "a", allow_hyphen_values = true)]
    pub a: Vec<String>,
    #[arg(long, default_value = "0.5,0.9,0.99")]
    pub radii: String,
    /// Angles per symmetry sector.
    #[arg(long, default_value_t = 256)]
    pub angles: usize,
}

#[derive(Args, Debug)]
pub struct ExemplarArgs {
    #[arg(long, default_value_t = 2)]
    pub m: u32,
    /// Symmetric coefficients kept; truncation order is mK+1.
    #[arg(long, default_value_t = 4)]
    pub k: usize,
}

/// Failure of a command, split by exit code.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(_)
            | Error::InvalidGrid(_)
            | Error::Literal(_)
            | Error::WrongClass { .. }
            | Error::Output(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

struct Outcome {
    report: Report,
    passed: bool,
    summary: Vec<String>,
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => match emit(&cli, &outcome, stdout, stderr) {
            Ok(()) => {
                if outcome.passed {
                    EXIT_OK
                } else {
                    EXIT_FAIL
                }
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAIL
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Bounds(_) => "bounds",
        Command::Verify(_) => "verify",
        Command::Probe(_) => "probe",
        Command::Membership(_) => "membership",
        Command::Exemplars(_) => "exemplars",
        Command::Reduce => "reduce",
    }
}

fn emit(cli: &Cli, o: &Outcome, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let text = o.report.render(cli.format)?;
    let path = cli.output.clone().or_else(|| {
        std::env::var_os(OUT_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(|d| {
                PathBuf::from(d).join(format!(
                    "{}.{}",
                    command_name(&cli.command),
                    cli.format.extension()
                ))
            })
    });
    match &path {
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| Error::Output(format!("{}: {e}", p.display())))?;
        }
        None => stdout.write_all(text.as_bytes())?,
    }
    for line in &o.summary {
        writeln!(stderr, "{line}")?;
    }
    if let Some(p) = path {
        if cli.verbose {
            writeln!(stderr, "wrote {}", p.display())?;
        }
    }
    Ok(())
}

fn execute(cli: &Cli) -> std::result::Result<Outcome, Failure> {
    match &cli.command {
        Command::Bounds(a) => cmd_bounds(a),
        Command::Verify(a) => cmd_verify(a, cli.verbose),
        Command::Probe(a) => cmd_probe(a),
        Command::Membership(a) => cmd_membership(a),
        Command::Exemplars(a) => cmd_exemplars(a),
        Command::Reduce => cmd_reduce(),
    }
}

fn parent_of(class: &str) -> std::result::Result<Parent, Failure> {
    match class.to_ascii_lowercase().as_str() {
        "q" => Ok(Parent::Q),
        "theta" => Ok(Parent::Theta),
        other => Err(Failure::Usage(format!(
            "unknown class {other:?} (q | theta)"
        ))),
    }
}

fn grid_of(a: &ClassArgs, tau_abs: Option<&str>) -> std::result::Result<ParamGrid, Failure> {
    let class = parent_of(&a.class)?;
    let tau = parse_complex(&a.tau)?;
    let tau_abs = match tau_abs {
        Some(s) => parse_range(s)?,
        None => Range::single(tau.norm()),
    };
    Ok(ParamGrid {
        tau_arg: tau.arg(),
        tau_abs,
        lambda: parse_range(&a.lambda)?,
        gamma: parse_range(&a.gamma)?,
        delta: parse_int_list(&a.delta)?,
        m: parse_int_list(&a.m)?,
        class,
        shape: match class {
            Parent::Q => parse_range(&a.alpha)?,
            Parent::Theta => parse_range(&a.beta)?,
        },
    })
}

/// Single parameter point; grids are rejected here.
fn params_of(a: &ClassArgs) -> std::result::Result<ClassParams, Failure> {
    let class = parent_of(&a.class)?;
    let single = |s: &str, name: &str| -> std::result::Result<f64, Failure> {
        let r = parse_range(s)?;
        if r.count != 1 {
            return Err(Failure::Usage(format!(
                "--{name} takes a single value here"
            )));
        }
        Ok(r.start)
    };
    let int = |s: &str, name: &str| -> std::result::Result<u32, Failure> {
        match parse_int_list(s)?.as_slice() {
            [v] => Ok(*v),
            _ => Err(Failure::Usage(format!(
                "--{name} takes a single value here"
            ))),
        }
    };
    let kind = match class {
        Parent::Q => ClassKind::Q {
            alpha: single(&a.alpha, "alpha")?,
        },
        Parent::Theta => ClassKind::Theta {
            beta: single(&a.beta, "beta")?,
        },
    };
    Ok(ClassParams::new(
        parse_complex(&a.tau)?,
        single(&a.lambda, "lambda")?,
        single(&a.gamma, "gamma")?,
        int(&a.delta, "delta")?,
        int(&a.m, "m")?,
        kind,
    )?)
}

fn shape_cells(p: &ClassParams) -> [Cell; 2] {
    match p.kind {
        ClassKind::Q { alpha } => [alpha.into(), Cell::Empty],
        ClassKind::Theta { beta } => [Cell::Empty, beta.into()],
    }
}

fn param_cells(p: &ClassParams) -> Vec<Cell> {
    let [alpha, beta] = shape_cells(p);
    vec![
        p.kind.name().into(),
        p.tau.re.into(),
        p.tau.im.into(),
        p.lambda.into(),
        p.gamma.into(),
        p.delta.into(),
        p.m.into(),
        alpha,
        beta,
    ]
}

const PARAM_COLUMNS: [&str; 9] = [
    "class", "tau_re", "tau_im", "lambda", "gamma", "delta", "m", "alpha", "beta",
];

fn columns(extra: &[&'static str]) -> Vec<&'static str> {
    PARAM_COLUMNS
        .iter()
        .copied()
        .chain(extra.iter().copied())
        .collect()
}

fn params_json(p: &ClassParams) -> serde_json::Value {
    serde_json::to_value(p).unwrap_or(serde_json::Value::Null)
}

fn cmd_bounds(a: &BoundsArgs) -> std::result::Result<Outcome, Failure> {
    let grid = grid_of(&a.class, a.tau_abs.as_deref())?;
    let points = grid.points()?;
    if points.is_empty() {
        return Err(Failure::Usage("parameter grid is empty".into()));
    }
    let mut table = Table::new(
        "rows",
        &columns(&[
            "bound_am1",
            "bound_a2m1",
            "active_branch",
            "linear",
            "square_root",
            "a2m1_alternative",
            "corollaries",
        ]),
    );
    let mut notes = Vec::new();
    for p in &points {
        let r = class_bounds(p)?;
        for n in &r.notes {
            if !notes.contains(n) {
                notes.push(n.clone());
            }
        }
        let cors: Vec<String> = applicable_corollaries(p)
            .iter()
            .map(|c| c.to_string())
            .collect();
        let mut row = param_cells(p);
        row.extend([
            r.bound_am1.into(),
            r.bound_a2m1.into(),
            r.active_branch.as_str().into(),
            r.alt_values.linear.into(),
            r.alt_values.square_root.into(),
            r.alt_values.a2m1_alternative.into(),
            cors.join(";").into(),
        ]);
        table.push(row);
    }
    let mut report = Report::new("bounds", table);
    report
        .meta("grid", serde_json::to_value(&grid).unwrap_or_default())
        .meta("points", json!(points.len()))
        .meta("notes", json!(notes));
    Ok(Outcome {
        report,
        passed: true,
        summary: vec![format!("bounds: {} grid points", points.len())],
    })
}

fn cmd_verify(a: &VerifyArgs, verbose: bool) -> std::result::Result<Outcome, Failure> {
    let opts = VerifyOptions {
        seed: a.seed,
        fault: a.inject_fault.then(Fault::default),
    };
    let s = run_all(&opts)?;
    let mut table = Table::new(
        "rows",
        &[
            "suite",
            "cases",
            "failures",
            "max_deviation",
            "tolerance",
            "passed",
        ],
    );
    let mut summary = Vec::new();
    for r in &s.suites {
        table.push(vec![
            r.name.as_str().into(),
            r.cases.into(),
            r.failures.into(),
            r.max_deviation.into(),
            r.tolerance.into(),
            r.passed.into(),
        ]);
        let mut line = format!(
            "{:<24} {}  max deviation {:.3e}",
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.max_deviation
        );
        if verbose {
            line.push_str(&format!(
                "  ({} cases, {} failures, tol {:.0e})",
                r.cases, r.failures, r.tolerance
            ));
        }
        summary.push(line);
    }
    let mut report = Report::new("verify", table);
    report
        .meta("seed", json!(a.seed))
        .meta("fault_injected", json!(a.inject_fault))
        .meta("passed", json!(s.passed));
    Ok(Outcome {
        report,
        passed: s.passed,
        summary,
    })
}

fn cmd_probe(a: &ProbeArgs) -> std::result::Result<Outcome, Failure> {
    if a.n == 0 {
        return Err(Failure::Usage("--n must be >= 1".into()));
    }
    let p = params_of(&a.class)?;
    let c = probe_bounds(&p, a.strategy, a.n, a.seed)?;
    let mut table = Table::new(
        "rows",
        &[
            "check",
            "bound",
            "max_value",
            "max_ratio",
            "argmax",
            "gating",
            "passed",
        ],
    );
    for ch in &c.checks {
        table.push(vec![
            ch.name.as_str().into(),
            ch.bound.into(),
            ch.max_value.into(),
            ch.max_ratio.into(),
            ch.argmax.into(),
            ch.gating.into(),
            ch.passed.into(),
        ]);
    }
    let mut report = Report::new("probe", table);
    report
        .meta("params", params_json(&p))
        .meta("strategy", json!(a.strategy))
        .meta("n", json!(a.n))
        .meta("seed", json!(a.seed))
        .meta("samples", json!(c.samples))
        .meta("skipped", json!(c.skipped))
        .meta("max_residual", json!(c.max_residual))
        .meta("passed", json!(c.passed));
    let summary = c
        .checks
        .iter()
        .map(|ch| {
            format!(
                "{:<16} max ratio {:.12}{}",
                ch.name,
                ch.max_ratio,
                if ch.gating { "" } else { " (informational)" }
            )
        })
        .chain([format!("probe: {}", if c.passed { "PASS" } else { "FAIL" })])
        .collect();
    Ok(Outcome {
        report,
        passed: c.passed,
        summary,
    })
}

fn cmd_membership(a: &MembershipArgs) -> std::result::Result<Outcome, Failure> {
    let p = params_of(&a.class)?;
    let mut coeffs =
        a.a.iter()
            .map(|s| parse_complex(s))
            .collect::<Result<Vec<Complex64>>>()?;
    if coeffs.len() < 2 {
        coeffs.resize(2, Complex64::default());
    }
    let f = MFoldFn::new(p.m, coeffs)?;
    let radii = parse_real_list(&a.radii)?;
    if a.angles == 0 {
        return Err(Failure::Usage("--angles must be >= 1".into()));
    }
    let grid = MarginGrid::sector(radii, p.m, a.angles);
    let margins = membership_margin(&f, &p, &grid)?;
    let mut table = Table::new("rows", &["r", "forward_margin", "inverse_margin"]);
    for r in &margins.per_radius {
        table.push(vec![r.r.into(), r.forward.into(), r.inverse.into()]);
    }
    let mut report = Report::new("membership", table);
    report
        .meta("params", params_json(&p))
        .meta(
            "coefficients",
            json!(f
                .coeffs()
                .iter()
                .map(|c| format_complex(*c))
                .collect::<Vec<_>>()),
        )
        .meta("angles", json!(a.angles))
        .meta("forward_margin", json!(finite_or_text(margins.forward)))
        .meta("inverse_margin", json!(finite_or_text(margins.inverse)));
    Ok(Outcome {
        report,
        passed: true,
        summary: vec![format!(
            "membership: forward margin {:.6}, inverse margin {:.6}",
            margins.forward, margins.inverse
        )],
    })
}

fn finite_or_text(x: f64) -> serde_json::Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(crate::report::format_num(x))
    }
}

fn coeff_text(f: &MFoldFn) -> String {
    f.coeffs()
        .iter()
        .map(|c| format_complex(*c))
        .collect::<Vec<_>>()
        .join(";")
}

fn cmd_exemplars(a: &ExemplarArgs) -> std::result::Result<Outcome, Failure> {
    let pairs = catalog(a.m, a.k).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut table = Table::new(
        "rows",
        &[
            "name",
            "m",
            "order",
            "pairing_verified",
            "composition_residual",
            "forward",
            "inverse",
        ],
    );
    for p in &pairs {
        table.push(vec![
            p.name.as_str().into(),
            p.m.into(),
            p.order.into(),
            p.pairing_verified.into(),
            p.composition_residual.into(),
            coeff_text(&p.forward).into(),
            coeff_text(&p.inverse).into(),
        ]);
    }
    let mut audit = Table::new(
        "audit",
        &[
            "forward",
            "listed_inverse",
            "listed_residual",
            "true_inverse",
            "true_residual",
            "listed_is_true",
        ],
    );
    for r in audit_1fold_pairings(2 * a.k + 1)? {
        audit.push(vec![
            r.forward.into(),
            r.listed_inverse.into(),
            r.listed_residual.into(),
            r.true_inverse.map_or(Cell::Empty, Cell::Text),
            r.true_residual.into(),
            r.listed_is_true.into(),
        ]);
    }
    let verified = pairs.iter().all(|p| p.pairing_verified);
    let mut report = Report::new("exemplars", table);
    report.extra.push(audit);
    report.meta("m", json!(a.m)).meta("k", json!(a.k));
    Ok(Outcome {
        report,
        passed: verified,
        summary: vec![format!(
            "exemplars: {} pairs, {}",
            pairs.len(),
            if verified {
                "all verified"
            } else {
                "verification FAILED"
            }
        )],
    })
}

fn cmd_reduce() -> std::result::Result<Outcome, Failure> {
    let rows = reduction_matrix();
    let mut table = Table::new(
        "rows",
        &[
            "corollary",
            "parent",
            "substitution",
            "grid_points",
            "max_deviation_am1",
            "max_deviation_a2m1",
            "passed",
        ],
    );
    for r in &rows {
        table.push(vec![
            (r.corollary as u32).into(),
            match r.parent {
                Parent::Q => "Q",
                Parent::Theta => "Theta",
            }
            .into(),
            r.substitution.as_str().into(),
            r.grid_points.into(),
            r.max_deviation_am1.into(),
            r.max_deviation_a2m1.into(),
            r.passed.into(),
        ]);
    }
    let passed = rows.iter().all(|r| r.passed);
    Ok(Outcome {
        report: Report::new("reduce", table),
        passed,
        summary: vec![format!(
            "reduce: {}/{} corollaries match",
            rows.iter().filter(|r| r.passed).count(),
            rows.len()
        )],
    })
}
