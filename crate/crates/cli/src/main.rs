//! Batch verification front end: run the identity suites, print determinants
//! and reduced matrices, and emit structured reports.
//!
//! Exit codes: 0 when every check holds, 1 when a mathematical check fails,
//! 2 on usage or input errors, 3 when a computation exceeds its budget.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qmat_core::dieudonne::{
    bruhat_decompose, classical_det, corollary_check, delta_epsilon_tau, parse_ratfunc,
    pivot_chain, transpose_counterexample_check, EliminationOrder, Mat, RatFuncField,
};
use qmat_core::grassmann::GrassContext;
use qmat_core::laurent::ParamSpace;
use qmat_core::multiparam::{mp_verify_identity, twist_equivalence_check, MpContext};
use qmat_core::qmatrix::{verify_identity, Axis, QContext};
use qmat_core::report::CheckReport;
use qmat_core::Error;

const MIN_BUDGET: usize = 10_000;
const DETAIL_CAP: usize = 400;

#[derive(Parser)]
#[command(name = "qmat")]
#[command(about = "Exact verification suite for quantum matrix algebras")]
#[command(version)]
struct Cli {
    /// Matrix dimension.
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    /// Seed for the randomized strategies.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Cap on live monomials per normal-form call (env: QMAT_BUDGET).
    #[arg(long, global = true)]
    budget: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Q,
    Multiparam,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    Row,
    Column,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every defining relation on the generic or row-reduced matrix.
    RelationsCheck {
        #[arg(long, value_enum, default_value_t = Mode::Q)]
        mode: Mode,
        /// Check the row-reduced matrix instead of the generic one.
        #[arg(long)]
        reduced: bool,
    },
    /// Print the quantum determinant.
    Qdet,
    /// Print the multiparameter quantum determinant.
    Mpdet,
    /// Print the row-reduced generic matrix.
    RowReduce {
        #[arg(long, value_enum, default_value_t = Mode::Q)]
        mode: Mode,
    },
    /// Check Laplace/row-column expansions against the determinant.
    Laplace {
        #[arg(long, value_enum)]
        axis: Option<AxisArg>,
        /// 1-based row or column index; all indices when omitted.
        #[arg(long)]
        index: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Q)]
        mode: Mode,
    },
    /// Check the two-sided cofactor identity.
    Cofactor,
    /// Compute the determinant through the Grassmann top wedge and compare.
    WedgeDet,
    /// Run a named one-parameter identity suite.
    Verify {
        /// One of: theorem2, column-identity, centrality, cofactor,
        /// grouplike, counit, transpose, z-squared.
        #[arg(long)]
        id: String,
    },
    /// Run a named multiparameter identity suite.
    MpVerify {
        /// One of: mp-theorem-rowreduce, mp-det-invariance,
        /// mp-column-identity, mp-normalizing, mp-grassmann.
        #[arg(long)]
        id: String,
    },
    /// Check that the twisted relations arise from the one-parameter ones.
    TwistCheck,
    /// Build the localization tower and verify the pivot factorization.
    PivotChain,
    /// Bruhat-decompose a matrix of rational functions read from a file.
    Bruhat {
        /// Input file: one row per line, entries separated by commas.
        #[arg(long)]
        input: PathBuf,
    },
    /// The transpose counterexample for the Dieudonne determinant.
    Counterexample,
}

#[derive(Serialize)]
struct Record {
    id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    indices: Option<[usize; 4]>,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<String>,
}

#[derive(Serialize)]
struct Summary {
    tool: &'static str,
    version: &'static str,
    command: String,
    checked: usize,
    failed: usize,
    status: &'static str,
}

fn truncate(s: String) -> String {
    if s.len() > DETAIL_CAP {
        let mut t: String = s.chars().take(DETAIL_CAP).collect();
        t.push_str("...");
        t
    } else {
        s
    }
}

fn records_from_report(report: CheckReport, value_like: bool) -> Vec<Record> {
    report
        .checks
        .into_iter()
        .map(|c| {
            let detail = c.detail.map(truncate);
            let indices = c.indices.map(|(i, j, k, l)| [i, j, k, l]);
            if c.holds && value_like {
                Record {
                    id: c.id,
                    indices,
                    holds: true,
                    value: detail,
                    residual: None,
                }
            } else {
                Record {
                    id: c.id,
                    indices,
                    holds: c.holds,
                    value: if c.holds { detail.clone() } else { None },
                    residual: if c.holds { None } else { detail },
                }
            }
        })
        .collect()
}

fn run(cli: &Cli) -> Result<Vec<Record>, Error> {
    let n = cli.n;
    match &cli.command {
        Command::RelationsCheck { mode, reduced } => {
            let prefix = if *reduced {
                "relations.reduced"
            } else {
                "relations.generic"
            };
            let report = match mode {
                Mode::Q => {
                    let ctx = QContext::new(n, *reduced)?;
                    let matrix = if *reduced {
                        ctx.generic_matrix().row_reduce()?
                    } else {
                        ctx.generic_matrix()
                    };
                    CheckReport::from_relations(prefix, &matrix.relations_check()?)
                }
                Mode::Multiparam => {
                    let ctx = MpContext::new(n, *reduced)?;
                    let entries = if *reduced {
                        ctx.mp_row_reduce(&ctx.generic_entries())?
                    } else {
                        ctx.generic_entries()
                    };
                    CheckReport::from_relations(prefix, &ctx.relations_check(&entries)?)
                }
            };
            Ok(records_from_report(report, false))
        }
        Command::Qdet => {
            let ctx = QContext::new(n, false)?;
            let det = ctx.generic_matrix().qdet()?;
            let mut report = CheckReport::new();
            report.push_value(format!("qdet[n={n}]"), det.to_string());
            Ok(records_from_report(report, true))
        }
        Command::Mpdet => {
            let ctx = MpContext::new(n, false)?;
            let det = ctx.mp_det(&ctx.generic_entries())?;
            let mut report = CheckReport::new();
            report.push_value(format!("mpdet[n={n}]"), det.to_string());
            Ok(records_from_report(report, true))
        }
        Command::RowReduce { mode } => {
            let mut report = CheckReport::new();
            match mode {
                Mode::Q => {
                    let ctx = QContext::new(n, true)?;
                    let reduced = ctx.generic_matrix().row_reduce()?;
                    for i in 1..=n {
                        for j in 1..=n {
                            report.push_value(
                                format!("row-reduce.entry[{i},{j}]"),
                                reduced.at(i, j).to_string(),
                            );
                        }
                    }
                }
                Mode::Multiparam => {
                    let ctx = MpContext::new(n, true)?;
                    let reduced = ctx.mp_row_reduce(&ctx.generic_entries())?;
                    for i in 1..=n {
                        for j in 1..=n {
                            report.push_value(
                                format!("row-reduce.entry[{i},{j}]"),
                                reduced[(i - 1) * n + (j - 1)].to_string(),
                            );
                        }
                    }
                }
            }
            Ok(records_from_report(report, true))
        }
        Command::Laplace { axis, index, mode } => {
            let mut report = CheckReport::new();
            let axes: Vec<(Axis, &str)> = match axis {
                Some(AxisArg::Row) => vec![(Axis::Row, "row")],
                Some(AxisArg::Column) => vec![(Axis::Column, "column")],
                None => vec![(Axis::Row, "row"), (Axis::Column, "column")],
            };
            let indices: Vec<usize> = match index {
                Some(i) => vec![*i],
                None => (1..=n).collect(),
            };
            match mode {
                Mode::Q => {
                    let ctx = QContext::new(n, false)?;
                    let z = ctx.generic_matrix();
                    let det = z.qdet()?;
                    for (ax, label) in &axes {
                        for &i in &indices {
                            let expansion = z.laplace(*ax, i)?;
                            let residual = expansion.checked_sub(&det)?.nf()?;
                            report.push_residual(format!("laplace.{label}[{i}]"), &residual);
                        }
                    }
                }
                Mode::Multiparam => {
                    let ctx = MpContext::new(n, false)?;
                    let entries = ctx.generic_entries();
                    let det = ctx.mp_det(&entries)?;
                    for (ax, label) in &axes {
                        for &i in &indices {
                            let expansion = ctx.mp_expansion(&entries, *ax, i)?;
                            let residual = expansion.checked_sub(&det)?.nf()?;
                            report.push_residual(format!("expansion.{label}[{i}]"), &residual);
                        }
                    }
                }
            }
            Ok(records_from_report(report, false))
        }
        Command::Cofactor => Ok(records_from_report(verify_identity("cofactor", n)?, false)),
        Command::WedgeDet => {
            let g = GrassContext::new(n, false)?;
            let q = QContext::new(n, false)?;
            let entries = g.generic_entries();
            let wedge = g.wedge_det(&entries)?;
            let mut report = CheckReport::new();
            report.push_value(format!("wedge-det[n={n}]"), wedge.to_string());
            let moved = g.entry_morphism(&q)?.apply(&wedge)?;
            let residual = moved.checked_sub(&q.generic_matrix().qdet()?)?.nf()?;
            report.push_residual(format!("wedge-det.matches-qdet[n={n}]"), &residual);
            Ok(records_from_report(report, true))
        }
        Command::Verify { id } => Ok(records_from_report(verify_identity(id, n)?, false)),
        Command::MpVerify { id } => Ok(records_from_report(mp_verify_identity(id, n)?, false)),
        Command::TwistCheck => Ok(records_from_report(twist_equivalence_check(n)?, false)),
        Command::PivotChain => {
            let mut report = corollary_check(n)?;
            let chain = pivot_chain(n)?;
            for level in &chain.levels {
                report.push_value(
                    format!("pivot-chain.pivot[level={}]", level.level),
                    level.pivot.to_string(),
                );
            }
            Ok(records_from_report(report, false))
        }
        Command::Bruhat { input } => {
            let text = std::fs::read_to_string(input).map_err(|e| Error::Parse {
                msg: format!("cannot read {}: {e}", input.display()),
                at: 0,
            })?;
            let field = RatFuncField::new(&ParamSpace::q());
            let mut rows = Vec::new();
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let row: Result<Vec<_>, Error> = line
                    .split(',')
                    .map(|cell| parse_ratfunc(cell.trim(), &field))
                    .collect();
                rows.push(row?);
            }
            let dim = rows.len();
            if dim == 0 || rows.iter().any(|r| r.len() != dim) {
                return Err(Error::DimensionMismatch(
                    "input must be a nonempty square matrix".into(),
                ));
            }
            let m = Mat::from_rows(rows);
            let mut report = CheckReport::new();
            match bruhat_decompose(&field, &m, EliminationOrder::UpThenLeft) {
                Ok(dec) => {
                    report.push("bruhat.recomposition", dec.recompose(&field) == m, None);
                    let seeded = bruhat_decompose(&field, &m, EliminationOrder::Seeded(cli.seed))?;
                    report.push(
                        "bruhat.strategy-independence",
                        dec.sigma == seeded.sigma && dec.diag == seeded.diag,
                        None,
                    );
                    report.push_value(
                        "bruhat.sigma",
                        format!(
                            "[{}]",
                            dec.sigma
                                .iter()
                                .map(|r| r.to_string())
                                .collect::<Vec<_>>()
                                .join(", ")
                        ),
                    );
                    for (i, u) in dec.diag.iter().enumerate() {
                        report.push_value(format!("bruhat.diag[{}]", i + 1), u.to_string());
                    }
                    let de = delta_epsilon_tau(&field, &m)?;
                    report.push_value("bruhat.delta-epsilon-tau", de.to_string());
                    report.push(
                        "bruhat.matches-classical-det",
                        de == classical_det(&field, &m),
                        None,
                    );
                }
                Err(Error::Singular) => {
                    report.push(
                        "bruhat.invertible",
                        false,
                        Some("matrix is singular".into()),
                    );
                }
                Err(e) => return Err(e),
            }
            Ok(records_from_report(report, true))
        }
        Command::Counterexample => Ok(records_from_report(transpose_counterexample_check()?, true)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli
        .budget
        .or_else(|| {
            std::env::var("QMAT_BUDGET")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(qmat_core::ncalg::DEFAULT_MONOMIAL_CAP);
    if budget < MIN_BUDGET {
        eprintln!("error: budget must be at least {MIN_BUDGET}");
        return ExitCode::from(2);
    }
    if cli.n < 1 || cli.n > 9 {
        eprintln!("error: n must be between 1 and 9");
        return ExitCode::from(2);
    }
    qmat_core::ncalg::set_default_monomial_cap(budget);

    let started = Instant::now();
    let command_echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match run(&cli) {
        Ok(mut records) => {
            records.sort_by(|a, b| a.id.cmp(&b.id));
            let failed = records.iter().filter(|r| !r.holds).count();
            let summary = Summary {
                tool: "qmat",
                version: env!("CARGO_PKG_VERSION"),
                command: command_echo,
                checked: records.len(),
                failed,
                status: if failed == 0 { "pass" } else { "fail" },
            };
            // A closed pipe (e.g. piping into head) just stops the output.
            let out = std::io::stdout();
            let mut out = out.lock();
            let mut emit = |line: String| writeln!(out, "{line}").is_ok();
            match cli.output {
                Output::Structured => {
                    for r in &records {
                        if !emit(serde_json::to_string(r).expect("record serializes")) {
                            break;
                        }
                    }
                    emit(serde_json::to_string(&summary).expect("summary serializes"));
                }
                Output::Text => {
                    for r in &records {
                        let line = match (&r.value, &r.residual) {
                            (Some(v), _) => format!("{}: {}", r.id, v),
                            (None, Some(res)) => format!("FAIL {} residual: {}", r.id, res),
                            (None, None) => {
                                format!("{} {}", if r.holds { "ok  " } else { "FAIL" }, r.id)
                            }
                        };
                        if !emit(line) {
                            break;
                        }
                    }
                    emit(format!(
                        "{}: {} checks, {} failed ({:.1} ms)",
                        summary.status,
                        summary.checked,
                        summary.failed,
                        started.elapsed().as_secs_f64() * 1000.0
                    ));
                }
            }
            if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Error::ResourceLimit { cap }) => {
            eprintln!("error: computation exceeded the budget of {cap} live monomials");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
