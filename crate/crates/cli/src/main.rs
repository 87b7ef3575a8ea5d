//! `bialg`: graph algebras, TST systems, cobracket verification and diagonal classification.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bialg::classify::{classify_diagonal, parameter_table};
use bialg::cobracket::Cobracket;
use bialg::invariants::InvariantReport;
use bialg::sweep::{sweep, MAX_SWEEP_VERTICES};
use bialg::tst::{crosscheck_with, solve_tst, tst_report_json};
use bialg::{parse_graph, Graph, TwoStepAlgebra};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(
    name = "bialg",
    version,
    about = "Lie bialgebra structures on graph algebras"
)]
struct Cli {
    /// Print the full JSON report instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the full JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimensions, degree sequence and structural check of a graph algebra.
    Info { graph: PathBuf },
    /// Invariant bivectors and the valency cross-check.
    Invariants { graph: PathBuf },
    /// TST solution space and the zero-pattern cross-check.
    Tst { graph: PathBuf },
    /// Check both bialgebra axioms for a cobracket file.
    Verify { cobracket: PathBuf },
    /// Classify diagonal nearly-coboundary structures.
    Classify {
        graph: PathBuf,
        /// Diagonal classification (the only supported mode).
        #[arg(long, required = true)]
        diagonal: bool,
    },
    /// Parameter counts for cycles and complete graphs.
    Table {
        #[arg(long, default_value_t = 6, value_name = "N")]
        max_n: usize,
    },
    /// Cross-check the graph theorems on every small graph.
    Sweep {
        #[arg(long, default_value_t = 6, value_name = "N")]
        max_vertices: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: bialg::Error },
    #[error(transparent)]
    Library(#[from] bialg::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    VerificationFailed,
    TheoremViolation,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 1,
            Status::TheoremViolation => 3,
        }
    }
}

struct Report {
    json: Value,
    summary: String,
    status: Status,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    parse_graph(&read(path)?).map_err(|e| CliError::Input {
        path: path.to_owned(),
        source: e.into(),
    })
}

fn graph_json(g: &Graph) -> Value {
    serde_json::to_value(g).expect("graphs serialize")
}

fn info(path: &Path) -> Result<Report, CliError> {
    let g = load_graph(path)?;
    let a = TwoStepAlgebra::from_graph(&g);
    let check = a.check();
    let status = if check.passed() {
        Status::Ok
    } else {
        Status::TheoremViolation
    };
    Ok(Report {
        summary: format!(
            "dim W = {}, dim z = {}, degrees {:?}, algebra check {}",
            a.dim_w(),
            a.dim_z(),
            g.degrees(),
            verdict(check.passed())
        ),
        json: json!({
            "graph": graph_json(&g),
            "dim_w": a.dim_w(),
            "dim_z": a.dim_z(),
            "degrees": g.degrees(),
            "check": {"passed": check.passed(), "details": check},
        }),
        status,
    })
}

fn invariants(path: &Path) -> Result<Report, CliError> {
    let g = load_graph(path)?;
    let a = TwoStepAlgebra::from_graph(&g);
    let report = InvariantReport::compute(&a);
    let predicted = g.min_degree_at_least_two();
    let agrees = report.equal == predicted;
    let mut json = report.to_json(&a);
    json["min_degree_two"] = json!(predicted);
    json["crosscheck_agrees"] = json!(agrees);
    Ok(Report {
        summary: format!(
            "dim (Λ²n)^n = {}, dim Λ²z = {}, equal = {}, min degree ≥ 2 = {}, cross-check {}",
            report.dim_invariants,
            report.dim_lambda2z,
            report.equal,
            predicted,
            verdict(agrees)
        ),
        json,
        status: if agrees {
            Status::Ok
        } else {
            Status::TheoremViolation
        },
    })
}

fn tst(path: &Path) -> Result<Report, CliError> {
    let g = load_graph(path)?;
    let a = TwoStepAlgebra::from_graph(&g);
    let sol = solve_tst(&a);
    let zero = crosscheck_with(&g, &sol);
    let mut status = Status::Ok;
    if !zero.violations.is_empty() || (g.min_degree_at_least_two() && sol.dim() != 0) {
        status = Status::TheoremViolation;
    }
    Ok(Report {
        summary: format!(
            "TST solution dimension {}, TST type = {}, zero-pattern violations {}",
            sol.dim(),
            sol.dim() == 0,
            zero.violations.len()
        ),
        json: tst_report_json(&a, &sol, Some(&zero)),
        status,
    })
}

fn verify(path: &Path) -> Result<Report, CliError> {
    let d = Cobracket::from_json_str(&read(path)?).map_err(|source| CliError::Input {
        path: path.to_owned(),
        source,
    })?;
    let a = d.algebra();
    let cojacobi = d.check_cojacobi();
    let cocycle = d.check_cocycle();
    let bialgebra = cojacobi.passed() && cocycle.passed();
    let nearly = d.is_nearly_coboundary();
    let mut json = json!({
        "bialgebra": bialgebra,
        "cojacobi": cojacobi.to_json(a),
        "cocycle": cocycle.to_json(a),
        "nearly_coboundary": nearly,
    });
    if a.graph().is_some() {
        json["structural_containment"] = d.structural_containment().to_json();
    }
    Ok(Report {
        summary: format!(
            "co-Jacobi {} ({} failures), cocycle {} ({} failures), nearly coboundary = {nearly}, bialgebra = {bialgebra}",
            verdict(cojacobi.passed()),
            cojacobi.residuals.len(),
            verdict(cocycle.passed()),
            cocycle.residuals.len(),
        ),
        json,
        status: if bialgebra { Status::Ok } else { Status::VerificationFailed },
    })
}

fn classify(path: &Path) -> Result<Report, CliError> {
    let g = load_graph(path)?;
    let c = classify_diagonal(&g);
    let mut summary = format!(
        "λ solution dimension {}, forced zeros {}, ω parameters {}",
        c.lambda.dim(),
        c.forced_zero.len(),
        c.omega_free_parameters
    );
    for caveat in &c.caveats {
        summary.push_str(&format!("\ncaveat: {caveat}"));
    }
    Ok(Report {
        summary,
        json: c.to_json(),
        status: Status::Ok,
    })
}

fn table(max_n: usize) -> Result<Report, CliError> {
    if max_n < 3 {
        return Err(bialg::Error::InvalidParameters(format!(
            "--max-n must be at least 3, got {max_n}"
        ))
        .into());
    }
    let rows = parameter_table(3..=max_n)?;
    let mut summary = String::from("n\tC_n\t\tK_n");
    for r in &rows {
        summary.push_str(&format!(
            "\n{}\t({}, {})\t({}, {})",
            r.n, r.cycle.0, r.cycle.1, r.complete.0, r.complete.1
        ));
    }
    let agrees = rows.iter().all(|r| r.closed_form_agrees);
    Ok(Report {
        summary,
        json: json!({"rows": rows}),
        status: if agrees {
            Status::Ok
        } else {
            Status::TheoremViolation
        },
    })
}

fn sweep_cmd(max_vertices: usize) -> Result<Report, CliError> {
    let s = sweep(max_vertices)?;
    Ok(Report {
        summary: format!(
            "{} graphs on ≤ {} vertices ({} connected), {} with min degree ≥ 2, {} with (Λ²n)^n = Λ²z, {} of TST type, {} violations",
            s.graphs,
            s.max_vertices,
            s.connected,
            s.min_degree_two,
            s.invariants_equal,
            s.tst_type,
            s.violations.len()
        ),
        status: if s.violations.is_empty() { Status::Ok } else { Status::TheoremViolation },
        json: serde_json::to_value(&s).expect("summary serializes"),
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn run(cli: &Cli) -> Result<Status, CliError> {
    let report = match &cli.command {
        Command::Info { graph } => info(graph)?,
        Command::Invariants { graph } => invariants(graph)?,
        Command::Tst { graph } => tst(graph)?,
        Command::Verify { cobracket } => verify(cobracket)?,
        Command::Classify { graph, .. } => classify(graph)?,
        Command::Table { max_n } => table(*max_n)?,
        Command::Sweep { max_vertices } => {
            if *max_vertices > MAX_SWEEP_VERTICES {
                return Err(bialg::Error::InvalidParameters(format!(
                    "--max-vertices is at most {MAX_SWEEP_VERTICES}"
                ))
                .into());
            }
            sweep_cmd(*max_vertices)?
        }
    };
    let text = serde_json::to_string_pretty(&report.json).expect("reports serialize");
    if let Some(path) = &cli.out {
        fs::write(path, format!("{text}\n")).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        })?;
    }
    if cli.json {
        println!("{text}");
    } else {
        println!("{}", report.summary);
    }
    Ok(report.status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
