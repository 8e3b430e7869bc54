//! Command-line front end.
//!
//! Exit codes: 0 yes/valid, 1 no/invalid, 2 input error, 3 restriction
//! violated.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cpsm::cpsm::{
    check_restriction, decide_subset_nonunique, solve_exact_with, solve_restricted, verify_witness,
    CpsmError, RestrictionReport,
};
use cpsm::frechet::{decide_frechet, frechet_distance};
use cpsm::io::{self, IoError};
use cpsm::par::Execution;
use cpsm::reduction::{build_reduction, validate_b2, witness_from_meta, Assignment, ReductionError};
use cpsm::render::{render_svg, RenderOptions};
use cpsm::{Variant, Witness};

#[derive(Parser)]
#[command(name = "cpsm", version, about = "Curve/point-set matching under the Fréchet distance")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two curves are within EPS, or compute their distance.
    Frechet {
        a: PathBuf,
        b: PathBuf,
        eps: Option<f64>,
        #[arg(long)]
        distance: bool,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Solve an instance file.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        #[arg(long)]
        max_len: Option<usize>,
        /// Witness output file.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        sequential: bool,
    },
    /// Build an instance and metadata from a (3,B2) DIMACS formula.
    Reduce {
        formula: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        meta: PathBuf,
    },
    /// Witness for an assignment such as "x1=1,x2=0,x3=1".
    Witness {
        meta: PathBuf,
        assignment: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a witness against an instance.
    Verify { instance: PathBuf, witness: PathBuf },
    /// Check the (3,B2) restrictions of a DIMACS formula.
    ValidateFormula { formula: PathBuf },
    /// Draw a planar instance as SVG.
    Render {
        instance: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long)]
        meta: Option<PathBuf>,
        #[arg(long)]
        cylinders: bool,
        /// Defaults to stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Restricted,
    Exact,
    Subset,
}

enum Failure {
    Input(String),
    Restriction(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Cpsm(e) => e.into(),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<CpsmError> for Failure {
    fn from(e: CpsmError) -> Self {
        match e {
            CpsmError::RestrictionViolated(r) => Failure::Restriction(restriction_lines(&r)),
            e => Failure::Input(e.to_string()),
        }
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::NotB2(r) => Failure::Restriction(format!("formula is not (3,B2):\n{r}")),
            ReductionError::Cpsm(e) => e.into(),
            e => Failure::Input(e.to_string()),
        }
    }
}

fn restriction_lines(r: &RestrictionReport) -> String {
    let mut lines = vec!["restriction violated".to_string()];
    for (s, k) in &r.multi_window {
        lines.push(format!("point {s}: {k} windows"));
    }
    for s in &r.uncovered {
        lines.push(format!("point {s}: no cylinder"));
    }
    lines.join("\n")
}

fn answer(yes: bool) -> u8 {
    println!("{}", if yes { "YES" } else { "NO" });
    u8::from(!yes)
}

fn decimals(tol: f64) -> usize {
    (-tol.log10()).ceil().clamp(0.0, 17.0) as usize
}

fn frechet(a: &Path, b: &Path, eps: Option<f64>, distance: bool, tol: f64) -> Result<u8, Failure> {
    let p = io::read_curve(a)?;
    let q = io::read_curve(b)?;
    let err = |e: cpsm::frechet::FrechetError| Failure::Input(e.to_string());
    if distance {
        let d = frechet_distance(&p, &q, tol).map_err(err)?;
        println!("{d:.*}", decimals(tol));
        return Ok(0);
    }
    let eps = eps.ok_or_else(|| Failure::Input("give EPS or --distance".into()))?;
    Ok(answer(decide_frechet(&p, &q, eps).map_err(err)?))
}

fn solve(
    path: &Path,
    method: Method,
    max_len: Option<usize>,
    output: Option<&Path>,
    sequential: bool,
) -> Result<u8, Failure> {
    let inst = io::read_instance(path)?;
    let witness = match method {
        Method::Restricted => {
            if inst.variant() != Variant::NonUniqueAllPoints {
                return Err(Failure::Input(format!(
                    "restricted method needs variant nonunique-all, instance is {}",
                    inst.variant()
                )));
            }
            let report = check_restriction(&inst);
            if !report.holds() {
                return Err(Failure::Restriction(restriction_lines(&report)));
            }
            match solve_restricted(&inst) {
                Err(e @ (CpsmError::EmptyStartBall | CpsmError::EmptyEndBall)) => {
                    return Err(Failure::Restriction(format!("restriction violated\n{e}")))
                }
                r => r?,
            }
        }
        Method::Exact => {
            let mode = if sequential { Execution::Sequential } else { Execution::Parallel };
            let out = solve_exact_with(&inst, max_len, mode)?;
            if out.witness.is_none() && out.bounded {
                eprintln!("no witness with at most {} vertices", out.max_len);
            }
            out.witness
        }
        Method::Subset => decide_subset_nonunique(&inst)?,
    };
    if let (Some(w), Some(out)) = (&witness, output) {
        io::write_witness(out, w)?;
    }
    Ok(answer(witness.is_some()))
}

fn reduce(formula: &Path, eps: f64, output: &Path, meta: &Path) -> Result<u8, Failure> {
    let f = io::read_formula(formula)?;
    let r = build_reduction(&f, eps)?;
    io::write_instance(output, &r.instance)?;
    io::write_meta(meta, &r.meta)?;
    println!(
        "{} points, {} curve vertices, ring radius {}",
        r.instance.points().len(),
        r.instance.curve().vertices().len(),
        r.meta.ring.radius
    );
    Ok(0)
}

fn witness(meta: &Path, assignment: &str, output: &Path) -> Result<u8, Failure> {
    let m = io::read_meta(meta)?;
    let a = Assignment::parse(assignment, m.formula.variable_count())?;
    let w = witness_from_meta(&m, &a)?;
    io::write_witness(output, &w)?;
    let falsified = m.formula.falsified_clauses(&a);
    if falsified.is_empty() {
        println!("{} vertices, assignment satisfies the formula", w.len());
    } else {
        let names: Vec<String> = falsified.iter().map(|c| (c + 1).to_string()).collect();
        println!("{} vertices, assignment falsifies clause {}", w.len(), names.join(", "));
    }
    Ok(0)
}

fn verify(instance: &Path, witness: &Path) -> Result<u8, Failure> {
    let inst = io::read_instance(instance)?;
    let w = io::read_witness(witness)?;
    let report = verify_witness(&inst, &w)?;
    if report.is_valid() {
        println!("VALID");
        return Ok(0);
    }
    println!("INVALID");
    for v in &report.violations {
        println!("{v}");
    }
    Ok(1)
}

fn validate_formula(formula: &Path) -> Result<u8, Failure> {
    let f = io::read_formula(formula)?;
    let report = validate_b2(&f);
    println!("{report}");
    Ok(u8::from(!report.is_valid()))
}

fn render(
    instance: &Path,
    witness: Option<&Path>,
    meta: Option<&Path>,
    cylinders: bool,
    output: Option<&Path>,
) -> Result<u8, Failure> {
    let inst = io::read_instance(instance)?;
    let w: Option<Witness> = witness.map(io::read_witness).transpose()?;
    let m = meta.map(io::read_meta).transpose()?;
    let opts = RenderOptions {
        witness: w.as_ref(),
        cylinders,
        roles: m.as_ref().map(|m| m.roles.as_slice()),
    };
    let svg = render_svg(&inst, &opts).map_err(|e| Failure::Input(e.to_string()))?;
    match output {
        Some(p) => io::write_atomic(p, svg.as_bytes())?,
        None => print!("{svg}"),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Frechet { a, b, eps, distance, tol } => frechet(a, b, *eps, *distance, *tol),
        Command::Solve { instance, method, max_len, output, sequential } => {
            solve(instance, *method, *max_len, output.as_deref(), *sequential)
        }
        Command::Reduce { formula, eps, output, meta } => reduce(formula, *eps, output, meta),
        Command::Witness { meta, assignment, output } => witness(meta, assignment, output),
        Command::Verify { instance, witness } => verify(instance, witness),
        Command::ValidateFormula { formula } => validate_formula(formula),
        Command::Render { instance, witness, meta, cylinders, output } => {
            render(instance, witness.as_deref(), meta.as_deref(), *cylinders, output.as_deref())
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Restriction(msg)) => {
            println!("{msg}");
            ExitCode::from(3)
        }
    }
}
