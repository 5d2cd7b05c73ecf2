//! Command-line front end: equation documents in, JSON reports out.

pub mod document;
pub mod expr;
pub mod report;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use abel_core::construct::{
    from_three_solutions, from_two_solutions, ThreeSolutionSpec, TwoSolutionSpec,
};
use abel_core::diagram::AbelEquation;
use abel_core::ndcheck::FieldMode;
use abel_core::solver::{solve_with, SolveOptions};
use abel_core::structure::count_bound;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use document::EquationDocument;
use report::{bound_doc, BoundDoc, CountDoc, ReportDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_STRICT_ND: i32 = 3;
pub const EXIT_CONSTRUCT: i32 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("invalid equation: {0}")]
    Invalid(String),
    #[error("cannot read input: {0}")]
    Io(String),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Field {
    Real,
    Complex,
}

impl From<Field> for FieldMode {
    fn from(f: Field) -> Self {
        match f {
            Field::Real => FieldMode::Real,
            Field::Complex => FieldMode::Complex,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "abelrat",
    version,
    about = "Rational solutions of x' = A3 x^n3 + A2 x^n2 + A1 x^n1"
)]
pub struct Cli {
    /// Human-readable summary on standard error.
    #[arg(long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Equation document; standard input when absent or `-`.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "real")]
    pub field: Field,
    /// Exit with code 3 when nondegeneracy fails.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Candidate degrees, edge profiles and the nondegeneracy verdict.
    Analyze(InputArgs),
    /// The nondegeneracy verdict alone.
    Nd(InputArgs),
    /// All rational solutions, with bounds and scaling orbits.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        /// Also run the divisor oracle and report agreement.
        #[arg(long)]
        oracle: bool,
        /// Last series index to compute (at least 2r + 1).
        #[arg(long)]
        max_series_order: Option<usize>,
        /// Add labeled decimal approximations of algebraic data.
        #[arg(long)]
        approx: bool,
    },
    /// Solution counts against the applicable bound.
    Bound(InputArgs),
    /// The equation having the given denominators as solutions.
    Construct {
        #[arg(long, allow_hyphen_values = true)]
        p1: String,
        #[arg(long, allow_hyphen_values = true)]
        p2: String,
        #[arg(long, allow_hyphen_values = true)]
        p3: Option<String>,
        /// Required with two solutions.
        #[arg(long, allow_hyphen_values = true)]
        a1: Option<String>,
        /// `n1,n2,n3`.
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<usize>,
    },
}

#[derive(Debug, Serialize)]
struct NdReport {
    command: &'static str,
    mode: FieldMode,
    equation: EquationDocument,
    nd: abel_core::ndcheck::NDVerdict,
}

#[derive(Debug, Serialize)]
struct BoundOutput {
    command: &'static str,
    mode: FieldMode,
    equation: EquationDocument,
    gamma_sol: Vec<usize>,
    count: CountDoc,
    bound: BoundDoc,
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let mut io = Io { stdin, out, err };
    match dispatch(&cli, &mut io) {
        Ok(code) => code,
        Err((code, msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            code
        }
    }
}

fn read_equation(args: &InputArgs, io: &mut Io) -> Result<AbelEquation, (i32, String)> {
    let mut text = String::new();
    let read = match &args.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map(|t| text = t),
        _ => io.stdin.read_to_string(&mut text).map(|_| ()),
    };
    read.map_err(|e| (EXIT_PARSE, InputError::Io(e.to_string()).to_string()))?;
    EquationDocument::parse(&text)
        .map(|(_, eq)| eq)
        .map_err(|e| (EXIT_PARSE, e.to_string()))
}

fn emit<T: Serialize>(value: &T, io: &mut Io) -> Result<(), (i32, String)> {
    let s = serde_json::to_string_pretty(value).expect("serializable report");
    writeln!(io.out, "{s}").map_err(|e| (EXIT_PARSE, e.to_string()))
}

fn strict_code(strict: bool, holds: bool) -> i32 {
    if strict && !holds {
        EXIT_STRICT_ND
    } else {
        EXIT_OK
    }
}

fn dispatch(cli: &Cli, io: &mut Io) -> Result<i32, (i32, String)> {
    match &cli.command {
        Command::Analyze(a) => {
            let eq = read_equation(a, io)?;
            let rep = report::analysis("analyze", &eq, a.field.into());
            finish(cli, &rep, io)?;
            Ok(strict_code(a.strict, rep.nd.holds))
        }
        Command::Nd(a) => {
            let eq = read_equation(a, io)?;
            let mode = a.field.into();
            let nd = abel_core::ndcheck::check_nd(&eq, mode);
            let holds = nd.holds;
            emit(
                &NdReport {
                    command: "nd",
                    mode,
                    equation: EquationDocument::from_equation(&eq),
                    nd,
                },
                io,
            )?;
            if cli.verbose {
                let _ = writeln!(
                    io.err,
                    "nondegeneracy ({mode:?}): {}",
                    if holds { "holds" } else { "fails" }
                );
            }
            Ok(strict_code(a.strict, holds))
        }
        Command::Solve {
            input,
            oracle,
            max_series_order,
            approx,
        } => {
            let eq = read_equation(input, io)?;
            let mode = input.field.into();
            let set = solve_with(
                &eq,
                &SolveOptions {
                    mode,
                    max_series_order: *max_series_order,
                    oracle: *oracle,
                },
            );
            let mut rep = report::analysis("solve", &eq, mode);
            rep.solve = Some(report::solve_doc(&eq, &set, *approx));
            finish(cli, &rep, io)?;
            Ok(strict_code(input.strict, rep.nd.holds))
        }
        Command::Bound(a) => {
            let eq = read_equation(a, io)?;
            let mode = a.field.into();
            let set = solve_with(
                &eq,
                &SolveOptions {
                    mode,
                    ..SolveOptions::default()
                },
            );
            let b = count_bound(&eq, &set, mode);
            let doc = BoundOutput {
                command: "bound",
                mode,
                equation: EquationDocument::from_equation(&eq),
                gamma_sol: set.gamma_sol.clone(),
                count: CountDoc {
                    complex: set.count_complex,
                    real: set.count_real,
                },
                bound: bound_doc(&b),
            };
            emit(&doc, io)?;
            if cli.verbose {
                let _ = writeln!(
                    io.err,
                    "case {}: realized {} <= bound {}",
                    doc.bound.case, b.realized, b.bound
                );
            }
            Ok(strict_code(a.strict, set.nd.holds))
        }
        Command::Construct {
            p1,
            p2,
            p3,
            a1,
            exponents,
        } => construct(cli, io, [p1, p2], p3.as_deref(), a1.as_deref(), exponents),
    }
}

fn finish(cli: &Cli, rep: &ReportDocument, io: &mut Io) -> Result<(), (i32, String)> {
    emit(rep, io)?;
    if cli.verbose {
        let _ = writeln!(io.err, "{}", report::summary(rep));
    }
    Ok(())
}

fn poly_arg(name: &str, s: &str) -> Result<abel_core::exactalg::RatPoly, (i32, String)> {
    expr::parse_poly(s).map_err(|e| (EXIT_PARSE, format!("--{name}: parse error at {e}")))
}

fn construct(
    cli: &Cli,
    io: &mut Io,
    p: [&String; 2],
    p3: Option<&str>,
    a1: Option<&str>,
    exponents: &[usize],
) -> Result<i32, (i32, String)> {
    let n: [usize; 3] = exponents
        .try_into()
        .map_err(|_| (EXIT_PARSE, "--exponents needs n1,n2,n3".to_string()))?;
    let p1 = poly_arg("p1", p[0])?;
    let p2 = poly_arg("p2", p[1])?;
    let built = match (p3, a1) {
        (Some(p3), _) => {
            let p3 = poly_arg("p3", p3)?;
            from_three_solutions(&ThreeSolutionSpec {
                p: [p1, p2, p3],
                exponents: n,
            })
        }
        (None, Some(a1)) => {
            let a1 = poly_arg("a1", a1)?;
            from_two_solutions(&TwoSolutionSpec {
                p1,
                p2,
                a1,
                exponents: n,
            })
        }
        (None, None) => return Err((EXIT_PARSE, "--a1 is required with two solutions".into())),
    };
    let eq = built.map_err(|e| (EXIT_CONSTRUCT, e.to_string()))?;
    emit(&EquationDocument::from_equation(&eq), io)?;
    if cli.verbose {
        for i in 1..=3 {
            let _ = writeln!(io.err, "A{i} = {}", expr::render(eq.coeff(i)));
        }
    }
    Ok(EXIT_OK)
}
