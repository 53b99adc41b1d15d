use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ttl_core::braid::{BraidWord, ParamError, TwistedTorusParams};
use ttl_core::classify::{classify, ClassifyError, Verdict};
use ttl_core::closed_form::{ttl_aux_closed, ttl_bracket_closed, ttl_jones, FormulaError};
use ttl_core::laurent::LaurentPoly;
use ttl_core::oracle::{self, DEFAULT_CROSSING_LIMIT};
use ttl_core::verify::{
    parameter_grid, verify_tuples, VerifyOptions, DEFAULT_VERIFY_CROSSING_LIMIT,
};

const EXIT_FAILURE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_ODD_S: u8 = 3;

/// Kauffman bracket and Jones polynomials of twisted torus links T((p,q),(2,s)).
#[derive(Parser)]
#[command(name = "ttl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one polynomial from the closed form.
    Compute {
        #[command(flatten)]
        tuple: Tuple,
        #[arg(long, value_enum, default_value_t = What::Jones)]
        what: What,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Allow odd s (two-component links) for the Jones polynomial.
        #[arg(long)]
        allow_odd_s: bool,
    },
    /// Compare closed form, recursion and state-sum oracle over a grid.
    Verify {
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long, default_value_t = DEFAULT_VERIFY_CROSSING_LIMIT)]
        crossing_limit: usize,
        /// Corrupt a constant of the closed form. Testing only.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Decide Jones triviality and check it against the unknot table.
    Classify {
        #[command(flatten)]
        tuple: Tuple,
    },
    /// Jones polynomials and verdicts for every even s in the grid.
    Table {
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Run the state-sum oracle on a braid word read from a file or stdin.
    Oracle {
        /// Path to the braid, or `-` for stdin.
        #[arg(long)]
        braid: PathBuf,
        #[arg(long, value_enum, default_value_t = What::Jones)]
        what: What,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_CROSSING_LIMIT)]
        crossing_limit: usize,
    },
}

#[derive(clap::Args)]
struct Tuple {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    q: i64,
    #[arg(long, allow_negative_numbers = true)]
    s: i64,
}

#[derive(clap::Args)]
struct Bounds {
    #[arg(long)]
    pmax: i64,
    #[arg(long)]
    qmax: i64,
    #[arg(long)]
    smax: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Bracket,
    Aux,
    Jones,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Latex,
}

/// One line of `table --format json`.
#[derive(Serialize)]
struct Row<'a> {
    p: i64,
    q: i64,
    s: i64,
    jones: &'a LaurentPoly,
    verdict: Verdict,
    trivial: bool,
    consistent: bool,
}

struct Failure {
    code: u8,
    message: String,
    /// Report printed to stdout before exiting.
    stdout: String,
}

impl Failure {
    fn new(code: u8, message: impl ToString) -> Self {
        Failure {
            code,
            message: message.to_string(),
            stdout: String::new(),
        }
    }
}

impl From<ParamError> for Failure {
    fn from(e: ParamError) -> Self {
        Failure::new(EXIT_INVALID, e)
    }
}

impl From<FormulaError> for Failure {
    fn from(e: FormulaError) -> Self {
        let code = match e {
            FormulaError::Params(_) | FormulaError::InvalidTorus { .. } => EXIT_INVALID,
            FormulaError::OddS(_) => EXIT_ODD_S,
            _ => EXIT_FAILURE,
        };
        Failure::new(code, e)
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Formula(f) => f.into(),
            ClassifyError::OddS(_) => Failure::new(EXIT_ODD_S, e),
            ClassifyError::NotEvenNegative(_) => Failure::new(EXIT_INVALID, e),
        }
    }
}

fn render(poly: &LaurentPoly, format: Format) -> String {
    match format {
        Format::Json => poly.to_json(),
        Format::Latex => poly.to_latex(),
        Format::Text => poly.to_text(),
    }
}

fn params(t: &Tuple) -> Result<TwistedTorusParams, Failure> {
    Ok(TwistedTorusParams::new(t.p, t.q, t.s)?)
}

fn check_bounds(b: &Bounds) -> Result<(), Failure> {
    if b.pmax < 1 || b.qmax < 1 || b.smax < 1 {
        return Err(Failure::new(
            EXIT_INVALID,
            format!(
                "bounds must be positive, got pmax={} qmax={} smax={}",
                b.pmax, b.qmax, b.smax
            ),
        ));
    }
    Ok(())
}

fn cmd_compute(
    tuple: &Tuple,
    what: What,
    format: Format,
    allow_odd_s: bool,
) -> Result<String, Failure> {
    let params = params(tuple)?;
    let poly = match what {
        What::Bracket => ttl_bracket_closed(&params)?,
        What::Aux => ttl_aux_closed(&params)?,
        What::Jones => ttl_jones(&params, allow_odd_s)?,
    };
    Ok(render(&poly, format) + "\n")
}

fn cmd_verify(
    bounds: &Bounds,
    crossing_limit: usize,
    inject_fault: bool,
) -> Result<String, Failure> {
    check_bounds(bounds)?;
    let grid = parameter_grid(
        bounds.pmax,
        bounds.qmax,
        (-bounds.smax..=bounds.smax).filter(|&s| s != 0),
    );
    let opts = VerifyOptions {
        crossing_limit,
        inject_fault,
    };
    let report = verify_tuples(&grid, &opts).map_err(|e| Failure::new(EXIT_FAILURE, e))?;
    let mut out = String::new();
    for check in report.failures() {
        out.push_str(&format!(
            "FAIL {} ({} crossings)\n",
            check.params, check.crossings
        ));
        for line in check.mismatches() {
            out.push_str(&format!("  {line}\n"));
        }
    }
    let failed = report.checks.len() - report.passed();
    out.push_str(&format!(
        "checked {} passed {} failed {} skipped {}\n",
        report.checks.len(),
        report.passed(),
        failed,
        report.skipped.len()
    ));
    if failed > 0 {
        return Err(Failure {
            stdout: out,
            ..Failure::new(EXIT_FAILURE, format!("{failed} tuples disagree"))
        });
    }
    Ok(out)
}

fn cmd_classify(tuple: &Tuple) -> Result<String, Failure> {
    let result = classify(&params(tuple)?)?;
    let json = result.to_json();
    if !result.consistent {
        return Err(Failure::new(EXIT_FAILURE, format!("inconsistent: {json}")));
    }
    Ok(json + "\n")
}

fn cmd_table(bounds: &Bounds, format: TableFormat) -> Result<String, Failure> {
    check_bounds(bounds)?;
    let s_values = (-bounds.smax..=bounds.smax).filter(|s| s % 2 == 0 && *s != 0);
    let mut rows = Vec::new();
    for params in parameter_grid(bounds.pmax, bounds.qmax, s_values) {
        let jones = ttl_jones(&params, false)?;
        let result = classify(&params)?;
        rows.push((params, jones, result));
    }
    let out = match format {
        TableFormat::Json => {
            let lines: Vec<String> = rows
                .iter()
                .map(|(params, jones, r)| {
                    let row = Row {
                        p: params.p(),
                        q: params.q(),
                        s: params.s(),
                        jones,
                        verdict: r.verdict,
                        trivial: r.jones_is_trivial,
                        consistent: r.consistent,
                    };
                    format!("  {}", serde_json::to_string(&row).expect("rows serialize"))
                })
                .collect();
            if lines.is_empty() {
                "[]\n".to_string()
            } else {
                format!("[\n{}\n]\n", lines.join(",\n"))
            }
        }
        TableFormat::Latex => {
            let mut out = String::from(
                "\\begin{tabular}{rrrll}\n$p$ & $q$ & $s$ & $V(t)$ & verdict \\\\\n\\hline\n",
            );
            for (params, jones, r) in &rows {
                out.push_str(&format!(
                    "{} & {} & {} & ${}$ & \\texttt{{{}}} \\\\\n",
                    params.p(),
                    params.q(),
                    params.s(),
                    jones.to_latex(),
                    r.verdict
                ));
            }
            out.push_str("\\end{tabular}\n");
            out
        }
    };
    Ok(out)
}

fn cmd_oracle(path: &PathBuf, what: What, format: Format, limit: usize) -> Result<String, Failure> {
    let mut text = String::new();
    let read = if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::new(EXIT_FAILURE, format!("{}: {e}", path.display())))?;
    let word: BraidWord = text.parse().map_err(|e| Failure::new(EXIT_INVALID, e))?;
    let poly = match what {
        What::Bracket => oracle::kauffman_bracket_with_limit(&word.closure_diagram(), limit),
        What::Aux => oracle::aux_via_oracle_with_limit(&word, limit),
        What::Jones => oracle::jones_via_oracle_with_limit(&word, false, limit),
    }
    .map_err(|e| Failure::new(EXIT_INVALID, e))?;
    Ok(render(&poly, format) + "\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute {
            tuple,
            what,
            format,
            allow_odd_s,
        } => cmd_compute(tuple, *what, *format, *allow_odd_s),
        Command::Verify {
            bounds,
            crossing_limit,
            inject_fault,
        } => cmd_verify(bounds, *crossing_limit, *inject_fault),
        Command::Classify { tuple } => cmd_classify(tuple),
        Command::Table { bounds, format } => cmd_table(bounds, *format),
        Command::Oracle {
            braid,
            what,
            format,
            crossing_limit,
        } => cmd_oracle(braid, *what, *format, *crossing_limit),
    };
    match result {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).is_err() {
                return ExitCode::from(EXIT_FAILURE);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            print!("{}", f.stdout);
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
