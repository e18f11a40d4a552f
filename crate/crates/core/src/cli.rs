//! Command-line front end.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gt_basis::{enumerate_patterns, HighestWeight, IrrepBasis};
use crate::numerics::{parse_rational, Field, Rational};
use crate::oracle::rho_oracle_angles;
use crate::racah_algebra::{hilbert_series_coeffs, SeriesMethod};
use crate::rep::{element_matrix, AlgebraElement, PatternMatrix};
use crate::report::Report;
use crate::rotations::{sigma_formula, sigma_product, tau, tau_inverse, EulerAngles};
use crate::specfun::{krawtchouk, racah_tilde, KrawtchoukParams, RacahParams};
use crate::suites::{self, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const ORDER: &str = "l21,l22,l11-lex";

#[derive(Parser, Debug)]
#[command(name = "gtrotor", version, about = "Exact sl3 irreps in the Gelfand-Tsetlin basis and SO(3) rotation matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Path {
    Formula,
    Product,
    Oracle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Rep,
    Polys,
    Rotations,
    Bispectral,
    RacahAlgebra,
    Hilbert,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Rep => Suite::Rep,
            SuiteArg::Polys => Suite::Polys,
            SuiteArg::Rotations => Suite::Rotations,
            SuiteArg::Bispectral => Suite::Bispectral,
            SuiteArg::RacahAlgebra => Suite::RacahAlgebra,
            SuiteArg::Hilbert => Suite::Hilbert,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the GT patterns of an irrep in canonical order.
    Patterns {
        /// Highest weight `l31,l32,l33`.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Matrix of a generator or distinguished element.
    RepMatrix {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        /// `eij`, `C2`, `C3`, `J`, `Y`, `H`, `H1`, `H2`, `h`, `y`.
        #[arg(long)]
        element: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The transition matrix τ (or its inverse).
    Tau {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long)]
        inverse: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Matrix of the rotation with Euler angles `χ,θ,φ`.
    Sigma {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        /// Each angle is `s:c` (exact sine:cosine) or `rad=<float>`.
        #[arg(long, allow_hyphen_values = true)]
        angles: String,
        #[arg(long, value_enum, default_value = "product")]
        path: Path,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Evaluate orthogonal polynomials.
    Polys {
        #[command(subcommand)]
        action: PolysAction,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 4)]
        max_height: i64,
        /// Include per-check wall times.
        #[arg(long)]
        timings: bool,
    },
    /// Coefficients of the Hilbert series of the centralizer.
    Hilbert {
        #[arg(long, default_value_t = 20)]
        max_degree: usize,
    },
}

#[derive(Subcommand, Debug)]
enum PolysAction {
    Eval {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Krawtchouk probability.
        #[arg(long)]
        p: Option<String>,
        /// Krawtchouk length `N`.
        #[arg(long = "big-n")]
        big_n: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Krawtchouk,
    Racah,
}

/// Parses `argv` (including the program name), runs the command and returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match threads_from_env() {
        Ok(Some(n)) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(cli.command)),
            Err(e) => Err(Error::InvalidParameter(e.to_string())),
        },
        Ok(None) => execute(cli.command),
        Err(e) => Err(e),
    };
    match result {
        Ok((value, code)) => {
            let _ = writeln!(out, "{}", render(&value));
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var("GTROTOR_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::InvalidParameter(format!("GTROTOR_THREADS={v}"))),
        },
        Err(_) => Ok(None),
    }
}

enum Output {
    Json(Value),
    Text(String),
}

fn render(o: &Output) -> String {
    match o {
        Output::Json(v) => serde_json::to_string_pretty(v).expect("serializable"),
        Output::Text(t) => t.trim_end().to_string(),
    }
}

fn basis_of(weight: &str) -> Result<IrrepBasis> {
    enumerate_patterns(&HighestWeight::parse(weight)?)
}

fn matrix_output<T: Field>(
    m: &PatternMatrix<T>,
    format: Format,
    header: Value,
    cell: impl Fn(&T) -> Value,
) -> Output {
    match format {
        Format::Json => {
            let mut v = header;
            let entries: Vec<Value> = m.entries().map(|(r, c, x)| json!([r, c, cell(x)])).collect();
            v["order"] = json!(ORDER);
            v["entries"] = Value::Array(entries);
            Output::Json(v)
        }
        Format::Csv => {
            let mut s = String::from("row,col,value\n");
            for (r, c, x) in m.entries() {
                let text = match cell(x) {
                    Value::String(t) => t,
                    other => other.to_string(),
                };
                s.push_str(&format!("{r},{c},{text}\n"));
            }
            Output::Text(s)
        }
    }
}

fn exact_cell(q: &Rational) -> Value {
    json!(q.to_string())
}

fn float_cell(x: &f64) -> Value {
    json!(x)
}

fn execute(cmd: Command) -> Result<(Output, i32)> {
    match cmd {
        Command::Patterns { weight } => {
            let b = basis_of(&weight)?;
            let patterns: Vec<String> = (0..b.dim()).map(|i| b.display_pattern(i)).collect();
            Ok((
                Output::Json(json!({
                    "weight": b.weight().to_string(),
                    "dimension": b.dim(),
                    "order": ORDER,
                    "patterns": patterns,
                })),
                EXIT_OK,
            ))
        }
        Command::RepMatrix { weight, element, format } => {
            let b = basis_of(&weight)?;
            let g: AlgebraElement = element.parse()?;
            let m = element_matrix(g, &b);
            let header = json!({"weight": b.weight().to_string(), "element": g.to_string()});
            Ok((matrix_output(&m, format, header, exact_cell), EXIT_OK))
        }
        Command::Tau { weight, inverse, format } => {
            let b = basis_of(&weight)?;
            let m = if inverse { tau_inverse(&b)? } else { tau(&b)? };
            let header = json!({"weight": b.weight().to_string(), "matrix": if inverse { "tau_inverse" } else { "tau" }});
            Ok((matrix_output(&m, format, header, exact_cell), EXIT_OK))
        }
        Command::Sigma { weight, angles, path, format } => {
            let b = basis_of(&weight)?;
            let a = EulerAngles::parse(&angles)?;
            let exact = a.is_exact();
            let header = json!({
                "weight": b.weight().to_string(),
                "angles": {
                    "chi": a.chi.to_string(),
                    "theta": a.theta.to_string(),
                    "phi": a.phi.to_string(),
                    "mode": if exact { "exact" } else { "float" },
                },
                "path": match path { Path::Formula => "formula", Path::Product => "product", Path::Oracle => "oracle" },
            });
            let out = match (path, exact) {
                (Path::Formula, true) => matrix_output(&sigma_formula::<Rational>(&a, &b)?, format, header, exact_cell),
                (Path::Product, true) => matrix_output(&sigma_product::<Rational>(&a, &b)?, format, header, exact_cell),
                (Path::Formula, false) => matrix_output(&sigma_formula::<f64>(&a, &b)?, format, header, float_cell),
                (Path::Product, false) => matrix_output(&sigma_product::<f64>(&a, &b)?, format, header, float_cell),
                (Path::Oracle, _) => matrix_output(&rho_oracle_angles(&a, &b)?, format, header, float_cell),
            };
            Ok((out, EXIT_OK))
        }
        Command::Polys { action } => polys(action),
        Command::Verify { suite, max_height, timings } => {
            if max_height < 0 {
                return Err(Error::InvalidParameter(format!("max height {max_height}")));
            }
            let mut report = suites::run(suite.into(), max_height);
            if !timings {
                report.strip_timings();
            }
            report.suite = Suite::from(suite).name().to_string();
            Ok(verify_output(&report))
        }
        Command::Hilbert { max_degree } => {
            let closed = hilbert_series_coeffs(max_degree, SeriesMethod::ClosedForm);
            let comb = hilbert_series_coeffs(max_degree, SeriesMethod::Combinatorial);
            let pass = closed == comb;
            Ok((
                Output::Json(json!({
                    "max_degree": max_degree,
                    "closed_form": closed,
                    "combinatorial": comb,
                    "status": if pass { "PASS" } else { "FAIL" },
                })),
                if pass { EXIT_OK } else { EXIT_FAILED },
            ))
        }
    }
}

fn verify_output(report: &Report) -> (Output, i32) {
    let passed = report.checks.iter().filter(|c| c.passed()).count();
    let mut v = serde_json::to_value(report).expect("serializable");
    v["passed"] = json!(passed);
    v["failed"] = json!(report.checks.len() - passed);
    (Output::Json(v), if report.passed() { EXIT_OK } else { EXIT_FAILED })
}

fn required<T>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidParameter(format!("--{name} is required for this family")))
}

fn polys(action: PolysAction) -> Result<(Output, i32)> {
    let PolysAction::Eval { family, n, x, p, big_n, alpha, beta, gamma, delta } = action;
    let xq = parse_rational(&x)?;
    let value = match family {
        Family::Krawtchouk => {
            let params = KrawtchoukParams::new(parse_rational(&required(p.clone(), "p")?)?, required(big_n, "big-n")?)?;
            json!({
                "family": "krawtchouk",
                "n": n,
                "x": xq.to_string(),
                "p": params.p.to_string(),
                "N": params.n_max,
                "value": krawtchouk(n, &xq, &params).to_string(),
            })
        }
        Family::Racah => {
            let q = |v: Option<String>, name: &str| -> Result<Rational> { parse_rational(&required(v, name)?) };
            let params = RacahParams::new(q(alpha, "alpha")?, q(beta, "beta")?, q(gamma, "gamma")?, q(delta, "delta")?);
            let value = racah_tilde(n, &xq, &params)?;
            json!({
                "family": "racah",
                "n": n,
                "x": xq.to_string(),
                "alpha": params.alpha.to_string(),
                "beta": params.beta.to_string(),
                "gamma": params.gamma.to_string(),
                "delta": params.delta.to_string(),
                "window": params.window().map(|w| w.to_string()),
                "value": value.to_string(),
            })
        }
    };
    Ok((Output::Json(value), EXIT_OK))
}
