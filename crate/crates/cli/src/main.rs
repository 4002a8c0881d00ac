//! `derquot`: derived quotients, contraction algebras, stable Ext and
//! singularity invariants from the command line.

mod commands;
mod report;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use derquot::derived::BarModel;
use derquot::exactlin::{FieldSpec, PrimeField, Rationals};
use derquot::matfac::{MfFile, DEFAULT_ORDERS};
use derquot::quiver::QuiverFile;
use derquot::singlocal::DEFAULT_SCHEDULE;

use commands::{AlgebraInput, DqOptions, IdempotentSpec};
use report::{render_human, CliError, Outcome, RunReport};

#[derive(Parser, Debug)]
#[command(name = "derquot", version, about = "Exact derived quotients of finite-dimensional algebras and stable Ext over hypersurfaces")]
struct Cli {
    /// Coefficient field: Q or Fp:<p>. Defaults to the input file's field, else Q.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Also write the machine-readable report to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelArg {
    Full,
    Normalized,
}

impl From<ModelArg> for BarModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Full => BarModel::Full,
            ModelArg::Normalized => BarModel::Normalized,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cohomology of the derived quotient A/^L AeA in a window [a, b] with b <= 0.
    DqCohomology {
        /// Quiver file or algebra file (JSON).
        file: PathBuf,
        /// unit, zero, a vertex list such as 1,2, or coords:c1,c2,… for algebra files.
        #[arg(long, short = 'e')]
        idempotent: String,
        /// Degree window a..b.
        #[arg(long, default_value = "-2..0", allow_hyphen_values = true)]
        window: String,
        /// Bar truncation depth (default: one more than the window depth).
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, value_enum, default_value = "full")]
        model: ModelArg,
        /// Override the quiver file's degree bound.
        #[arg(long)]
        degree_bound: Option<usize>,
        /// Search for the degree -2 periodicity class.
        #[arg(long)]
        eta: bool,
        /// Experimental HH^0 at these truncation depths, e.g. 1,2,3.
        #[arg(long)]
        hh0: Option<String>,
        /// Include the differential out of this degree in the JSON report.
        #[arg(long)]
        export_degree: Option<usize>,
    },
    /// The contraction algebra A/AeA where e sums the given vertices.
    Contraction {
        file: PathBuf,
        /// Vertices to kill, e.g. 1 or 1,2.
        #[arg(long, short = 'S')]
        vertices: String,
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Stable Ext between matrix factorizations in a window.
    StableExt {
        /// Matrix factorization file for M.
        file: PathBuf,
        /// Second factorization N (default: N = M).
        #[arg(long)]
        with: Option<PathBuf>,
        #[arg(long, default_value = "-4..4", allow_hyphen_values = true)]
        window: String,
        /// Truncation orders, e.g. 4,5,6,8,10.
        #[arg(long)]
        schedule: Option<String>,
    },
    /// Milnor and Tjurina numbers of a potential.
    Sing {
        /// The potential, e.g. "x^3 + y^3".
        potential: String,
        /// Variable names, e.g. x,y (default: the letters in the potential, sorted).
        #[arg(long)]
        vars: Option<String>,
        #[arg(long)]
        schedule: Option<String>,
    },
    /// Compare both pipelines on R = k[x]/x^n, M = k[x]/x^m.
    Crosscheck {
        n: usize,
        m: usize,
        #[arg(long, default_value = "-4..0", allow_hyphen_values = true)]
        window: String,
        #[arg(long, value_enum, default_value = "full")]
        model: ModelArg,
        #[arg(long)]
        schedule: Option<String>,
    },
}

fn parse_window(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Input(format!("bad window {s:?}: expected a..b with integers a <= b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// A window inside nonpositive degrees, as `(depth, top)` meaning `[-depth, -top]`.
fn nonpositive_window(s: &str) -> Result<(usize, usize), CliError> {
    let (a, b) = parse_window(s)?;
    if b > 0 {
        return Err(CliError::Input(format!("window {s:?} must lie in degrees <= 0")));
    }
    Ok(((-a) as usize, (-b) as usize))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    let out = s
        .split(',')
        .map(|x| x.trim().parse::<T>())
        .collect::<Result<Vec<T>, _>>()
        .map_err(|_| CliError::Input(format!("bad {what} {s:?}: expected a comma-separated list")))?;
    if out.is_empty() {
        return Err(CliError::Input(format!("empty {what}")));
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn field_spec(flag: &Option<String>, file: Option<FieldSpec>) -> Result<FieldSpec, CliError> {
    match flag {
        Some(s) => s.parse().map_err(|e| CliError::Input(format!("{e}"))),
        None => Ok(file.unwrap_or_default()),
    }
}

/// Runs `$body` with `$f` bound to the field named by `$spec`.
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                let $f = &Rationals;
                $body
            }
            FieldSpec::Prime(p) => {
                let $f = &PrimeField::new(p).map_err(|e| CliError::Input(e.to_string()))?;
                $body
            }
        }
    };
}

/// Executes the command; returns the outcome and the bytes digested as its input.
fn run(cli: &Cli) -> Result<(Outcome, Vec<u8>), CliError> {
    match &cli.command {
        Command::DqCohomology {
            file,
            idempotent,
            window,
            depth,
            model,
            degree_bound,
            eta,
            hh0,
            export_degree,
        } => {
            let text = read(file)?;
            let input = AlgebraInput::parse(&text)?;
            let file_field = match &input {
                AlgebraInput::Algebra(a) => Some(a.field),
                AlgebraInput::Quiver(_) => None,
            };
            let (w, top) = nonpositive_window(window)?;
            let opts = DqOptions {
                idempotent: IdempotentSpec::parse(idempotent).map_err(CliError::Input)?,
                window: w,
                top,
                depth: depth.unwrap_or(w + 1),
                model: (*model).into(),
                degree_bound: *degree_bound,
                eta: *eta,
                hh0: hh0.as_deref().map(|s| parse_list(s, "HH^0 schedule")).transpose()?,
                export_degree: *export_degree,
            };
            let out = with_field!(field_spec(&cli.field, file_field)?, |f| commands::dq_cohomology(f, &input, &opts)?);
            Ok((out, text.into_bytes()))
        }
        Command::Contraction {
            file,
            vertices,
            degree_bound,
        } => {
            let text = read(file)?;
            let q: QuiverFile = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("invalid quiver file: {e}")))?;
            let kill: BTreeSet<usize> = parse_list(vertices, "vertex set")?.into_iter().collect();
            let out = with_field!(field_spec(&cli.field, None)?, |f| commands::contraction(f, &q, &kill, *degree_bound)?);
            Ok((out, text.into_bytes()))
        }
        Command::StableExt {
            file,
            with,
            window,
            schedule,
        } => {
            let text = read(file)?;
            let parse = |t: &str| -> Result<MfFile, CliError> {
                serde_json::from_str(t).map_err(|e| CliError::Input(format!("invalid matrix factorization file: {e}")))
            };
            let m = parse(&text)?;
            let mut digest_input = text.clone().into_bytes();
            let n = match with {
                Some(path) => {
                    let t = read(path)?;
                    digest_input.push(0);
                    digest_input.extend_from_slice(t.as_bytes());
                    Some(parse(&t)?)
                }
                None => None,
            };
            let window = parse_window(window)?;
            let schedule = match schedule {
                Some(s) => parse_list(s, "schedule")?,
                None => DEFAULT_ORDERS.to_vec(),
            };
            let out = with_field!(field_spec(&cli.field, m.field)?, |f| commands::stable_ext_cmd(
                f,
                &m,
                n.as_ref(),
                window,
                &schedule
            )?);
            Ok((out, digest_input))
        }
        Command::Sing {
            potential,
            vars,
            schedule,
        } => {
            let vars = match vars {
                Some(v) => parse_list::<String>(v, "variable list")?,
                None => commands::infer_variables(potential),
            };
            let schedule = match schedule {
                Some(s) => parse_list(s, "schedule")?,
                None => DEFAULT_SCHEDULE.to_vec(),
            };
            let out = with_field!(field_spec(&cli.field, None)?, |f| commands::sing(f, potential, &vars, &schedule)?);
            Ok((out, format!("{potential}\0{}", vars.join(",")).into_bytes()))
        }
        Command::Crosscheck {
            n,
            m,
            window,
            model,
            schedule,
        } => {
            let (w, top) = nonpositive_window(window)?;
            if top != 0 {
                return Err(CliError::Input("the cross-check window must end at degree 0".into()));
            }
            let schedule = match schedule {
                Some(s) => parse_list(s, "schedule")?,
                None => DEFAULT_ORDERS.to_vec(),
            };
            let out = with_field!(field_spec(&cli.field, None)?, |f| commands::crosscheck(
                f,
                *n,
                *m,
                w,
                (*model).into(),
                &schedule
            )?);
            Ok((out, format!("{n},{m}").into_bytes()))
        }
    }
}

/// The command line as given, minus the `--json` destination, so that reports
/// of identical runs are identical wherever they are written.
fn command_echo() -> Vec<String> {
    let mut out = Vec::new();
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        if a == "--json" {
            args.next();
        } else if !a.starts_with("--json=") {
            out.push(a);
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok((outcome, input)) => {
            print!("{}", render_human(&outcome, start.elapsed().as_secs_f64()));
            if let Some(path) = &cli.json {
                if let Err(e) = RunReport::new(command_echo(), &input, &outcome).write(path) {
                    eprintln!("derquot: {e}");
                    return ExitCode::from(e.exit_code() as u8);
                }
            }
            if outcome.disagreement {
                eprintln!("derquot: the two pipelines disagree");
                return ExitCode::from(4);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("derquot: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windows() {
        assert_eq!(parse_window("-4..0").unwrap(), (-4, 0));
        assert_eq!(nonpositive_window("-2..-1").unwrap(), (2, 1));
        assert!(parse_window("0..-1").is_err());
        assert!(nonpositive_window("-1..2").is_err());
        assert!(parse_window("x").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
