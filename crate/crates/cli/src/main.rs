//! `fuzzopt`: command-line front end for the fuzzy optimization toolkit.

mod error;
mod input;
mod reproduce;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::FalseyValueParser;
use clap::{Parser, Subcommand};
use fuzzopt_core::cones::{intersection_empty_sampled, ConeReport, FeasibleSet, DEFAULT_TRIALS};
use fuzzopt_core::fuzzy::{compare, gh_difference, FuzzyMatrix, FuzzyVector};
use fuzzopt_core::gordan::{gordan_matrix_decide, gordan_vector_decide};
use fuzzopt_core::optimality::{fritz_john_find, fritz_john_verify, kkt_find, kkt_verify, FuzzyProblem};
use fuzzopt_core::svm::{svm_bias_set, svm_margin_report, svm_solve, svm_verify, FuzzyDataset, SvmCaps};
use fuzzopt_core::{CutFamily, FuzzyNumber, Interval, LevelGrid, Settings};
use serde::Serialize;
use serde_json::{json, Value};

use error::CliError;
use input::{parse_json, read_json};
use reproduce::Example;

const SCHEMA: &str = "fuzzopt/1";

#[derive(Debug, Parser)]
#[command(name = "fuzzopt", version, about = "Fuzzy optimization: cuts, orders, cones, Gordan alternatives, FJ/KKT and SVM")]
struct Cli {
    /// Number of uniform membership levels checked besides shape breakpoints.
    #[arg(long, global = true, env = "FUZZOPT_GRID", default_value_t = 11)]
    grid: usize,
    /// Tolerance for order and zero-membership checks.
    #[arg(long, global = true, env = "FUZZOPT_TOL", default_value_t = 1e-9)]
    tol: f64,
    /// Seed for direction and convexity sampling.
    #[arg(long, global = true, env = "FUZZOPT_SEED", default_value_t = 42)]
    seed: u64,
    /// Emit a `rho,lo,hi` table instead of JSON (cuts, gh, svm).
    #[arg(long, global = true, env = "FUZZOPT_EMIT_CSV", value_parser = FalseyValueParser::new())]
    emit_csv: bool,
    /// Write the result here instead of standard output.
    #[arg(long, global = true, env = "FUZZOPT_OUT")]
    out: Option<PathBuf>,
    /// Worker threads for parallel solvers (default: all cores).
    #[arg(long, global = true, env = "FUZZOPT_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Level cuts of a fuzzy number given as JSON, e.g. '{"tri":[2,3,7]}'.
    Cuts {
        #[arg(long)]
        number: String,
        /// Uniform levels for this table; overrides --grid.
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Level-wise gH-difference a ⊖ b.
    Gh {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Endpoint order of a against b.
    Compare {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Sampled check that no direction is both descent and feasible.
    Cones {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        point: Vec<f64>,
        /// Box lower corner; with --hi, replaces the problem's constraints.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "hi")]
        lo: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "lo")]
        hi: Option<Vec<f64>>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Decides the Gordan alternatives for a fuzzy matrix (rows of numbers) or vector.
    Gordan {
        #[arg(long, required_unless_present = "vector", conflicts_with = "vector")]
        matrix: Option<PathBuf>,
        #[arg(long)]
        vector: Option<PathBuf>,
    },
    /// Finds Fritz-John multipliers, or verifies them when --kappa0 is given.
    Fj {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        point: Vec<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "kappas")]
        kappa0: Option<f64>,
        /// One multiplier per constraint.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "kappa0")]
        kappas: Option<Vec<f64>>,
    },
    /// Finds KKT multipliers, or verifies them when --kappas is given.
    Kkt {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        point: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        kappas: Option<Vec<f64>>,
    },
    /// Hard-margin SVM; with --lambda and --support, reports the bias set instead.
    Svm {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = fuzzopt_core::svm::DEFAULT_MAX_SUPPORT)]
        max_support: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "support")]
        lambda: Option<Vec<f64>>,
        /// Zero-based point indices.
        #[arg(long, value_delimiter = ',', requires = "lambda")]
        support: Option<Vec<usize>>,
    },
    /// Re-runs a bundled worked example and checks its expected values.
    Reproduce {
        example: Example,
        /// Print the report as JSON instead of one line per assertion.
        #[arg(long)]
        json: bool,
    },
}

/// What a subcommand produced.
enum Output {
    Json(Value),
    Csv(String),
    Text(String),
}

#[derive(Serialize)]
struct LevelRow {
    rho: f64,
    cut: Interval,
}

fn rows(f: &CutFamily) -> Vec<LevelRow> {
    f.iter().map(|(rho, cut)| LevelRow { rho, cut }).collect()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialise")
}

fn settings(cli: &Cli) -> Result<Settings, CliError> {
    if cli.grid < 2 {
        return Err(CliError::Usage(format!("--grid must be at least 2, got {}", cli.grid)));
    }
    if cli.tol.is_nan() || cli.tol <= 0.0 || cli.tol.is_infinite() {
        return Err(CliError::Usage(format!("--tol must be positive, got {}", cli.tol)));
    }
    let grid = LevelGrid::uniform(cli.grid)?;
    Ok(Settings::default().with_grid(grid).with_tol(cli.tol))
}

fn no_csv(cli: &Cli, command: &str) -> Result<(), CliError> {
    if cli.emit_csv {
        Err(CliError::Usage(format!("--emit-csv is not available for {command}")))
    } else {
        Ok(())
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let s = settings(cli)?;
    let out = match &cli.command {
        Command::Cuts { number, levels } => {
            let m: FuzzyNumber = parse_json(number, "--number")?;
            let grid = match levels {
                Some(n) if *n < 2 => return Err(CliError::Usage(format!("--levels must be at least 2, got {n}"))),
                Some(n) => LevelGrid::uniform(*n)?,
                None => s.grid.clone(),
            };
            let f = m.to_family(&grid);
            if cli.emit_csv {
                return Ok(Output::Csv(f.to_csv()));
            }
            json!({ "number": m, "levels": rows(&f) })
        }
        Command::Gh { a, b } => {
            let (a, b): (FuzzyNumber, FuzzyNumber) = (parse_json(a, "--a")?, parse_json(b, "--b")?);
            let d = gh_difference(&a, &b, &s.grid);
            if cli.emit_csv {
                return Ok(Output::Csv(d.to_csv()));
            }
            let number = d.as_fuzzy_number(s.tol).ok().map(|n| n.simplified(s.tol));
            json!({ "levels": rows(&d), "nested": number.is_some(), "fuzzy_number": number })
        }
        Command::Compare { a, b } => {
            no_csv(cli, "compare")?;
            let (a, b): (FuzzyNumber, FuzzyNumber) = (parse_json(a, "--a")?, parse_json(b, "--b")?);
            let r = compare(&a, &b, &s.grid, s.tol);
            json!({
                "weak_all": r.weak_all,
                "strict_some": r.strict_some,
                "strict_all": r.strict_all,
                "preceq": r.preceq(),
            })
        }
        Command::Cones {
            problem,
            point,
            lo,
            hi,
            trials,
        } => {
            no_csv(cli, "cones")?;
            let p: FuzzyProblem = read_json(problem)?;
            let set = match (lo, hi) {
                (Some(lo), Some(hi)) => FeasibleSet::boxed(lo.clone(), hi.clone())?,
                _ => FeasibleSet::Constrained {
                    constraints: p.constraints().to_vec(),
                },
            };
            let r: ConeReport = intersection_empty_sampled(p.objective(), &set, point, *trials, cli.seed, &s)?;
            let kind = match set {
                FeasibleSet::Box { .. } => "box",
                FeasibleSet::Constrained { .. } => "linearized",
            };
            let mut v = to_value(&r);
            v["feasible_cone"] = json!(kind);
            v
        }
        Command::Gordan { matrix, vector } => {
            no_csv(cli, "gordan")?;
            let verdict = match (matrix, vector) {
                (Some(path), _) => gordan_matrix_decide(&read_json::<FuzzyMatrix>(path)?, &s)?,
                (None, Some(path)) => gordan_vector_decide(&read_json::<FuzzyVector>(path)?, &s)?,
                (None, None) => unreachable!("clap requires one input"),
            };
            to_value(&verdict)
        }
        Command::Fj {
            problem,
            point,
            kappa0,
            kappas,
        } => {
            no_csv(cli, "fj")?;
            let p: FuzzyProblem = read_json(problem)?;
            match (kappa0, kappas) {
                (Some(k0), Some(ks)) => json!({ "mode": "verify", "report": fritz_john_verify(&p, point, *k0, ks, &s)? }),
                _ => {
                    let cert = fritz_john_find(&p, point, &s)?;
                    let report = fritz_john_verify(&p, point, cert.kappa0, &cert.kappas, &s)?;
                    json!({ "mode": "find", "certificate": cert, "report": report })
                }
            }
        }
        Command::Kkt { problem, point, kappas } => {
            no_csv(cli, "kkt")?;
            let p: FuzzyProblem = read_json(problem)?;
            match kappas {
                Some(ks) => json!({ "mode": "verify", "report": kkt_verify(&p, point, ks, &s)? }),
                None => {
                    let cert = kkt_find(&p, point, &s)?;
                    let report = kkt_verify(&p, point, &cert.kappas, &s)?;
                    json!({ "mode": "find", "certificate": cert, "report": report })
                }
            }
        }
        Command::Svm {
            data,
            max_support,
            lambda,
            support,
        } => {
            let d: FuzzyDataset = read_json(data)?;
            match (lambda, support) {
                (Some(lambda), Some(support)) => {
                    let bias = svm_bias_set(&d, lambda, support, &s)?;
                    if cli.emit_csv {
                        return Ok(Output::Csv(bias.to_csv()));
                    }
                    let ell = bias.top().midpoint() + 0.0;
                    let margins = svm_margin_report(&d, lambda, ell, &s)?;
                    let objective = 0.5 * lambda.iter().map(|v| v * v).sum::<f64>();
                    json!({
                        "mode": "bias",
                        "lambda": lambda,
                        "support_indices": support,
                        "bias": bias,
                        "ell_star": ell,
                        "objective": objective,
                        "margin_report": margins,
                    })
                }
                _ => {
                    let caps = SvmCaps {
                        max_support: *max_support,
                    };
                    let sol = svm_solve(&d, caps, &s)?;
                    if cli.emit_csv {
                        return Ok(Output::Csv(sol.bias.to_csv()));
                    }
                    let check = svm_verify(&d, &sol, &s)?;
                    json!({ "mode": "solve", "solution": sol, "check": check })
                }
            }
        }
        Command::Reproduce { example, json } => {
            no_csv(cli, "reproduce")?;
            let report = reproduce::run(*example, &s, cli.seed)?;
            let failures = report.failures();
            let out = if *json {
                let v = envelope(cli, &s, to_value(&report));
                Output::Text(serde_json::to_string_pretty(&v).expect("serialises") + "\n")
            } else {
                Output::Text(report.to_text())
            };
            emit(cli, &out)?;
            if failures > 0 {
                return Err(CliError::Failed(failures));
            }
            return Ok(Output::Text(String::new()));
        }
    };
    Ok(Output::Json(envelope(cli, &s, out)))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Cuts { .. } => "cuts",
        Command::Gh { .. } => "gh",
        Command::Compare { .. } => "compare",
        Command::Cones { .. } => "cones",
        Command::Gordan { .. } => "gordan",
        Command::Fj { .. } => "fj",
        Command::Kkt { .. } => "kkt",
        Command::Svm { .. } => "svm",
        Command::Reproduce { .. } => "reproduce",
    }
}

fn envelope(cli: &Cli, s: &Settings, result: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command_name(&cli.command),
        "settings": { "grid": cli.grid, "tol": s.tol, "seed": cli.seed },
        "result": result,
    })
}

fn emit(cli: &Cli, out: &Output) -> Result<(), CliError> {
    let text = match out {
        Output::Json(v) => serde_json::to_string_pretty(v).expect("serialises") + "\n",
        Output::Csv(t) | Output::Text(t) => t.clone(),
    };
    if text.is_empty() {
        return Ok(());
    }
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| CliError::Io {
                path: "<stdout>".into(),
                message: e.to_string(),
            })
        }
    }
}

fn fail(e: &CliError) -> ExitCode {
    let obj = json!({ "schema": SCHEMA, "error": e.to_object() });
    eprintln!("{obj}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return fail(&CliError::Usage(e.render().to_string().trim_end().to_string()));
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            return fail(&CliError::Usage("--threads must be at least 1".into()));
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    match run(&cli).and_then(|out| emit(&cli, &out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
