//! The `hd1` command line.
//!
//! Exit codes: 0 success, 1 a check failed (or `iso` found no isomorphism),
//! 2 usage or input error, 3 solver engine missing or unusable.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::constructions::{canonical_dn, degree_d_set, fixture, fixture_names, Fixture};
use crate::error::{Error, Result};
use crate::grid::{collapse, render_set, LabelGrid};
use crate::lattice::{a_prime_set, a_set, b_set, c_set, VertexSet};
use crate::sat::{
    encode_cardinality_atleast, encode_grid_deg1, encode_skew, encode_vertex_deg1,
    enumerate_models, parse_dimacs, solve, to_dimacs, vertex_var, Engine, RunReport,
};
use crate::symmetry::{canonical_form_with_map, find_isomorphism};
use crate::verify::{run_check, search_max, CheckStatus, VerifyContext, CHECKS, KNOWN_MAXIMA};

#[derive(Parser, Debug)]
#[command(
    name = "hd1",
    version,
    about = "Induced degree-1 subsets of the ternary Hamming graph"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EngineKind {
    Embedded,
    External,
}

#[derive(clap::Args, Debug)]
struct EngineArgs {
    #[arg(long, value_enum, default_value = "embedded")]
    engine: EngineKind,
    /// Solver executable; overrides HD1_SAT_SOLVER.
    #[arg(long)]
    solver_path: Option<PathBuf>,
    /// Per-call time limit in seconds; exceeded calls report UNKNOWN.
    #[arg(long)]
    timeout: Option<u64>,
}

impl EngineArgs {
    fn engine(&self) -> Result<Engine> {
        let e = match self.engine {
            EngineKind::Embedded => Engine::embedded(),
            EngineKind::External => Engine::external(self.solver_path.clone())?,
        };
        Ok(match self.timeout {
            Some(s) => e.with_timeout(Duration::from_secs(s)),
            None => e,
        })
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EncodeKind {
    /// Degree-1 label grids on Z_3^n.
    Deg1,
    /// Degree-1 vertex sets in Z_3^n.
    Vertex,
    /// 1-skew style grids on Z_3^n in direction --axis.
    Skew,
    /// Degree-1 vertex sets in Z_3^n with at least --k points.
    Extremal,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a construction or fixture as JSON: dn, degree-d, a, b, c, a-prime or a fixture name.
    Gen {
        what: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// Emit the set collapsed along this axis.
        #[arg(long)]
        axis: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a fixture or a set/grid file: sets as point diagrams, grids as label text.
    Show {
        target: String,
        /// Collapse a set along this axis and show the grid.
        #[arg(long)]
        axis: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named check (or `all`) and print JSON reports.
    Verify {
        check: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Sampled grids per dimension for structure-lemmas.
        #[arg(long)]
        limit: Option<usize>,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a DIMACS CNF instance.
    Encode {
        #[arg(value_enum)]
        kind: EncodeKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        axis: usize,
        /// Size threshold for `extremal`; defaults to the known maximum.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a DIMACS file and print a run report; --limit enumerates models.
    Solve {
        file: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
        #[command(flatten)]
        engine: EngineArgs,
        /// Write the model(s) as `v` lines.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest degree-1 set in Z_3^n by descending size probes from the known size + 8.
    Search {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        engine: EngineArgs,
        /// Write the best set found.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonical form of a set (grids are expanded) with a map reaching it.
    Canon {
        target: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two sets are isomorphic; exits 1 when they are not.
    Iso { first: String, second: String },
}

enum Outcome {
    Ok,
    CheckFailed,
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// A fixture name or a path to a set JSON, grid JSON or grid text file.
fn load(target: &str) -> Result<Fixture> {
    if fixture_names().contains(&target) {
        return fixture(target);
    }
    let text = std::fs::read_to_string(target)?;
    if text.trim_start().starts_with('{') {
        let set_err = match VertexSet::from_json(&text) {
            Ok(s) => return Ok(Fixture::Set(s)),
            Err(e) => e,
        };
        return match LabelGrid::from_json(&text) {
            Ok(g) => Ok(Fixture::Grid(g)),
            Err(_) if text.contains("\"points\"") => Err(set_err),
            Err(e) => Err(e),
        };
    }
    LabelGrid::from_text(&text, 1)
        .map(Fixture::Grid)
        .map_err(|_| {
            Error::InvalidArgument(format!(
                "{target} is neither a fixture, a JSON file nor grid text"
            ))
        })
}

fn need(v: Option<usize>, flag: &str, what: &str) -> Result<usize> {
    v.ok_or_else(|| Error::InvalidArgument(format!("{what} needs --{flag}")))
}

fn generate(what: &str, n: Option<usize>, d: Option<usize>) -> Result<Fixture> {
    let set = match what {
        "dn" => canonical_dn(need(n, "n", what)?)?,
        "degree-d" => degree_d_set(need(n, "n", what)?, need(d, "d", what)?)?,
        "a" => a_set(need(n, "n", what)?),
        "b" => b_set(need(n, "n", what)?),
        "c" => c_set(need(n, "n", what)?),
        "a-prime" => a_prime_set(need(n, "n", what)?),
        name => {
            return fixture(name).map_err(|e| match e {
                Error::UnknownFixture(_) => Error::InvalidArgument(format!(
                    "`{name}` is neither dn, degree-d, a, b, c, a-prime nor a fixture ({})",
                    fixture_names().join(", ")
                )),
                e => e,
            })
        }
    };
    Ok(Fixture::Set(set))
}

fn execute(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Gen {
            what,
            n,
            d,
            axis,
            out,
        } => {
            let fx = generate(&what, n, d)?;
            let text = match axis {
                Some(a) => collapse(&fx.to_set(), a)?.to_json(),
                None => fx.to_json(),
            };
            emit(&with_newline(text), out.as_deref())?;
        }
        Command::Show { target, axis, out } => {
            let text = match (load(&target)?, axis) {
                (fx, Some(a)) => collapse(&fx.to_set(), a)?.to_text(),
                (Fixture::Set(s), None) => render_set(&s),
                (Fixture::Grid(g), None) => g.to_text(),
            };
            emit(&with_newline(text), out.as_deref())?;
        }
        Command::Verify {
            check,
            n,
            seed,
            limit,
            engine,
            out,
        } => {
            if check != "all" && !CHECKS.contains(&check.as_str()) {
                return Err(Error::InvalidArgument(format!(
                    "unknown check `{check}`; expected one of {} or all",
                    CHECKS.join(", ")
                )));
            }
            let mut ctx = VerifyContext {
                engine: engine.engine()?,
                seed,
                ..VerifyContext::default()
            };
            if let Some(l) = limit {
                ctx.samples = l;
            }
            let reports = run_check(&check, n, &ctx)?;
            for r in &reports {
                eprintln!("{} {} {}", r.status, r.check, r.params);
            }
            let text = serde_json::to_string_pretty(&reports)?;
            emit(&with_newline(text), out.as_deref())?;
            if reports.iter().any(|r| r.status == CheckStatus::Fail) {
                return Ok(Outcome::CheckFailed);
            }
        }
        Command::Encode {
            kind,
            n,
            axis,
            k,
            out,
        } => {
            let f = match kind {
                EncodeKind::Deg1 => encode_grid_deg1(n)?,
                EncodeKind::Vertex => encode_vertex_deg1(n)?,
                EncodeKind::Skew => encode_skew(n, axis)?,
                EncodeKind::Extremal => {
                    let mut f = encode_vertex_deg1(n)?;
                    let k = match k {
                        Some(k) => k,
                        None => KNOWN_MAXIMA[n - 1],
                    };
                    let lits: Vec<i32> = (0..f.var_count() as usize).map(vertex_var).collect();
                    encode_cardinality_atleast(&mut f, &lits, k)?;
                    f
                }
            };
            emit(&to_dimacs(&f), out.as_deref())?;
        }
        Command::Solve {
            file,
            limit,
            engine,
            out,
        } => {
            let f = parse_dimacs(&std::fs::read_to_string(&file)?)?;
            let engine = engine.engine()?;
            let (report, models) = match limit {
                Some(l) => {
                    let all: Vec<i32> = (1..=f.var_count() as i32).collect();
                    let e = enumerate_models(&f, &engine, Some(l), &all)?;
                    (RunReport::from_enumeration(&e, &engine), e.models)
                }
                None => {
                    let o = solve(&f, &engine)?;
                    (RunReport::from_outcome(&o), o.model.into_iter().collect())
                }
            };
            if let Some(p) = out {
                let mut text = String::new();
                for m in &models {
                    text.push('v');
                    for (i, &b) in m.iter().enumerate() {
                        let v = i as i64 + 1;
                        text.push_str(&format!(" {}", if b { v } else { -v }));
                    }
                    text.push_str(" 0\n");
                }
                std::fs::write(p, text)?;
            }
            println!("{}", serde_json::to_string(&report)?);
        }
        Command::Search { n, engine, out } => {
            if !(1..=KNOWN_MAXIMA.len()).contains(&n) {
                return Err(Error::InvalidArgument(format!(
                    "search needs 1 <= n <= 5, got {n}"
                )));
            }
            let r = search_max(n, KNOWN_MAXIMA[n - 1] + 8, &engine.engine()?)?;
            let summary = json!({
                "n": r.n,
                "probes": r.probes,
                "best": r.best.as_ref().map(|(k, _)| k),
                "proven": r.proven,
            });
            println!("{}", serde_json::to_string_pretty(&summary)?);
            if let (Some(p), Some((_, s))) = (out, &r.best) {
                std::fs::write(p, with_newline(s.to_json()))?;
            }
        }
        Command::Canon { target, out } => {
            let (form, map) = canonical_form_with_map(&load(&target)?.to_set())?;
            let v = json!({"canonical": form, "map": map});
            emit(
                &with_newline(serde_json::to_string_pretty(&v)?),
                out.as_deref(),
            )?;
        }
        Command::Iso { first, second } => {
            let a = load(&first)?.to_set();
            let b = load(&second)?.to_set();
            let map = find_isomorphism(&a, &b)?;
            let v = json!({"isomorphic": map.is_some(), "map": map});
            println!("{}", serde_json::to_string_pretty(&v)?);
            if map.is_none() {
                return Ok(Outcome::CheckFailed);
            }
        }
    }
    Ok(Outcome::Ok)
}

/// Parses `args` (program name first), runs the subcommand and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::CheckFailed) => 1,
        Err(e @ (Error::SolverMissing(_) | Error::Solver(_))) => {
            eprintln!("error: {e}");
            3
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
