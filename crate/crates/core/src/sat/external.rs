//! Running a DIMACS solver executable: the formula goes to a temporary file
//! passed as the only argument and the result is read from standard output.

use std::io::Read;
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use super::cnf::CnfFormula;
use super::dimacs::{parse_solver_output, write_dimacs_file, SatStatus, SolverOutput};
use crate::error::{Error, Result};

/// Environment variable naming the solver executable.
pub const SOLVER_ENV: &str = "HD1_SAT_SOLVER";

#[derive(Clone, Debug)]
pub struct ExternalSolver {
    pub path: PathBuf,
    pub timeout: Option<Duration>,
}

impl ExternalSolver {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        ExternalSolver {
            path: path.into(),
            timeout: None,
        }
    }

    /// Reads the executable path from `HD1_SAT_SOLVER`.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(SOLVER_ENV) {
            Some(p) if !p.is_empty() => Ok(Self::new(p)),
            _ => Err(Error::SolverMissing(SOLVER_ENV)),
        }
    }

    /// An explicit path wins over the environment.
    pub fn resolve(explicit: Option<PathBuf>) -> Result<Self> {
        match explicit {
            Some(p) => Ok(Self::new(p)),
            None => Self::from_env(),
        }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = Some(timeout);
        self
    }

    pub fn name(&self) -> String {
        format!("external:{}", self.path.display())
    }

    /// Runs the solver; a timeout yields `UNKNOWN`.
    pub fn run(&self, f: &CnfFormula) -> Result<SolverOutput> {
        let dir = tempfile::tempdir()?;
        let input = dir.path().join("formula.cnf");
        write_dimacs_file(f, &input)?;
        let mut child = Command::new(&self.path)
            .arg(&input)
            .stdin(Stdio::null())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| Error::Solver(format!("cannot start {}: {e}", self.path.display())))?;
        let mut stdout = child.stdout.take().expect("piped stdout");
        let reader = std::thread::spawn(move || {
            let mut s = String::new();
            stdout.read_to_string(&mut s).map(|_| s)
        });
        let start = Instant::now();
        loop {
            if child.try_wait()?.is_some() {
                break;
            }
            if self.timeout.is_some_and(|t| start.elapsed() >= t) {
                let _ = child.kill();
                let _ = child.wait();
                let _ = reader.join();
                return Ok(SolverOutput {
                    status: SatStatus::Unknown,
                    values: Vec::new(),
                });
            }
            std::thread::sleep(Duration::from_millis(5));
        }
        let text = reader
            .join()
            .map_err(|_| Error::Solver("output reader panicked".into()))??;
        parse_solver_output(&text)
    }
}
