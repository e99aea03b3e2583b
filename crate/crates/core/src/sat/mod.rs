//! CNF encodings, DIMACS I/O, solver engines, enumeration and decoding.

pub mod cardinality;
pub mod cdcl;
pub mod cnf;
pub mod dimacs;
pub mod encode;
pub mod external;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use serde::Serialize;

pub use cardinality::{encode_cardinality_atleast, encode_cardinality_atmost};
pub use cdcl::{Branching, Cdcl, CdclConfig};
pub use cnf::{lit_value, CnfFormula, VarMeaning};
pub use dimacs::{
    parse_dimacs, parse_solver_output, to_dimacs, write_dimacs, write_dimacs_file, SatStatus,
};
pub use encode::{
    block_canonical_plane, canonical_plane_completions, cell_var, encode_grid_deg1, encode_skew,
    encode_vertex_deg1, fix_cells, grid_assignment, vertex_degree_clauses, vertex_var,
};
pub use external::{ExternalSolver, SOLVER_ENV};

use crate::error::{Error, Result};
use crate::grid::{CellLabel, LabelGrid};
use crate::lattice::{pow3, VertexSet};

/// Where formulas are solved.
#[derive(Clone, Debug)]
pub enum Engine {
    Embedded {
        branching: Branching,
        timeout: Option<Duration>,
    },
    External(ExternalSolver),
}

impl Default for Engine {
    fn default() -> Self {
        Engine::embedded()
    }
}

impl Engine {
    pub fn embedded() -> Self {
        Engine::Embedded {
            branching: Branching::Activity,
            timeout: None,
        }
    }

    /// External solver from an explicit path or `HD1_SAT_SOLVER`.
    pub fn external(path: Option<PathBuf>) -> Result<Self> {
        Ok(Engine::External(ExternalSolver::resolve(path)?))
    }

    pub fn with_timeout(self, t: Duration) -> Self {
        match self {
            Engine::Embedded { branching, .. } => Engine::Embedded {
                branching,
                timeout: Some(t),
            },
            Engine::External(e) => Engine::External(e.with_timeout(t)),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Engine::Embedded { branching, .. } => match branching {
                Branching::Activity => "embedded".into(),
                Branching::LowestIndex => "embedded-lowest".into(),
            },
            Engine::External(e) => e.name(),
        }
    }

    pub fn is_external(&self) -> bool {
        matches!(self, Engine::External(_))
    }

    fn cdcl(&self, f: &CnfFormula) -> Cdcl {
        let (branching, timeout) = match self {
            Engine::Embedded { branching, timeout } => (*branching, *timeout),
            Engine::External(_) => unreachable!("embedded only"),
        };
        let mut s = Cdcl::new(
            f.var_count() as usize,
            CdclConfig {
                branching,
                conflict_limit: None,
                deadline: timeout.map(|t| Instant::now() + t),
            },
        );
        for c in f.clauses() {
            if !s.add_clause(c) {
                break;
            }
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolverOutcome {
    pub status: SatStatus,
    #[serde(skip)]
    pub model: Option<Vec<bool>>,
    pub wall_ms: u64,
    pub solver: String,
}

fn checked_model(f: &CnfFormula, model: Vec<bool>) -> Result<Vec<bool>> {
    let mut model = model;
    model.resize(f.var_count() as usize, false);
    match f.first_falsified(&model) {
        Some(clause) => Err(Error::InvalidModel { clause }),
        None => Ok(model),
    }
}

/// Solves `f`; SAT models are rechecked against every clause.
pub fn solve(f: &CnfFormula, engine: &Engine) -> Result<SolverOutcome> {
    let start = Instant::now();
    let (status, model) = match engine {
        Engine::Embedded { .. } => {
            let mut s = engine.cdcl(f);
            let st = s.solve();
            let m = (st == SatStatus::Sat).then(|| s.model().to_vec());
            (st, m)
        }
        Engine::External(x) => {
            let out = x.run(f)?;
            let m = match out.status {
                SatStatus::Sat => Some(out.model(f.var_count())?),
                _ => None,
            };
            (out.status, m)
        }
    };
    let model = model.map(|m| checked_model(f, m)).transpose()?;
    Ok(SolverOutcome {
        status,
        model,
        wall_ms: start.elapsed().as_millis() as u64,
        solver: engine.name(),
    })
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub models: Vec<Vec<bool>>,
    /// The limit was reached before the search space was exhausted.
    pub truncated: bool,
    /// True when a solver call gave up (timeout) before completion.
    pub incomplete: bool,
    pub wall_ms: u64,
}

impl Enumeration {
    pub fn status(&self) -> SatStatus {
        if self.incomplete {
            SatStatus::Unknown
        } else if self.models.is_empty() {
            SatStatus::Unsat
        } else {
            SatStatus::Sat
        }
    }
}

fn blocking_clause(model: &[bool], projection: &[i32]) -> Vec<i32> {
    projection
        .iter()
        .map(|&v| if model[(v - 1) as usize] { -v } else { v })
        .collect()
}

/// All models distinct on `projection`, each followed by a blocking clause
/// over the projection variables. Stops after `limit` models if given.
pub fn enumerate_models(
    f: &CnfFormula,
    engine: &Engine,
    limit: Option<usize>,
    projection: &[i32],
) -> Result<Enumeration> {
    let start = Instant::now();
    if let Some(&v) = projection
        .iter()
        .find(|&&v| v <= 0 || v as u32 > f.var_count())
    {
        return Err(Error::InvalidArgument(format!(
            "projection variable {v} is not in the formula"
        )));
    }
    let mut models = Vec::new();
    let mut truncated = false;
    let mut incomplete = false;
    match engine {
        Engine::Embedded { .. } => {
            let mut s = engine.cdcl(f);
            loop {
                if limit.is_some_and(|l| models.len() >= l) {
                    truncated = s.solve() == SatStatus::Sat;
                    break;
                }
                match s.solve() {
                    SatStatus::Sat => {
                        let m = checked_model(f, s.model().to_vec())?;
                        let block = blocking_clause(&m, projection);
                        models.push(m);
                        if block.is_empty() || !s.add_clause(&block) {
                            break;
                        }
                    }
                    SatStatus::Unsat => break,
                    SatStatus::Unknown => {
                        incomplete = true;
                        break;
                    }
                }
            }
        }
        Engine::External(_) => {
            let mut g = f.clone();
            loop {
                let out = solve(&g, engine)?;
                if limit.is_some_and(|l| models.len() >= l) {
                    truncated = out.status == SatStatus::Sat;
                    break;
                }
                match out.status {
                    SatStatus::Sat => {
                        let m = out.model.expect("sat has a model");
                        let block = blocking_clause(&m, projection);
                        models.push(m);
                        if block.is_empty() {
                            break;
                        }
                        g.push_clause(block);
                    }
                    SatStatus::Unsat => break,
                    SatStatus::Unknown => {
                        incomplete = true;
                        break;
                    }
                }
            }
        }
    }
    Ok(Enumeration {
        models,
        truncated,
        incomplete,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// `{status, model_count, wall_ms, solver}` summary of a run.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub status: SatStatus,
    pub model_count: usize,
    pub wall_ms: u64,
    pub solver: String,
}

impl RunReport {
    pub fn from_outcome(o: &SolverOutcome) -> Self {
        RunReport {
            status: o.status,
            model_count: (o.status == SatStatus::Sat) as usize,
            wall_ms: o.wall_ms,
            solver: o.solver.clone(),
        }
    }

    pub fn from_enumeration(e: &Enumeration, engine: &Engine) -> Self {
        RunReport {
            status: e.status(),
            model_count: e.models.len(),
            wall_ms: e.wall_ms,
            solver: engine.name(),
        }
    }
}

/// Reads the grid described by a model of a grid encoding over `Z_3^m`.
pub fn decode_grid(model: &[bool], f: &CnfFormula, m: usize) -> Result<LabelGrid> {
    let mut cells: Vec<Option<CellLabel>> = vec![None; pow3(m)];
    let mut seen_any = vec![false; pow3(m)];
    for (&var, meaning) in f.registry() {
        if let VarMeaning::Cell { index, label } = meaning {
            if *index >= cells.len() {
                return Err(Error::Decode(format!("cell {index} outside Z_3^{m}")));
            }
            seen_any[*index] = true;
            if model.get(var as usize - 1).copied().unwrap_or(false) {
                if let Some(prev) = cells[*index] {
                    return Err(Error::Decode(format!(
                        "cell {index} carries both {prev} and {label}"
                    )));
                }
                cells[*index] = Some(*label);
            }
        }
    }
    let cells = cells
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            c.ok_or_else(|| {
                if seen_any[i] {
                    Error::Decode(format!("cell {i} has no label"))
                } else {
                    Error::Decode(format!("cell {i} has no variables"))
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    LabelGrid::new(m, 1, cells)
}

/// Reads the set described by a model of a vertex encoding over `Z_3^n`.
pub fn decode_set(model: &[bool], f: &CnfFormula, n: usize) -> Result<VertexSet> {
    let mut s = VertexSet::empty(n);
    for (&var, meaning) in f.registry() {
        if let VarMeaning::Vertex { index } = meaning {
            if *index >= s.universe() {
                return Err(Error::Decode(format!("point {index} outside Z_3^{n}")));
            }
            if model.get(var as usize - 1).copied().unwrap_or(false) {
                s.insert(*index);
            }
        }
    }
    Ok(s)
}
