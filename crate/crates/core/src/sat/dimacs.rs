//! DIMACS CNF output and solver-output parsing.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::cnf::CnfFormula;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SatStatus {
    Sat,
    Unsat,
    Unknown,
}

impl std::fmt::Display for SatStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SatStatus::Sat => "SAT",
            SatStatus::Unsat => "UNSAT",
            SatStatus::Unknown => "UNKNOWN",
        })
    }
}

pub fn write_dimacs<W: Write>(f: &CnfFormula, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "p cnf {} {}", f.var_count(), f.clauses().len())?;
    let mut line = String::new();
    for c in f.clauses() {
        line.clear();
        for l in c {
            line.push_str(&l.to_string());
            line.push(' ');
        }
        line.push('0');
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn to_dimacs(f: &CnfFormula) -> String {
    let mut buf = Vec::new();
    write_dimacs(f, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

pub fn write_dimacs_file(f: &CnfFormula, path: &Path) -> Result<()> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_dimacs(f, &mut w)?;
    w.flush()?;
    Ok(())
}

fn parse_err(line: usize, text: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        text: text.to_string(),
        message: message.into(),
    }
}

/// Reads a DIMACS CNF file. Clauses may span lines; comments start with `c`.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(u32, usize)> = None;
    let mut f = CnfFormula::new();
    let mut current = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let no = no + 1;
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if header.is_some() || parts.len() != 4 || parts[1] != "cnf" {
                return Err(parse_err(no, raw, "expected a single `p cnf V C` header"));
            }
            let v = parts[2]
                .parse()
                .map_err(|_| parse_err(no, raw, "bad variable count"))?;
            let c = parts[3]
                .parse()
                .map_err(|_| parse_err(no, raw, "bad clause count"))?;
            f.reserve_vars(v);
            header = Some((v, c));
            continue;
        }
        if header.is_none() {
            return Err(parse_err(no, raw, "clause before header"));
        }
        for tok in line.split_whitespace() {
            let l: i32 = tok
                .parse()
                .map_err(|_| parse_err(no, raw, format!("bad literal `{tok}`")))?;
            if l == 0 {
                if current.is_empty() {
                    return Err(parse_err(no, raw, "empty clause"));
                }
                f.add_clause(&current)
                    .map_err(|e| parse_err(no, raw, e.to_string()))?;
                current.clear();
            } else {
                current.push(l);
            }
        }
    }
    let (_, c) = header.ok_or_else(|| parse_err(0, "", "missing header"))?;
    if !current.is_empty() {
        return Err(parse_err(0, "", "last clause is not terminated by 0"));
    }
    if f.clauses().len() != c {
        return Err(parse_err(
            0,
            "",
            format!("header announces {c} clauses, found {}", f.clauses().len()),
        ));
    }
    Ok(f)
}

/// Parsed solver output: status plus the literals listed on `v` lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverOutput {
    pub status: SatStatus,
    pub values: Vec<i32>,
}

impl SolverOutput {
    /// Dense model over `var_count` variables; unlisted variables are false.
    pub fn model(&self, var_count: u32) -> Result<Vec<bool>> {
        let mut m = vec![false; var_count as usize];
        for &l in &self.values {
            let v = l.unsigned_abs() as usize;
            if v > m.len() {
                return Err(Error::Decode(format!(
                    "solver assigned variable {v} beyond {var_count}"
                )));
            }
            m[v - 1] = l > 0;
        }
        Ok(m)
    }
}

/// Parses competition-style output: `s SATISFIABLE|UNSATISFIABLE|UNKNOWN`,
/// any number of `v ... 0` lines, comments starting with `c`.
pub fn parse_solver_output(text: &str) -> Result<SolverOutput> {
    let mut status = None;
    let mut values = Vec::new();
    let mut terminated = false;
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let no = no + 1;
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('s') {
            if status.is_some() {
                return Err(parse_err(no, raw, "repeated status line"));
            }
            status = Some(match rest.trim() {
                "SATISFIABLE" => SatStatus::Sat,
                "UNSATISFIABLE" => SatStatus::Unsat,
                "UNKNOWN" | "INDETERMINATE" => SatStatus::Unknown,
                other => return Err(parse_err(no, raw, format!("unknown status `{other}`"))),
            });
        } else if let Some(rest) = line.strip_prefix('v') {
            for tok in rest.split_whitespace() {
                let l: i32 = tok
                    .parse()
                    .map_err(|_| parse_err(no, raw, format!("bad literal `{tok}`")))?;
                if terminated {
                    return Err(parse_err(no, raw, "values after the terminating 0"));
                }
                if l == 0 {
                    terminated = true;
                } else {
                    values.push(l);
                }
            }
        } else {
            return Err(parse_err(no, raw, "expected a `c`, `s` or `v` line"));
        }
    }
    let status = status.ok_or_else(|| parse_err(0, "", "no status line"))?;
    if status == SatStatus::Sat && !terminated {
        return Err(parse_err(0, "", "model is not terminated by 0"));
    }
    if status != SatStatus::Sat && !values.is_empty() {
        return Err(parse_err(
            0,
            "",
            "values given without a SATISFIABLE status",
        ));
    }
    Ok(SolverOutput { status, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_is_exact() {
        let mut f = CnfFormula::new();
        f.reserve_vars(1);
        f.add_clause(&[1]).unwrap();
        assert_eq!(to_dimacs(&f), "p cnf 1 1\n1 0\n");
    }

    #[test]
    fn dimacs_round_trip() {
        let mut f = CnfFormula::new();
        f.reserve_vars(3);
        f.add_clause(&[1, -2]).unwrap();
        f.add_clause(&[3]).unwrap();
        let back = parse_dimacs(&to_dimacs(&f)).unwrap();
        assert_eq!(back.clauses(), f.clauses());
        assert_eq!(back.var_count(), 3);
        let split = parse_dimacs("c hi\np cnf 3 2\n1\n -2 0 3\n0\n").unwrap();
        assert_eq!(split.clauses(), f.clauses());
        assert!(parse_dimacs("p cnf 1 2\n1 0\n").is_err());
        assert!(parse_dimacs("1 0\n").is_err());
    }

    #[test]
    fn solver_output() {
        let o = parse_solver_output("s UNSATISFIABLE\n").unwrap();
        assert_eq!(o.status, SatStatus::Unsat);
        assert!(o.values.is_empty());
        let o = parse_solver_output("c x\ns SATISFIABLE\nv 1 -2\nv 3 0\n").unwrap();
        assert_eq!(o.values, vec![1, -2, 3]);
        assert_eq!(o.model(3).unwrap(), vec![true, false, true]);
        match parse_solver_output("s SATISFIABLE\nv 1 x 0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_solver_output("v 1 0\n").is_err());
        assert!(parse_solver_output("s SATISFIABLE\nv 1\n").is_err());
        assert!(parse_solver_output("s MAYBE\n").is_err());
    }
}
