use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use super::{Basis, Builder, CheckReport, VerifyContext};
use crate::constructions::{canonical_dn, fixture};
use crate::error::{Error, Result};
use crate::lattice::{a_set, has_degree_at_most, pow3, VertexSet};
use crate::sat::{
    decode_set, encode_cardinality_atleast, encode_vertex_deg1, enumerate_models, solve,
    vertex_var, CnfFormula, Engine, SatStatus,
};
use crate::symmetry::canonical_form;

/// Largest sizes of degree-1 sets in `Z_3^n` for `n = 1..=5`.
pub const KNOWN_MAXIMA: [usize; 5] = [2, 4, 10, 29, 87];

/// Number of isomorphism classes at the maximum for `n = 1..=4`.
const CLASS_COUNTS: [usize; 4] = [1, 1, 2, 1];

fn at_least(n: usize, k: usize) -> Result<(CnfFormula, Vec<i32>)> {
    let mut f = encode_vertex_deg1(n)?;
    let lits: Vec<i32> = (0..pow3(n)).map(vertex_var).collect();
    encode_cardinality_atleast(&mut f, &lits, k)?;
    Ok((f, lits))
}

/// Degree-1 sets in `Z_3^n` with at least `k` points; `avoid` points are forced out.
fn size_formula(n: usize, k: usize, avoid: Option<&VertexSet>) -> Result<(CnfFormula, Vec<i32>)> {
    let (mut f, lits) = at_least(n, k)?;
    if let Some(a) = avoid {
        for p in a.iter() {
            f.add_unit(-vertex_var(p))?;
        }
    }
    Ok((f, lits))
}

/// Maximum size and isomorphism classes at the maximum.
///
/// SAT at the known maximum and UNSAT one above it; for `n <= 4` every
/// maximum set is enumerated and bucketed by canonical form.
pub fn verify_extremal(n: usize, ctx: &VerifyContext) -> Result<CheckReport> {
    if !(1..=5).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "extremal needs 1 <= n <= 5, got {n}"
        )));
    }
    let max = KNOWN_MAXIMA[n - 1];
    let mut b = Builder::new(
        "extremal",
        json!({"n": n}),
        Basis::Published,
        ctx.engine.name(),
    );
    let (f, lits) = at_least(n, max)?;
    let at_max = solve(&f, &ctx.engine)?;
    match at_max.status {
        SatStatus::Unknown => b.unknown(format!("no answer at size {max}")),
        st => {
            b.compare("status_at_max", SatStatus::Sat, st);
            if let Some(m) = &at_max.model {
                let s = decode_set(m, &f, n)?;
                b.compare("model_degree_at_most_1", true, has_degree_at_most(&s, 1));
            }
        }
    }
    let (g, _) = at_least(n, max + 1)?;
    let above = solve(&g, &ctx.engine)?;
    match above.status {
        SatStatus::Unknown => b.unknown(format!("no answer at size {}", max + 1)),
        st => {
            b.compare("status_above_max", SatStatus::Unsat, st);
        }
    }
    if n <= 4 && at_max.status == SatStatus::Sat {
        let e = enumerate_models(&f, &ctx.engine, None, &lits)?;
        if e.incomplete {
            b.unknown("enumeration did not finish");
        } else {
            b.record("models_at_max", e.models.len());
            let mut classes: BTreeMap<VertexSet, usize> = BTreeMap::new();
            for m in &e.models {
                *classes
                    .entry(canonical_form(&decode_set(m, &f, n)?)?)
                    .or_default() += 1;
            }
            b.compare("classes_at_max", CLASS_COUNTS[n - 1], classes.len());
            let sizes: Vec<usize> = classes.values().copied().collect();
            b.record("models_per_class", sizes);
            let reference: Vec<VertexSet> = match n {
                3 => vec![canonical_dn(3)?, fixture("extremal3_alt")?.to_set()],
                4 => vec![fixture("x4")?.to_set()],
                _ => vec![],
            };
            if !reference.is_empty() {
                let mut want = reference
                    .iter()
                    .map(canonical_form)
                    .collect::<Result<Vec<_>>>()?;
                want.sort();
                let got: Vec<VertexSet> = classes.keys().cloned().collect();
                b.compare("classes_match_reference_sets", true, want == got);
            }
        }
    }
    Ok(b.finish())
}

/// Every degree-1 set with at least `3^(n-1)+1` points avoiding `A_n` is isomorphic to `D_n`.
pub fn verify_canonical_uniqueness(n: usize, ctx: &VerifyContext) -> Result<CheckReport> {
    if !(1..=4).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "uniqueness needs 1 <= n <= 4, got {n}"
        )));
    }
    let mut b = Builder::new(
        "uniqueness",
        json!({"n": n}),
        Basis::Published,
        ctx.engine.name(),
    );
    let (f, lits) = size_formula(n, pow3(n - 1) + 1, Some(&a_set(n)))?;
    let e = enumerate_models(&f, &ctx.engine, None, &lits)?;
    if e.incomplete {
        b.unknown("enumeration did not finish");
        return Ok(b.finish());
    }
    b.record("models", e.models.len());
    let d = canonical_form(&canonical_dn(n)?)?;
    let mut odd = None;
    let mut count = 0;
    for m in &e.models {
        let s = decode_set(m, &f, n)?;
        if canonical_form(&s)? != d {
            count += 1;
            odd.get_or_insert(s);
        }
    }
    b.compare("models_not_isomorphic_to_dn", 0, count);
    if let Some(s) = odd {
        b.fail(format!("counterexample {}", s.to_json()));
    }
    Ok(b.finish())
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeResult {
    pub k: usize,
    pub status: crate::sat::SatStatus,
    pub wall_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub probes: Vec<ProbeResult>,
    /// Largest size found satisfiable, with a witness.
    pub best: Option<(usize, VertexSet)>,
    /// Every size above `best` was refuted.
    pub proven: bool,
}

/// Probes "some degree-1 set has at least `k` points" for `k = start, start-1, ...`
/// until the first SAT answer.
pub fn search_max(n: usize, start: usize, engine: &Engine) -> Result<SearchResult> {
    let mut probes = Vec::new();
    let mut proven = true;
    for k in (0..=start).rev() {
        let (f, _) = at_least(n, k)?;
        let out = solve(&f, engine)?;
        probes.push(ProbeResult {
            k,
            status: out.status,
            wall_ms: out.wall_ms,
        });
        match out.status {
            SatStatus::Sat => {
                let s = decode_set(out.model.as_deref().expect("sat has a model"), &f, n)?;
                return Ok(SearchResult {
                    n,
                    probes,
                    best: Some((k, s)),
                    proven,
                });
            }
            SatStatus::Unknown => proven = false,
            SatStatus::Unsat => {}
        }
    }
    Ok(SearchResult {
        n,
        probes,
        best: None,
        proven,
    })
}
