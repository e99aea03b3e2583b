//! Named, reproducible checks with JSON reports.
//!
//! Every check returns a [`CheckReport`] whose `expected` and `measured`
//! objects share keys; a check fails when any compared key differs and is
//! `unknown` when a solver call gave up without any comparison failing.

mod search;
mod skew;
mod structure;

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};

pub use search::{
    search_max, verify_canonical_uniqueness, verify_extremal, ProbeResult, SearchResult,
    KNOWN_MAXIMA,
};
pub use skew::{forbidden_second_planes, skew_families, verify_forbidden, verify_skew};
pub use structure::{
    ind_extend_instances, largest_canonical_restriction, sample_grids, verify_structure_lemmas,
    IndExtendTally,
};

use crate::constructions::{
    canonical_dn, degree_d_lower_bound, degree_d_set, fixture, fixture_names,
};
use crate::error::{Error, Result};
use crate::grid::{
    canonical_path, collapse, lift, restrict_set, validate_degree1, AffineSubset, PathPolicy,
};
use crate::lattice::{
    a_params, a_prime_params, a_set, count_two_point_lines, disjoint_max_independent_sets,
    is_saturated, max_induced_degree, pow3, TernaryPoint,
};
use crate::sat::Engine;
use crate::symmetry::are_isomorphic;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Unknown,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Unknown => "unknown",
        })
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// A value stated in the literature.
    Published,
    /// A value produced by an independent computation.
    Derived,
    /// A value that follows from the definitions.
    Definitional,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Value,
    pub status: CheckStatus,
    pub basis: Basis,
    pub expected: Value,
    pub measured: Value,
    pub wall_ms: u64,
    pub engine: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Settings shared by the checks.
#[derive(Clone, Debug)]
pub struct VerifyContext {
    pub engine: Engine,
    pub seed: u64,
    /// Number of sampled grids per dimension for the structural checks.
    pub samples: usize,
}

impl Default for VerifyContext {
    fn default() -> Self {
        VerifyContext {
            engine: Engine::embedded(),
            seed: 1,
            samples: 100,
        }
    }
}

/// Accumulates comparisons for one report.
pub(crate) struct Builder {
    check: String,
    params: Value,
    basis: Basis,
    engine: String,
    expected: Map<String, Value>,
    measured: Map<String, Value>,
    failures: Vec<String>,
    unknowns: Vec<String>,
    start: Instant,
}

impl Builder {
    pub(crate) fn new(check: &str, params: Value, basis: Basis, engine: String) -> Self {
        Builder {
            check: check.to_string(),
            params,
            basis,
            engine,
            expected: Map::new(),
            measured: Map::new(),
            failures: Vec::new(),
            unknowns: Vec::new(),
            start: Instant::now(),
        }
    }

    pub(crate) fn compare<T: Serialize + PartialEq>(
        &mut self,
        key: &str,
        expected: T,
        measured: T,
    ) -> bool {
        let ok = expected == measured;
        let e = serde_json::to_value(&expected).expect("serializable");
        let m = serde_json::to_value(&measured).expect("serializable");
        if !ok {
            self.failures
                .push(format!("{key}: expected {e}, measured {m}"));
        }
        self.expected.insert(key.to_string(), e);
        self.measured.insert(key.to_string(), m);
        ok
    }

    pub(crate) fn record<T: Serialize>(&mut self, key: &str, measured: T) {
        self.measured.insert(
            key.to_string(),
            serde_json::to_value(&measured).expect("serializable"),
        );
    }

    pub(crate) fn fail(&mut self, message: impl Into<String>) {
        self.failures.push(message.into());
    }

    pub(crate) fn unknown(&mut self, message: impl Into<String>) {
        self.unknowns.push(message.into());
    }

    pub(crate) fn finish(self) -> CheckReport {
        let (status, detail) = if !self.failures.is_empty() {
            (CheckStatus::Fail, Some(self.failures.join("; ")))
        } else if !self.unknowns.is_empty() {
            (CheckStatus::Unknown, Some(self.unknowns.join("; ")))
        } else {
            (CheckStatus::Pass, None)
        };
        CheckReport {
            check: self.check,
            params: self.params,
            status,
            basis: self.basis,
            expected: Value::Object(self.expected),
            measured: Value::Object(self.measured),
            wall_ms: self.start.elapsed().as_millis() as u64,
            engine: self.engine,
            detail,
        }
    }
}

/// Sizes, degrees, saturation and extra-cell counts of the generators and fixtures.
pub fn verify_constructions() -> Result<CheckReport> {
    let mut b = Builder::new("constructions", json!({}), Basis::Published, "none".into());
    let mut sizes = (Vec::new(), Vec::new());
    for n in 1..=7 {
        let d = canonical_dn(n)?;
        sizes.0.push(pow3(n - 1) + 1);
        sizes.1.push(d.len());
        if max_induced_degree(&d) > 1 {
            b.fail(format!("D_{n} has a vertex of degree above 1"));
        }
        if !d.is_disjoint(&a_set(n)) {
            b.fail(format!("D_{n} meets A_{n}"));
        }
    }
    b.compare("dn_sizes_n1_to_7", sizes.0, sizes.1);

    let x4 = fixture("x4")?.to_set();
    b.compare("x4_size", 29, x4.len());
    let sat = (1..=4).all(|i| is_saturated(&x4, i).expect("direction in range"));
    b.compare("x4_saturated_every_direction", true, sat);
    let x4_grid = fixture("x4_grid")?;
    b.compare(
        "x4_grid_is_x4_collapsed",
        true,
        Some(&collapse(&x4, 1)?) == x4_grid.as_grid(),
    );

    let e6 = fixture("extra6_n5")?;
    let e6g = e6.as_grid().expect("grid fixture");
    b.compare("extra6_n5_size", 87, e6.to_set().len());
    b.compare("extra6_n5_extra_cells", 6, e6g.extra_cells().len());

    let e18 = fixture("extra18_n6")?;
    let e18g = e18.as_grid().expect("grid fixture");
    b.compare("extra18_n6_size", 261, e18.to_set().len());
    b.compare("extra18_n6_extra_cells", 18, e18g.extra_cells().len());
    let lifted = lift(e18g)?;
    b.compare("lift_extra18_n", 7, lifted.n());
    b.compare("lift_extra18_extra_cells", 18, lifted.extra_cells().len());
    b.compare(
        "lift_extra18_degree1",
        true,
        validate_degree1(&lifted).is_ok(),
    );
    b.compare("lift_extra18_size", pow3(6) + 18, lifted.point_count());

    let mut bad = Vec::new();
    for name in fixture_names() {
        let s = fixture(name)?.to_set();
        if max_induced_degree(&s) > 1 {
            bad.push(name);
        }
    }
    b.compare("fixtures_above_degree_1", Vec::<&str>::new(), bad);
    Ok(b.finish())
}

/// `degree_d_set(n, d)` for `n <= 7`, `d <= 3`: degree, size bound, disjointness from `A_n`.
pub fn verify_degree_d() -> Result<CheckReport> {
    let mut b = Builder::new(
        "degree-d",
        json!({"n_max": 7, "d_max": 3}),
        Basis::Published,
        "none".into(),
    );
    let mut rows = Vec::new();
    for d in 1..=3 {
        for n in 1..=7 {
            let s = degree_d_set(n, d)?;
            let deg = max_induced_degree(&s) as usize;
            let bound = degree_d_lower_bound(n, d);
            if deg > d {
                b.fail(format!("n={n} d={d}: degree {deg}"));
            }
            if s.len() < bound {
                b.fail(format!("n={n} d={d}: size {} below {bound}", s.len()));
            }
            if !s.is_disjoint(&a_set(n)) {
                b.fail(format!("n={n} d={d}: meets A_n"));
            }
            rows.push(json!({"n": n, "d": d, "size": s.len(), "bound": bound, "max_degree": deg}));
        }
    }
    b.record("sets", rows);
    Ok(b.finish())
}

/// The two D_4 copies inside the `appendixB` fixture and their intersection.
pub fn verify_appendix_b() -> Result<CheckReport> {
    let mut b = Builder::new("appendix-b", json!({}), Basis::Published, "none".into());
    let s = fixture("appendixB")?.to_set();
    b.compare("max_degree_at_most_1", true, max_induced_degree(&s) <= 1);
    let d4 = canonical_dn(4)?;
    let first = AffineSubset::new(6, [(5, 0), (6, 0)])?;
    let second = AffineSubset::new(6, [(1, 1), (3, 2)])?;
    b.compare(
        "first_restriction_iso_d4",
        true,
        are_isomorphic(&restrict_set(&s, &first)?, &d4)?,
    );
    b.compare(
        "second_restriction_iso_d4",
        true,
        are_isomorphic(&restrict_set(&s, &second)?, &d4)?,
    );
    let both = s
        .iter()
        .filter(|&i| first.contains(i) && second.contains(i))
        .count();
    b.compare("intersection_size", 2, both);
    Ok(b.finish())
}

/// Line counts, canonical-path endpoints and the disjoint maximum independent
/// sets of `D_n`. Paths run from every start under the default policy and
/// `random_policies` seeded policies.
pub fn verify_dn_structure(n: usize, ctx: &VerifyContext) -> Result<CheckReport> {
    if !(1..=7).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "dn-structure needs 1 <= n <= 7, got {n}"
        )));
    }
    let random_policies = 20;
    let mut b = Builder::new(
        "dn-structure",
        json!({"n": n, "random_policies": random_policies, "seed": ctx.seed}),
        Basis::Published,
        "none".into(),
    );
    let d = canonical_dn(n)?;
    let expected: Vec<usize> = (1..=n)
        .map(|k| if k == 1 { 1 } else { pow3(k - 2) })
        .collect();
    let measured = (1..=n)
        .map(|k| count_two_point_lines(&d, k))
        .collect::<Result<Vec<_>>>()?;
    b.compare("two_point_lines", expected, measured);

    let g = collapse(&d, 1)?;
    let target = TernaryPoint::zero(n - 1);
    let mut policies = vec![PathPolicy::SmallestDirection];
    policies.extend((0..random_policies).map(|r| PathPolicy::Random {
        seed: ctx.seed.wrapping_add(r),
    }));
    let mut walks = 0usize;
    let mut off_target = Vec::new();
    for start in 0..pow3(n - 1) {
        let p = TernaryPoint::from_index(start, n - 1)?;
        for &policy in &policies {
            let path = canonical_path(&g, &p, policy)?;
            walks += 1;
            if !path.terminated || *path.end() != target {
                off_target.push(format!("{p} under {policy:?} ends at {}", path.end()));
            }
        }
    }
    b.record("walks", walks);
    b.compare("walks_not_ending_at_origin", 0, off_target.len());
    if let Some(first) = off_target.first() {
        b.fail(first.clone());
    }

    let disjoint: Vec<String> = disjoint_max_independent_sets(&d)?
        .iter()
        .map(|p| p.to_string())
        .collect();
    let mut expected = vec![a_params(n).to_string()];
    if n >= 2 {
        expected.push(a_prime_params(n).to_string());
    }
    expected.sort();
    let mut measured = disjoint;
    measured.sort();
    b.compare("disjoint_max_independent_sets", expected, measured);
    Ok(b.finish())
}

/// Names accepted by [`run_check`].
pub const CHECKS: &[&str] = &[
    "constructions",
    "degree-d",
    "appendix-b",
    "dn-structure",
    "extremal",
    "uniqueness",
    "skew",
    "forbidden",
    "structure-lemmas",
];

/// Runs one named check, or every check for `"all"`. Without `n` the
/// dimension-indexed checks run over their default ranges.
pub fn run_check(name: &str, n: Option<usize>, ctx: &VerifyContext) -> Result<Vec<CheckReport>> {
    let each =
        |ns: Vec<usize>, f: &dyn Fn(usize) -> Result<CheckReport>| -> Result<Vec<CheckReport>> {
            n.map_or(ns, |n| vec![n]).into_iter().map(f).collect()
        };
    match name {
        "constructions" => Ok(vec![verify_constructions()?]),
        "degree-d" => Ok(vec![verify_degree_d()?]),
        "appendix-b" => Ok(vec![verify_appendix_b()?]),
        "dn-structure" => each((1..=7).collect(), &|n| verify_dn_structure(n, ctx)),
        "extremal" => each((1..=4).collect(), &|n| verify_extremal(n, ctx)),
        "uniqueness" => each((1..=4).collect(), &|n| verify_canonical_uniqueness(n, ctx)),
        "skew" => each(vec![2, 3], &|n| verify_skew(n, ctx)),
        "forbidden" => Ok(vec![verify_forbidden(ctx)?]),
        "structure-lemmas" => Ok(vec![verify_structure_lemmas(ctx)?]),
        "all" => {
            let mut out = Vec::new();
            for c in CHECKS {
                out.extend(run_check(c, None, ctx)?);
            }
            Ok(out)
        }
        other => Err(Error::InvalidArgument(format!(
            "unknown check `{other}`; expected one of {} or all",
            CHECKS.join(", ")
        ))),
    }
}
