use crate::error::{Error, Result};
use crate::lattice::{
    enumerate_max_independent_sets, has_degree_at_most, pow3, two_point_line_counts, CosetParams,
    VertexSet,
};

/// A maximum independent set disjoint from `s` when `s` is canonical
/// (size at least `3^(n-1)+1`, induced degree at most 1).
pub fn canonical_witness(s: &VertexSet) -> Option<CosetParams> {
    let n = s.n();
    if n == 0 || s.len() < pow3(n - 1) + 1 || !has_degree_at_most(s, 1) {
        return None;
    }
    enumerate_max_independent_sets(n)
        .ok()?
        .into_iter()
        .find(|(_, i)| i.is_disjoint(s))
        .map(|(p, _)| p)
}

pub fn is_canonical(s: &VertexSet) -> bool {
    canonical_witness(s).is_some()
}

/// The unique direction with `3^(n-2)` two-point lines (1-based).
pub fn popular_direction(s: &VertexSet) -> Result<usize> {
    let n = s.n();
    if n < 3 {
        return Err(Error::Degeneracy(format!(
            "popular direction needs n >= 3, got n = {n}"
        )));
    }
    let target = pow3(n - 2);
    let hits: Vec<usize> = two_point_line_counts(s)
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c == target)
        .map(|(k, _)| k + 1)
        .collect();
    match hits.as_slice() {
        [k] => Ok(*k),
        _ => Err(Error::Degeneracy(format!(
            "{} directions have {target} two-point lines",
            hits.len()
        ))),
    }
}
