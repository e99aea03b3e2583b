use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{validate_degree1, LabelGrid};
use crate::error::{Error, Result};
use crate::lattice::{pow3, shift_index, TernaryPoint};

/// How to choose among several eligible directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathPolicy {
    SmallestDirection,
    /// Uniform choice driven by a seeded ChaCha8 stream.
    Random {
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalPath {
    pub steps: Vec<TernaryPoint>,
    /// False when the step cap was hit before the walk stopped.
    pub terminated: bool,
}

impl CanonicalPath {
    pub fn end(&self) -> &TernaryPoint {
        self.steps.last().expect("a path contains its start")
    }
}

/// Walks from `start`: whenever a direction `i` has `U_f(x+e_i) = U_f(x)` the walk
/// moves to `x+2e_i` (and to `x+e_i` when `U_f(x+2e_i) = U_f(x)`); it stops when no
/// direction qualifies or after `3^m` steps.
pub fn canonical_path(
    g: &LabelGrid,
    start: &TernaryPoint,
    policy: PathPolicy,
) -> Result<CanonicalPath> {
    if start.n() != g.m() {
        return Err(Error::DimensionMismatch {
            expected: g.m(),
            found: start.n(),
        });
    }
    if !g.is_saturated() {
        return Err(Error::Precondition(
            "canonical paths need a 1-saturated grid".into(),
        ));
    }
    if let Err(v) = validate_degree1(g) {
        return Err(Error::Precondition(format!("grid is not degree 1: {v}")));
    }
    let m = g.m();
    let mut rng = match policy {
        PathPolicy::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        PathPolicy::SmallestDirection => None,
    };
    let mut x = start.index();
    let mut steps = vec![start.clone()];
    let mut moves = Vec::with_capacity(m);
    for _ in 0..pow3(m) {
        moves.clear();
        let here = g.get(x);
        for axis in 0..m {
            let p1 = shift_index(x, axis, 1);
            let p2 = shift_index(x, axis, 2);
            if g.get(p1) == here {
                moves.push(p2);
            } else if g.get(p2) == here {
                moves.push(p1);
            }
        }
        if moves.is_empty() {
            return Ok(CanonicalPath {
                steps,
                terminated: true,
            });
        }
        x = match rng.as_mut() {
            Some(r) => moves[r.gen_range(0..moves.len())],
            None => moves[0],
        };
        steps.push(TernaryPoint::from_index_unchecked(x, m));
    }
    Ok(CanonicalPath {
        steps,
        terminated: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsaturated_or_invalid_grids() {
        let g = LabelGrid::from_symbols(1, 1, "X.A").unwrap();
        assert!(canonical_path(&g, &TernaryPoint::zero(1), PathPolicy::SmallestDirection).is_err());
        let g = LabelGrid::from_symbols(1, 1, "AAA").unwrap();
        assert!(canonical_path(&g, &TernaryPoint::zero(1), PathPolicy::SmallestDirection).is_err());
    }

    #[test]
    fn stops_immediately_without_equal_neighbours() {
        let g = LabelGrid::from_symbols(1, 1, "XAA").unwrap();
        let p = canonical_path(&g, &TernaryPoint::zero(1), PathPolicy::SmallestDirection).unwrap();
        assert!(p.terminated);
        assert_eq!(p.steps.len(), 1);
        let start = TernaryPoint::new(vec![2]).unwrap();
        let p = canonical_path(&g, &start, PathPolicy::Random { seed: 3 }).unwrap();
        assert_eq!(p.end(), &TernaryPoint::zero(1));
    }
}
