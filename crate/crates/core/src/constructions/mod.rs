//! Generators for the explicit sets and the transcribed fixture catalog.

mod fixtures;

pub use fixtures::{fixture, fixture_names, fixture_spec, Fixture, FixtureSpec, APPENDIX_C};

use crate::error::{Error, Result};
use crate::lattice::{a_set, digit_sum, pow3, VertexSet, MAX_DIM};

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::InvalidArgument(format!(
            "n must be in [1, {MAX_DIM}], got {n}"
        )));
    }
    Ok(())
}

/// `D_1 = {1,2}`, `D_(n+1) = (D_n,0) ∪ (A_n,1) ∪ (A_n,2)` with the new coordinate last.
pub fn canonical_dn(n: usize) -> Result<VertexSet> {
    check_n(n)?;
    let mut d = VertexSet::from_indices(1, [1, 2])?;
    for k in 1..n {
        let a = a_set(k);
        let step = pow3(k);
        let mut next = VertexSet::empty(k + 1);
        for i in d.iter() {
            next.insert(i);
        }
        for i in a.iter() {
            next.insert(i + step);
            next.insert(i + 2 * step);
        }
        d = next;
    }
    Ok(d)
}

/// A set of induced degree at most `d` with at least `3^(n-1) + 3^⌊(d-1)n/d⌋` points.
///
/// For `n <= d` this is `Z_3^n \ A_n`. Otherwise the first `n-d` coordinates
/// carry the degree-`d` set in dimension `n-d` wherever the last `d`
/// coordinates lie in `A_d`, and `A_(n-d)` everywhere else.
pub fn degree_d_set(n: usize, d: usize) -> Result<VertexSet> {
    check_n(n)?;
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    if n <= d {
        return Ok(a_set(n).complement());
    }
    let inner_n = n - d;
    let inner = degree_d_set(inner_n, d)?;
    let inner_a = a_set(inner_n);
    let lo = pow3(inner_n);
    Ok(VertexSet::from_fn(n, |i| {
        let (x, y) = (i % lo, i / lo);
        if digit_sum(y, d) == 0 {
            inner.contains(x)
        } else {
            inner_a.contains(x)
        }
    }))
}

/// `3^(n-1) + 3^⌊(d-1)n/d⌋`.
pub fn degree_d_lower_bound(n: usize, d: usize) -> usize {
    pow3(n - 1) + pow3((d - 1) * n / d)
}
