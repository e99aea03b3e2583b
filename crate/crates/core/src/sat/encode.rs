//! CNF encodings of degree-1 grids, degree-1 vertex sets and 1-skew functions.

use super::cnf::{CnfFormula, VarMeaning};
use crate::error::{Error, Result};
use crate::grid::{CellLabel, LabelGrid};
use crate::lattice::{neighbor_indices, pow3, shift_index};

/// Variable of "cell `index` carries `label`": `6·index + rank + 1`.
pub fn cell_var(index: usize, label: CellLabel) -> i32 {
    let rank = label.rank().expect("one of the six labels");
    (6 * index + rank + 1) as i32
}

/// Variable of "point `index` is in the set".
pub fn vertex_var(index: usize) -> i32 {
    (index + 1) as i32
}

fn check_range(what: &str, v: usize, lo: usize, hi: usize) -> Result<()> {
    if v < lo || v > hi {
        return Err(Error::InvalidArgument(format!(
            "{what} must be in [{lo}, {hi}], got {v}"
        )));
    }
    Ok(())
}

fn grid_vars(m: usize) -> CnfFormula {
    let mut f = CnfFormula::new();
    for index in 0..pow3(m) {
        for label in CellLabel::SIX {
            f.register(
                cell_var(index, label) as u32,
                VarMeaning::Cell { index, label },
            );
        }
    }
    f
}

fn unordered_neighbor_pairs(x: usize, m: usize) -> Vec<(usize, usize)> {
    let nb: Vec<usize> = neighbor_indices(x, m).collect();
    let mut out = Vec::with_capacity(nb.len() * (nb.len().saturating_sub(1)) / 2);
    for a in 0..nb.len() {
        for b in a + 1..nb.len() {
            out.push((nb[a], nb[b]));
        }
    }
    out
}

/// Exactly one label per cell, not-all-equal on every `x` with two distinct
/// neighbours `y, z`, and X/Y/Z cells forcing A/B/C on every neighbour.
/// Models correspond to 1-saturated grids whose expansion has degree at most 1.
pub fn encode_grid_deg1(m: usize) -> Result<CnfFormula> {
    check_range("grid dimension m", m, 1, 6)?;
    let mut f = grid_vars(m);
    let v = cell_var;
    for x in 0..pow3(m) {
        f.push_clause(CellLabel::SIX.iter().map(|&e| v(x, e)).collect());
        for (a, &e) in CellLabel::SIX.iter().enumerate() {
            for &g in &CellLabel::SIX[a + 1..] {
                f.push_clause(vec![-v(x, e), -v(x, g)]);
            }
        }
        for (y, z) in unordered_neighbor_pairs(x, m) {
            for e in CellLabel::SIX {
                f.push_clause(vec![-v(x, e), -v(y, e), -v(z, e)]);
            }
        }
        for y in neighbor_indices(x, m) {
            f.push_clause(vec![-v(x, CellLabel::X), v(y, CellLabel::A)]);
            f.push_clause(vec![-v(x, CellLabel::Y), v(y, CellLabel::B)]);
            f.push_clause(vec![-v(x, CellLabel::Z), v(y, CellLabel::C)]);
        }
    }
    f.dedup();
    Ok(f)
}

/// `(¬u_x ∨ ¬u_y ∨ ¬u_z)` for every point `x` and unordered pair `{y, z}` of its
/// neighbours, before deduplication.
pub fn vertex_degree_clauses(n: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    for x in 0..pow3(n) {
        for (y, z) in unordered_neighbor_pairs(x, n) {
            out.push(vec![-vertex_var(x), -vertex_var(y), -vertex_var(z)]);
        }
    }
    out
}

/// One variable per point; models are the sets of induced degree at most 1.
pub fn encode_vertex_deg1(n: usize) -> Result<CnfFormula> {
    check_range("dimension n", n, 1, 5)?;
    let mut f = CnfFormula::new();
    for index in 0..pow3(n) {
        f.register(vertex_var(index) as u32, VarMeaning::Vertex { index });
    }
    for c in vertex_degree_clauses(n) {
        f.push_clause(c);
    }
    f.dedup();
    Ok(f)
}

/// The four 2×2 patterns on `{a·e_i + b·e_j : a, b ∈ {1,2}}` with two adjacent B,
/// as `((a, b), label)` lists.
pub fn canonical_plane_completions() -> [[((u8, u8), CellLabel); 4]; 4] {
    use CellLabel::{B, C};
    let pattern = |bs: [(u8, u8); 2]| {
        [(1, 1), (1, 2), (2, 1), (2, 2)].map(|p| (p, if bs.contains(&p) { B } else { C }))
    };
    [
        pattern([(1, 1), (1, 2)]),
        pattern([(2, 1), (2, 2)]),
        pattern([(1, 1), (2, 1)]),
        pattern([(1, 2), (2, 2)]),
    ]
}

/// Adds the clauses forbidding a canonical restriction to `Span(e_i, e_j)`
/// through the origin (0-based axes).
pub fn block_canonical_plane(f: &mut CnfFormula, i: usize, j: usize) {
    for pattern in canonical_plane_completions() {
        let clause = pattern
            .iter()
            .map(|&((a, b), label)| {
                let cell = shift_index(shift_index(0, i, a), j, b);
                -cell_var(cell, label)
            })
            .collect();
        f.push_clause(clause);
    }
}

/// Degree-1 grids with X at the origin whose restriction to every plane
/// `Span(e_i, e_j)`, `j ≠ i`, is not canonical. `i` is 1-based.
pub fn encode_skew(m: usize, i: usize) -> Result<CnfFormula> {
    check_range("grid dimension m", m, 2, 6)?;
    check_range("direction i", i, 1, m)?;
    let mut f = encode_grid_deg1(m)?;
    f.push_clause(vec![cell_var(0, CellLabel::X)]);
    for j in (0..m).filter(|&j| j != i - 1) {
        block_canonical_plane(&mut f, i - 1, j);
    }
    f.dedup();
    Ok(f)
}

/// Unit clauses pinning the cells of `sub` onto the cells `embed(r)` of the
/// grid encoded in `f`.
pub fn fix_cells(
    f: &mut CnfFormula,
    sub: &LabelGrid,
    embed: impl Fn(usize) -> usize,
) -> Result<()> {
    for (r, &label) in sub.cells().iter().enumerate() {
        if label.rank().is_none() {
            return Err(Error::InvalidArgument(format!(
                "cannot pin cell {r} to {label}"
            )));
        }
        f.add_clause(&[cell_var(embed(r), label)])?;
    }
    Ok(())
}

/// The assignment of `encode_grid_deg1(g.m())` describing `g`.
pub fn grid_assignment(g: &LabelGrid) -> Result<Vec<bool>> {
    let mut model = vec![false; 6 * g.cells().len()];
    for (i, &l) in g.cells().iter().enumerate() {
        let v = l
            .rank()
            .ok_or_else(|| Error::InvalidArgument(format!("cell {i} is {l}")))?;
        model[6 * i + v] = true;
    }
    Ok(model)
}
