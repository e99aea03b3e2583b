use super::{CellLabel, LabelGrid};
use crate::error::{Error, Result};
use crate::lattice::pow3;

fn column(l: CellLabel) -> Option<[CellLabel; 3]> {
    use CellLabel::*;
    Some(match l {
        X => [X, A, A],
        Y => [Y, B, B],
        Z => [Z, C, C],
        A => [A, C, B],
        B => [B, A, C],
        C => [C, B, A],
        Empty | Full => return None,
    })
}

/// Adds a new first grid coordinate `t`, replacing each cell by the column
/// `(X,A,A)`, `(Y,B,B)`, `(Z,C,C)`, `(A,C,B)`, `(B,A,C)` or `(C,B,A)` along `t`.
pub fn lift(g: &LabelGrid) -> Result<LabelGrid> {
    let mut cells = Vec::with_capacity(3 * pow3(g.m()));
    for (i, &l) in g.cells().iter().enumerate() {
        let col = column(l).ok_or_else(|| {
            Error::Precondition(format!(
                "cell {i} is {l}; lifting needs a 1-saturated grid without full cells"
            ))
        })?;
        cells.extend(col);
    }
    let axis = if g.collapse_axis() == 1 {
        1
    } else {
        g.collapse_axis() + 1
    };
    LabelGrid::new(g.m() + 1, axis, cells)
}
