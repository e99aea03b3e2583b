use std::collections::BTreeMap;

use serde::Serialize;

use super::LabelGrid;
use crate::error::{Error, Result};
use crate::lattice::{axis_of, check_dim, digit, pow3, TernaryPoint, VertexSet};

/// `{x : x_i = c_i for i in R_H}`; directions outside `R_H` are free.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AffineSubset {
    n: usize,
    fixed: BTreeMap<usize, u8>,
}

impl AffineSubset {
    /// `fixed` maps 1-based coordinates to values.
    pub fn new(n: usize, fixed: impl IntoIterator<Item = (usize, u8)>) -> Result<Self> {
        check_dim(n)?;
        let mut map = BTreeMap::new();
        for (i, c) in fixed {
            axis_of(i, n)?;
            if c > 2 {
                return Err(Error::InvalidArgument(format!("value {c} is not in Z_3")));
            }
            if map.insert(i, c).is_some_and(|old| old != c) {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {i} fixed to two values"
                )));
            }
        }
        Ok(AffineSubset { n, fixed: map })
    }

    pub fn full(n: usize) -> Self {
        AffineSubset {
            n,
            fixed: BTreeMap::new(),
        }
    }

    /// The affine subset through `p` spanned by the given 1-based directions.
    pub fn through(p: &TernaryPoint, free: &[usize]) -> Result<Self> {
        for &i in free {
            axis_of(i, p.n())?;
        }
        let fixed = (1..=p.n())
            .filter(|i| !free.contains(i))
            .map(|i| (i, p.coords()[i - 1]));
        AffineSubset::new(p.n(), fixed)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn fixed(&self) -> &BTreeMap<usize, u8> {
        &self.fixed
    }

    /// Free directions in increasing order (1-based).
    pub fn free_directions(&self) -> Vec<usize> {
        (1..=self.n)
            .filter(|i| !self.fixed.contains_key(i))
            .collect()
    }

    pub fn contains_direction(&self, i: usize) -> bool {
        i >= 1 && i <= self.n && !self.fixed.contains_key(&i)
    }

    pub fn dim(&self) -> usize {
        self.n - self.fixed.len()
    }

    pub fn size(&self) -> usize {
        pow3(self.dim())
    }

    pub fn contains(&self, index: usize) -> bool {
        self.fixed.iter().all(|(&i, &c)| digit(index, i - 1) == c)
    }

    /// Ambient index of the `r`-th point of the subset, in the free-coordinate codec.
    pub fn embed(&self, r: usize) -> usize {
        let base: usize = self
            .fixed
            .iter()
            .map(|(&i, &c)| c as usize * pow3(i - 1))
            .sum();
        let free = self.free_directions();
        base + free
            .iter()
            .enumerate()
            .map(|(k, &i)| digit(r, k) as usize * pow3(i - 1))
            .sum::<usize>()
    }

    /// Ambient indices of all points, ordered by the free-coordinate codec.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.size()).map(|r| self.embed(r)).collect()
    }
}

fn check_ambient(expected: usize, h: &AffineSubset) -> Result<()> {
    if h.n() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: h.n(),
        });
    }
    Ok(())
}

/// `s ∩ H` re-indexed over the free coordinates of `H`, in their original order.
pub fn restrict_set(s: &VertexSet, h: &AffineSubset) -> Result<VertexSet> {
    check_ambient(s.n(), h)?;
    let idx = h.indices();
    Ok(VertexSet::from_fn(h.dim(), |r| s.contains(idx[r])))
}

/// Restriction of a grid to an affine subset of its domain `Z_3^m`.
pub fn restrict_grid(g: &LabelGrid, h: &AffineSubset) -> Result<LabelGrid> {
    check_ambient(g.m(), h)?;
    let a = g.collapse_axis();
    // grid coordinate k sits at ambient coordinate k or k+1 around the collapse axis
    let below = h.free_directions().iter().filter(|&&k| k < a).count();
    let cells = h.indices().into_iter().map(|i| g.get(i)).collect();
    LabelGrid::new(h.dim(), below + 1, cells)
}

/// The grid `y ↦ g(y + x)`.
pub fn translate_grid(g: &LabelGrid, x: &TernaryPoint) -> Result<LabelGrid> {
    if x.n() != g.m() {
        return Err(Error::DimensionMismatch {
            expected: g.m(),
            found: x.n(),
        });
    }
    let cells = (0..pow3(g.m()))
        .map(|y| {
            let p = TernaryPoint::from_index(y, g.m()).expect("index in range");
            g.get(p.add(x).expect("same dimension").index())
        })
        .collect();
    LabelGrid::new(g.m(), g.collapse_axis(), cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_bookkeeping() {
        let h = AffineSubset::new(4, [(2, 1), (4, 0)]).unwrap();
        assert_eq!(h.free_directions(), vec![1, 3]);
        assert_eq!(h.size(), 9);
        assert!(h.indices().iter().all(|&i| h.contains(i)));
        assert!(AffineSubset::new(3, [(1, 0), (1, 1)]).is_err());
        assert!(AffineSubset::new(3, [(4, 0)]).is_err());
        let p = TernaryPoint::new(vec![2, 1, 0]).unwrap();
        let t = AffineSubset::through(&p, &[2]).unwrap();
        assert_eq!(t.fixed().len(), 2);
        assert!(t.contains(p.index()));
    }

    #[test]
    fn restricting_to_everything_is_identity() {
        let s = VertexSet::from_indices(3, [1, 7, 20]).unwrap();
        assert_eq!(restrict_set(&s, &AffineSubset::full(3)).unwrap(), s);
    }

    #[test]
    fn grid_restriction_tracks_collapse_axis() {
        let g = LabelGrid::from_symbols(2, 2, "XAAABCACB").unwrap();
        let h = AffineSubset::new(2, [(1, 0)]).unwrap();
        let r = restrict_grid(&g, &h).unwrap();
        assert_eq!(r.symbols(), "XAA");
        assert_eq!(r.collapse_axis(), 1);
        let h = AffineSubset::new(2, [(2, 0)]).unwrap();
        assert_eq!(restrict_grid(&g, &h).unwrap().collapse_axis(), 2);
    }
}
