//! Label grids: a set in Z_3^n collapsed along one axis into a map from
//! Z_3^(n-1) to subsets of Z_3.

mod affine;
mod canonical;
mod lift;
mod path;

pub use affine::{restrict_grid, restrict_set, translate_grid, AffineSubset};
pub use canonical::{canonical_witness, is_canonical, popular_direction};
pub use lift::lift;
pub use path::{canonical_path, CanonicalPath, PathPolicy};

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{axis_of, check_dim, neighbor_indices, pow3, TernaryPoint, VertexSet};

/// A subset of Z_3 named as in the collapsed representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellLabel {
    A,
    B,
    C,
    X,
    Y,
    Z,
    Empty,
    Full,
}

impl CellLabel {
    /// The six labels of a 1-saturated degree-1 grid, in variable order.
    pub const SIX: [CellLabel; 6] = [
        CellLabel::A,
        CellLabel::B,
        CellLabel::C,
        CellLabel::X,
        CellLabel::Y,
        CellLabel::Z,
    ];

    /// Bit `a` is set iff `a` belongs to the subset.
    pub fn mask(self) -> u8 {
        match self {
            CellLabel::A => 0b001,
            CellLabel::B => 0b010,
            CellLabel::C => 0b100,
            CellLabel::X => 0b110,
            CellLabel::Y => 0b101,
            CellLabel::Z => 0b011,
            CellLabel::Empty => 0,
            CellLabel::Full => 0b111,
        }
    }

    pub fn from_mask(mask: u8) -> CellLabel {
        match mask & 0b111 {
            0b001 => CellLabel::A,
            0b010 => CellLabel::B,
            0b100 => CellLabel::C,
            0b110 => CellLabel::X,
            0b101 => CellLabel::Y,
            0b011 => CellLabel::Z,
            0 => CellLabel::Empty,
            _ => CellLabel::Full,
        }
    }

    pub fn contains(self, a: u8) -> bool {
        self.mask() >> a & 1 == 1
    }

    pub fn size(self) -> u32 {
        self.mask().count_ones()
    }

    pub fn is_extra(self) -> bool {
        self.size() == 2
    }

    /// Position in `SIX`, if the label is one of the six.
    pub fn rank(self) -> Option<usize> {
        CellLabel::SIX.iter().position(|&l| l == self)
    }

    pub fn symbol(self) -> char {
        match self {
            CellLabel::A => 'A',
            CellLabel::B => 'B',
            CellLabel::C => 'C',
            CellLabel::X => 'X',
            CellLabel::Y => 'Y',
            CellLabel::Z => 'Z',
            CellLabel::Empty => '.',
            CellLabel::Full => 'F',
        }
    }

    pub fn from_symbol(c: char) -> Option<CellLabel> {
        Some(match c {
            'A' => CellLabel::A,
            'B' => CellLabel::B,
            'C' => CellLabel::C,
            'X' => CellLabel::X,
            'Y' => CellLabel::Y,
            'Z' => CellLabel::Z,
            '.' => CellLabel::Empty,
            'F' => CellLabel::Full,
            _ => return None,
        })
    }

    /// Image of the subset under the affine map `a ↦ sign·a + shift` of Z_3.
    pub fn map_affine(self, sign: u8, shift: u8) -> CellLabel {
        let mut out = 0;
        for a in 0..3u8 {
            if self.contains(a) {
                out |= 1 << ((sign * a + shift) % 3);
            }
        }
        CellLabel::from_mask(out)
    }
}

impl Serialize for CellLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// `U_f`: cell `x` holds the subset `{a : point with coordinate collapse_axis = a and rest x}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabelGrid {
    m: usize,
    collapse_axis: usize,
    cells: Vec<CellLabel>,
}

impl LabelGrid {
    /// `collapse_axis` is 1-based within the ambient dimension `m + 1`.
    pub fn new(m: usize, collapse_axis: usize, cells: Vec<CellLabel>) -> Result<Self> {
        check_dim(m + 1)?;
        axis_of(collapse_axis, m + 1)?;
        if cells.len() != pow3(m) {
            return Err(Error::InvalidArgument(format!(
                "a grid over Z_3^{m} needs {} cells, got {}",
                pow3(m),
                cells.len()
            )));
        }
        Ok(LabelGrid {
            m,
            collapse_axis,
            cells,
        })
    }

    pub fn filled(m: usize, label: CellLabel) -> Self {
        LabelGrid::new(m, 1, vec![label; pow3(m)]).expect("valid dimension")
    }

    /// Parses cell symbols in codec order; whitespace is ignored.
    pub fn from_symbols(m: usize, collapse_axis: usize, text: &str) -> Result<Self> {
        let mut cells = Vec::with_capacity(pow3(m.min(11)));
        for (k, c) in text.chars().filter(|c| !c.is_whitespace()).enumerate() {
            cells.push(CellLabel::from_symbol(c).ok_or_else(|| {
                Error::InvalidArgument(format!("unknown cell symbol `{c}` at position {k}"))
            })?);
        }
        LabelGrid::new(m, collapse_axis, cells)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Dimension of the expanded set.
    pub fn n(&self) -> usize {
        self.m + 1
    }

    pub fn collapse_axis(&self) -> usize {
        self.collapse_axis
    }

    pub fn cells(&self) -> &[CellLabel] {
        &self.cells
    }

    #[inline]
    pub fn get(&self, index: usize) -> CellLabel {
        self.cells[index]
    }

    pub fn at(&self, x: &TernaryPoint) -> Result<CellLabel> {
        if x.n() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: x.n(),
            });
        }
        Ok(self.cells[x.index()])
    }

    pub fn set(&mut self, index: usize, label: CellLabel) {
        self.cells[index] = label;
    }

    pub fn symbols(&self) -> String {
        self.cells.iter().map(|l| l.symbol()).collect()
    }

    /// Same cells, relabelled as collapsed along another axis.
    pub fn with_collapse_axis(mut self, axis: usize) -> Result<Self> {
        axis_of(axis, self.m + 1)?;
        self.collapse_axis = axis;
        Ok(self)
    }

    /// Number of points of the expanded set.
    pub fn point_count(&self) -> usize {
        self.cells.iter().map(|l| l.size() as usize).sum()
    }

    pub fn is_saturated(&self) -> bool {
        !self.cells.contains(&CellLabel::Empty)
    }

    /// Cells labelled X, Y or Z, by index.
    pub fn extra_cells(&self) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].is_extra())
            .collect()
    }

    pub fn extra_points(&self) -> Vec<TernaryPoint> {
        self.extra_cells()
            .into_iter()
            .map(|i| TernaryPoint::from_index_unchecked(i, self.m))
            .collect()
    }

    /// The single X/Y/Z cell of a canonical grid.
    pub fn extra_point(&self) -> Result<TernaryPoint> {
        let extra = self.extra_cells();
        if extra.len() != 1 {
            return Err(Error::Structure(format!(
                "expected exactly one extra cell, found {}",
                extra.len()
            )));
        }
        Ok(TernaryPoint::from_index_unchecked(extra[0], self.m))
    }

    pub fn expand(&self) -> VertexSet {
        let ax = self.collapse_axis - 1;
        let lo = pow3(ax);
        let mut s = VertexSet::empty(self.m + 1);
        for (g, &l) in self.cells.iter().enumerate() {
            let base = g % lo + (g / lo) * lo * 3;
            for a in 0..3u8 {
                if l.contains(a) {
                    s.insert(base + a as usize * lo);
                }
            }
        }
        s
    }

    /// Blocks of three rows separated by blank lines; reading order is codec order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.m == 0 {
            out.push(self.cells[0].symbol());
            out.push('\n');
            return out;
        }
        for (k, row) in self.cells.chunks(3).enumerate() {
            if self.m >= 2 && k > 0 && k % 3 == 0 {
                out.push('\n');
            }
            out.extend(row.iter().map(|l| l.symbol()));
            out.push('\n');
        }
        out
    }

    /// Reads the text format; the grid dimension is inferred from the cell count.
    pub fn from_text(text: &str, collapse_axis: usize) -> Result<Self> {
        let count = text.chars().filter(|c| !c.is_whitespace()).count();
        let m = (0..=11)
            .find(|&m| pow3(m) == count)
            .ok_or_else(|| Error::InvalidArgument(format!("{count} cells is not a power of 3")))?;
        LabelGrid::from_symbols(m, collapse_axis, text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("grid serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl fmt::Debug for LabelGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LabelGrid")
            .field("m", &self.m)
            .field("collapse_axis", &self.collapse_axis)
            .field("cells", &self.symbols())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct GridJson {
    m: usize,
    collapse_axis: usize,
    cells: String,
}

impl Serialize for LabelGrid {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GridJson {
            m: self.m,
            collapse_axis: self.collapse_axis,
            cells: self.symbols(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabelGrid {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = GridJson::deserialize(d)?;
        if raw.cells.chars().any(char::is_whitespace) {
            return Err(D::Error::custom("cells must not contain whitespace"));
        }
        LabelGrid::from_symbols(raw.m, raw.collapse_axis, &raw.cells).map_err(D::Error::custom)
    }
}

/// Collapses `s` along the 1-based `axis`.
pub fn collapse(s: &VertexSet, axis: usize) -> Result<LabelGrid> {
    let n = s.n();
    let ax = axis_of(axis, n)?;
    let m = n - 1;
    let lo = pow3(ax);
    let cells = (0..pow3(m))
        .map(|g| {
            let base = g % lo + (g / lo) * lo * 3;
            let mut mask = 0;
            for a in 0..3 {
                if s.contains(base + a * lo) {
                    mask |= 1 << a;
                }
            }
            CellLabel::from_mask(mask)
        })
        .collect();
    LabelGrid::new(m, axis, cells)
}

pub fn expand(g: &LabelGrid) -> VertexSet {
    g.expand()
}

/// First condition that makes the expanded set have a vertex of degree 2 or more.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// The whole line along the collapsed axis is present.
    FullCell { cell: Vec<u8> },
    /// Two neighbours of a singleton cell contain its value.
    RepeatedValue {
        cell: Vec<u8>,
        label: char,
        first: Vec<u8>,
        second: Vec<u8>,
    },
    /// A neighbour of an X/Y/Z cell shares a value with it.
    PairNeighbor {
        cell: Vec<u8>,
        label: char,
        neighbor: Vec<u8>,
        neighbor_label: char,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::FullCell { cell } => write!(f, "cell {cell:?} is full"),
            Violation::RepeatedValue {
                cell,
                label,
                first,
                second,
            } => write!(
                f,
                "cell {cell:?} = {label} repeats in neighbours {first:?} and {second:?}"
            ),
            Violation::PairNeighbor {
                cell,
                label,
                neighbor,
                neighbor_label,
            } => write!(
                f,
                "cell {cell:?} = {label} has neighbour {neighbor:?} = {neighbor_label}"
            ),
        }
    }
}

/// Checks that `g.expand()` has induced degree at most 1.
pub fn validate_degree1(g: &LabelGrid) -> std::result::Result<(), Violation> {
    let m = g.m;
    let pt = |i: usize| TernaryPoint::from_index_unchecked(i, m).coords().to_vec();
    for (x, &l) in g.cells.iter().enumerate() {
        match l.size() {
            0 => {}
            3 => return Err(Violation::FullCell { cell: pt(x) }),
            2 => {
                if let Some(y) = neighbor_indices(x, m).find(|&y| g.cells[y].mask() & l.mask() != 0)
                {
                    return Err(Violation::PairNeighbor {
                        cell: pt(x),
                        label: l.symbol(),
                        neighbor: pt(y),
                        neighbor_label: g.cells[y].symbol(),
                    });
                }
            }
            _ => {
                let mut first = None;
                for y in neighbor_indices(x, m) {
                    if g.cells[y].mask() & l.mask() != 0 {
                        match first {
                            None => first = Some(y),
                            Some(f) => {
                                return Err(Violation::RepeatedValue {
                                    cell: pt(x),
                                    label: l.symbol(),
                                    first: pt(f),
                                    second: pt(y),
                                })
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn is_degree1(g: &LabelGrid) -> bool {
    validate_degree1(g).is_ok()
}

/// Renders a set as 3×3 blocks of `o` (member) and `.`: rows follow coordinate 2,
/// columns coordinate 1, blocks run across with coordinate 3 and down with
/// coordinate 4; higher coordinates start new block groups.
pub fn render_set(s: &VertexSet) -> String {
    let n = s.n();
    let mark = |i: usize| if s.contains(i) { 'o' } else { '.' };
    match n {
        0 => return format!("{}\n", mark(0)),
        1 => return (0..3).map(mark).chain(std::iter::once('\n')).collect(),
        _ => {}
    }
    let block_cols = if n >= 3 { 3 } else { 1 };
    let block_rows = if n >= 4 { 3 } else { 1 };
    let per_group = 9 * block_cols * block_rows;
    let groups = s.universe() / per_group;
    let mut out = String::new();
    for g in 0..groups {
        if g > 0 {
            out.push('\n');
        }
        for br in 0..block_rows {
            if br > 0 {
                out.push('\n');
            }
            for row in 0..3 {
                let mut line = String::new();
                for bc in 0..block_cols {
                    if bc > 0 {
                        line.push(' ');
                    }
                    for col in 0..3 {
                        let i = col + 3 * row + 9 * bc + 27 * br + per_group * g;
                        line.push(mark(i));
                    }
                }
                out.push_str(&line);
                out.push('\n');
            }
        }
    }
    out
}
