use crate::error::{Error, Result};
use crate::grid::{validate_degree1, LabelGrid};
use crate::lattice::{has_degree_at_most, is_saturated, pow3, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    Set(VertexSet),
    Grid(LabelGrid),
}

impl Fixture {
    /// The underlying point set (grids are expanded).
    pub fn to_set(&self) -> VertexSet {
        match self {
            Fixture::Set(s) => s.clone(),
            Fixture::Grid(g) => g.expand(),
        }
    }

    pub fn as_grid(&self) -> Option<&LabelGrid> {
        match self {
            Fixture::Grid(g) => Some(g),
            Fixture::Set(_) => None,
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            Fixture::Set(s) => s.to_json(),
            Fixture::Grid(g) => g.to_json(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FixtureSpec {
    pub name: &'static str,
    json: &'static str,
    is_grid: bool,
    pub size: usize,
    /// Number of X/Y/Z cells, for grids.
    pub extra: Option<usize>,
    /// Every cell is non-empty (grids) or every direction is saturated (sets).
    pub saturated: bool,
    pub note: &'static str,
}

macro_rules! entry {
    ($name:literal, $file:literal, grid, $size:expr, $extra:expr, $sat:expr, $note:literal) => {
        FixtureSpec {
            name: $name,
            json: include_str!(concat!("../../fixtures/", $file)),
            is_grid: true,
            size: $size,
            extra: Some($extra),
            saturated: $sat,
            note: $note,
        }
    };
    ($name:literal, $file:literal, set, $size:expr, $sat:expr, $note:literal) => {
        FixtureSpec {
            name: $name,
            json: include_str!(concat!("../../fixtures/", $file)),
            is_grid: false,
            size: $size,
            extra: None,
            saturated: $sat,
            note: $note,
        }
    };
}

const CATALOG: &[FixtureSpec] = &[
    entry!(
        "example_plane",
        "example_plane.json",
        set,
        4,
        false,
        "four points in Z_3^2 all of degree 1"
    ),
    entry!(
        "x4",
        "x4.json",
        set,
        29,
        true,
        "the extremal set in Z_3^4, two points above 27"
    ),
    entry!(
        "x4_grid",
        "x4_grid.json",
        grid,
        29,
        2,
        true,
        "x4 collapsed along coordinate 1"
    ),
    entry!(
        "extremal3_alt",
        "extremal3_alt.json",
        set,
        10,
        true,
        "the largest degree-1 set in Z_3^3 that is not isomorphic to D_3 (canonical form)"
    ),
    entry!(
        "extra6_n5",
        "extra6_n5.json",
        grid,
        87,
        6,
        true,
        "1-saturated degree-1 set in Z_3^5 with 6 extra points"
    ),
    entry!(
        "extra18_n6",
        "extra18_n6.json",
        grid,
        261,
        18,
        true,
        "1-saturated degree-1 set in Z_3^6 with 18 extra points"
    ),
    entry!(
        "appendixB",
        "appendixB.json",
        grid,
        240,
        3,
        false,
        "degree-1 set in Z_3^6 holding two copies of D_4 that meet in two points"
    ),
    entry!(
        "grid2",
        "grid2.json",
        grid,
        10,
        1,
        true,
        "the unique 1-skew plane"
    ),
    entry!(
        "grid3",
        "appendixC_i.json",
        grid,
        28,
        1,
        true,
        "1-skew function, first class"
    ),
    entry!(
        "grid4",
        "appendixC_v.json",
        grid,
        28,
        1,
        true,
        "1-skew function, second class"
    ),
    entry!(
        "grid5_a",
        "appendixC_xi_a.json",
        grid,
        28,
        1,
        true,
        "1-skew function, third class, free cell A"
    ),
    entry!(
        "grid5_c",
        "appendixC_xi_c.json",
        grid,
        28,
        1,
        true,
        "1-skew function, third class, free cell C"
    ),
    entry!(
        "grid5_y",
        "appendixC_xi_y.json",
        grid,
        29,
        2,
        true,
        "1-skew function, third class, free cell Y"
    ),
    entry!(
        "appendixC_i",
        "appendixC_i.json",
        grid,
        28,
        1,
        true,
        "first class"
    ),
    entry!(
        "appendixC_ii",
        "appendixC_ii.json",
        grid,
        28,
        1,
        true,
        "first class"
    ),
    entry!(
        "appendixC_iii",
        "appendixC_iii.json",
        grid,
        28,
        1,
        true,
        "first class"
    ),
    entry!(
        "appendixC_iv",
        "appendixC_iv.json",
        grid,
        28,
        1,
        true,
        "first class"
    ),
    entry!(
        "appendixC_v",
        "appendixC_v.json",
        grid,
        28,
        1,
        true,
        "second class"
    ),
    entry!(
        "appendixC_vi",
        "appendixC_vi.json",
        grid,
        28,
        1,
        true,
        "second class"
    ),
    entry!(
        "appendixC_vii",
        "appendixC_vii.json",
        grid,
        28,
        1,
        true,
        "second class"
    ),
    entry!(
        "appendixC_viii",
        "appendixC_viii.json",
        grid,
        28,
        1,
        true,
        "second class"
    ),
    entry!(
        "appendixC_ix",
        "appendixC_ix.json",
        grid,
        28,
        1,
        true,
        "second class"
    ),
    entry!(
        "appendixC_x",
        "appendixC_x.json",
        grid,
        28,
        1,
        true,
        "second class"
    ),
    entry!(
        "appendixC_xi_a",
        "appendixC_xi_a.json",
        grid,
        28,
        1,
        true,
        "third class"
    ),
    entry!(
        "appendixC_xi_c",
        "appendixC_xi_c.json",
        grid,
        28,
        1,
        true,
        "third class"
    ),
    entry!(
        "appendixC_xi_y",
        "appendixC_xi_y.json",
        grid,
        29,
        2,
        true,
        "third class"
    ),
    entry!(
        "appendixC_xii_a",
        "appendixC_xii_a.json",
        grid,
        28,
        1,
        true,
        "third class"
    ),
    entry!(
        "appendixC_xii_c",
        "appendixC_xii_c.json",
        grid,
        28,
        1,
        true,
        "third class"
    ),
    entry!(
        "appendixC_xii_y",
        "appendixC_xii_y.json",
        grid,
        29,
        2,
        true,
        "third class"
    ),
    entry!(
        "appendixC_xiii_a",
        "appendixC_xiii_a.json",
        grid,
        28,
        1,
        true,
        "third class"
    ),
    entry!(
        "appendixC_xiii_b",
        "appendixC_xiii_b.json",
        grid,
        28,
        1,
        true,
        "third class"
    ),
    entry!(
        "appendixC_xiii_z",
        "appendixC_xiii_z.json",
        grid,
        29,
        2,
        true,
        "third class"
    ),
    entry!(
        "appendixC_xiv_a",
        "appendixC_xiv_a.json",
        grid,
        28,
        1,
        true,
        "third class"
    ),
    entry!(
        "appendixC_xiv_b",
        "appendixC_xiv_b.json",
        grid,
        28,
        1,
        true,
        "third class"
    ),
    entry!(
        "appendixC_xiv_z",
        "appendixC_xiv_z.json",
        grid,
        29,
        2,
        true,
        "third class"
    ),
];

/// The 22 listed 1-skew functions with the free cells expanded, grouped by
/// class (1 = first, 2 = second, 3 = third).
pub const APPENDIX_C: &[(&str, u8)] = &[
    ("appendixC_i", 1),
    ("appendixC_ii", 1),
    ("appendixC_iii", 1),
    ("appendixC_iv", 1),
    ("appendixC_v", 2),
    ("appendixC_vi", 2),
    ("appendixC_vii", 2),
    ("appendixC_viii", 2),
    ("appendixC_ix", 2),
    ("appendixC_x", 2),
    ("appendixC_xi_a", 3),
    ("appendixC_xi_c", 3),
    ("appendixC_xi_y", 3),
    ("appendixC_xii_a", 3),
    ("appendixC_xii_c", 3),
    ("appendixC_xii_y", 3),
    ("appendixC_xiii_a", 3),
    ("appendixC_xiii_b", 3),
    ("appendixC_xiii_z", 3),
    ("appendixC_xiv_a", 3),
    ("appendixC_xiv_b", 3),
    ("appendixC_xiv_z", 3),
];

pub fn fixture_names() -> Vec<&'static str> {
    CATALOG.iter().map(|f| f.name).collect()
}

pub fn fixture_spec(name: &str) -> Result<&'static FixtureSpec> {
    CATALOG
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

/// Loads a fixture and re-derives its size, degree, extra count and saturation.
pub fn fixture(name: &str) -> Result<Fixture> {
    let spec = fixture_spec(name)?;
    let fail = |reason: String| Error::Fixture {
        name: name.to_string(),
        reason,
    };
    let fx = if spec.is_grid {
        let g = LabelGrid::from_json(spec.json)?;
        validate_degree1(&g).map_err(|v| fail(v.to_string()))?;
        let extra = g.extra_cells().len();
        if Some(extra) != spec.extra {
            return Err(fail(format!(
                "{extra} extra cells, expected {:?}",
                spec.extra
            )));
        }
        if g.is_saturated() != spec.saturated {
            return Err(fail(format!("saturation is {}", g.is_saturated())));
        }
        if g.is_saturated() && g.point_count() != pow3(g.m()) + extra {
            return Err(fail("size differs from 3^m plus extra cells".into()));
        }
        Fixture::Grid(g)
    } else {
        let s = VertexSet::from_json(spec.json)?;
        if !has_degree_at_most(&s, 1) {
            return Err(fail("induced degree exceeds 1".into()));
        }
        let all_sat = (1..=s.n()).all(|i| is_saturated(&s, i).expect("direction in range"));
        if spec.saturated && !all_sat {
            return Err(fail("not saturated in every direction".into()));
        }
        Fixture::Set(s)
    };
    let size = fx.to_set().len();
    if size != spec.size {
        return Err(fail(format!("{size} points, expected {}", spec.size)));
    }
    Ok(fx)
}
