use std::collections::{BTreeMap, BTreeSet};

use serde_json::json;

use super::{Basis, Builder, CheckReport, VerifyContext};
use crate::constructions::{fixture, APPENDIX_C};
use crate::error::{Error, Result};
use crate::grid::{CellLabel, LabelGrid};
use crate::sat::{
    decode_grid, encode_grid_deg1, encode_skew, enumerate_models, fix_cells, solve, CnfFormula,
    Enumeration, SatStatus, VarMeaning,
};
use crate::symmetry::grid_orbit;

fn grid_fixture(name: &str) -> Result<LabelGrid> {
    Ok(fixture(name)?
        .as_grid()
        .cloned()
        .expect("catalog entry is a grid"))
}

fn cell_projection(f: &CnfFormula) -> Vec<i32> {
    f.vars_where(|m| matches!(m, VarMeaning::Cell { .. }))
}

fn decode_all(e: &Enumeration, f: &CnfFormula, m: usize) -> Result<Vec<LabelGrid>> {
    e.models
        .iter()
        .map(|model| decode_grid(model, f, m))
        .collect()
}

/// Groups grids into families connected by single-cell differences.
pub fn skew_families(grids: &[LabelGrid]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..grids.len()).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for a in 0..grids.len() {
        for b in a + 1..grids.len() {
            let diff = grids[a]
                .cells()
                .iter()
                .zip(grids[b].cells())
                .filter(|(x, y)| x != y)
                .count();
            if diff == 1 {
                let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..grids.len() {
        let r = root(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

fn swap_last_blocks(g: &LabelGrid) -> LabelGrid {
    let cells = (0..27)
        .map(|i| {
            let (r, c) = (i % 9, i / 9);
            g.get(r + 9 * ((3 - c) % 3))
        })
        .collect();
    LabelGrid::new(3, g.collapse_axis(), cells).expect("same shape")
}

/// Symbol strings of every grid isomorphic to a reference function, with its class.
fn reference_classes(refs: &[(&str, u8)]) -> Result<BTreeMap<String, u8>> {
    let mut out = BTreeMap::new();
    for &(name, class) in refs {
        for g in grid_orbit(&grid_fixture(name)?)? {
            out.insert(g.symbols(), class);
        }
    }
    Ok(out)
}

/// 1-skew functions on `Z_3^n` (direction 1).
///
/// `n = 2`: exactly two, both isomorphic to the skew plane. `n = 3` with the
/// skew plane as first block: families of single-cell variants, their class
/// split, and agreement with the listed functions whose second block starts
/// `A B C`. `n = 6`: no 1-skew function in any direction.
pub fn verify_skew(n: usize, ctx: &VerifyContext) -> Result<CheckReport> {
    let mut b = Builder::new("skew", json!({"n": n}), Basis::Published, ctx.engine.name());
    let plane = grid_fixture("grid2")?;
    match n {
        2 => {
            let f = encode_skew(2, 1)?;
            let e = enumerate_models(&f, &ctx.engine, None, &cell_projection(&f))?;
            if e.incomplete {
                b.unknown("enumeration did not finish");
                return Ok(b.finish());
            }
            let grids = decode_all(&e, &f, 2)?;
            b.compare("models", 2, grids.len());
            let orbit = reference_classes(&[("grid2", 1)])?;
            let iso = grids
                .iter()
                .filter(|g| orbit.contains_key(&g.symbols()))
                .count();
            b.compare("isomorphic_to_skew_plane", grids.len(), iso);
        }
        3 => {
            let mut f = encode_skew(3, 1)?;
            fix_cells(&mut f, &plane, |r| r)?;
            let e = enumerate_models(&f, &ctx.engine, None, &cell_projection(&f))?;
            if e.incomplete {
                b.unknown("enumeration did not finish");
                return Ok(b.finish());
            }
            let grids = decode_all(&e, &f, 3)?;
            b.record("models", grids.len());
            let refs = reference_classes(&[
                ("grid3", 1),
                ("grid4", 2),
                ("grid5_a", 3),
                ("grid5_c", 3),
                ("grid5_y", 3),
            ])?;
            let classes: Vec<Option<u8>> = grids
                .iter()
                .map(|g| refs.get(&g.symbols()).copied())
                .collect();
            b.compare(
                "models_outside_reference_classes",
                0,
                classes.iter().filter(|c| c.is_none()).count(),
            );

            let families = skew_families(&grids);
            b.compare("families", 28, families.len());
            let mut split = [0usize; 3];
            let mut sizes: [BTreeSet<usize>; 3] = Default::default();
            let mut mixed = 0;
            for fam in &families {
                let k = classes[fam[0]];
                if fam.iter().any(|&i| classes[i] != k) {
                    mixed += 1;
                }
                if let Some(k) = k {
                    split[k as usize - 1] += 1;
                    sizes[k as usize - 1].insert(fam.len());
                }
            }
            b.compare("families_spanning_two_classes", 0, mixed);
            b.compare("family_split", [8, 12, 8], split);
            b.record("family_sizes_by_class", &sizes);

            let abc = [CellLabel::A, CellLabel::B, CellLabel::C];
            let listed: BTreeSet<String> = APPENDIX_C
                .iter()
                .map(|(name, _)| grid_fixture(name).map(|g| g.symbols()))
                .collect::<Result<_>>()?;
            let first_row: BTreeSet<String> = grids
                .iter()
                .filter(|g| g.cells()[9..12] == abc)
                .map(|g| g.symbols())
                .collect();
            b.record("models_with_abc_row", first_row.len());
            b.compare("abc_row_models_equal_listed", true, first_row == listed);
            let abc_families = families
                .iter()
                .filter(|fam| grids[fam[0]].cells()[9..12] == abc)
                .count();
            b.compare("abc_row_families", 14, abc_families);
            let all: BTreeSet<String> = grids.iter().map(|g| g.symbols()).collect();
            let closure: BTreeSet<String> = APPENDIX_C
                .iter()
                .map(|(name, _)| grid_fixture(name))
                .collect::<Result<Vec<_>>>()?
                .iter()
                .flat_map(|g| [g.symbols(), swap_last_blocks(g).symbols()])
                .collect();
            b.compare("models_equal_listed_and_block_swaps", true, all == closure);
        }
        6 => {
            let mut statuses = Vec::new();
            for i in 1..=6 {
                let f = encode_skew(6, i)?;
                let out = solve(&f, &ctx.engine)?;
                match out.status {
                    SatStatus::Unknown => b.unknown(format!("direction {i} undecided")),
                    SatStatus::Sat => {
                        let g = decode_grid(out.model.as_deref().expect("model"), &f, 6)?;
                        b.fail(format!(
                            "direction {i} has a 1-skew function:\n{}",
                            g.to_text()
                        ));
                    }
                    SatStatus::Unsat => {}
                }
                statuses.push(out.status);
            }
            b.record("statuses", statuses);
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "skew check is defined for n in {{2, 3, 6}}, got {n}"
            )))
        }
    }
    Ok(b.finish())
}

/// Grids isomorphic to the first- or second-class reference function whose
/// first block is the skew plane, tagged with the class.
pub fn forbidden_second_planes() -> Result<Vec<(u8, LabelGrid)>> {
    let plane = grid_fixture("grid2")?;
    let mut out = Vec::new();
    for (name, class) in [("grid3", 1u8), ("grid4", 2)] {
        for g in grid_orbit(&grid_fixture(name)?)? {
            if g.cells()[..9] == *plane.cells() {
                out.push((class, g));
            }
        }
    }
    Ok(out)
}

fn pinned_pair(first: &LabelGrid, second: &LabelGrid) -> Result<CnfFormula> {
    let mut f = encode_grid_deg1(4)?;
    // first plane is {x4 = 0}, second is {x3 = 0}
    fix_cells(&mut f, first, |r| r)?;
    fix_cells(&mut f, second, |r| r % 9 + (r / 9) * 27)?;
    Ok(f)
}

/// Degree-1 grids on `Z_3^4` whose plane `{x4 = 0}` is a first- or
/// second-class reference function and whose plane `{x3 = 0}` is isomorphic
/// to one: all UNSAT. As a control, some listed third-class function must
/// extend each first plane.
pub fn verify_forbidden(ctx: &VerifyContext) -> Result<CheckReport> {
    let mut b = Builder::new("forbidden", json!({}), Basis::Published, ctx.engine.name());
    let seconds = forbidden_second_planes()?;
    b.record("second_planes", seconds.len());
    let mut cases = 0;
    let mut sat_cases = 0;
    for first_name in ["grid3", "grid4"] {
        let first = grid_fixture(first_name)?;
        for (_, second) in &seconds {
            let f = pinned_pair(&first, second)?;
            let out = solve(&f, &ctx.engine)?;
            cases += 1;
            match out.status {
                SatStatus::Unsat => {}
                SatStatus::Unknown => {
                    b.unknown(format!("{first_name} with {} undecided", second.symbols()))
                }
                SatStatus::Sat => {
                    sat_cases += 1;
                    let g = decode_grid(out.model.as_deref().expect("model"), &f, 4)?;
                    b.fail(format!(
                        "{first_name} admits a degree-1 extension:\n{}",
                        g.to_text()
                    ));
                }
            }
        }
    }
    b.record("cases", cases);
    b.compare("sat_cases", 0, sat_cases);

    let third: Vec<&str> = APPENDIX_C
        .iter()
        .filter(|(_, class)| *class == 3)
        .map(|(name, _)| *name)
        .collect();
    let mut control = BTreeMap::new();
    let mut control_sat = Vec::new();
    for first_name in ["grid3", "grid4"] {
        let first = grid_fixture(first_name)?;
        let mut sat = Vec::new();
        for &name in &third {
            let f = pinned_pair(&first, &grid_fixture(name)?)?;
            let out = solve(&f, &ctx.engine)?;
            match out.status {
                SatStatus::Unknown => {
                    b.unknown(format!("control {first_name} with {name} undecided"))
                }
                SatStatus::Sat => sat.push(name),
                SatStatus::Unsat => {}
            }
        }
        control_sat.push(!sat.is_empty());
        control.insert(first_name, sat);
    }
    b.record("control_sat_second_planes", control);
    b.compare(
        "control_has_sat_case_per_first_plane",
        vec![true, true],
        control_sat,
    );
    Ok(b.finish())
}
