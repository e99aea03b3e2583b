use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::{Basis, Builder, CheckReport, VerifyContext};
use crate::constructions::{canonical_dn, fixture};
use crate::error::Result;
use crate::grid::{
    is_canonical, restrict_grid, restrict_set, translate_grid, AffineSubset, CellLabel, LabelGrid,
};
use crate::lattice::{digit, pow3, shift_index, TernaryPoint};
use crate::sat::{cell_var, decode_grid, encode_grid_deg1, solve, Engine, SatStatus};

/// Distinct degree-1 grids on `Z_3^m` drawn by pinning a few random cells
/// (one of them to X when `with_x`) and solving. Pins that make the formula
/// unsatisfiable are dropped from the end.
pub fn sample_grids(
    m: usize,
    count: usize,
    seed: u64,
    with_x: bool,
    engine: &Engine,
) -> Result<Vec<LabelGrid>> {
    let base = encode_grid_deg1(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 4 * count + 8 {
        attempts += 1;
        let mut pins = Vec::new();
        if with_x {
            pins.push(cell_var(rng.gen_range(0..pow3(m)), CellLabel::X));
        }
        for _ in 0..rng.gen_range(2..m + 4) {
            let label = CellLabel::SIX[rng.gen_range(0..6)];
            pins.push(cell_var(rng.gen_range(0..pow3(m)), label));
        }
        while !pins.is_empty() {
            let mut f = base.clone();
            for &p in &pins {
                f.add_unit(p)?;
            }
            let o = solve(&f, engine)?;
            match o.status {
                SatStatus::Sat => {
                    let g = decode_grid(o.model.as_deref().expect("model"), &f, m)?;
                    if seen.insert(g.symbols()) {
                        out.push(g);
                    }
                    break;
                }
                SatStatus::Unsat => {
                    pins.pop();
                }
                SatStatus::Unknown => break,
            }
        }
    }
    Ok(out)
}

/// Outcome of evaluating the extension lemma for independent restrictions.
#[derive(Clone, Debug, Default, Serialize)]
pub struct IndExtendTally {
    /// `(H, i)` pairs meeting the hypotheses.
    pub hypotheses: usize,
    pub item1_applications: usize,
    pub item2_applications: usize,
    pub violations: Vec<String>,
}

impl IndExtendTally {
    fn absorb(&mut self, other: IndExtendTally) {
        self.hypotheses += other.hypotheses;
        self.item1_applications += other.item1_applications;
        self.item2_applications += other.item2_applications;
        self.violations.extend(other.violations);
    }
}

/// `cells` (an affine subset with free axes `free`) carries single labels with
/// no two neighbours inside the subset equal.
fn independent(g: &LabelGrid, cells: &[usize], free: &[usize]) -> bool {
    cells.iter().all(|&x| {
        let l = g.get(x);
        l.size() == 1 && free.iter().all(|&k| g.get(shift_index(x, k, 1)) != l)
    })
}

/// Evaluates, over every affine `H` and fixed coordinates `i != j` of `H`:
/// if `g` restricted to `H` is independent and `g(x) = g(x + e_i)` on `H`,
/// then an equal pair `g(x+e_j) = g(x+e_j+e_i)` (item 1) or
/// `g(x+e_j) = g(x+2e_j)` (item 2) for one `x` forces `H + e_j` to be an
/// independent set disjoint from `H`, with the same equality for every `x`.
pub fn ind_extend_instances(g: &LabelGrid) -> IndExtendTally {
    let m = g.m();
    let mut t = IndExtendTally::default();
    for code in 0..(1usize << (2 * m)) {
        // per coordinate: 3 = free, otherwise the fixed value
        let spec: Vec<usize> = (0..m).map(|k| (code >> (2 * k)) & 3).collect();
        let fixed: Vec<usize> = (0..m).filter(|&k| spec[k] < 3).collect();
        let free: Vec<usize> = (0..m).filter(|&k| spec[k] == 3).collect();
        if fixed.len() < 2 {
            continue;
        }
        let cells: Vec<usize> = (0..pow3(m))
            .filter(|&x| fixed.iter().all(|&k| digit(x, k) as usize == spec[k]))
            .collect();
        if !independent(g, &cells, &free) {
            continue;
        }
        for &i in &fixed {
            if !cells
                .iter()
                .all(|&x| g.get(x) == g.get(shift_index(x, i, 1)))
            {
                continue;
            }
            t.hypotheses += 1;
            for &j in fixed.iter().filter(|&&j| j != i) {
                let moved: Vec<usize> = cells.iter().map(|&x| shift_index(x, j, 1)).collect();
                let settled = || {
                    independent(g, &moved, &free)
                        && cells
                            .iter()
                            .all(|&x| g.get(shift_index(x, j, 1)) != g.get(x))
                };
                let eq_i = |y: usize| g.get(y) == g.get(shift_index(y, i, 1));
                let eq_j = |y: usize| g.get(y) == g.get(shift_index(y, j, 1));
                let describe = |item: u8| {
                    let h: Vec<String> = spec
                        .iter()
                        .map(|&s| if s == 3 { "*".into() } else { s.to_string() })
                        .collect();
                    format!(
                        "H = ({}), i = {}, j = {}, item {item}",
                        h.join(","),
                        i + 1,
                        j + 1
                    )
                };
                if moved.iter().any(|&y| eq_i(y)) {
                    t.item1_applications += 1;
                    if !(settled() && moved.iter().all(|&y| eq_i(y))) {
                        t.violations.push(describe(1));
                    }
                }
                if moved.iter().any(|&y| eq_j(y)) {
                    t.item2_applications += 1;
                    if !(settled() && moved.iter().all(|&y| eq_j(y))) {
                        t.violations.push(describe(2));
                    }
                }
            }
        }
    }
    t
}

/// Largest `I ⊆ [m]` (1-based) with `g` restricted to `{x : x_k = 0 for k ∉ I}`
/// canonical, scanning every subset.
pub fn largest_canonical_restriction(g: &LabelGrid) -> Result<Option<Vec<usize>>> {
    let m = g.m();
    let mut best: Option<Vec<usize>> = None;
    for mask in 0..(1usize << m) {
        let free: Vec<usize> = (1..=m).filter(|&k| mask >> (k - 1) & 1 == 1).collect();
        if best.as_ref().is_some_and(|b| b.len() >= free.len()) {
            continue;
        }
        let h = AffineSubset::new(m, (1..=m).filter(|k| !free.contains(k)).map(|k| (k, 0)))?;
        if is_canonical(&restrict_grid(g, &h)?.expand()) {
            best = Some(free);
        }
    }
    Ok(best)
}

/// Sampled grids at `m = 3, 4` (and a fifth of the sample count at `m = 5`):
/// the extension lemma on every instance, a canonical restriction of
/// dimension at least `m - 4` through each translated X cell, and canonical
/// restrictions of `D_n` along `e_1` through its extra point for `n <= 6`.
pub fn verify_structure_lemmas(ctx: &VerifyContext) -> Result<CheckReport> {
    let mut b = Builder::new(
        "structure-lemmas",
        json!({"samples": ctx.samples, "seed": ctx.seed}),
        Basis::Published,
        ctx.engine.name(),
    );
    let mut tally = IndExtendTally::default();
    let mut max_extra = 0;
    let mut best_dims: BTreeMap<String, BTreeMap<usize, usize>> = BTreeMap::new();
    let mut short = 0;
    for (m, count) in [
        (3, ctx.samples),
        (4, ctx.samples),
        (5, (ctx.samples / 5).max(1)),
    ] {
        let plain = sample_grids(
            m,
            count.div_ceil(2),
            ctx.seed ^ ((m as u64) << 32),
            false,
            &ctx.engine,
        )?;
        let with_x = sample_grids(
            m,
            count / 2,
            ctx.seed ^ ((m as u64) << 40),
            true,
            &ctx.engine,
        )?;
        b.record(&format!("sampled_m{m}"), plain.len() + with_x.len());
        for g in plain.iter().chain(&with_x) {
            tally.absorb(ind_extend_instances(g));
            max_extra = max_extra.max(g.extra_cells().len());
            let Some(x) = g.cells().iter().position(|&l| l == CellLabel::X) else {
                continue;
            };
            let moved = translate_grid(g, &TernaryPoint::from_index(x, m)?)?;
            let dim = largest_canonical_restriction(&moved)?.map_or(0, |i| i.len());
            *best_dims
                .entry(format!("m{m}"))
                .or_default()
                .entry(dim)
                .or_default() += 1;
            if dim + 4 < m {
                short += 1;
                b.fail(format!(
                    "no canonical restriction of dimension {} in\n{}",
                    m - 4,
                    moved.to_text()
                ));
            }
        }
    }
    let e18 = fixture("extra18_n6")?;
    let fixture_tally = ind_extend_instances(e18.as_grid().expect("grid fixture"));
    b.record("extra18_n6_hypotheses", fixture_tally.hypotheses);
    tally.absorb(fixture_tally);

    b.record("ind_extend_hypotheses", tally.hypotheses);
    b.record("ind_extend_item1", tally.item1_applications);
    b.record("ind_extend_item2", tally.item2_applications);
    b.compare("ind_extend_violations", 0, tally.violations.len());
    if let Some(v) = tally.violations.first() {
        b.fail(v.clone());
    }
    b.record("best_canonical_dimension_histogram", best_dims);
    b.compare("x_cells_without_large_canonical_restriction", 0, short);
    b.record("max_extra_cells_sampled", max_extra);
    b.compare("extra_cells_at_most_81", true, max_extra <= 81);

    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 1..=6 {
        let d = canonical_dn(n)?;
        for mask in 0..(1usize << (n - 1)) {
            let fixed = (2..=n)
                .filter(|&k| mask >> (k - 2) & 1 == 1)
                .map(|k| (k, 0));
            let h = AffineSubset::new(n, fixed)?;
            checked += 1;
            if !is_canonical(&restrict_set(&d, &h)?) {
                bad.push(format!("D_{n} on {:?}", h.fixed()));
            }
        }
    }
    b.record("dn_restrictions_checked", checked);
    b.compare("dn_restrictions_not_canonical", Vec::<String>::new(), bad);
    Ok(b.finish())
}
