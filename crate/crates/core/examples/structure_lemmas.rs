//! Samples degree-1 grids with an extra cell and checks the independence-extension
//! and large-canonical-restriction properties on each.

use hd1::grid::translate_grid;
use hd1::sat::Engine;
use hd1::verify::{ind_extend_instances, largest_canonical_restriction, sample_grids};

fn main() -> hd1::Result<()> {
    let m = 4;
    let grids = sample_grids(m, 20, 11, true, &Engine::embedded())?;
    for g in &grids {
        let t = ind_extend_instances(g);
        // move an extra cell to the origin so the restrictions pass through it
        let x = g.extra_points()[0].clone();
        let h = translate_grid(g, &x)?;
        let free = largest_canonical_restriction(&h)?.unwrap_or_default();
        println!(
            "{}  hypotheses {:>3}  violations {}  canonical through X: {:?}",
            h.symbols(),
            t.hypotheses,
            t.violations.len(),
            free
        );
        assert!(free.len() + 4 >= m);
    }
    Ok(())
}
