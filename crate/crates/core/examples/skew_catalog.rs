//! Enumerates 1-skew grids on Z_3^3 that start with the skew plane and groups
//! them into single-cell families.

use hd1::constructions::fixture;
use hd1::sat::{decode_grid, encode_skew, enumerate_models, fix_cells, Engine, VarMeaning};
use hd1::verify::skew_families;

fn main() -> hd1::Result<()> {
    let plane = fixture("grid2")?.as_grid().cloned().expect("grid fixture");
    let mut f = encode_skew(3, 1)?;
    fix_cells(&mut f, &plane, |r| r)?;
    let proj = f.vars_where(|m| matches!(m, VarMeaning::Cell { .. }));
    let e = enumerate_models(&f, &Engine::embedded(), None, &proj)?;
    let grids = e
        .models
        .iter()
        .map(|m| decode_grid(m, &f, 3))
        .collect::<hd1::Result<Vec<_>>>()?;
    let families = skew_families(&grids);
    println!("{} grids in {} families", grids.len(), families.len());
    for fam in families.iter().take(3) {
        println!("family of {}:", fam.len());
        for &i in fam {
            println!("  {}", grids[i].symbols());
        }
    }
    Ok(())
}
