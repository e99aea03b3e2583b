//! Lifts the 18-extra-point set in Z_3^6 to Z_3^7.

use hd1::constructions::fixture;
use hd1::grid::{collapse, is_degree1, lift};

fn main() -> hd1::Result<()> {
    let s = fixture("extra18_n6")?.to_set();
    let g = collapse(&s, 1)?;
    println!(
        "n=6: {} points, {} extra cells",
        s.len(),
        g.extra_cells().len()
    );
    let up = lift(&g)?;
    let t = up.expand();
    println!(
        "n=7: {} points, {} extra cells, degree 1: {}",
        t.len(),
        up.extra_cells().len(),
        is_degree1(&up)
    );
    Ok(())
}
