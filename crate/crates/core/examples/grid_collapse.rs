//! Collapsing a set along an axis to a label grid, checking it and expanding back.

use hd1::constructions::fixture;
use hd1::grid::{collapse, expand, validate_degree1, LabelGrid};

fn main() -> hd1::Result<()> {
    let x4 = fixture("x4")?.to_set();
    let g = collapse(&x4, 1)?;
    println!("{}", g.to_text());
    println!(
        "saturated: {}, extra cells: {:?}",
        g.is_saturated(),
        g.extra_cells()
    );
    assert_eq!(expand(&g), x4);

    // two X cells side by side put two points of degree 2 next to each other
    let bad = LabelGrid::from_symbols(1, 1, "XX.")?;
    match validate_degree1(&bad) {
        Ok(()) => println!("XX. is fine"),
        Err(v) => println!("XX. rejected: {v}"),
    }
    Ok(())
}
