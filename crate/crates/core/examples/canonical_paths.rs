//! Walks canonical paths in the grid of D_n; they all end at the extra point.

use hd1::constructions::canonical_dn;
use hd1::grid::{canonical_path, collapse, PathPolicy};
use hd1::lattice::TernaryPoint;

fn main() -> hd1::Result<()> {
    let n = 4;
    let g = collapse(&canonical_dn(n)?, 1)?;
    println!("extra point: {}", g.extra_point()?);
    for start in [0, 5, 13, 26] {
        let x = TernaryPoint::from_index(start, n - 1)?;
        let p = canonical_path(&g, &x, PathPolicy::SmallestDirection)?;
        let steps: Vec<String> = p.steps.iter().map(|s| s.to_string()).collect();
        println!("{}", steps.join(" -> "));
        let r = canonical_path(&g, &x, PathPolicy::Random { seed: 7 })?;
        assert_eq!(r.end(), p.end());
    }
    Ok(())
}
