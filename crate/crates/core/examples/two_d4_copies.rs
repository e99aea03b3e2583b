//! Two affine copies of D_4 inside X_6 meeting in two points.

use hd1::constructions::{canonical_dn, fixture};
use hd1::grid::{restrict_set, AffineSubset};
use hd1::symmetry::are_isomorphic;

fn main() -> hd1::Result<()> {
    let x6 = fixture("appendixB")?.to_set();
    let d4 = canonical_dn(4)?;
    let s = AffineSubset::new(6, [(5, 0), (6, 0)])?;
    let t = AffineSubset::new(6, [(1, 1), (3, 2)])?;
    for (name, h) in [("x5=x6=0", &s), ("x1=1, x3=2", &t)] {
        let r = restrict_set(&x6, h)?;
        println!(
            "{name}: {} points, ~D_4: {}",
            r.len(),
            are_isomorphic(&r, &d4)?
        );
    }
    let meet = s
        .indices()
        .into_iter()
        .filter(|&i| t.contains(i) && x6.contains(i))
        .count();
    println!("copies share {meet} points");
    Ok(())
}
