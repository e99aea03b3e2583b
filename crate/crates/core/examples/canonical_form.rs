//! Canonical forms and isomorphism tests under the automorphism group of H(n,3).

use hd1::constructions::{canonical_dn, fixture};
use hd1::symmetry::{
    are_isomorphic, canonical_form_with_map, find_isomorphism, group_order, Automorphism,
};

fn main() -> hd1::Result<()> {
    let d3 = canonical_dn(3)?;
    println!("|Aut H(3,3)| = {}", group_order(3));

    let sigma = Automorphism::new(vec![2, 0, 1], vec![2, 1, 2], vec![1, 0, 2])?;
    let moved = sigma.apply_set(&d3)?;
    let (form, map) = canonical_form_with_map(&moved)?;
    println!("image of D_3:  {}", moved.to_json());
    println!("canonical:     {}", form.to_json());
    println!(
        "via perm {:?} signs {:?} shift {:?}",
        map.perm(),
        map.signs(),
        map.shift()
    );

    let tau = find_isomorphism(&d3, &moved)?.expect("same orbit");
    assert_eq!(tau.apply_set(&d3)?, moved);

    // the other maximum class in Z_3^3
    let alt = fixture("extremal3_alt")?.to_set();
    println!("D_3 ~ extremal3_alt: {}", are_isomorphic(&d3, &alt)?);
    Ok(())
}
