//! Sets of induced degree at most d, against the size bound 3^(n-1) + 3^floor((d-1)n/d).

use hd1::constructions::{degree_d_lower_bound, degree_d_set};
use hd1::lattice::max_induced_degree;

fn main() -> hd1::Result<()> {
    println!(" n  d  size  bound  degree");
    for n in 2..=7 {
        for d in 1..=3 {
            let s = degree_d_set(n, d)?;
            println!(
                "{n:>2} {d:>2} {:>5} {:>6} {:>7}",
                s.len(),
                degree_d_lower_bound(n, d),
                max_induced_degree(&s)
            );
        }
    }
    Ok(())
}
