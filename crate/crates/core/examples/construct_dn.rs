//! Builds D_n and prints its size, degree and two-point line counts.
//!
//!     cargo run --example construct_dn -- 4

use hd1::constructions::canonical_dn;
use hd1::grid::render_set;
use hd1::lattice::{a_set, max_induced_degree, two_point_line_counts};

fn main() -> hd1::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(3);
    let d = canonical_dn(n)?;
    println!("|D_{n}| = {}", d.len());
    println!("max induced degree = {}", max_induced_degree(&d));
    println!("disjoint from A_{n}: {}", d.is_disjoint(&a_set(n)));
    println!(
        "two-point lines per direction: {:?}",
        two_point_line_counts(&d)
    );
    if n <= 4 {
        println!("\n{}", render_set(&d));
    }
    Ok(())
}
