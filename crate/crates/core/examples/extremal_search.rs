//! Finds the largest degree-1 set in Z_3^n by SAT descent.
//!
//!     cargo run --release --example extremal_search -- 3
//!
//! Pass `external` as a second argument to use the solver in `HD1_SAT_SOLVER`.

use hd1::sat::Engine;
use hd1::symmetry::canonical_form;
use hd1::verify::{search_max, KNOWN_MAXIMA};

fn main() -> hd1::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);
    let engine = match args.next().as_deref() {
        Some("external") => Engine::external(None)?,
        _ => Engine::embedded(),
    };
    let r = search_max(n, KNOWN_MAXIMA[n - 1] + 2, &engine)?;
    for p in &r.probes {
        println!("k = {:>3}: {} ({} ms)", p.k, p.status, p.wall_ms);
    }
    if let Some((k, s)) = &r.best {
        println!("maximum {k}, proven: {}", r.proven);
        println!("witness canonical form: {}", canonical_form(s)?.to_json());
    }
    Ok(())
}
