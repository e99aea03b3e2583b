//! Writes a grid encoding as DIMACS, reads it back and solves it.

use hd1::sat::{decode_grid, encode_grid_deg1, parse_dimacs, solve, to_dimacs, Engine};

fn main() -> hd1::Result<()> {
    let f = encode_grid_deg1(2)?;
    let text = to_dimacs(&f);
    println!("{}", text.lines().next().unwrap_or(""));
    let back = parse_dimacs(&text)?;
    assert_eq!(back.clauses(), f.clauses());

    let out = solve(&back, &Engine::embedded())?;
    println!("{} in {} ms", out.status, out.wall_ms);
    // the parsed formula has no variable names, so decode against the original
    if let Some(m) = &out.model {
        println!("{}", decode_grid(m, &f, 2)?.to_text());
    }
    Ok(())
}
