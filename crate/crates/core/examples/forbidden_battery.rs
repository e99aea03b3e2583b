//! Tries to extend pairs of planes from the first two skew classes to a
//! degree-1 grid on Z_3^4. None extend.

use hd1::verify::{verify_forbidden, VerifyContext};

fn main() -> hd1::Result<()> {
    let r = verify_forbidden(&VerifyContext::default())?;
    println!("{} in {} ms", r.status, r.wall_ms);
    println!(
        "{}",
        serde_json::to_string_pretty(&r.measured).expect("json")
    );
    Ok(())
}
