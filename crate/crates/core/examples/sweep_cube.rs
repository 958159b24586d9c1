//! Classify the interior grid of the probability cube and tally the classes.
//!
//! `cargo run --release --example sweep_cube -- 49`

use qinvar::cli::sweep_rows;
use qinvar::invariants::{ModelTag, DEFAULT_EPS_K};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(19);
    let rows = sweep_rows(n, DEFAULT_EPS_K);
    for tag in [
        ModelTag::NoQuantumModel,
        ModelTag::RealQuantum,
        ModelTag::StrictlyComplexQuantum,
    ] {
        let count = rows.iter().filter(|r| r.class == tag).count();
        println!(
            "{:<24} {count:>8} ({:.4})",
            tag.to_string(),
            count as f64 / rows.len() as f64
        );
    }
    println!(
        "volume fraction of K > 0 over the whole cube: π²/16 = {:.4}",
        std::f64::consts::PI.powi(2) / 16.0
    );
    let first_real = rows.iter().find(|r| r.class == ModelTag::RealQuantum);
    if let Some(r) = first_real {
        println!("first real cell: p = {}, q = {}, r = {}", r.p, r.q, r.r);
    }
}
