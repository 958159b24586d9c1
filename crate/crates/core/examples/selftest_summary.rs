//! Run the identity batteries with a small sample count.
//!
//! `cargo run --example selftest_summary -- 500`

use qinvar::sampling::DEFAULT_SEED;
use qinvar::selftest;

fn main() {
    let count = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(200);
    let summary = selftest::run(DEFAULT_SEED, count);
    for b in &summary.batteries {
        println!(
            "{:<4} {:<36} {:>10.3e} ≤ {:.0e}",
            if b.passed { "ok" } else { "FAIL" },
            b.name,
            b.worst_residual,
            b.tolerance
        );
    }
    println!("passed: {}", summary.passed);
}
