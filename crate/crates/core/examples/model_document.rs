//! Write a model document, read it back and re-verify it.
//!
//! `cargo run --example model_document`

use qinvar::document::{ModelDocument, DEFAULT_TRANSITION_TOLERANCE};
use qinvar::invariants::{ProbTriple, DEFAULT_EPS_K};
use qinvar::model::{spin_observables, synthesize};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = ProbTriple::new(0.5, 0.5, 0.5)?;
    let m = synthesize(&t, &spin_observables(), DEFAULT_EPS_K)?;
    let doc = ModelDocument::new(&t, &m, false, DEFAULT_EPS_K, DEFAULT_TRANSITION_TOLERANCE);
    let text = doc.to_json();
    println!("{text}");

    let back = ModelDocument::from_json(&text)?;
    assert_eq!(back.to_json(), text);
    let report = back.load()?.verify(None);
    println!("verification passed: {}", report.passed);

    let mut broken = back.clone();
    broken.bloch_vectors[1][2] += 1e-2;
    let report = broken.load()?.verify(None);
    println!(
        "after corrupting u_B: passed {}, norm deviation {:e}, rescaling residual {:e}",
        report.passed, report.norm_deviation, report.invariants.max_rescaling_residual
    );
    Ok(())
}
