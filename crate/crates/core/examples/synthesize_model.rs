//! Build a spin model for a probability triple and check its overlaps.
//!
//! `cargo run --example synthesize_model`

use qinvar::invariants::{classify, ProbTriple, DEFAULT_EPS_K};
use qinvar::model::{synthesize, verify_transitions, Observable, LABELS};

fn main() -> qinvar::Result<()> {
    let t = ProbTriple::new(0.3, 0.6, 0.45)?;
    let values = [
        Observable::new("A", -2.0, 3.0)?,
        Observable::new("B", 10.0, 0.0)?,
        Observable::new("C", 0.5, -0.5)?,
    ];
    println!("class {}", classify(&t, DEFAULT_EPS_K).tag);

    let model = synthesize(&t, &values, DEFAULT_EPS_K)?;
    for (i, label) in LABELS.iter().enumerate() {
        let (x1, x2) = model.observables()[i].values();
        println!("u_{label} = {:?}", model.vectors()[i].vec().0);
        println!(
            "{label} (values {x1}, {x2}) = {}",
            model.operators()[i].mat()
        );
    }
    println!("volume (u_A × u_B)·u_C = {:.12}", model.volume());

    let report = verify_transitions(&model, &t, 1e-10);
    println!("overlaps {:?}", report.overlaps);
    println!(
        "largest deviation {:e}, passed {}",
        report.max_deviation, report.passed
    );
    println!("structural residual {:e}", model.check_invariants().worst());

    // infeasible triples are refused
    let bad = ProbTriple::new(0.9, 0.9, 0.1)?;
    println!(
        "(0.9, 0.9, 0.1): {}",
        synthesize(&bad, &values, DEFAULT_EPS_K).unwrap_err()
    );
    Ok(())
}
