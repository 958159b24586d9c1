//! The invariant K and its equivalent forms on a few probability triples.
//!
//! `cargo run --example classify_triples`

use qinvar::invariants::{
    classify, halfangle_form, invariant_cos, normalized_form, probs_to_angles, r_interval,
    real_model_distances, ProbTriple, DEFAULT_EPS_K,
};

fn main() -> qinvar::Result<()> {
    let c = (std::f64::consts::PI / 8.0).cos().powi(2);
    let triples = [
        (0.5, 0.5, 0.5),
        (0.9, 0.9, 0.1),
        (c, c, 0.5),
        (0.25, 0.25, 0.25),
        (0.3, 0.6, 0.45),
    ];
    println!(
        "{:>8} {:>8} {:>8} {:>12} {:>12} {:>12} {:>22}  class",
        "p", "q", "r", "K", "4K (cos)", "normalized", "r interval"
    );
    for (p, q, r) in triples {
        let t = ProbTriple::new(p, q, r)?;
        let class = classify(&t, DEFAULT_EPS_K);
        let a = probs_to_angles(&t);
        let (lo, hi) = r_interval(p, q)?;
        println!(
            "{p:>8.4} {q:>8.4} {r:>8.4} {:>12.4e} {:>12.4e} {:>12.6} [{lo:>9.6}, {hi:>9.6}]  {}",
            class.k,
            invariant_cos(&a),
            normalized_form(&t),
            class.tag
        );
        assert!((normalized_form(&t) - halfangle_form(&a)).abs() < 1e-9);
        let (plus, minus) = real_model_distances(&t);
        println!(
            "{:>36} distance to real solutions: {plus:.3e}, {minus:.3e}",
            ""
        );
    }

    // out-of-range probabilities are rejected, never clamped
    match ProbTriple::new(1.0, 0.5, 0.5) {
        Ok(_) => unreachable!(),
        Err(e) => println!("\n(1, ½, ½): {e}"),
    }
    Ok(())
}
