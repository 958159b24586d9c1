//! Coplanar Bloch vectors: K vanishes, the correlation bound saturates and the
//! model can be rotated into real matrices.
//!
//! `cargo run --example real_models`

use std::f64::consts::PI;

use qinvar::invariants::{angles_to_probs, invariant_k, AngleTriple, ProbTriple, DEFAULT_EPS_K};
use qinvar::model::{real_embedding, spin_observables, synthesize, synthesize_from_angles};
use qinvar::uncertainty::correlation_check;

fn main() -> qinvar::Result<()> {
    let (alpha, beta) = (0.4 * PI, 0.35 * PI);
    let a = AngleTriple::new(alpha, beta, alpha + beta)?;
    let m = synthesize_from_angles(&a, &spin_observables(), DEFAULT_EPS_K)?;
    let t = angles_to_probs(&a)?;
    println!("γ = α + β gives K = {:e}", invariant_k(&t));
    println!("u_C = {:?}", m.vectors()[2].vec().0);
    println!(
        "correlation bound saturated: {}",
        correlation_check(&m, 1e-10).saturated
    );

    // the generic synthesis lands in a tilted plane after a common rotation;
    // the embedding undoes that
    let c = (PI / 8.0).cos().powi(2);
    let t = ProbTriple::new(c, c, 0.5)?;
    let m = synthesize(&t, &spin_observables(), DEFAULT_EPS_K)?;
    let real = real_embedding(&m, DEFAULT_EPS_K).expect("coplanar vectors");
    for op in real.operators() {
        println!("{}", op.mat());
    }
    println!(
        "largest imaginary entry {:e}",
        real.operators()
            .iter()
            .map(|o| o.mat().max_abs_imag())
            .fold(0.0, f64::max)
    );

    let complex = ProbTriple::new(0.5, 0.5, 0.5)?;
    let m = synthesize(&complex, &spin_observables(), DEFAULT_EPS_K)?;
    match real_embedding(&m, DEFAULT_EPS_K) {
        Ok(_) => unreachable!(),
        Err(e) => println!("orthogonal model has volume {} and no real form", e.volume),
    }
    Ok(())
}
