//! Both sides of the Schrödinger uncertainty relation, which coincide in
//! dimension two, and the correlation bound in eigenstates of a third observable.
//!
//! `cargo run --example uncertainty_budget`

use qinvar::invariants::{ProbTriple, DEFAULT_EPS_K};
use qinvar::model::{spin_observables, synthesize};
use qinvar::sampling::{haar_state, random_hermitian, seeded_rng};
use qinvar::uncertainty::{budget, correlation_check};

fn main() -> qinvar::Result<()> {
    let mut rng = seeded_rng(1, 0);
    for _ in 0..3 {
        let (x, y) = (random_hermitian(&mut rng), random_hermitian(&mut rng));
        let psi = haar_state(&mut rng);
        let b = budget(&x, &y, &psi);
        println!(
            "Var·Var = {:.12}  cov² + comm² = {:.12}  gap {:e}  Robertson slack {:.6}",
            b.var_x * b.var_y,
            b.cov_term.powi(2) + b.comm_term.powi(2),
            b.gap,
            b.robertson_slack
        );
    }

    let t = ProbTriple::new(0.3, 0.6, 0.45)?;
    let m = synthesize(&t, &spin_observables(), DEFAULT_EPS_K)?;
    let rep = correlation_check(&m, 1e-10);
    println!("\nΔXΔY ≥ |cov| in eigenstates of the third observable:");
    for e in &rep.entries {
        println!(
            "  (X,Y,Z) = {:?} ψ{}: ΔXΔY = {:.9}, |cov| = {:.9}, squared slack = {:.9}",
            e.perm,
            e.eigenstate + 1,
            e.delta_product,
            e.covariance_abs,
            e.squared_slack
        );
    }
    println!(
        "4K = {:.9}, holds {}, saturated {}",
        rep.four_k, rep.holds, rep.saturated
    );
    Ok(())
}
