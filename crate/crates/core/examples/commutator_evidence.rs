//! Commutator averages separate real from strictly complex models, and
//! in a strictly complex model almost every state sees at least two
//! noncommuting pairs.
//!
//! `cargo run --example commutator_evidence`

use std::f64::consts::PI;

use qinvar::bloch::Spinor;
use qinvar::invariants::{AngleTriple, ProbTriple, DEFAULT_EPS_K};
use qinvar::linalg2::C2Vec;
use qinvar::model::{spin_observables, synthesize, synthesize_from_angles};
use qinvar::sampling::{haar_state, seeded_rng};
use qinvar::uncertainty::{commutator_evidence, noncommuting_pairs_check, DEFAULT_EPS_C};

fn main() -> qinvar::Result<()> {
    let complex = synthesize(
        &ProbTriple::new(0.3, 0.6, 0.45)?,
        &spin_observables(),
        DEFAULT_EPS_K,
    )?;
    let real = synthesize_from_angles(
        &AngleTriple::new(PI / 4.0, PI / 3.0, 7.0 * PI / 12.0)?,
        &spin_observables(),
        DEFAULT_EPS_K,
    )?;
    for (name, m) in [("complex", &complex), ("real", &real)] {
        let ev = commutator_evidence(m, DEFAULT_EPS_C)?;
        let values: Vec<_> = ev
            .averages
            .iter()
            .map(|a| format!("{:+.3e}", a.value_im))
            .collect();
        println!(
            "{name:>8}: Im⟨[X,Y]⟩ = {}  → {}",
            values.join(" "),
            ev.evidence
        );
    }

    let mut rng = seeded_rng(3, 0);
    let states: Vec<_> = (0..1000).map(|_| haar_state(&mut rng)).collect();
    let rep = noncommuting_pairs_check(&complex, &states, DEFAULT_EPS_C, DEFAULT_EPS_K)?;
    println!("\ncommutator norms {:?}", rep.commutator_norms);
    println!(
        "states with 0..3 nonzero averages: {:?}",
        rep.count_histogram
    );

    // a state on a model axis lies in two of the three planes at once
    let up = Spinor::new(C2Vec::from_reals(1.0, 0.0))?;
    let orth = synthesize(
        &ProbTriple::new(0.5, 0.5, 0.5)?,
        &spin_observables(),
        DEFAULT_EPS_K,
    )?;
    let rep = noncommuting_pairs_check(&orth, &[up], DEFAULT_EPS_C, DEFAULT_EPS_K)?;
    println!("|↑⟩ in the orthogonal model: {:?}", rep.shortfalls);
    Ok(())
}
