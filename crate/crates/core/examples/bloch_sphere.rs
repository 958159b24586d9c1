//! Spin operators, their eigenstates and the Bloch-sphere round trip.
//!
//! `cargo run --example bloch_sphere`

use qinvar::bloch::{eigenbasis, spin_op, state_to_bloch, BlochVec};
use qinvar::linalg2::Vec3;
use qinvar::uncertainty::{mean, variance};

fn main() -> qinvar::Result<()> {
    let u = BlochVec::normalize(Vec3::new(1.0, 2.0, 2.0))?;
    let w = BlochVec::from_xyz(0.0, -0.6, 0.8)?;
    let su = spin_op(&u);
    println!("u = {:?}", u.vec().0);
    println!("u·σ = {}", su.mat());
    println!("eigenvalues {:?}", su.eigenvalues());

    for (k, psi) in eigenbasis(&w).iter().enumerate() {
        let back = state_to_bloch(psi);
        println!(
            "ψ{}(w) = {:?}, Bloch vector {:?}",
            k + 1,
            psi.amplitudes().0.map(|z| (z.re, z.im)),
            back.vec().0
        );
        // ⟨u·σ⟩ = ±u·w and Var(u·σ) = 1 − (u·w)²
        println!(
            "  ⟨u·σ⟩ = {:.12}  (±u·w = {:.12}),  Var = {:.12}  (1 − (u·w)² = {:.12})",
            mean(&su, psi),
            u.dot(&w),
            variance(&su, psi),
            1.0 - u.dot(&w).powi(2)
        );
    }

    // the poles are handled without dividing by zero
    let south = eigenbasis(&BlochVec::SOUTH);
    println!(
        "ψ1(south) = {:?}",
        south[0].amplitudes().0.map(|z| (z.re, z.im))
    );
    Ok(())
}
