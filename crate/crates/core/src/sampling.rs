//! Seeded random generators for the property batteries.
//!
//! Every battery draws from its own ChaCha stream derived from a single
//! 64-bit seed, so results do not depend on the order batteries run in.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bloch::{BlochVec, Herm2, Spinor};
use crate::invariants::{AngleTriple, ProbTriple};
use crate::linalg2::{C2Vec, Mat2, Vec3, C64};

pub const DEFAULT_SEED: u64 = 42;

/// Independent generator for task `stream` under `seed`.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(normal(rng), normal(rng))
}

/// Uniform point on S² (normalized Gaussian triple).
pub fn haar_bloch<R: Rng + ?Sized>(rng: &mut R) -> BlochVec {
    loop {
        let v = Vec3::new(normal(rng), normal(rng), normal(rng));
        if v.norm() > 1e-12 {
            return BlochVec::normalize(v).expect("finite nonzero vector");
        }
    }
}

/// Haar-random pure state (normalized complex Gaussian amplitudes).
pub fn haar_state<R: Rng + ?Sized>(rng: &mut R) -> Spinor {
    loop {
        let c = C2Vec::new(complex_normal(rng), complex_normal(rng));
        if c.norm_sqr() > 1e-24 {
            return Spinor::normalize(c).expect("finite nonzero amplitudes");
        }
    }
}

/// Hermitian matrix `(G + G†)/2` with `G` a complex Gaussian matrix.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R) -> Herm2 {
    let g = Mat2::new(
        complex_normal(rng),
        complex_normal(rng),
        complex_normal(rng),
        complex_normal(rng),
    );
    Herm2::new((g + g.adjoint()).scale_real(0.5)).expect("symmetrized matrix is Hermitian")
}

/// Haar-random element of U(2).
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let col = haar_state(rng);
    let [a, b] = col.amplitudes().0;
    let phase = C64::from_phase(rng.random_range(0.0..std::f64::consts::TAU));
    Mat2::new(a, -b.conj(), b, a.conj()).scale(phase)
}

/// Uniform triple on the open cube, kept `margin` away from its faces.
pub fn random_probs<R: Rng + ?Sized>(rng: &mut R, margin: f64) -> ProbTriple {
    let mut draw = || margin + (1.0 - 2.0 * margin) * rng.random::<f64>();
    loop {
        if let Ok(t) = ProbTriple::new(draw(), draw(), draw()) {
            return t;
        }
    }
}

/// Random triple with `K > k_min`, by rejection from the uniform cube.
pub fn random_feasible_probs<R: Rng + ?Sized>(rng: &mut R, k_min: f64) -> ProbTriple {
    loop {
        let t = random_probs(rng, 1e-6);
        if crate::invariants::invariant_k(&t) > k_min {
            return t;
        }
    }
}

/// Random coplanar angle triple `(α, β, α + β)` with `α + β < π`.
pub fn random_coplanar_angles<R: Rng + ?Sized>(rng: &mut R, margin: f64) -> AngleTriple {
    let pi = std::f64::consts::PI;
    loop {
        let a = rng.random_range(margin..pi - margin);
        let b = rng.random_range(margin..pi - margin);
        if a + b < pi - margin {
            if let Ok(t) = AngleTriple::new(a, b, a + b) {
                return t;
            }
        }
    }
}
