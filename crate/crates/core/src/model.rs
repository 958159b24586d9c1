//! Constructive synthesis of quantum models for a probability triple.
//!
//! A model is fixed by three Bloch vectors `u_A, u_B, u_C` with
//! `u_A·u_B = cos α`, `u_B·u_C = cos β`, `u_C·u_A = cos γ`; each observable
//! with values `(x₁, x₂)` is then represented by
//! `X̂ = ((x₁+x₂)/2)·1 + ((x₁−x₂)/2)·(u_X·σ)`, whose eigenvector for `x₁` is
//! `ψ₁(u_X)`.
//!
//! Models are emitted in a canonical gauge: `u_A` at the north pole, `u_B` in
//! the x–z plane with positive x, and `u_C` in the half-space `y ≥ 0`.

use serde::{Deserialize, Serialize};

use crate::bloch::{eigenbasis, spin_op, BlochVec, Herm2, Spinor};
use crate::error::{Error, Result};
use crate::invariants::{
    classify, invariant_cos, invariant_cos_product, k_of, AngleTriple, ModelTag, ProbTriple,
};
use crate::linalg2::{cross3, inner, triple3, Mat2, Vec3};

/// Index pairs `(A,B)`, `(B,C)`, `(C,A)`, matching the order of `(p, q, r)`.
pub const PAIRS: [(usize, usize); 3] = [(0, 1), (1, 2), (2, 0)];
/// Cyclic relabelings `(X, Y, Z)` of `(A, B, C)`.
pub const CYCLIC: [(usize, usize, usize); 3] = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];
pub const LABELS: [&str; 3] = ["A", "B", "C"];

/// A two-valued observable with its ordered pair of distinct values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Observable {
    name: String,
    values: (f64, f64),
}

impl Observable {
    pub fn new(name: impl Into<String>, x1: f64, x2: f64) -> Result<Self> {
        let name = name.into();
        if !x1.is_finite() || !x2.is_finite() {
            return Err(Error::NonFinite("observable values"));
        }
        let scale = x1.abs().max(x2.abs()).max(1.0);
        if (x1 - x2).abs() <= 1e-12 * scale {
            return Err(Error::DegenerateValues { name, x1, x2 });
        }
        Ok(Observable {
            name,
            values: (x1, x2),
        })
    }

    /// Values `(1, −1)`.
    pub fn spin(name: impl Into<String>) -> Self {
        Observable {
            name: name.into(),
            values: (1.0, -1.0),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> (f64, f64) {
        self.values
    }

    /// `(x₁ + x₂)/2`.
    pub fn center(&self) -> f64 {
        0.5 * (self.values.0 + self.values.1)
    }

    /// `(x₁ − x₂)/2`.
    pub fn half_spread(&self) -> f64 {
        0.5 * (self.values.0 - self.values.1)
    }

    /// Affine re-valuation `x ↦ s·x + c`.
    pub fn rescaled(&self, s: f64, c: f64) -> Result<Self> {
        Observable::new(
            self.name.clone(),
            s * self.values.0 + c,
            s * self.values.1 + c,
        )
    }
}

/// The spin-valued triple `A, B, C` with values `(1, −1)` each.
pub fn spin_observables() -> [Observable; 3] {
    LABELS.map(Observable::spin)
}

/// `X̂ = ((x₁+x₂)/2)·1 + ((x₁−x₂)/2)·(u·σ)`.
pub fn build_operator(obs: &Observable, u: &BlochVec) -> Herm2 {
    spin_op(u).affine(obs.half_spread(), obs.center())
}

/// Inverse of [`build_operator`]: `(2/(x₁−x₂))·X̂ − ((x₁+x₂)/(x₁−x₂))·1`.
pub fn spin_rescaling(obs: &Observable, op: &Herm2) -> Herm2 {
    let (x1, x2) = obs.values();
    let d = x1 - x2;
    op.affine(2.0 / d, -(x1 + x2) / d)
}

/// Three unit vectors realizing the Gram matrix of `angles`, in canonical placement.
///
/// Fails with [`Error::InfeasibleGram`] when `invariant_cos(angles)/4 < −eps_k`,
/// the same threshold [`classify`] applies to `K`.
pub fn gram_to_vectors(angles: &AngleTriple, eps_k: f64) -> Result<[BlochVec; 3]> {
    let volume_sq = invariant_cos_product(angles);
    if volume_sq / 4.0 < -eps_k {
        return Err(Error::InfeasibleGram {
            invariant: invariant_cos(angles),
        });
    }
    let cosines = angles.as_array().map(f64::cos);
    place_vectors(cosines, angles.alpha().sin(), volume_sq)
}

/// [`gram_to_vectors`] for the angles of a probability triple, using
/// `cos α = 2p − 1`, `sin α = 2√(p(1−p))` and squared volume `4K` so no
/// trigonometric round trip is involved.
pub fn probs_to_vectors(t: &ProbTriple, eps_k: f64) -> Result<[BlochVec; 3]> {
    let k = crate::invariants::invariant_k(t);
    if k < -eps_k {
        return Err(Error::InfeasibleGram { invariant: 4.0 * k });
    }
    let cosines = t.as_array().map(|x| 2.0 * x - 1.0);
    let sin_alpha = 2.0 * (t.p() * (1.0 - t.p())).sqrt();
    place_vectors(cosines, sin_alpha, 4.0 * k)
}

// u_A = e₃, u_B = (sin α, 0, cos α), u_C = (x, y, cos γ) with
// x = (cos β − cos α·cos γ)/sin α and y = √(volume²)/sin α ≥ 0.
fn place_vectors(cosines: [f64; 3], sin_alpha: f64, volume_sq: f64) -> Result<[BlochVec; 3]> {
    let [ca, cb, cg] = cosines;
    let x = (cb - ca * cg) / sin_alpha;
    let y = volume_sq.max(0.0).sqrt() / sin_alpha;
    let u_a = BlochVec::NORTH;
    let u_b = BlochVec::normalize(Vec3::new(sin_alpha, 0.0, ca))?;
    let u_c = BlochVec::normalize(Vec3::new(x, y, cg))?;
    Ok([u_a, u_b, u_c])
}

/// A synthesized spin model for three observables.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumModel {
    vectors: [BlochVec; 3],
    observables: [Observable; 3],
    operators: [Herm2; 3],
    eigenbases: [[Spinor; 2]; 3],
}

impl QuantumModel {
    /// Builds operators and eigenbases from Bloch vectors.
    pub fn from_vectors(vectors: [BlochVec; 3], observables: [Observable; 3]) -> Self {
        let operators = [0, 1, 2].map(|i| build_operator(&observables[i], &vectors[i]));
        let eigenbases = vectors.map(|v| eigenbasis(&v));
        QuantumModel {
            vectors,
            observables,
            operators,
            eigenbases,
        }
    }

    /// Assembles a model from stored parts without recomputing anything.
    /// Use [`QuantumModel::check_invariants`] to see whether the parts agree.
    pub fn from_parts(
        vectors: [BlochVec; 3],
        observables: [Observable; 3],
        operators: [Herm2; 3],
        eigenbases: [[Spinor; 2]; 3],
    ) -> Self {
        QuantumModel {
            vectors,
            observables,
            operators,
            eigenbases,
        }
    }

    pub fn vectors(&self) -> &[BlochVec; 3] {
        &self.vectors
    }

    pub fn observables(&self) -> &[Observable; 3] {
        &self.observables
    }

    pub fn operators(&self) -> &[Herm2; 3] {
        &self.operators
    }

    pub fn eigenbases(&self) -> &[[Spinor; 2]; 3] {
        &self.eigenbases
    }

    /// Signed volume `(u_A × u_B)·u_C`.
    pub fn volume(&self) -> f64 {
        let [a, b, c] = &self.vectors;
        triple3(a.vec(), b.vec(), c.vec())
    }

    /// `(p, q, r)` implied by the Bloch vectors, `(1 + u_X·u_Y)/2` per pair.
    pub fn implied_probs(&self) -> [f64; 3] {
        PAIRS.map(|(i, j)| 0.5 * (1.0 + self.vectors[i].dot(&self.vectors[j])))
    }

    /// `K` evaluated on [`QuantumModel::implied_probs`].
    pub fn implied_k(&self) -> f64 {
        let [p, q, r] = self.implied_probs();
        k_of(p, q, r)
    }

    /// `|⟨ψ_i(u_X)|ψ_j(u_Y)⟩|²` for the pair `(X, Y)`.
    pub fn overlaps(&self, x: usize, y: usize) -> [[f64; 2]; 2] {
        let (bx, by) = (&self.eigenbases[x], &self.eigenbases[y]);
        [
            [bx[0].overlap(&by[0]), bx[0].overlap(&by[1])],
            [bx[1].overlap(&by[0]), bx[1].overlap(&by[1])],
        ]
    }

    /// The same observables with new values; vectors and eigenbases are kept.
    pub fn with_observables(&self, observables: [Observable; 3]) -> Self {
        QuantumModel::from_vectors(self.vectors, observables)
    }

    /// Applies one unitary to every operator and eigenvector. The Bloch
    /// vectors follow through the induced rotation.
    pub fn conjugated(&self, u: &Mat2) -> Result<Self> {
        let operators = self.operators.map(|op| op.conjugate_by(u));
        let mut eigenbases = self.eigenbases;
        for basis in eigenbases.iter_mut() {
            for psi in basis.iter_mut() {
                *psi = psi.transform(u)?;
            }
        }
        let mut vectors = self.vectors;
        for (v, old) in vectors.iter_mut().zip(&self.vectors) {
            *v = BlochVec::normalize(spin_op(old).conjugate_by(u).pauli_coefficients().1)?;
        }
        Ok(QuantumModel {
            vectors,
            observables: self.observables.clone(),
            operators,
            eigenbases,
        })
    }

    /// Residuals of the structural invariants tying operators, eigenbases
    /// and vectors together.
    pub fn check_invariants(&self) -> InvariantReport {
        let mut eigen = 0.0_f64;
        let mut ortho = 0.0_f64;
        let mut rescale = 0.0_f64;
        for i in 0..3 {
            let obs = &self.observables[i];
            let (x1, x2) = obs.values();
            let scale = x1.abs().max(x2.abs()).max(1.0);
            let op = &self.operators[i];
            let [psi1, psi2] = &self.eigenbases[i];
            for (psi, x) in [(psi1, x1), (psi2, x2)] {
                let lhs = op.apply(psi);
                let rhs = psi.amplitudes().scale(crate::linalg2::C64::real(x));
                eigen = eigen.max(lhs.max_abs_diff(&rhs) / scale);
            }
            for (a, b, want) in [(psi1, psi1, 1.0), (psi2, psi2, 1.0), (psi1, psi2, 0.0)] {
                let z = inner(a.amplitudes(), b.amplitudes());
                ortho = ortho.max((z - crate::linalg2::C64::real(want)).abs());
            }
            let rescaled = spin_rescaling(obs, op);
            rescale = rescale.max(rescaled.mat().max_abs_diff(spin_op(&self.vectors[i]).mat()));
        }
        InvariantReport {
            max_eigen_residual: eigen,
            max_orthonormality_residual: ortho,
            max_rescaling_residual: rescale,
        }
    }
}

/// Worst residuals of [`QuantumModel::check_invariants`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    /// `‖X̂ψ_k − x_kψ_k‖ / max(|x₁|, |x₂|, 1)`.
    pub max_eigen_residual: f64,
    pub max_orthonormality_residual: f64,
    /// Entrywise distance between the spin rescaling of each operator and `u·σ`.
    pub max_rescaling_residual: f64,
}

impl InvariantReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_eigen_residual <= tol
            && self.max_orthonormality_residual <= tol
            && self.max_rescaling_residual <= tol
    }

    pub fn worst(&self) -> f64 {
        self.max_eigen_residual
            .max(self.max_orthonormality_residual)
            .max(self.max_rescaling_residual)
    }
}

/// Synthesizes a model for `t`, refusing triples classified as having none.
pub fn synthesize(t: &ProbTriple, values: &[Observable; 3], eps_k: f64) -> Result<QuantumModel> {
    let class = classify(t, eps_k);
    if class.tag == ModelTag::NoQuantumModel {
        return Err(Error::InfeasibleGram {
            invariant: 4.0 * class.k,
        });
    }
    let vectors = probs_to_vectors(t, eps_k)?;
    Ok(QuantumModel::from_vectors(vectors, values.clone()))
}

/// Synthesizes a model directly from the angle parameterization.
pub fn synthesize_from_angles(
    angles: &AngleTriple,
    values: &[Observable; 3],
    eps_k: f64,
) -> Result<QuantumModel> {
    let vectors = gram_to_vectors(angles, eps_k)?;
    Ok(QuantumModel::from_vectors(vectors, values.clone()))
}

/// Overlap matrices of a model compared against a probability triple.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransitionReport {
    /// `|⟨ψ_i(X)|ψ_j(Y)⟩|²` for `(A,B)`, `(B,C)`, `(C,A)`.
    pub overlaps: [[[f64; 2]; 2]; 3],
    pub max_deviation: f64,
    /// `max | |⟨φ|ψ⟩|² − |⟨ψ|φ⟩|² |`.
    pub max_symmetry_residual: f64,
    /// Largest deviation of a row or column sum from 1.
    pub max_stochastic_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Compares all twelve squared overlaps against the transition matrices of `t`.
pub fn verify_transitions(m: &QuantumModel, t: &ProbTriple, tol: f64) -> TransitionReport {
    let mut overlaps = [[[0.0; 2]; 2]; 3];
    let mut dev = 0.0_f64;
    let mut sym = 0.0_f64;
    let mut stoch = 0.0_f64;
    for (k, &(x, y)) in PAIRS.iter().enumerate() {
        let o = m.overlaps(x, y);
        let back = m.overlaps(y, x);
        let expected = t.matrix(k);
        for i in 0..2 {
            for j in 0..2 {
                dev = dev.max((o[i][j] - expected[i][j]).abs());
                sym = sym.max((o[i][j] - back[j][i]).abs());
            }
            stoch = stoch
                .max((o[i][0] + o[i][1] - 1.0).abs())
                .max((o[0][i] + o[1][i] - 1.0).abs());
        }
        overlaps[k] = o;
    }
    let passed = dev <= tol && sym <= tol && stoch <= tol;
    TransitionReport {
        overlaps,
        max_deviation: dev,
        max_symmetry_residual: sym,
        max_stochastic_residual: stoch,
        tolerance: tol,
        passed,
    }
}

/// Returned by [`real_embedding`] when the Bloch vectors span a volume.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NotRepresentable {
    pub volume: f64,
}

/// Rotates a coplanar model so its plane is the x–z plane, making every
/// operator and eigenvector real.
///
/// The vectors count as coplanar when `volume² ≤ 4·eps_k`; the squared volume
/// equals `4K`, so this is the band [`classify`] labels as real. Residual
/// out-of-plane components are projected away, which perturbs the pairwise
/// dot products only at second order.
pub fn real_embedding(
    m: &QuantumModel,
    eps_k: f64,
) -> std::result::Result<QuantumModel, NotRepresentable> {
    let volume = m.volume();
    if volume * volume > 4.0 * eps_k {
        return Err(NotRepresentable { volume });
    }
    let v = m.vectors.map(Vec3::from);
    let normal = PAIRS
        .iter()
        .map(|&(i, j)| cross3(&v[i], &v[j]))
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("three pairs");
    let mut n = normal.scale(1.0 / normal.norm());
    if n.y() < 0.0 {
        n = -n;
    }
    let rotated = v.map(|x| rotate_onto_e2(&n, &x));
    let planar = rotated.map(|r| {
        BlochVec::normalize(Vec3::new(r.x(), 0.0, r.z()))
            .expect("in-plane component of a unit vector")
    });
    Ok(QuantumModel::from_vectors(planar, m.observables.clone()))
}

// Applies the minimal rotation taking unit vector `n` (with n·e₂ ≥ 0) to e₂.
fn rotate_onto_e2(n: &Vec3, x: &Vec3) -> Vec3 {
    let axis = cross3(n, &Vec3::E2);
    let sin = axis.norm();
    let cos = n.y();
    if sin < 1e-300 {
        return *x;
    }
    let k = axis.scale(1.0 / sin);
    x.scale(cos) + cross3(&k, x).scale(sin) + k.scale(k.dot(x) * (1.0 - cos))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::pauli;
    use crate::invariants::{angles_to_probs, invariant_k, probs_to_angles, DEFAULT_EPS_K};
    use crate::linalg2::C64;
    use crate::sampling::{random_feasible_probs, random_unitary, seeded_rng};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

    fn c2(x: f64) -> f64 {
        x.cos() * x.cos()
    }

    fn orthogonal_model() -> QuantumModel {
        let t = ProbTriple::new(0.5, 0.5, 0.5).unwrap();
        synthesize(&t, &spin_observables(), DEFAULT_EPS_K).unwrap()
    }

    #[test]
    fn observable_validation() {
        assert!(matches!(
            Observable::new("A", 2.0, 2.0),
            Err(Error::DegenerateValues { .. })
        ));
        assert!(Observable::new("A", 1e15, 1e15 + 1.0).is_err());
        assert!(Observable::new("A", 1e3, 1e3 + 1.0).is_ok());
        assert!(Observable::new("A", f64::INFINITY, 0.0).is_err());
        let o = Observable::new("X", 3.0, 1.0).unwrap();
        assert_eq!((o.center(), o.half_spread()), (2.0, 1.0));
    }

    #[test]
    fn gram_examples() {
        let right = AngleTriple::new(FRAC_PI_2, FRAC_PI_2, FRAC_PI_2).unwrap();
        let [a, b, c] = gram_to_vectors(&right, DEFAULT_EPS_K).unwrap();
        assert!(a.vec().max_abs_diff(&Vec3::E3) < 1e-15);
        assert!(b.vec().max_abs_diff(&Vec3::E1) < 1e-15);
        assert!(c.vec().max_abs_diff(&Vec3::E2) < 1e-15);

        let flat = AngleTriple::new(FRAC_PI_4, FRAC_PI_4, FRAC_PI_2).unwrap();
        let [_, _, c] = gram_to_vectors(&flat, DEFAULT_EPS_K).unwrap();
        assert!(c.vec().y().abs() < 1e-10);

        let bad = probs_to_angles(&ProbTriple::new(0.9, 0.9, 0.1).unwrap());
        match gram_to_vectors(&bad, DEFAULT_EPS_K) {
            Err(Error::InfeasibleGram { invariant }) => assert!((invariant + 1.944).abs() < 1e-12),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn placement_identity_and_gram_fidelity() {
        let mut rng = seeded_rng(5, 0);
        for _ in 0..2000 {
            let t = random_feasible_probs(&mut rng, 1e-6);
            let a = probs_to_angles(&t);
            let (ca, cb, cg) = (a.alpha().cos(), a.beta().cos(), a.gamma().cos());
            let x = (cb - ca * cg) / a.alpha().sin();
            let lhs = 1.0 - x * x - cg * cg;
            let rhs = invariant_cos(&a) / a.alpha().sin().powi(2);
            assert!(
                (lhs - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()),
                "{lhs} vs {rhs}"
            );

            let [u, v, w] = gram_to_vectors(&a, DEFAULT_EPS_K).unwrap();
            assert!((u.dot(&v) - ca).abs() <= 1e-10);
            assert!((v.dot(&w) - cb).abs() <= 1e-10);
            assert!((w.dot(&u) - cg).abs() <= 1e-10);
            assert!(w.vec().y() >= 0.0);
        }
    }

    #[test]
    fn build_operator_examples() {
        let s3 = build_operator(&Observable::spin("A"), &BlochVec::NORTH);
        assert_eq!(s3, pauli(3).unwrap());

        let u = BlochVec::normalize(Vec3::new(0.3, -0.4, 0.5)).unwrap();
        for h in [1e-3, 0.5, -2.0, 7.0] {
            let obs = Observable::new("X", 5.0, 5.0 + 2.0 * h).unwrap();
            let op = build_operator(&obs, &u);
            let back = spin_rescaling(&obs, &op);
            assert!(
                back.mat().max_abs_diff(spin_op(&u).mat()) < 1e-12,
                "h = {h}"
            );
        }

        let x = BlochVec::from_xyz(1.0, 0.0, 0.0).unwrap();
        let op = build_operator(&Observable::new("X", 3.0, 1.0).unwrap(), &x);
        let expected = Mat2::new(C64::real(2.0), C64::ONE, C64::ONE, C64::real(2.0));
        assert!(op.mat().max_abs_diff(&expected) < 1e-15);
        let (hi, lo) = op.eigenvalues();
        assert!((hi - 3.0).abs() < 1e-15 && (lo - 1.0).abs() < 1e-15);
        let psi = crate::bloch::eigenstate_plus(&x);
        assert!(
            op.apply(&psi)
                .max_abs_diff(&psi.amplitudes().scale(C64::real(3.0)))
                < 1e-15
        );
    }

    #[test]
    fn synthesize_orthogonal_case() {
        let m = orthogonal_model();
        let ops = m.operators();
        assert!(ops[0].mat().max_abs_diff(pauli(3).unwrap().mat()) < 1e-15);
        assert!(ops[1].mat().max_abs_diff(pauli(1).unwrap().mat()) < 1e-15);
        assert!(ops[2].mat().max_abs_diff(pauli(2).unwrap().mat()) < 1e-15);
        assert!((m.volume() - 1.0).abs() < 1e-15);
        let t = ProbTriple::new(0.5, 0.5, 0.5).unwrap();
        let rep = verify_transitions(&m, &t, 1e-12);
        assert!(rep.passed, "{rep:?}");
        assert!(rep.max_stochastic_residual <= 1e-12);
        assert!(m.check_invariants().passes(1e-12));
    }

    #[test]
    fn synthesize_saturated_and_infeasible() {
        let sat = ProbTriple::new(c2(FRAC_PI_8), c2(FRAC_PI_8), 0.5).unwrap();
        let m = synthesize(&sat, &spin_observables(), DEFAULT_EPS_K).unwrap();
        assert!(m.volume().abs() <= 1e-8);
        assert!(verify_transitions(&m, &sat, 1e-10).passed);

        let bad = ProbTriple::new(0.9, 0.9, 0.1).unwrap();
        assert!(matches!(
            synthesize(&bad, &spin_observables(), DEFAULT_EPS_K),
            Err(Error::InfeasibleGram { .. })
        ));
    }

    #[test]
    fn perturbed_model_fails_verification() {
        let t = ProbTriple::new(0.5, 0.5, 0.5).unwrap();
        let m = orthogonal_model();
        let mut v = *m.vectors();
        let tilt = 1e-3_f64;
        v[1] = BlochVec::normalize(Vec3::new(tilt.cos(), 0.0, tilt.sin())).unwrap();
        let bent = QuantumModel::from_vectors(v, spin_observables());
        let rep = verify_transitions(&bent, &t, 1e-6);
        assert!(!rep.passed);
        // cos²(θ/2) moves by sin(θ)/2 ≈ θ/2 for θ near π/2
        assert!(
            rep.max_deviation > 2e-4 && rep.max_deviation < 2e-3,
            "{}",
            rep.max_deviation
        );
    }

    #[test]
    fn real_embedding_cases() {
        let flat = AngleTriple::new(FRAC_PI_4, FRAC_PI_4, FRAC_PI_2).unwrap();
        let m = synthesize_from_angles(&flat, &spin_observables(), DEFAULT_EPS_K).unwrap();
        let real = real_embedding(&m, DEFAULT_EPS_K).unwrap();
        for op in real.operators() {
            assert!(op.mat().max_abs_imag() <= 1e-10);
        }
        for basis in real.eigenbases() {
            for psi in basis {
                assert!(psi.amplitudes().0.iter().all(|z| z.im.abs() <= 1e-10));
            }
        }
        // canonical placement is already planar, so nothing moves
        for (a, b) in real.vectors().iter().zip(m.vectors()) {
            assert!(a.vec().max_abs_diff(b.vec()) <= 1e-12);
        }

        assert!(real_embedding(&orthogonal_model(), DEFAULT_EPS_K).is_err());
    }

    #[test]
    fn real_embedding_of_rotated_plane() {
        let mut rng = seeded_rng(9, 0);
        let flat = AngleTriple::new(0.7, 1.1, 1.8).unwrap();
        let t = angles_to_probs(&flat).unwrap();
        let m = synthesize_from_angles(&flat, &spin_observables(), DEFAULT_EPS_K).unwrap();
        let u = random_unitary(&mut rng);
        let tilted = m.conjugated(&u).unwrap();
        assert!(tilted
            .operators()
            .iter()
            .any(|op| op.mat().max_abs_imag() > 1e-3));
        let real = real_embedding(&tilted, DEFAULT_EPS_K).unwrap();
        assert!(real
            .operators()
            .iter()
            .all(|op| op.mat().max_abs_imag() <= 1e-10));
        assert!(verify_transitions(&real, &t, 1e-10).passed);
    }

    #[test]
    fn rescaling_does_not_change_transitions() {
        let mut rng = seeded_rng(13, 0);
        for _ in 0..200 {
            let t = random_feasible_probs(&mut rng, 1e-6);
            let m = synthesize(&t, &spin_observables(), DEFAULT_EPS_K).unwrap();
            let base = verify_transitions(&m, &t, 1e-10);
            let values = [
                Observable::new("A", 3.0, -7.5).unwrap(),
                Observable::new("B", 0.25, 100.0).unwrap(),
                Observable::new("C", -2.0, -1.0).unwrap(),
            ];
            let other = verify_transitions(&m.with_observables(values), &t, 1e-10);
            assert_eq!(base, other);
        }
    }

    #[test]
    fn unitary_freedom_preserves_overlaps() {
        let mut rng = seeded_rng(17, 0);
        for _ in 0..500 {
            let t = random_feasible_probs(&mut rng, 1e-6);
            let m = synthesize(&t, &spin_observables(), DEFAULT_EPS_K).unwrap();
            let u = random_unitary(&mut rng);
            let moved = m.conjugated(&u).unwrap();
            for &(x, y) in &PAIRS {
                let (a, b) = (m.overlaps(x, y), moved.overlaps(x, y));
                for i in 0..2 {
                    for j in 0..2 {
                        assert!((a[i][j] - b[i][j]).abs() <= 1e-12);
                    }
                }
            }
            assert!(moved.check_invariants().passes(1e-10));
            assert!((moved.implied_k() - invariant_k(&t)).abs() <= 1e-10);
        }
    }
}
