//! Pauli matrices, spin operators `u·σ`, their eigenstate spinors and the
//! correspondence between pure states and points of the unit sphere.

use crate::error::{Error, Result};
use crate::linalg2::{C2Vec, Mat2, Vec3, C64};

/// Accepted deviation of `‖u‖` from 1 when a raw vector is promoted to a [`BlochVec`].
pub const UNIT_TOLERANCE: f64 = 1e-9;
/// Accepted deviation of `‖ψ‖²` from 1 when raw amplitudes are promoted to a [`Spinor`].
pub const NORM_TOLERANCE: f64 = 1e-9;
/// Accepted entrywise anti-Hermitian part when a matrix is promoted to [`Herm2`].
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;
/// Amplitudes below this modulus are ignored when fixing the global phase.
pub const PHASE_THRESHOLD: f64 = 1e-12;

// Below this value of 1 ± w₃ the closed-form eigenvectors have no usable
// direction left and the exact pole limit is returned instead.
const POLE_EPS: f64 = 1e-300;

/// A point of the unit sphere S².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVec(Vec3);

impl BlochVec {
    pub const NORTH: BlochVec = BlochVec(Vec3::E3);
    pub const SOUTH: BlochVec = BlochVec(Vec3([0.0, 0.0, -1.0]));

    /// Promotes a vector whose norm is within [`UNIT_TOLERANCE`] of 1,
    /// renormalizing the residual away.
    pub fn new(v: Vec3) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite("Bloch vector"));
        }
        let n = v.norm();
        let deviation = (n - 1.0).abs();
        if deviation > UNIT_TOLERANCE {
            return Err(Error::NotUnitVector { deviation });
        }
        Ok(BlochVec(v.scale(1.0 / n)))
    }

    /// Projects any finite nonzero vector onto the sphere.
    pub fn normalize(v: Vec3) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite("Bloch vector"));
        }
        let n = v.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(BlochVec(v.scale(1.0 / n)))
    }

    pub fn from_xyz(x: f64, y: f64, z: f64) -> Result<Self> {
        BlochVec::new(Vec3::new(x, y, z))
    }

    #[inline]
    pub fn vec(&self) -> &Vec3 {
        &self.0
    }

    pub fn dot(&self, other: &BlochVec) -> f64 {
        self.0.dot(&other.0)
    }

    /// The antipodal point.
    pub fn antipode(&self) -> BlochVec {
        BlochVec(-self.0)
    }
}

impl From<BlochVec> for Vec3 {
    fn from(b: BlochVec) -> Vec3 {
        b.0
    }
}

/// A normalized pure state of a two-level system in canonical phase: the
/// first amplitude whose modulus exceeds [`PHASE_THRESHOLD`] is real and
/// nonnegative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spinor(C2Vec);

impl Spinor {
    /// Accepts amplitudes whose squared norm is within [`NORM_TOLERANCE`] of 1.
    pub fn new(amplitudes: C2Vec) -> Result<Self> {
        if !amplitudes.is_finite() {
            return Err(Error::NonFinite("spinor"));
        }
        let deviation = (amplitudes.norm_sqr() - 1.0).abs();
        if deviation > NORM_TOLERANCE {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Spinor::canonical(amplitudes))
    }

    /// Normalizes any finite nonzero amplitude pair.
    pub fn normalize(amplitudes: C2Vec) -> Result<Self> {
        if !amplitudes.is_finite() {
            return Err(Error::NonFinite("spinor"));
        }
        if amplitudes.norm_sqr() == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(Spinor::canonical(amplitudes))
    }

    fn canonical(c: C2Vec) -> Self {
        let n = c.norm();
        let mut c = c.scale(C64::real(1.0 / n));
        if let Some(lead) = c.0.iter().copied().find(|z| z.abs() > PHASE_THRESHOLD) {
            let phase = lead.conj() / lead.abs();
            c = c.scale(phase);
            // the leading amplitude is now real up to rounding; make it exactly so
            for z in c.0.iter_mut() {
                if z.abs() > PHASE_THRESHOLD {
                    z.im = 0.0;
                    z.re = z.re.max(0.0);
                    break;
                }
            }
        }
        Spinor(c)
    }

    #[inline]
    pub fn amplitudes(&self) -> &C2Vec {
        &self.0
    }

    /// `|⟨self|other⟩|²`.
    pub fn overlap(&self, other: &Spinor) -> f64 {
        crate::linalg2::inner(&self.0, &other.0).norm_sqr()
    }

    /// True when the two states differ at most by a global phase.
    pub fn same_ray(&self, other: &Spinor, tol: f64) -> bool {
        1.0 - self.overlap(other) <= tol
    }

    /// Applies a 2×2 matrix and renormalizes. Intended for unitaries.
    pub fn transform(&self, u: &Mat2) -> Result<Spinor> {
        Spinor::normalize(u.apply(&self.0))
    }
}

/// A Hermitian 2×2 operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Herm2(Mat2);

impl Herm2 {
    /// Accepts matrices whose anti-Hermitian part is below [`HERMITIAN_TOLERANCE`]
    /// entrywise and stores the Hermitian projection `(M + M†)/2`.
    pub fn new(m: Mat2) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite("operator"));
        }
        let residual = m.max_abs_diff(&m.adjoint());
        if residual > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian { residual });
        }
        Ok(Herm2((m + m.adjoint()).scale_real(0.5)))
    }

    /// Builds `[[a, b], [b̄, d]]`.
    pub fn from_parts(a: f64, b: C64, d: f64) -> Self {
        Herm2(Mat2::new(C64::real(a), b, b.conj(), C64::real(d)))
    }

    pub fn identity() -> Self {
        Herm2(Mat2::IDENTITY)
    }

    /// `c₀·1 + c·σ`.
    pub fn from_pauli_coefficients(c0: f64, c: &Vec3) -> Self {
        let [c1, c2, c3] = c.0;
        Herm2::from_parts(c0 + c3, C64::new(c1, -c2), c0 - c3)
    }

    /// Coefficients `(c₀, c)` with `self = c₀·1 + c·σ`.
    pub fn pauli_coefficients(&self) -> (f64, Vec3) {
        let m = &self.0 .0;
        let a = m[0][0].re;
        let d = m[1][1].re;
        let b = m[0][1];
        ((a + d) / 2.0, Vec3::new(b.re, -b.im, (a - d) / 2.0))
    }

    #[inline]
    pub fn mat(&self) -> &Mat2 {
        &self.0
    }

    /// Real affine combination `s·self + c·1`, which stays Hermitian.
    pub fn affine(&self, s: f64, c: f64) -> Herm2 {
        Herm2(self.0.scale_real(s) + Mat2::IDENTITY.scale_real(c))
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let (c0, c) = self.pauli_coefficients();
        let r = c.norm();
        (c0 + r, c0 - r)
    }

    pub fn apply(&self, psi: &Spinor) -> C2Vec {
        self.0.apply(psi.amplitudes())
    }

    /// Conjugation `U·self·U†`.
    pub fn conjugate_by(&self, u: &Mat2) -> Herm2 {
        let m = *u * self.0 * u.adjoint();
        Herm2((m + m.adjoint()).scale_real(0.5))
    }
}

/// The Pauli matrix σ_k for k ∈ {1, 2, 3}.
pub fn pauli(k: usize) -> Result<Herm2> {
    let (o, z, i) = (C64::ONE, C64::ZERO, C64::I);
    let m = match k {
        1 => Mat2::new(z, o, o, z),
        2 => Mat2::new(z, -i, i, z),
        3 => Mat2::new(o, z, z, -o),
        other => return Err(Error::InvalidPauliIndex(other)),
    };
    Ok(Herm2(m))
}

/// The spin operator `u·σ = [[u₃, u₁ − iu₂], [u₁ + iu₂, −u₃]]`.
pub fn spin_op(u: &BlochVec) -> Herm2 {
    Herm2::from_pauli_coefficients(0.0, u.vec())
}

/// Normalized eigenvector of `w·σ` for eigenvalue +1,
/// `[√((1+w₃)/2), (w₁+iw₂)/√(2(1+w₃))]`.
///
/// `1 + w₃` is evaluated as `(w₁² + w₂²)/(1 − w₃)` on the southern
/// hemisphere so the formula stays accurate arbitrarily close to the pole;
/// exactly at the south pole the limit `[0, 1]` is returned.
pub fn eigenstate_plus(w: &BlochVec) -> Spinor {
    let [w1, w2, w3] = w.vec().0;
    let rho2 = w1 * w1 + w2 * w2;
    let s = if w3 >= 0.0 {
        1.0 + w3
    } else {
        rho2 / (1.0 - w3)
    };
    if s < POLE_EPS {
        return Spinor::canonical(C2Vec::from_reals(0.0, 1.0));
    }
    let a = (s / 2.0).sqrt();
    let b = C64::new(w1, w2) / (2.0 * s).sqrt();
    Spinor::canonical(C2Vec::new(C64::real(a), b))
}

/// Normalized eigenvector of `w·σ` for eigenvalue −1,
/// `[√((1−w₃)/2), −(w₁+iw₂)/√(2(1−w₃))]`, with the north-pole limit `[0, 1]`.
pub fn eigenstate_minus(w: &BlochVec) -> Spinor {
    let [w1, w2, w3] = w.vec().0;
    let rho2 = w1 * w1 + w2 * w2;
    let t = if w3 <= 0.0 {
        1.0 - w3
    } else {
        rho2 / (1.0 + w3)
    };
    if t < POLE_EPS {
        return Spinor::canonical(C2Vec::from_reals(0.0, 1.0));
    }
    let a = (t / 2.0).sqrt();
    let b = -(C64::new(w1, w2) / (2.0 * t).sqrt());
    Spinor::canonical(C2Vec::new(C64::real(a), b))
}

/// The eigenstate pair `(ψ₁(w), ψ₂(w))`.
pub fn eigenbasis(w: &BlochVec) -> [Spinor; 2] {
    [eigenstate_plus(w), eigenstate_minus(w)]
}

/// The point `w` of the sphere with `ψ = ψ₁(w)` up to phase:
/// `w₁ + iw₂ = 2·ψ̄₁ψ₂`, `w₃ = |ψ₁|² − |ψ₂|²`.
pub fn state_to_bloch(psi: &Spinor) -> BlochVec {
    let [a, b] = psi.amplitudes().0;
    let cross = a.conj() * b;
    let w = Vec3::new(2.0 * cross.re, 2.0 * cross.im, a.norm_sqr() - b.norm_sqr());
    // a normalized spinor maps to a unit vector; only rounding is removed here
    BlochVec::normalize(w).expect("normalized spinor has a nonzero Bloch vector")
}
