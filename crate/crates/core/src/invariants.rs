//! Transition-probability triples, their angle parameterization, the
//! statistical invariant `K = 4pqr − (p+q+r−1)²` in its equivalent forms, and
//! model classification.
//!
//! The three symmetric transition matrices
//!
//! ```text
//! P(A|B) = [p 1−p; 1−p p],  P(B|C) = [q 1−q; 1−q q],  P(C|A) = [r 1−r; 1−r r]
//! ```
//!
//! are reduced to the scalars `(p, q, r)` and parameterized by angles via
//! `p = cos²(α/2)`, `q = cos²(β/2)`, `r = cos²(γ/2)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance kept from 0 and 1 by every accepted probability.
pub const BOUNDARY_MARGIN: f64 = 1e-9;
/// Default half-width of the band `|K| ≤ ε_K` classified as a real model.
pub const DEFAULT_EPS_K: f64 = 1e-9;
/// Tolerance used when validating full 2×2 transition matrices.
pub const MATRIX_TOLERANCE: f64 = 1e-9;

fn check_probability(name: &'static str, value: f64) -> Result<f64> {
    let lo = BOUNDARY_MARGIN;
    let hi = 1.0 - BOUNDARY_MARGIN;
    if value.is_finite() && value > lo && value < hi {
        Ok(value)
    } else {
        Err(Error::ProbabilityOutOfRange {
            name,
            value,
            lo,
            hi,
        })
    }
}

/// The diagonal entries `(p, q, r)` of the transition matrices
/// `P(A|B)`, `P(B|C)`, `P(C|A)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbTriple {
    p: f64,
    q: f64,
    r: f64,
}

impl ProbTriple {
    pub fn new(p: f64, q: f64, r: f64) -> Result<Self> {
        Ok(ProbTriple {
            p: check_probability("p", p)?,
            q: check_probability("q", q)?,
            r: check_probability("r", r)?,
        })
    }

    /// Reduces three full transition matrices after checking that each is
    /// symmetric with unit row and column sums and equal diagonal entries.
    pub fn from_matrices(ab: [[f64; 2]; 2], bc: [[f64; 2]; 2], ca: [[f64; 2]; 2]) -> Result<Self> {
        fn reduce(name: &'static str, m: [[f64; 2]; 2]) -> Result<f64> {
            let residual = [
                (m[0][1] - m[1][0]).abs(),
                (m[0][0] - m[1][1]).abs(),
                (m[0][0] + m[0][1] - 1.0).abs(),
                (m[1][0] + m[1][1] - 1.0).abs(),
                (m[0][0] + m[1][0] - 1.0).abs(),
                (m[0][1] + m[1][1] - 1.0).abs(),
            ]
            .into_iter()
            .fold(0.0, f64::max);
            if !residual.is_finite() || residual > MATRIX_TOLERANCE {
                return Err(Error::BadTransitionMatrix { name, residual });
            }
            Ok(m[0][0])
        }
        ProbTriple::new(
            reduce("P(A|B)", ab)?,
            reduce("P(B|C)", bc)?,
            reduce("P(C|A)", ca)?,
        )
    }

    #[inline]
    pub fn p(&self) -> f64 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> f64 {
        self.q
    }

    #[inline]
    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.p, self.q, self.r]
    }

    /// The full 2×2 matrix `[x 1−x; 1−x x]` for pair index 0 (A,B), 1 (B,C) or 2 (C,A).
    pub fn matrix(&self, pair: usize) -> [[f64; 2]; 2] {
        let x = self.as_array()[pair];
        [[x, 1.0 - x], [1.0 - x, x]]
    }
}

/// Angles `(α, β, γ)` in the open interval (0, π).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngleTriple {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl AngleTriple {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let check = |name, v: f64| {
            if v.is_finite() && v > 0.0 && v < PI {
                Ok(v)
            } else {
                Err(Error::AngleOutOfRange { name, value: v })
            }
        };
        Ok(AngleTriple {
            alpha: check("alpha", alpha)?,
            beta: check("beta", beta)?,
            gamma: check("gamma", gamma)?,
        })
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    #[inline]
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }
}

/// Which kind of Hilbert-space model the triple admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelTag {
    NoQuantumModel,
    RealQuantum,
    StrictlyComplexQuantum,
}

impl ModelTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelTag::NoQuantumModel => "NoQuantumModel",
            ModelTag::RealQuantum => "RealQuantum",
            ModelTag::StrictlyComplexQuantum => "StrictlyComplexQuantum",
        }
    }

    /// True for both real and strictly complex models.
    pub fn has_model(&self) -> bool {
        !matches!(self, ModelTag::NoQuantumModel)
    }
}

impl fmt::Display for ModelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "NoQuantumModel" => Ok(ModelTag::NoQuantumModel),
            "RealQuantum" => Ok(ModelTag::RealQuantum),
            "StrictlyComplexQuantum" => Ok(ModelTag::StrictlyComplexQuantum),
            other => Err(format!("unknown model class {other:?}")),
        }
    }
}

/// Classification together with the invariant it was derived from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelClass {
    pub tag: ModelTag,
    pub k: f64,
}

impl ModelClass {
    pub fn from_k(k: f64, eps_k: f64) -> Self {
        let tag = if k < -eps_k {
            ModelTag::NoQuantumModel
        } else if k > eps_k {
            ModelTag::StrictlyComplexQuantum
        } else {
            ModelTag::RealQuantum
        };
        ModelClass { tag, k }
    }
}

/// `α = 2·arccos(√p)` and likewise for β, γ.
pub fn probs_to_angles(t: &ProbTriple) -> AngleTriple {
    let half = |x: f64| 2.0 * x.sqrt().acos();
    AngleTriple {
        alpha: half(t.p),
        beta: half(t.q),
        gamma: half(t.r),
    }
}

/// `p = cos²(α/2)` and likewise for q, r. Fails when an angle is so close
/// to π that its probability falls inside the boundary margin.
pub fn angles_to_probs(a: &AngleTriple) -> Result<ProbTriple> {
    let c2 = |x: f64| {
        let c = (x / 2.0).cos();
        c * c
    };
    ProbTriple::new(c2(a.alpha), c2(a.beta), c2(a.gamma))
}

/// `K = 4pqr − (p+q+r−1)²`.
pub fn invariant_k(t: &ProbTriple) -> f64 {
    k_of(t.p, t.q, t.r)
}

pub(crate) fn k_of(p: f64, q: f64, r: f64) -> f64 {
    let s = p + q + r - 1.0;
    4.0 * p * q * r - s * s
}

/// `1 − cos²α − cos²β − cos²γ + 2·cosα·cosβ·cosγ`, equal to `4K` on matching triples.
pub fn invariant_cos(a: &AngleTriple) -> f64 {
    let (ca, cb, cg) = (a.alpha.cos(), a.beta.cos(), a.gamma.cos());
    1.0 - ca * ca - cb * cb - cg * cg + 2.0 * ca * cb * cg
}

/// The same quantity as [`invariant_cos`] in product form,
/// `4·sin s·sin(s−α)·sin(s−β)·sin(s−γ)` with `s = (α+β+γ)/2`.
///
/// Each factor is evaluated from the angles directly, so exactly coplanar
/// triples such as `(α, β, α+β)` give exactly zero instead of rounding noise.
pub fn invariant_cos_product(a: &AngleTriple) -> f64 {
    let (x, y, z) = (a.alpha, a.beta, a.gamma);
    let s = 0.5 * (x + y + z);
    let sx = 0.5 * ((y + z) - x);
    let sy = 0.5 * ((z + x) - y);
    let sz = 0.5 * ((x + y) - z);
    4.0 * s.sin() * sx.sin() * sy.sin() * sz.sin()
}

/// `(p+q+r−1)/(2√(pqr))`; a model exists iff the value lies in [−1, 1].
pub fn normalized_form(t: &ProbTriple) -> f64 {
    (t.p + t.q + t.r - 1.0) / (2.0 * (t.p * t.q * t.r).sqrt())
}

/// `(Σcos²(θ/2) − 1)/(2·Πcos(θ/2))`; equal to [`normalized_form`] on matching triples.
pub fn halfangle_form(a: &AngleTriple) -> f64 {
    let (ca, cb, cg) = (
        (a.alpha / 2.0).cos(),
        (a.beta / 2.0).cos(),
        (a.gamma / 2.0).cos(),
    );
    (ca * ca + cb * cb + cg * cg - 1.0) / (2.0 * ca * cb * cg)
}

/// Closed interval of admissible `r` for given `p`, `q`:
/// `[(√pq − √((1−p)(1−q)))², (√pq + √((1−p)(1−q)))²]`.
pub fn r_interval(p: f64, q: f64) -> Result<(f64, f64)> {
    let p = check_probability("p", p)?;
    let q = check_probability("q", q)?;
    let (a, b) = r_branches(p, q);
    Ok(((a - b) * (a - b), (a + b) * (a + b)))
}

fn r_branches(p: f64, q: f64) -> (f64, f64) {
    ((p * q).sqrt(), ((1.0 - p) * (1.0 - q)).sqrt())
}

/// Distances of `√r` from the two real-model solutions
/// `√pq + √((1−p)(1−q))` and `|√pq − √((1−p)(1−q))|`.
pub fn real_model_distances(t: &ProbTriple) -> (f64, f64) {
    let (a, b) = r_branches(t.p, t.q);
    let sr = t.r.sqrt();
    ((sr - (a + b)).abs(), (sr - (a - b).abs()).abs())
}

/// Classifies by the sign of `K` with a real-model band of half-width `eps_k`.
pub fn classify(t: &ProbTriple, eps_k: f64) -> ModelClass {
    ModelClass::from_k(invariant_k(t), eps_k)
}

/// Verdicts of the four equivalent existence criteria on one triple.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormVerdicts {
    pub k_nonnegative: bool,
    pub normalized_in_range: bool,
    pub halfangle_in_range: bool,
    pub r_in_interval: bool,
}

impl FormVerdicts {
    pub fn evaluate(t: &ProbTriple) -> Self {
        let angles = probs_to_angles(t);
        let (lo, hi) = r_interval(t.p, t.q).expect("triple components are valid probabilities");
        let nf = normalized_form(t);
        let hf = halfangle_form(&angles);
        FormVerdicts {
            k_nonnegative: invariant_k(t) >= 0.0,
            normalized_in_range: (-1.0..=1.0).contains(&nf),
            halfangle_in_range: (-1.0..=1.0).contains(&hf),
            r_in_interval: (lo..=hi).contains(&t.r),
        }
    }

    pub fn agree(&self) -> bool {
        let k = self.k_nonnegative;
        self.normalized_in_range == k && self.halfangle_in_range == k && self.r_in_interval == k
    }
}
