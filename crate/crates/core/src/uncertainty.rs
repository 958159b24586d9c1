//! Expectation values, variances and the two terms of the Schrödinger
//! uncertainty relation
//!
//! ```text
//! Var(X)·Var(Y) ≥ (½⟨{X,Y}⟩ − ⟨X⟩⟨Y⟩)² + ((1/2i)⟨[X,Y]⟩)²
//! ```
//!
//! which holds with equality for every pair of Hermitian operators on a
//! two-dimensional space. On top of these sit the model-level checks: the
//! correlation inequality `ΔXΔY ≥ |½⟨{X,Y}⟩ − ⟨X⟩⟨Y⟩|` in the eigenstates of
//! the third observable, and the commutator-average characterizations of
//! real and strictly complex models.

use serde::Serialize;

use crate::bloch::{state_to_bloch, BlochVec, Herm2, Spinor};
use crate::error::{Error, Result};
use crate::invariants::ModelTag;
use crate::linalg2::{cross3, inner, C2Vec, Mat2, C64};
use crate::model::{build_operator, Observable, QuantumModel, CYCLIC, PAIRS};

/// Default threshold, relative to `|x₁−x₂||y₁−y₂|/4`, above which a commutator
/// average counts as nonzero.
pub const DEFAULT_EPS_C: f64 = 1e-8;
/// A state's Bloch vector within this distance of a model axis is reported
/// as lying on that axis.
pub const AXIS_TOLERANCE: f64 = 1e-6;

fn expectation(m: &Mat2, psi: &Spinor) -> C64 {
    inner(psi.amplitudes(), &m.apply(psi.amplitudes()))
}

/// `⟨ψ|Z|ψ⟩`.
pub fn mean(z: &Herm2, psi: &Spinor) -> f64 {
    expectation(z.mat(), psi).re
}

// (Z − ⟨Z⟩)ψ. Centering first keeps the second moments free of the
// cancellation `⟨Z²⟩ − ⟨Z⟩²` suffers when the values carry a large offset.
fn centered(z: &Herm2, psi: &Spinor) -> C2Vec {
    let m = mean(z, psi);
    z.affine(1.0, -m).apply(psi)
}

/// `Var(Z) = ⟨Z²⟩ − ⟨Z⟩²`, evaluated as `‖(Z − ⟨Z⟩)ψ‖²`.
pub fn variance(z: &Herm2, psi: &Spinor) -> f64 {
    centered(z, psi).norm_sqr()
}

/// `½⟨{X,Y}⟩`.
pub fn anticommutator_mean(x: &Herm2, y: &Herm2, psi: &Spinor) -> f64 {
    0.5 * expectation(&x.mat().anticommutator(y.mat()), psi).re
}

/// `⟨[X,Y]⟩`, purely imaginary for Hermitian `X`, `Y`.
pub fn commutator_mean(x: &Herm2, y: &Herm2, psi: &Spinor) -> C64 {
    expectation(&x.mat().commutator(y.mat()), psi)
}

/// `½⟨{X,Y}⟩ − ⟨X⟩⟨Y⟩`, evaluated as `Re⟨(X−⟨X⟩)ψ|(Y−⟨Y⟩)ψ⟩`.
pub fn covariance_term(x: &Herm2, y: &Herm2, psi: &Spinor) -> f64 {
    inner(&centered(x, psi), &centered(y, psi)).re
}

/// `(1/2i)⟨[X,Y]⟩`, evaluated as `Im⟨(X−⟨X⟩)ψ|(Y−⟨Y⟩)ψ⟩`.
pub fn commutator_term(x: &Herm2, y: &Herm2, psi: &Spinor) -> f64 {
    inner(&centered(x, psi), &centered(y, psi)).im
}

/// Both sides of the uncertainty relation for one pair in one state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UncertaintyBudget {
    pub var_x: f64,
    pub var_y: f64,
    pub cov_term: f64,
    pub comm_term: f64,
    /// `var_x·var_y − cov_term² − comm_term²`; zero up to rounding in dimension 2.
    pub gap: f64,
    /// `var_x·var_y − comm_term²`, the slack of the weaker Robertson form.
    pub robertson_slack: f64,
}

pub fn budget(x: &Herm2, y: &Herm2, psi: &Spinor) -> UncertaintyBudget {
    let var_x = variance(x, psi);
    let var_y = variance(y, psi);
    let cov_term = covariance_term(x, y, psi);
    let comm_term = commutator_term(x, y, psi);
    let prod = var_x * var_y;
    UncertaintyBudget {
        var_x,
        var_y,
        cov_term,
        comm_term,
        gap: prod - cov_term * cov_term - comm_term * comm_term,
        robertson_slack: prod - comm_term * comm_term,
    }
}

/// Residuals of the four relations between an observable pair and its spin
/// rescaling, each relative to its natural scale.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RescalingReport {
    /// `⟨Ẑ⟩ = z₊ + z₋⟨u_Z·σ⟩`, relative to `max(|z₁|, |z₂|, 1)`.
    pub mean: f64,
    /// `Var(Ẑ) = z₋²·Var(u_Z·σ)`, relative to `z₋²`.
    pub variance: f64,
    /// covariance term scales by `x₋y₋`, relative to `|x₋y₋|`.
    pub covariance: f64,
    /// commutator term scales by `x₋y₋`, relative to `|x₋y₋|`.
    pub commutator: f64,
}

impl RescalingReport {
    pub fn max(&self) -> f64 {
        self.mean
            .max(self.variance)
            .max(self.covariance)
            .max(self.commutator)
    }
}

/// Evaluates the rescaling identities for observables `x`, `y` attached to
/// Bloch vectors `u_x`, `u_y`, in state `psi`.
pub fn rescaling_check(
    x: &Observable,
    u_x: &BlochVec,
    y: &Observable,
    u_y: &BlochVec,
    psi: &Spinor,
) -> RescalingReport {
    let (op_x, op_y) = (build_operator(x, u_x), build_operator(y, u_y));
    let (sx, sy) = (crate::bloch::spin_op(u_x), crate::bloch::spin_op(u_y));
    let (xm, ym) = (x.half_spread(), y.half_spread());

    let mean_rel = |obs: &Observable, op: &Herm2, s: &Herm2| {
        let (a, b) = obs.values();
        let lhs = mean(op, psi);
        let rhs = obs.center() + obs.half_spread() * mean(s, psi);
        (lhs - rhs).abs() / a.abs().max(b.abs()).max(1.0)
    };
    let var_rel = |obs: &Observable, op: &Herm2, s: &Herm2| {
        let zm = obs.half_spread();
        (variance(op, psi) - zm * zm * variance(s, psi)).abs() / (zm * zm)
    };
    let pair_scale = (xm * ym).abs();

    RescalingReport {
        mean: mean_rel(x, &op_x, &sx).max(mean_rel(y, &op_y, &sy)),
        variance: var_rel(x, &op_x, &sx).max(var_rel(y, &op_y, &sy)),
        covariance: (covariance_term(&op_x, &op_y, psi) - xm * ym * covariance_term(&sx, &sy, psi))
            .abs()
            / pair_scale,
        commutator: (commutator_term(&op_x, &op_y, psi) - xm * ym * commutator_term(&sx, &sy, psi))
            .abs()
            / pair_scale,
    }
}

/// `|x₁−x₂|·|y₁−y₂|/4` for observables `i`, `j` of a model.
pub fn pair_scale(m: &QuantumModel, i: usize, j: usize) -> f64 {
    let obs = m.observables();
    (obs[i].half_spread() * obs[j].half_spread()).abs()
}

/// The correlation inequality for one ordered pair in one eigenstate of the third observable.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CorrelationEntry {
    /// `(X, Y, Z)` as indices into `(A, B, C)`.
    pub perm: (usize, usize, usize),
    /// 0 for `ψ₁(Z)`, 1 for `ψ₂(Z)`.
    pub eigenstate: usize,
    pub delta_product: f64,
    pub covariance_abs: f64,
    /// `(ΔXΔY − |cov|)/scale`, in spin units.
    pub slack: f64,
    /// `(Var X·Var Y − cov²)/scale²`, which equals `4K` in spin units.
    pub squared_slack: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub entries: Vec<CorrelationEntry>,
    /// `4K` on the probabilities implied by the model's vectors.
    pub four_k: f64,
    /// `1 − (u_A·u_B)² − (u_B·u_C)² − (u_C·u_A)² + 2(u_A·u_B)(u_B·u_C)(u_C·u_A)`.
    pub gram_form: f64,
    /// `max |squared_slack − 4K|` together with `|gram_form − 4K|`.
    pub max_form_residual: f64,
    pub min_slack: f64,
    pub tolerance: f64,
    /// Every entry satisfies the inequality (slack ≥ −tol).
    pub holds: bool,
    /// Every entry is an equality within tol.
    pub saturated: bool,
}

impl CorrelationReport {
    pub fn passes(&self) -> bool {
        self.holds && self.max_form_residual <= self.tolerance
    }
}

/// Evaluates `ΔXΔY ≥ |½⟨{X,Y}⟩ − ⟨X⟩⟨Y⟩|` for every cyclic relabeling and
/// both eigenstates of the third observable.
pub fn correlation_check(m: &QuantumModel, tol: f64) -> CorrelationReport {
    let ops = m.operators();
    let bases = m.eigenbases();
    let mut entries = Vec::with_capacity(6);
    for &(x, y, z) in &CYCLIC {
        let scale = pair_scale(m, x, y);
        for (k, psi) in bases[z].iter().enumerate() {
            let (vx, vy) = (variance(&ops[x], psi), variance(&ops[y], psi));
            let cov = covariance_term(&ops[x], &ops[y], psi);
            let delta_product = (vx * vy).sqrt();
            entries.push(CorrelationEntry {
                perm: (x, y, z),
                eigenstate: k,
                delta_product,
                covariance_abs: cov.abs(),
                slack: (delta_product - cov.abs()) / scale,
                squared_slack: (vx * vy - cov * cov) / (scale * scale),
            });
        }
    }
    let v = m.vectors();
    let (ab, bc, ca) = (v[0].dot(&v[1]), v[1].dot(&v[2]), v[2].dot(&v[0]));
    let gram_form = 1.0 - ab * ab - bc * bc - ca * ca + 2.0 * ab * bc * ca;
    let four_k = 4.0 * m.implied_k();
    let max_form_residual = entries
        .iter()
        .map(|e| (e.squared_slack - four_k).abs())
        .fold((gram_form - four_k).abs(), f64::max);
    let min_slack = entries
        .iter()
        .map(|e| e.slack)
        .fold(f64::INFINITY, f64::min);
    CorrelationReport {
        holds: entries.iter().all(|e| e.slack >= -tol),
        saturated: entries.iter().all(|e| e.slack.abs() <= tol),
        entries,
        four_k,
        gram_form,
        max_form_residual,
        min_slack,
        tolerance: tol,
    }
}

/// One commutator average `⟨[X,Y]⟩` in an eigenstate of `Z`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CommutatorAverage {
    pub perm: (usize, usize, usize),
    pub eigenstate: usize,
    /// Imaginary part of `⟨[X,Y]⟩`; the real part vanishes.
    pub value_im: f64,
    /// `|⟨[X,Y]⟩| / (|x₁−x₂||y₁−y₂|/4)`.
    pub relative: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutatorEvidence {
    pub averages: Vec<CommutatorAverage>,
    pub eps_c: f64,
    /// `StrictlyComplexQuantum` when all six averages are nonzero, `RealQuantum` when all vanish.
    pub evidence: ModelTag,
}

/// Commutator averages of every cyclic pair in both eigenstates of the
/// third observable. All nonzero indicates a strictly complex model, all
/// zero a real one; anything else is reported as [`Error::MixedEvidence`].
pub fn commutator_evidence(m: &QuantumModel, eps_c: f64) -> Result<CommutatorEvidence> {
    let ops = m.operators();
    let bases = m.eigenbases();
    let mut averages = Vec::with_capacity(6);
    for &(x, y, z) in &CYCLIC {
        let scale = pair_scale(m, x, y);
        for (k, psi) in bases[z].iter().enumerate() {
            let c = commutator_mean(&ops[x], &ops[y], psi);
            averages.push(CommutatorAverage {
                perm: (x, y, z),
                eigenstate: k,
                value_im: c.im,
                relative: c.abs() / scale,
            });
        }
    }
    let nonzero = averages.iter().filter(|a| a.relative > eps_c).count();
    let evidence = match nonzero {
        6 => ModelTag::StrictlyComplexQuantum,
        0 => ModelTag::RealQuantum,
        _ => return Err(Error::MixedEvidence { nonzero }),
    };
    Ok(CommutatorEvidence {
        averages,
        eps_c,
        evidence,
    })
}

/// A state in which fewer than two pairs have nonzero commutator averages.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShortfallState {
    pub index: usize,
    pub nonzero_pairs: usize,
    /// The model axis (0, 1, 2 for A, B, C) the state's Bloch vector lies on, if any.
    /// A state on an axis lies in both planes containing that axis, so two
    /// averages vanish there; such states are reported but not counted as failures.
    pub on_axis: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NoncommutativityReport {
    /// `‖[X,Y]‖_F / (|x₁−x₂||y₁−y₂|/4)` for `(A,B)`, `(B,C)`, `(C,A)`.
    pub commutator_norms: [f64; 3],
    pub all_pairs_noncommuting: bool,
    pub samples: usize,
    /// Number of states with 0, 1, 2, 3 nonzero averages.
    pub count_histogram: [usize; 4],
    pub shortfalls: Vec<ShortfallState>,
    pub eps_c: f64,
}

impl NoncommutativityReport {
    /// No pair commutes and every shortfall is explained by an on-axis state.
    pub fn passes(&self) -> bool {
        self.all_pairs_noncommuting && self.shortfalls.iter().all(|s| s.on_axis.is_some())
    }

    /// Every sampled state has at least two nonzero averages.
    pub fn holds_for_every_sample(&self) -> bool {
        self.shortfalls.is_empty()
    }

    pub fn flagged_on_axis(&self) -> usize {
        self.shortfalls
            .iter()
            .filter(|s| s.on_axis.is_some())
            .count()
    }
}

/// Checks that no two operators of a strictly complex model commute and
/// counts, per state, the pairs with nonzero commutator average.
pub fn noncommuting_pairs_check(
    m: &QuantumModel,
    states: &[Spinor],
    eps_c: f64,
    eps_k: f64,
) -> Result<NoncommutativityReport> {
    let k = m.implied_k();
    if k <= eps_k {
        return Err(Error::NotStrictlyComplex { k });
    }
    let ops = m.operators();
    let commutator_norms = PAIRS
        .map(|(i, j)| ops[i].mat().commutator(ops[j].mat()).norm_frobenius() / pair_scale(m, i, j));
    let all_pairs_noncommuting = commutator_norms.iter().all(|&n| n > eps_c);

    let mut count_histogram = [0; 4];
    let mut shortfalls = Vec::new();
    for (index, psi) in states.iter().enumerate() {
        let nonzero_pairs = PAIRS
            .iter()
            .filter(|&&(i, j)| {
                commutator_mean(&ops[i], &ops[j], psi).abs() / pair_scale(m, i, j) > eps_c
            })
            .count();
        count_histogram[nonzero_pairs] += 1;
        if nonzero_pairs < 2 {
            let w = state_to_bloch(psi);
            let on_axis = m
                .vectors()
                .iter()
                .position(|u| cross3(u.vec(), w.vec()).norm() <= AXIS_TOLERANCE);
            shortfalls.push(ShortfallState {
                index,
                nonzero_pairs,
                on_axis,
            });
        }
    }
    Ok(NoncommutativityReport {
        commutator_norms,
        all_pairs_noncommuting,
        samples: states.len(),
        count_histogram,
        shortfalls,
        eps_c,
    })
}
