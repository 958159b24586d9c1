//! On-disk form of a synthesized model and its verification.
//!
//! A document stores everything needed to re-check a model without
//! recomputing it: probabilities, observable values, Bloch vectors, the
//! operator matrices and their eigenbases. Complex numbers are `[re, im]`
//! pairs and matrices are row-major. Floats are written with 17
//! significant digits so serialize → parse → serialize is byte-identical.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bloch::{BlochVec, Herm2, Spinor};
use crate::invariants::{classify, invariant_k, ModelTag, ProbTriple};
use crate::linalg2::{C2Vec, Mat2, Vec3, C64};
use crate::model::{
    verify_transitions, InvariantReport, Observable, QuantumModel, TransitionReport,
};
use crate::output::to_json;
use crate::uncertainty::{
    commutator_evidence, correlation_check, CommutatorEvidence, CorrelationReport, DEFAULT_EPS_C,
};

pub const SCHEMA: &str = "qinvar-model/1";
/// Transition tolerance recorded for freshly synthesized models.
pub const DEFAULT_TRANSITION_TOLERANCE: f64 = 1e-10;

type Complex = [f64; 2];
type Amplitudes = [Complex; 2];
type Matrix = [[Complex; 2]; 2];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Probabilities {
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Classification {
    pub class: ModelTag,
    #[serde(rename = "K")]
    pub k: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub eps_k: f64,
    /// Bound on every overlap deviation that verification enforces.
    pub transition: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub schema: String,
    pub probabilities: Probabilities,
    pub labels: [String; 3],
    /// `(x₁, x₂)` per observable; `x₁` belongs to the first eigenvector.
    pub values: [[f64; 2]; 3],
    pub bloch_vectors: [[f64; 3]; 3],
    pub operators: [Matrix; 3],
    /// `[ψ₁, ψ₂]` per observable.
    pub eigenbases: [[Amplitudes; 2]; 3],
    pub classification: Classification,
    /// Whether the model was rotated into a real (x–z plane) form.
    pub real_embedding: bool,
    pub tolerances: Tolerances,
}

/// Why a document could not be turned into a model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Parse(String),
    #[error("schema violation: {0}")]
    Schema(String),
}

fn complex(z: C64) -> Complex {
    [z.re, z.im]
}

fn matrix(m: &Mat2) -> Matrix {
    m.0.map(|row| row.map(complex))
}

fn amplitudes(psi: &Spinor) -> Amplitudes {
    psi.amplitudes().0.map(complex)
}

fn take3<T>(v: Vec<T>) -> [T; 3] {
    v.try_into()
        .unwrap_or_else(|_| unreachable!("three observables"))
}

fn c64(z: Complex) -> C64 {
    C64::new(z[0], z[1])
}

/// A model read back from a document, with the parts that only
/// verification can judge.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadedModel {
    pub probs: ProbTriple,
    pub model: QuantumModel,
    pub class: ModelTag,
    pub stored_k: f64,
    pub real_embedding: bool,
    pub eps_k: f64,
    pub transition_tolerance: f64,
    /// Largest `|‖u‖ − 1|` over the stored vectors and `|‖ψ‖² − 1|` over the
    /// stored spinors, before they were normalized.
    pub norm_deviation: f64,
}

impl ModelDocument {
    pub fn new(
        t: &ProbTriple,
        model: &QuantumModel,
        real_embedding: bool,
        eps_k: f64,
        transition: f64,
    ) -> Self {
        let class = classify(t, eps_k);
        let obs = model.observables();
        ModelDocument {
            schema: SCHEMA.to_string(),
            probabilities: Probabilities {
                p: t.p(),
                q: t.q(),
                r: t.r(),
            },
            labels: [0, 1, 2].map(|i| obs[i].name().to_string()),
            values: [0, 1, 2].map(|i| {
                let (a, b) = obs[i].values();
                [a, b]
            }),
            bloch_vectors: model.vectors().map(|v| v.vec().0),
            operators: model.operators().map(|op| matrix(op.mat())),
            eigenbases: model.eigenbases().map(|b| b.map(|psi| amplitudes(&psi))),
            classification: Classification {
                class: class.tag,
                k: class.k,
            },
            real_embedding,
            tolerances: Tolerances { eps_k, transition },
        }
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    /// Parses a document. Shape errors, unknown fields and a foreign schema
    /// string are rejected here; [`ModelDocument::load`] checks the contents.
    pub fn from_json(s: &str) -> Result<Self, DocumentError> {
        let doc: ModelDocument =
            serde_json::from_str(s).map_err(|e| DocumentError::Parse(e.to_string()))?;
        if doc.schema != SCHEMA {
            return Err(DocumentError::Schema(format!(
                "schema is {:?}, expected {SCHEMA:?}",
                doc.schema
            )));
        }
        Ok(doc)
    }

    /// Rebuilds the model. Non-Hermitian operators, degenerate values,
    /// probabilities outside (0, 1), zero vectors or spinors and invalid
    /// tolerances are schema violations. Vectors and spinors off the unit
    /// sphere are normalized and their deviation recorded for verification.
    pub fn load(&self) -> Result<LoadedModel, DocumentError> {
        let schema = |what: &str, e: crate::Error| DocumentError::Schema(format!("{what}: {e}"));
        let Probabilities { p, q, r } = self.probabilities;
        let probs = ProbTriple::new(p, q, r).map_err(|e| schema("probabilities", e))?;
        let Tolerances { eps_k, transition } = self.tolerances;
        for (name, v) in [("eps_k", eps_k), ("transition", transition)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(DocumentError::Schema(format!(
                    "tolerance {name} = {v} must be finite and nonnegative"
                )));
            }
        }
        if !self.classification.k.is_finite() {
            return Err(DocumentError::Schema(
                "classification K is not finite".into(),
            ));
        }

        let mut norm_deviation = 0.0_f64;
        let mut observables = Vec::with_capacity(3);
        let mut vectors = Vec::with_capacity(3);
        let mut operators = Vec::with_capacity(3);
        let mut bases = Vec::with_capacity(3);
        for i in 0..3 {
            let label = &self.labels[i];
            let [x1, x2] = self.values[i];
            observables.push(Observable::new(label.clone(), x1, x2).map_err(|e| schema(label, e))?);

            let v = Vec3(self.bloch_vectors[i]);
            norm_deviation = norm_deviation.max((v.norm() - 1.0).abs());
            vectors.push(
                BlochVec::normalize(v).map_err(|e| schema(&format!("Bloch vector {label}"), e))?,
            );

            let [[a, b], [c, d]] = self.operators[i];
            let m = Mat2::new(c64(a), c64(b), c64(c), c64(d));
            operators.push(Herm2::new(m).map_err(|e| schema(&format!("operator {label}"), e))?);

            let mut basis = Vec::with_capacity(2);
            for (k, amps) in self.eigenbases[i].iter().enumerate() {
                let c = C2Vec::new(c64(amps[0]), c64(amps[1]));
                norm_deviation = norm_deviation.max((c.norm_sqr() - 1.0).abs());
                basis.push(
                    Spinor::normalize(c)
                        .map_err(|e| schema(&format!("eigenvector {} of {label}", k + 1), e))?,
                );
            }
            bases.push([basis[0], basis[1]]);
        }
        let model = QuantumModel::from_parts(
            take3(vectors),
            take3(observables),
            take3(operators),
            take3(bases),
        );

        Ok(LoadedModel {
            probs,
            model,
            class: self.classification.class,
            stored_k: self.classification.k,
            real_embedding: self.real_embedding,
            eps_k,
            transition_tolerance: transition,
            norm_deviation,
        })
    }
}

/// Outcome of re-checking a loaded model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub tolerance: f64,
    pub norm_deviation: f64,
    pub invariants: InvariantReport,
    pub transitions: TransitionReport,
    pub correlation: CorrelationReport,
    /// Commutator evidence, or the reason none could be given.
    pub commutator_evidence: Result<CommutatorEvidence, String>,
    /// The stored class, and `K` within the tolerance, agree with the stored probabilities.
    pub class_consistent: bool,
    /// The commutator evidence agrees with the stored class.
    pub evidence_consistent: bool,
    pub passed: bool,
}

impl LoadedModel {
    /// Runs every check at `tol`; pass `None` to use the stored transition
    /// tolerance.
    pub fn verify(&self, tol: Option<f64>) -> VerifyReport {
        let tol = tol.unwrap_or(self.transition_tolerance);
        let invariants = self.model.check_invariants();
        let transitions = verify_transitions(&self.model, &self.probs, tol);
        let correlation = correlation_check(&self.model, tol);
        let evidence = commutator_evidence(&self.model, DEFAULT_EPS_C);

        let recomputed = classify(&self.probs, self.eps_k);
        let class_consistent =
            recomputed.tag == self.class && (invariant_k(&self.probs) - self.stored_k).abs() <= tol;
        let evidence_consistent = match (&evidence, self.class) {
            (Ok(e), ModelTag::StrictlyComplexQuantum) => {
                e.evidence == ModelTag::StrictlyComplexQuantum
            }
            (Ok(e), ModelTag::RealQuantum) if self.real_embedding => {
                e.evidence == ModelTag::RealQuantum
            }
            // inside the ε_K band without an embedding either answer is admissible
            (Ok(_), ModelTag::RealQuantum) => true,
            _ => false,
        };
        let passed = self.norm_deviation <= tol
            && invariants.passes(tol)
            && transitions.passed
            && correlation.passes()
            && class_consistent
            && evidence_consistent;
        VerifyReport {
            tolerance: tol,
            norm_deviation: self.norm_deviation,
            invariants,
            transitions,
            correlation,
            commutator_evidence: evidence.map_err(|e| e.to_string()),
            class_consistent,
            evidence_consistent,
            passed,
        }
    }
}
