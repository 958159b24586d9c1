//! Decide whether three two-valued observables admit a quantum model from
//! their transition probabilities alone, build an explicit spin model when
//! they do, and check the uncertainty-relation identities such models obey.
//!
//! The central quantity is the invariant `K = 4pqr − (p+q+r−1)²` of the
//! transition probabilities `p = P(A|B)`, `q = P(B|C)`, `r = P(C|A)`:
//! `K < 0` admits no model, `K = 0` a real one, `K > 0` a strictly complex one.
//!
//! ```
//! use qinvar::invariants::{classify, ModelTag, ProbTriple, DEFAULT_EPS_K};
//! use qinvar::model::{spin_observables, synthesize, verify_transitions};
//!
//! let t = ProbTriple::new(0.5, 0.5, 0.5)?;
//! let class = classify(&t, DEFAULT_EPS_K);
//! assert_eq!(class.tag, ModelTag::StrictlyComplexQuantum);
//!
//! let model = synthesize(&t, &spin_observables(), DEFAULT_EPS_K)?;
//! assert!(verify_transitions(&model, &t, 1e-12).passed);
//! # Ok::<(), qinvar::Error>(())
//! ```

pub mod bloch;
pub mod cli;
pub mod document;
pub mod error;
pub mod invariants;
pub mod linalg2;
pub mod model;
pub mod output;
pub mod sampling;
pub mod selftest;
pub mod uncertainty;

pub use error::{Error, Result};
