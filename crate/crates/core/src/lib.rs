//! Rate-distortion-leakage bounds for the two-agent CEO problem with an
//! eavesdropper.
//!
//! * [`info`]: discrete models, auxiliary test channels and the joint tensor.
//! * [`discrete`]: inner/outer constraint sets, extreme points, dominance.
//! * [`gaussian`]: closed-form scalar Gaussian regions and curve tracing.
//! * [`region`]: constraint sets over `(R1, R2, L1, L2, D)`.
//! * [`verify`]: seeded property suites.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod discrete;
pub mod document;
pub mod error;
pub mod gaussian;
pub mod info;
pub mod region;
pub mod sample;
pub mod search;
pub mod verify;

pub use discrete::DiscreteDistortion;
pub use document::{load_instance, parse_instance, Instance, ModelDocument};
pub use error::{Error, Result};
pub use gaussian::{GaussianCeoParams, Metric};
pub use info::{build_joint, AuxiliarySystem, DiscreteCeoModel, JointDistribution, Var};
pub use region::{dominates, evaluate, pareto_filter, Constraint, ConstraintSet, FeasibilityReport, RateTuple, SLACK};
pub use search::SearchConfig;
