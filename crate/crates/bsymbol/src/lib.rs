//! Toolkit for codes read through sliding windows of b consecutive symbols.
//!
//! The crate builds tabulated finite fields, constructs cyclic trace codes
//! and their constacyclic shortenings over a chosen subfield, measures their
//! width-b distances by exhaustive enumeration, and checks the resulting
//! parameters against a Plotkin-like bound using exact rational arithmetic.
//!
//! The usual flow is [`Code::build`] followed by
//! [`verify::verify_construction`], which returns a serializable
//! [`VerificationReport`] of measured distances, weight distributions and
//! pass/fail flags for every claim the construction makes.

pub mod code;
pub mod error;
pub mod field;
pub mod metric;
pub mod rational;
pub mod report;
pub mod verify;

pub use code::{Code, CodeParams, Variant};
pub use error::{Error, Result};
pub use field::{ord_mod, FieldCtx, FieldElement, Poly, FIELD_SIZE_CAP};
pub use metric::{b_distance, b_weight, pi_b, BProfile, Word};
pub use rational::Rational;
pub use report::{ParamsBlock, RunStats, VerificationReport, WidthRecord, SCHEMA_VERSION};
pub use verify::{
    b_weight_distribution, check_equi_b_distance, min_b_distance, min_b_distance_pairwise,
    plotkin_rhs, theta_b, verify_construction, zero_window_count, EquiCheck,
};
