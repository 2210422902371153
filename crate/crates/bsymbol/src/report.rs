//! Verification report: everything one exhaustive run measured and asserted,
//! in a stable JSON-serializable shape.
//!
//! Flags are tri-state: `None` means the claim does not apply to this record,
//! `Some(true)` that it was checked and holds, `Some(false)` that it was
//! checked and failed. Wall-clock time is kept out of the serialized form so
//! identical runs produce identical bytes.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::Rational;

pub const SCHEMA_VERSION: u32 = 1;

/// Construction parameters echoed into the report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParamsBlock {
    pub p: u64,
    pub f: u32,
    pub q: u64,
    pub s: u32,
    #[serde(rename = "Q")]
    pub ext_order: u64,
    pub e: u64,
    pub e_prime: u64,
    pub n: u64,
    /// Dimension over GF(q).
    pub k: u32,
    /// Number of codewords.
    #[serde(rename = "K")]
    pub code_size: u64,
    pub l: Option<u64>,
    pub shortened_len: u64,
    /// Canonical index of alpha.
    pub alpha: u64,
    /// Canonical index of the twist constant delta.
    pub delta: u64,
    /// Whether the closed-form distances apply (e_prime = 1).
    pub predictions_apply: bool,
}

/// Everything measured and asserted at one window width.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WidthRecord {
    pub b: u32,
    /// Minimum b-weight over the nonzero codewords.
    pub measured_db: u64,
    /// Closed-form distance, when the construction predicts one at this
    /// width.
    pub predicted_db: Option<u64>,
    /// n * theta_b for this code's length, exact.
    pub n_theta_b: Rational,
    /// measured / (measured - n theta_b), present when the hypothesis
    /// measured > n theta_b holds and a prediction applies.
    pub bound_rhs: Option<Rational>,
    /// Whether bound_rhs equals the number of codewords exactly. None when
    /// no prediction applies at this width.
    pub meets_bound_with_equality: Option<bool>,
    /// All nonzero codewords share one b-weight.
    pub equidistant: bool,
    /// The shared b-weight, when equidistant.
    pub common_weight: Option<u64>,
    /// When the bound is met with equality: the common weight equals
    /// K n theta_b / (K - 1) exactly.
    pub common_weight_consistent: Option<bool>,
    /// b-weight -> number of codewords, zero word included.
    pub weight_distribution: BTreeMap<u64, u64>,
    /// Every nonzero codeword has exactly the predicted number of all-zero
    /// windows. None when no prediction applies.
    pub zero_windows_ok: Option<bool>,
    /// For widths at least the dimension, the distance reaches the block
    /// length. None for narrower windows.
    pub saturation_ok: Option<bool>,
    /// Shortened only: each full codeword is l times as b-heavy as its
    /// shortened image.
    pub scaling_ok: Option<bool>,
    /// Minimum weight recomputed from all codeword pairs agrees. Only run on
    /// small codes.
    pub pairwise_consistent: Option<bool>,
    /// Canonical index of the first beta, in enumeration order, violating
    /// any claim at this width.
    pub witness_beta: Option<u64>,
}

/// Deterministic work counters. The wall clock stays out of serialization.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RunStats {
    pub codewords_scanned: u64,
    pub weight_evaluations: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub params: ParamsBlock,
    pub variant: String,
    pub length: u64,
    /// Closed under rotation (full) or the delta-twisted rotation
    /// (shortened), checked by membership in the enumerated set.
    pub closure_ok: bool,
    /// Additivity and GF(q)-scaling spot checks.
    pub linearity_ok: bool,
    pub distinct_codewords: u64,
    /// distinct_codewords equals the field order.
    pub code_size_ok: bool,
    pub records: Vec<WidthRecord>,
    pub stats: RunStats,
}

impl VerificationReport {
    /// Human-readable descriptions of every violated claim, in report order.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.code_size_ok {
            out.push(format!(
                "distinct codeword count {} differs from expected {}",
                self.distinct_codewords, self.params.code_size
            ));
        }
        if !self.closure_ok {
            let kind = if self.variant == "shortened" {
                "twisted rotation"
            } else {
                "rotation"
            };
            out.push(format!("{kind} closure violated"));
        }
        if !self.linearity_ok {
            out.push("linearity spot checks failed".to_string());
        }
        for r in &self.records {
            let witness = r
                .witness_beta
                .map(|w| format!(" (witness beta {w})"))
                .unwrap_or_default();
            if let Some(pred) = r.predicted_db {
                if r.measured_db != pred {
                    out.push(format!(
                        "b={}: measured distance {} differs from predicted {}{witness}",
                        r.b, r.measured_db, pred
                    ));
                }
            }
            if r.meets_bound_with_equality == Some(false) {
                out.push(format!("b={}: bound not met with equality{witness}", r.b));
            }
            if r.predicted_db.is_some() && !r.equidistant {
                out.push(format!("b={}: code is not equidistant{witness}", r.b));
            }
            if r.common_weight_consistent == Some(false) {
                out.push(format!(
                    "b={}: common weight does not match the bound value{witness}",
                    r.b
                ));
            }
            if r.zero_windows_ok == Some(false) {
                out.push(format!(
                    "b={}: zero window count deviates from the closed form{witness}",
                    r.b
                ));
            }
            if r.saturation_ok == Some(false) {
                out.push(format!(
                    "b={}: wide-window distance below the block length{witness}",
                    r.b
                ));
            }
            if r.scaling_ok == Some(false) {
                out.push(format!(
                    "b={}: full to shortened weight scaling violated{witness}",
                    r.b
                ));
            }
            if r.pairwise_consistent == Some(false) {
                out.push(format!(
                    "b={}: pairwise distance cross-check disagrees{witness}",
                    r.b
                ));
            }
        }
        out
    }

    pub fn all_passed(&self) -> bool {
        self.failures().is_empty()
    }

    /// Ok when every checked claim holds; otherwise the first violation,
    /// with its witness when one was recorded.
    pub fn ensure_passed(&self) -> Result<(), Error> {
        let failures = self.failures();
        match failures.into_iter().next() {
            None => Ok(()),
            Some(claim) => {
                let witness = self
                    .records
                    .iter()
                    .find_map(|r| r.witness_beta)
                    .map(|w| format!("beta index {w}"))
                    .unwrap_or_else(|| "none recorded".to_string());
                Err(Error::AssertionFailure { claim, witness })
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<VerificationReport, serde_json::Error> {
        serde_json::from_str(text)
    }
}
