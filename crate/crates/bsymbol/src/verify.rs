//! Exhaustive verification: measure width-b distances by enumerating every
//! codeword, compare against the closed forms, and check the bound with
//! exact arithmetic.
//!
//! Scans partition the codeword range across worker threads; partial results
//! merge by sum and minimum, so the outcome does not depend on the worker
//! count. Witnesses are reported as the first offender in the fixed
//! enumeration order (zero, then ascending powers of gamma).

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::code::{Code, Variant};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::metric::{b_weight, Word};
use crate::rational::Rational;
use crate::report::{ParamsBlock, RunStats, VerificationReport, WidthRecord, SCHEMA_VERSION};

/// Largest code size on which the quadratic pairwise cross-check runs.
const PAIRWISE_CAP: u64 = 64;

/// Number of leading betas used for linearity spot checks.
const LINEARITY_CAP: usize = 64;

/// theta_b = (q^b - 1) / q^b, exact.
pub fn theta_b(q: u64, b: u32) -> Rational {
    assert!(q >= 2 && b >= 1);
    let qb = BigInt::from(q).pow(b);
    Rational::new(qb.clone() - 1, qb)
}

/// The bound ratio d / (d - n theta_b), defined only when d > n theta_b.
/// A code of length n and minimum b-distance d in that regime can have at
/// most this many codewords.
pub fn plotkin_rhs(n: u64, d_b: u64, q: u64, b: u32) -> Option<Rational> {
    let n_theta = theta_b(q, b) * Rational::integer(n);
    let d = Rational::integer(d_b);
    if d > n_theta {
        Some(d.clone() / (d - n_theta))
    } else {
        None
    }
}

/// The b-weight every codeword must share when the bound is met with
/// equality: K n theta_b / (K - 1).
fn equality_weight(code_size: u64, n_theta: &Rational) -> Rational {
    let k = Rational::integer(code_size);
    k.clone() * n_theta.clone() / (k - Rational::integer(1))
}

fn beta_at(code: &Code, i: u64) -> FieldElement {
    if i == 0 {
        FieldElement::ZERO
    } else {
        code.field().antilog(i - 1)
    }
}

fn check_width_for(code: &Code, b: usize) -> Result<()> {
    let len = code.length() as usize;
    if b < 2 || b + 1 > len {
        return Err(Error::WindowOutOfRange { b, len });
    }
    Ok(())
}

/// Minimum b-weight over the nonzero codewords. Equals the minimum pairwise
/// b-distance because codeword differences are again codewords.
pub fn min_b_distance(code: &Code, b: usize) -> Result<u64> {
    check_width_for(code, b)?;
    let k = code.params().code_size();
    let min = (1..k)
        .into_par_iter()
        .map(|i| b_weight(&code.codeword(beta_at(code, i)), b).expect("width checked") as u64)
        .min()
        .expect("code has nonzero words");
    Ok(min)
}

/// Minimum b-distance over all unordered codeword pairs. Quadratic in the
/// code size; kept as an independent route for cross-checking small codes.
pub fn min_b_distance_pairwise(code: &Code, b: usize) -> Result<u64> {
    check_width_for(code, b)?;
    let ctx = code.field();
    let words: Vec<Word> = code.codewords().map(|(_, w)| w).collect();
    let mut min = u64::MAX;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let diff = words[i].sub(&words[j], ctx)?;
            min = min.min(b_weight(&diff, b)? as u64);
        }
    }
    assert!(min < u64::MAX, "code needs at least two codewords");
    Ok(min)
}

/// b-weight -> count over all codewords, the zero word included.
pub fn b_weight_distribution(code: &Code, b: usize) -> Result<BTreeMap<u64, u64>> {
    check_width_for(code, b)?;
    let k = code.params().code_size();
    let dist = (0..k)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<u64, u64>, i| {
            let w = b_weight(&code.codeword(beta_at(code, i)), b).expect("width checked");
            *acc.entry(w as u64).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, merge_counts);
    Ok(dist)
}

fn merge_counts(mut a: BTreeMap<u64, u64>, b: BTreeMap<u64, u64>) -> BTreeMap<u64, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Outcome of the equidistance check.
#[derive(Clone, Debug)]
pub struct EquiCheck {
    pub equidistant: bool,
    /// The shared nonzero-codeword weight, when equidistant.
    pub common_weight: Option<u64>,
    /// Two codeword labels with different b-weights, otherwise None.
    pub witness: Option<(FieldElement, FieldElement)>,
}

/// Do all nonzero codewords share one b-weight?
pub fn check_equi_b_distance(code: &Code, b: usize) -> Result<EquiCheck> {
    check_width_for(code, b)?;
    let mut first: Option<(FieldElement, u64)> = None;
    for (beta, word) in code.codewords() {
        if beta.is_zero() {
            continue;
        }
        let w = b_weight(&word, b)? as u64;
        match first {
            None => first = Some((beta, w)),
            Some((beta0, w0)) => {
                if w != w0 {
                    return Ok(EquiCheck {
                        equidistant: false,
                        common_weight: None,
                        witness: Some((beta0, beta)),
                    });
                }
            }
        }
    }
    Ok(EquiCheck {
        equidistant: true,
        common_weight: first.map(|(_, w)| w),
        witness: None,
    })
}

/// Number of positions whose width-b window is entirely zero, counted by a
/// direct per-window scan (independent of the sliding-window weight).
pub fn zero_window_count(word: &Word, b: usize) -> Result<u64> {
    let n = word.len();
    if b < 1 || n < 2 || b > n - 1 {
        return Err(Error::WindowOutOfRange { b, len: n });
    }
    let mut count = 0u64;
    for i in 0..n {
        if (0..b).all(|j| word.get((i + j) % n).is_zero()) {
            count += 1;
        }
    }
    Ok(count)
}

/// Per-width scan accumulator; merges are associative and commutative so
/// parallel reduction is deterministic.
#[derive(Clone)]
struct WidthScan {
    distribution: BTreeMap<u64, u64>,
    min_nonzero: Option<u64>,
    weight_evals: u64,
    pred_violation: Option<u64>,
    equi_violation: Option<u64>,
    zero_violation: Option<u64>,
    saturation_violation: Option<u64>,
    scaling_violation: Option<u64>,
}

impl WidthScan {
    fn empty() -> WidthScan {
        WidthScan {
            distribution: BTreeMap::new(),
            min_nonzero: None,
            weight_evals: 0,
            pred_violation: None,
            equi_violation: None,
            zero_violation: None,
            saturation_violation: None,
            scaling_violation: None,
        }
    }

    fn merge(a: WidthScan, b: WidthScan) -> WidthScan {
        WidthScan {
            distribution: merge_counts(a.distribution, b.distribution),
            min_nonzero: option_min(a.min_nonzero, b.min_nonzero),
            weight_evals: a.weight_evals + b.weight_evals,
            pred_violation: option_min(a.pred_violation, b.pred_violation),
            equi_violation: option_min(a.equi_violation, b.equi_violation),
            zero_violation: option_min(a.zero_violation, b.zero_violation),
            saturation_violation: option_min(a.saturation_violation, b.saturation_violation),
            scaling_violation: option_min(a.scaling_violation, b.scaling_violation),
        }
    }
}

fn option_min(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Runs every check the construction promises at the requested widths and
/// assembles the report. Claims that do not apply (no closed form, width
/// below the dimension, full variant) are left unset rather than asserted.
///
/// The report itself never fails; use [`VerificationReport::ensure_passed`]
/// to turn recorded violations into an error.
pub fn verify_construction(code: &Code, widths: &[u32]) -> Result<VerificationReport> {
    let start = Instant::now();
    let params = code.params().clone();
    let variant = code.variant();
    let len = code.length();
    let k_size = params.code_size();

    let mut bs: Vec<u32> = widths.to_vec();
    bs.sort_unstable();
    bs.dedup();
    for &b in &bs {
        check_width_for(code, b as usize)?;
    }

    let mut stats = RunStats::default();

    // materialize the code once for membership queries
    let mut set: HashSet<Word> = HashSet::with_capacity(k_size as usize);
    for (_, word) in code.codewords() {
        set.insert(word);
    }
    stats.codewords_scanned += k_size;
    let distinct = set.len() as u64;
    let code_size_ok = distinct == k_size;

    // closure under (twisted) rotation, by set membership
    let mut closure_ok = true;
    for (_, word) in code.codewords() {
        let shifted = match variant {
            Variant::Full => word.rotated_left(1),
            Variant::Shortened => twisted_rotation(code, &word),
        };
        if !set.contains(&shifted) {
            closure_ok = false;
            break;
        }
    }
    stats.codewords_scanned += k_size;
    drop(set);

    let linearity_ok = check_linearity(code, &mut stats)?;

    let q = params.q;
    let mut records = Vec::with_capacity(bs.len());
    for &b in &bs {
        let bu = b as usize;
        let predicted = params.predicted_db_for(variant, b);
        let expected_zero = params.predicted_zero_windows(variant, b);
        let wide = b >= params.s;
        let do_scaling = variant == Variant::Shortened;
        let l = params.l;
        let w_ref = b_weight(&code.codeword(FieldElement::ONE), bu)? as u64;

        let scan = (0..k_size)
            .into_par_iter()
            .fold(WidthScan::empty, |mut acc, i| {
                let beta = beta_at(code, i);
                let word = code.codeword(beta);
                let w = b_weight(&word, bu).expect("width checked") as u64;
                acc.weight_evals += 1;
                *acc.distribution.entry(w).or_insert(0) += 1;
                if i == 0 {
                    return acc;
                }
                acc.min_nonzero = option_min(acc.min_nonzero, Some(w));
                if predicted.is_some_and(|p| w != p) {
                    acc.pred_violation = option_min(acc.pred_violation, Some(i));
                }
                if w != w_ref {
                    acc.equi_violation = option_min(acc.equi_violation, Some(i));
                }
                if let Some(expected) = expected_zero {
                    let zeros = zero_window_count(&word, bu).expect("width checked");
                    if zeros != expected {
                        acc.zero_violation = option_min(acc.zero_violation, Some(i));
                    }
                }
                if wide && w != len {
                    acc.saturation_violation = option_min(acc.saturation_violation, Some(i));
                }
                if do_scaling {
                    let full = code.full_codeword(beta);
                    let fw = b_weight(&full, bu).expect("full length is longer") as u64;
                    acc.weight_evals += 1;
                    if fw != l.expect("shortened implies l") * w {
                        acc.scaling_violation = option_min(acc.scaling_violation, Some(i));
                    }
                }
                acc
            })
            .reduce(WidthScan::empty, WidthScan::merge);
        stats.codewords_scanned += k_size;
        stats.weight_evaluations += scan.weight_evals;

        let measured = scan.min_nonzero.expect("nonzero codewords exist");
        let equidistant = scan.equi_violation.is_none();
        let common_weight = equidistant.then_some(w_ref);
        let n_theta = theta_b(q, b) * Rational::integer(len);
        let (bound_rhs, meets) = if predicted.is_some() {
            match plotkin_rhs(len, measured, q, b) {
                Some(rhs) => {
                    let eq = rhs == Rational::integer(k_size);
                    (Some(rhs), Some(eq))
                }
                None => (None, Some(false)),
            }
        } else {
            (None, None)
        };
        let common_weight_consistent = match (meets, common_weight) {
            (Some(true), Some(cw)) => {
                Some(Rational::integer(cw) == equality_weight(k_size, &n_theta))
            }
            _ => None,
        };
        let pairwise_consistent = if k_size <= PAIRWISE_CAP {
            let pairwise = min_b_distance_pairwise(code, bu)?;
            stats.weight_evaluations += k_size * (k_size - 1) / 2;
            Some(pairwise == measured)
        } else {
            None
        };
        let witness_enum = [
            scan.pred_violation,
            scan.equi_violation,
            scan.zero_violation,
            scan.saturation_violation,
            scan.scaling_violation,
        ]
        .into_iter()
        .fold(None, option_min);
        let witness_beta = witness_enum.map(|i| beta_at(code, i).index());

        records.push(WidthRecord {
            b,
            measured_db: measured,
            predicted_db: predicted,
            n_theta_b: n_theta,
            bound_rhs,
            meets_bound_with_equality: meets,
            equidistant,
            common_weight,
            common_weight_consistent,
            weight_distribution: scan.distribution,
            zero_windows_ok: expected_zero.map(|_| scan.zero_violation.is_none()),
            saturation_ok: wide.then(|| scan.saturation_violation.is_none()),
            scaling_ok: do_scaling.then(|| scan.scaling_violation.is_none()),
            pairwise_consistent,
            witness_beta,
        });
    }

    stats.elapsed = start.elapsed();
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        params: ParamsBlock {
            p: params.p,
            f: params.f,
            q: params.q,
            s: params.s,
            ext_order: params.ext_order,
            e: params.e,
            e_prime: params.e_prime,
            n: params.n,
            k: params.s,
            code_size: k_size,
            l: params.l,
            shortened_len: params.shortened_len,
            alpha: params.alpha.index(),
            delta: params.delta.index(),
            predictions_apply: params.predictions_apply,
        },
        variant: variant.to_string(),
        length: len,
        closure_ok,
        linearity_ok,
        distinct_codewords: distinct,
        code_size_ok,
        records,
        stats,
    })
}

fn twisted_rotation(code: &Code, word: &Word) -> Word {
    let ctx = code.field();
    let delta = code.params().delta;
    let mut symbols = word.symbols()[1..].to_vec();
    symbols.push(ctx.mul(word.get(0), delta));
    Word::raw(word.field_order(), symbols)
}

/// Additivity on a leading block of beta pairs and GF(q)-scaling on a
/// leading block of betas. Exhaustive when the code is small.
fn check_linearity(code: &Code, stats: &mut RunStats) -> Result<bool> {
    let ctx = code.field();
    let sample: Vec<FieldElement> = code.betas().take(LINEARITY_CAP).collect();
    for &b1 in &sample {
        let w1 = code.codeword(b1);
        for &b2 in &sample {
            let sum = w1.add(&code.codeword(b2), ctx)?;
            if sum != code.codeword(ctx.add(b1, b2)) {
                return Ok(false);
            }
        }
    }
    let lambdas = ctx.subfield_elements(code.params().q)?;
    for &beta in sample.iter().take(16) {
        let word = code.codeword(beta);
        for &lambda in &lambdas {
            if word.scale(lambda, ctx)? != code.codeword(ctx.mul(lambda, beta)) {
                return Ok(false);
            }
        }
    }
    stats.codewords_scanned += (sample.len() * sample.len()) as u64;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_values() {
        assert_eq!(theta_b(2, 2), Rational::ratio(3, 4));
        assert_eq!(theta_b(2, 3), Rational::ratio(7, 8));
        assert_eq!(theta_b(3, 2), Rational::ratio(8, 9));
        assert_eq!(theta_b(5, 2), Rational::ratio(24, 25));
        assert_eq!(theta_b(2, 1), Rational::ratio(1, 2));
    }

    #[test]
    fn bound_ratio_values() {
        assert_eq!(plotkin_rhs(15, 12, 2, 2), Some(Rational::integer(16)));
        assert_eq!(plotkin_rhs(13, 12, 3, 2), Some(Rational::integer(27)));
        assert_eq!(plotkin_rhs(31, 30, 5, 2), Some(Rational::integer(125)));
        // hypothesis fails: 11 < 15 * 3/4
        assert_eq!(plotkin_rhs(15, 11, 2, 2), None);
        // boundary: d equal to n theta_b is still out of scope
        assert_eq!(plotkin_rhs(4, 3, 2, 2), None);
    }

    #[test]
    fn equality_weight_value() {
        let n_theta = theta_b(2, 2) * Rational::integer(15);
        assert_eq!(equality_weight(16, &n_theta), Rational::integer(12));
    }

    #[test]
    fn distances_on_the_binary_code() {
        let code = Code::build(2, 1, 4, 1, Variant::Full).unwrap();
        assert_eq!(min_b_distance(&code, 2).unwrap(), 12);
        assert_eq!(min_b_distance(&code, 3).unwrap(), 14);
        assert_eq!(min_b_distance(&code, 4).unwrap(), 15);
        assert_eq!(min_b_distance_pairwise(&code, 2).unwrap(), 12);
        assert_eq!(min_b_distance_pairwise(&code, 3).unwrap(), 14);
        let dist = b_weight_distribution(&code, 2).unwrap();
        assert_eq!(dist, [(0u64, 1u64), (12, 15)].into_iter().collect());
    }

    #[test]
    fn equidistance_check() {
        let code = Code::build(2, 1, 4, 1, Variant::Full).unwrap();
        let eq = check_equi_b_distance(&code, 2).unwrap();
        assert!(eq.equidistant);
        assert_eq!(eq.common_weight, Some(12));
        assert!(eq.witness.is_none());
    }

    #[test]
    fn zero_windows_by_direct_count() {
        let ctx = crate::field::FieldCtx::build(2, 1).unwrap();
        let w = Word::from_indices(&ctx, &[1, 0, 0, 0, 1, 0]).unwrap();
        // width 2: all-zero windows start at positions 1 and 2
        assert_eq!(zero_window_count(&w, 2).unwrap(), 2);
        assert_eq!(
            zero_window_count(&w, 2).unwrap() + b_weight(&w, 2).unwrap() as u64,
            w.len() as u64
        );
        let zero = Word::zero(&ctx, 6);
        assert_eq!(zero_window_count(&zero, 3).unwrap(), 6);
    }

    #[test]
    fn report_on_the_binary_code() {
        let code = Code::build(2, 1, 4, 1, Variant::Full).unwrap();
        let report = verify_construction(&code, &[3, 2, 2]).unwrap();
        assert!(report.all_passed(), "failures: {:?}", report.failures());
        assert_eq!(report.records.len(), 2);
        assert_eq!(report.records[0].b, 2);
        assert_eq!(report.records[0].measured_db, 12);
        assert_eq!(report.records[0].predicted_db, Some(12));
        assert_eq!(report.records[0].bound_rhs, Some(Rational::integer(16)));
        assert_eq!(report.records[0].meets_bound_with_equality, Some(true));
        assert_eq!(report.records[0].common_weight_consistent, Some(true));
        assert_eq!(report.records[0].zero_windows_ok, Some(true));
        assert_eq!(report.records[0].saturation_ok, None);
        assert_eq!(report.records[1].measured_db, 14);
        assert!(report.closure_ok && report.linearity_ok && report.code_size_ok);
    }

    #[test]
    fn width_validation() {
        let code = Code::build(2, 1, 4, 1, Variant::Full).unwrap();
        assert!(matches!(
            verify_construction(&code, &[1]),
            Err(Error::WindowOutOfRange { b: 1, .. })
        ));
        assert!(matches!(
            verify_construction(&code, &[15]),
            Err(Error::WindowOutOfRange { b: 15, .. })
        ));
        assert!(matches!(
            min_b_distance(&code, 0),
            Err(Error::WindowOutOfRange { .. })
        ));
    }
}
