//! Acceptance suite for the whole pipeline. Each criterion is one test that
//! prints a single `[AC n] PASS ...` or `[AC n] FAIL ...` line (visible with
//! `cargo test --test acceptance -- --nocapture`) and asserts the same
//! condition, including its runtime budget.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use bsymbol::{
    b_distance, b_weight, b_weight_distribution, check_equi_b_distance, min_b_distance,
    plotkin_rhs, verify_construction, zero_window_count, Code, FieldCtx, FieldElement, Poly,
    Rational, Variant, Word,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn conclude(id: u32, ok: bool, elapsed: Duration, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("[AC {id}] {verdict} ({}ms) {detail}", elapsed.as_millis());
    assert!(ok, "[AC {id}] {detail}");
}

#[test]
fn ac1_binary_code_meets_the_bound_with_equality() {
    let start = Instant::now();
    let code = Code::build(2, 1, 4, 1, Variant::Full).unwrap();
    let report = verify_construction(&code, &[2, 3]).unwrap();
    let (r2, r3) = (&report.records[0], &report.records[1]);
    let mut ok = report.all_passed();
    ok &= r2.measured_db == 12 && r3.measured_db == 14;
    ok &= r2.bound_rhs == Some(Rational::integer(16));
    ok &= r3.bound_rhs == Some(Rational::integer(16));
    ok &= report.params.code_size == 16;
    ok &= r2.meets_bound_with_equality == Some(true);
    ok &= r3.meets_bound_with_equality == Some(true);
    let expected: BTreeMap<u64, u64> = [(0, 1), (12, 15)].into_iter().collect();
    ok &= r2.weight_distribution == expected;
    // independent route to the same spectrum claim
    let equi = check_equi_b_distance(&code, 2).unwrap();
    ok &= equi.equidistant && equi.common_weight == Some(12);
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(1);
    conclude(
        1,
        ok,
        elapsed,
        "q=2 s=4 e=1: d_2=12, d_3=14, bound rhs = 16 = K, spectrum {0:1, 12:15}",
    );
}

#[test]
fn ac2_ternary_code_is_equidistant_at_the_bound() {
    let start = Instant::now();
    let code = Code::build(3, 1, 3, 2, Variant::Full).unwrap();
    let report = verify_construction(&code, &[2]).unwrap();
    let rec = &report.records[0];
    let mut ok = report.all_passed();
    ok &= rec.measured_db == 12;
    ok &= rec.bound_rhs == Some(Rational::integer(27));
    ok &= report.params.code_size == 27;
    ok &= rec.meets_bound_with_equality == Some(true);
    // direct route: d / (d - n*theta) with exact rationals
    ok &= plotkin_rhs(13, 12, 3, 2) == Some(Rational::integer(27));
    // every one of the 26 nonzero codewords sits at weight 12
    let dist = b_weight_distribution(&code, 2).unwrap();
    let expected: BTreeMap<u64, u64> = [(0, 1), (12, 26)].into_iter().collect();
    ok &= dist == expected && rec.weight_distribution == expected;
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(1);
    conclude(
        2,
        ok,
        elapsed,
        "q=3 s=3 e=2: d_2=12, bound rhs = 12/(4/9) = 27 = K, all 26 nonzero words at w_2=12",
    );
}

#[test]
fn ac3_shortened_code_is_constacyclic_and_tight() {
    let start = Instant::now();
    let code = Code::build(5, 1, 3, 2, Variant::Shortened).unwrap();
    let report = verify_construction(&code, &[2]).unwrap();
    let rec = &report.records[0];
    let mut ok = report.all_passed();
    ok &= report.length == 31;
    ok &= rec.measured_db == 30;
    ok &= rec.bound_rhs == Some(Rational::integer(125));
    ok &= report.params.code_size == 125;
    ok &= rec.meets_bound_with_equality == Some(true);
    // twist constant: delta = alpha^31, a nonzero scalar of the alphabet
    ok &= report.closure_ok;
    let ctx = code.field();
    let alpha = ctx.element(report.params.alpha).unwrap();
    let delta = ctx.element(report.params.delta).unwrap();
    ok &= ctx.pow(alpha, 31) == delta;
    ok &= ctx.in_subfield(delta, 5).unwrap() && !delta.is_zero();
    ok &= report.params.delta == 4;
    // full-length relation: d_2 of the parent equals l * shortened d_2
    ok &= report.params.l == Some(2);
    let full = Code::build(5, 1, 3, 2, Variant::Full).unwrap();
    ok &= min_b_distance(&full, 2).unwrap() == 60;
    ok &= rec.scaling_ok == Some(true);
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(5);
    conclude(
        3,
        ok,
        elapsed,
        "q=5 s=3 e=2 shortened: d_2=30, bound rhs = 125 = K, delta=alpha^31 in GF(5)*, parent d_2 = 60 = 2*30",
    );
}

#[test]
fn ac4_wide_windows_saturate_the_distance() {
    let start = Instant::now();
    let code = Code::build(2, 1, 4, 1, Variant::Full).unwrap();
    let widths: Vec<u32> = (4..=14).collect();
    let report = verify_construction(&code, &widths).unwrap();
    let mut ok = report.all_passed() && report.records.len() == 11;
    for rec in &report.records {
        ok &= rec.measured_db == 15;
        ok &= rec.saturation_ok == Some(true);
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(1);
    conclude(
        4,
        ok,
        elapsed,
        "q=2 s=4 e=1: d_b = 15 = n for every b in 4..=14",
    );
}

#[test]
fn ac5_zero_window_count_matches_the_closed_form() {
    let start = Instant::now();
    let mut ok = true;
    struct Case {
        p: u64,
        s: u32,
        e: u64,
        // per width: expected zero-window count (Q - q^b) / (e q^b)
        per_width: &'static [(u32, u64)],
    }
    let cases = [
        Case {
            p: 2,
            s: 4,
            e: 1,
            per_width: &[(2, 3), (3, 1)],
        },
        Case {
            p: 3,
            s: 3,
            e: 2,
            per_width: &[(2, 1)],
        },
    ];
    for Case { p, s, e, per_width } in cases {
        let code = Code::build(p, 1, s, e, Variant::Full).unwrap();
        let widths: Vec<u32> = per_width.iter().map(|&(b, _)| b).collect();
        for &(b, expected) in per_width {
            for (beta, word) in code.codewords() {
                if beta.is_zero() {
                    continue;
                }
                ok &= zero_window_count(&word, b as usize).unwrap() == expected;
            }
        }
        // the report audits the same closed form per codeword
        let report = verify_construction(&code, &widths).unwrap();
        ok &= report
            .records
            .iter()
            .all(|r| r.zero_windows_ok == Some(true));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(1);
    conclude(
        5,
        ok,
        elapsed,
        "zero windows per nonzero codeword: 3 (q=2,b=2), 1 (q=2,b=3), 1 (q=3,b=2)",
    );
}

#[test]
fn ac6_parity_check_polynomial_annihilates_the_code() {
    let start = Instant::now();
    let code = Code::build(2, 1, 4, 1, Variant::Full).unwrap();
    let ctx = code.field();
    let h = code.parity_check_poly();
    let mut ok = h.degree() == Some(4);
    ok &= h.coeff(4) == FieldElement::ONE;
    // no roots in GF(4) rules out factors of degree 1 and 2, so degree 4
    // with none of those is irreducible
    for x in ctx.subfield_elements(4).unwrap() {
        ok &= !h.eval(ctx, x).is_zero();
    }
    // h vanishes on the full conjugate orbit of alpha^{-1}
    let root = ctx.inv(code.params().alpha).unwrap();
    let mut orbit = Vec::new();
    let mut r = root;
    loop {
        orbit.push(r);
        r = ctx.pow(r, 2);
        if r == root {
            break;
        }
    }
    ok &= orbit.len() == 4;
    for x in orbit {
        ok &= h.eval(ctx, x).is_zero();
    }
    // c(x) h(x) = 0 mod x^15 - 1 for all 16 codewords
    let mut annihilated = 0;
    for (_, word) in code.codewords() {
        let c = Poly::from_coeffs(word.symbols().to_vec());
        if c.cyclic_mul(&h, ctx, 15).is_zero() {
            annihilated += 1;
        }
    }
    ok &= annihilated == 16;
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(1);
    conclude(
        6,
        ok,
        elapsed,
        "h = minpoly(alpha^-1): monic, degree 4, irreducible, annihilates all 16 codewords",
    );
}

fn random_word(ctx: &FieldCtx, n: usize, rng: &mut StdRng) -> Word {
    let indices: Vec<u64> = (0..n).map(|_| rng.random_range(0..ctx.order())).collect();
    Word::from_indices(ctx, &indices).unwrap()
}

#[test]
fn ac7_metric_axioms_hold_on_random_samples() {
    let start = Instant::now();
    let combos: [(u64, usize, std::ops::RangeInclusive<u32>); 3] =
        [(2, 15, 2..=5), (3, 13, 2..=4), (5, 31, 2..=3)];
    let mut violations = 0u64;
    let mut samples = 0u64;
    for (q, n, widths) in combos {
        let ctx = FieldCtx::build(q, 1).unwrap();
        for b in widths {
            let b = b as usize;
            let seed = 0xB5E3 ^ (q << 20) ^ ((n as u64) << 8) ^ b as u64;
            let mut rng = StdRng::seed_from_u64(seed);
            for _ in 0..1000 {
                samples += 1;
                let x = random_word(&ctx, n, &mut rng);
                let y = random_word(&ctx, n, &mut rng);
                let z = random_word(&ctx, n, &mut rng);
                let dxy = b_distance(&ctx, &x, &y, b).unwrap();
                if b_distance(&ctx, &y, &x, b).unwrap() != dxy {
                    violations += 1; // symmetry
                }
                let dxz = b_distance(&ctx, &x, &z, b).unwrap();
                let dyz = b_distance(&ctx, &y, &z, b).unwrap();
                if dxz > dxy + dyz {
                    violations += 1; // triangle inequality
                }
                if b_distance(&ctx, &x, &x, b).unwrap() != 0 {
                    violations += 1; // self-distance
                }
                if x.symbols() != y.symbols() && dxy == 0 {
                    violations += 1; // distinct words never at distance 0
                }
                let xs = x.add(&z, &ctx).unwrap();
                let ys = y.add(&z, &ctx).unwrap();
                if b_distance(&ctx, &xs, &ys, b).unwrap() != dxy {
                    violations += 1; // translation invariance
                }
                let wh = x.hamming_weight();
                let wb = b_weight(&x, b).unwrap();
                if wb < wh || wb > n.min(b * wh) {
                    violations += 1; // sandwich bounds
                }
                if b_weight(&x, b - 1).unwrap() > wb {
                    violations += 1; // monotone in the width
                }
                if b_weight(&x, 1).unwrap() != wh {
                    violations += 1; // width 1 is Hamming
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = violations == 0 && samples == 9000 && elapsed < Duration::from_secs(10);
    conclude(
        7,
        ok,
        elapsed,
        "9 combos x 1000 random triples: symmetry, triangle, identity, translation, sandwich, monotonicity",
    );
}

#[test]
fn ac8_open_case_reports_measurements_without_claims() {
    let start = Instant::now();
    let code = Code::build(3, 1, 2, 2, Variant::Full).unwrap();
    let report = verify_construction(&code, &[2, 3]).unwrap();
    let mut ok = report.all_passed();
    ok &= report.linearity_ok && report.closure_ok && report.code_size_ok;
    ok &= report.distinct_codewords == 9;
    ok &= !report.params.predictions_apply && report.params.e_prime == 2;
    for rec in &report.records {
        ok &= rec.predicted_db.is_none();
        ok &= rec.bound_rhs.is_none();
        ok &= rec.meets_bound_with_equality.is_none();
        ok &= rec.measured_db > 0;
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(1);
    conclude(
        8,
        ok,
        elapsed,
        "q=3 s=2 e=2 (e'=2): invariants verified, measurements only, no equality claim",
    );
}

#[test]
fn ac9_search_output_is_byte_identical_across_runs() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let grid = [
        "search",
        "--p",
        "2,3,5",
        "--f",
        "1",
        "--s",
        "3,4",
        "--e",
        "1,2",
        "--variant",
        "both",
        "--b",
        "theorem",
    ];
    let mut jsons: Vec<Vec<u8>> = Vec::new();
    let mut csvs: Vec<Vec<u8>> = Vec::new();
    for (run, jobs) in [(0, "4"), (1, "4"), (2, "1")] {
        let json_path = dir.path().join(format!("run{run}.json"));
        let csv_path = dir.path().join(format!("run{run}.csv"));
        for (format, path) in [("json", &json_path), ("csv", &csv_path)] {
            let status = Command::new(env!("CARGO_BIN_EXE_bsymbol"))
                .args(grid)
                .args([
                    "--jobs",
                    jobs,
                    "--format",
                    format,
                    "--out",
                    path.to_str().unwrap(),
                ])
                .stderr(std::process::Stdio::null())
                .status()
                .expect("binary runs");
            assert!(status.success());
        }
        jsons.push(std::fs::read(&json_path).unwrap());
        csvs.push(std::fs::read(&csv_path).unwrap());
    }
    let mut ok = jsons[0] == jsons[1] && jsons[1] == jsons[2];
    ok &= csvs[0] == csvs[1] && csvs[1] == csvs[2];
    ok &= jsons[0].len() > 2 && csvs[0].len() > 200;
    // the grid covers the three headline codes
    let csv = String::from_utf8(csvs[0].clone()).unwrap();
    ok &= csv.contains("2,1,2,4,16,1,1,full,15,16,2,12,12,45,4,16,1,true,true,,");
    ok &= csv.contains("3,1,3,3,27,2,1,full,13,27,2,12,12,104,9,27,1,true,true,,");
    ok &= csv.contains("5,1,5,3,125,2,1,shortened,31,125,2,30,30,744,25,125,1,true,true,,true");
    let elapsed = start.elapsed();
    conclude(
        9,
        ok,
        elapsed,
        "search over the headline grid: JSON and CSV byte-identical across runs and thread counts",
    );
}
