//! Grid expansion, parallel verification and report emission.

use bsymbol::{verify_construction, Code, Variant, VerificationReport};
use rayon::prelude::*;

/// How widths are chosen for each grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BPolicy {
    /// Widths 2 ..= s-1, where the closed forms can apply.
    Theorem,
    /// Every width from 2 up to length - 1.
    All,
    /// A fixed list; out-of-range widths are dropped per point.
    Explicit(Vec<u32>),
}

impl BPolicy {
    pub fn parse(text: &str) -> Result<BPolicy, String> {
        match text {
            "theorem" => Ok(BPolicy::Theorem),
            "all" => Ok(BPolicy::All),
            list => {
                let widths = list
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u32>()
                            .map_err(|_| format!("invalid width '{}'", t.trim()))
                    })
                    .collect::<Result<Vec<u32>, String>>()?;
                if widths.is_empty() {
                    return Err("empty width list".to_string());
                }
                Ok(BPolicy::Explicit(widths))
            }
        }
    }

    /// Concrete widths for a code of dimension s and the given block length,
    /// sorted and clipped to the valid window range.
    pub fn widths_for(&self, s: u32, length: u64) -> Vec<u32> {
        let max = (length - 1).min(u64::from(u32::MAX)) as u32;
        let mut widths: Vec<u32> = match self {
            BPolicy::Theorem => (2..s).filter(|&b| b <= max).collect(),
            BPolicy::All => (2..=max).collect(),
            BPolicy::Explicit(list) => list
                .iter()
                .copied()
                .filter(|&b| (2..=max).contains(&b))
                .collect(),
        };
        widths.sort_unstable();
        widths.dedup();
        widths
    }
}

#[derive(Clone, Debug)]
pub struct GridPoint {
    pub p: u64,
    pub f: u32,
    pub s: u32,
    pub e: u64,
    pub variant: Variant,
}

impl std::fmt::Display for GridPoint {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            fm,
            "p={} f={} s={} e={} variant={}",
            self.p, self.f, self.s, self.e, self.variant
        )
    }
}

pub struct SearchGrid {
    pub p: Vec<u64>,
    pub f: Vec<u32>,
    pub s: Vec<u32>,
    pub e: Vec<u64>,
    pub variants: Vec<Variant>,
    pub b_policy: BPolicy,
    /// Points whose field order would exceed this are skipped.
    pub cap: u64,
}

pub struct SearchOutcome {
    pub reports: Vec<VerificationReport>,
    /// Inadmissible points with the reason each was dropped, in grid order.
    pub skipped: Vec<(GridPoint, String)>,
}

impl SearchOutcome {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.all_passed())
    }
}

/// q^s as a wide integer, saturating once it is clearly over any cap.
pub fn ext_order(p: u64, f: u32, s: u32) -> u128 {
    let exp = u64::from(f) * u64::from(s);
    let mut acc = 1u128;
    for _ in 0..exp {
        acc = acc.saturating_mul(u128::from(p));
        if acc > u128::from(u64::MAX) {
            return acc;
        }
    }
    acc
}

/// Cartesian product of the axes in ascending order; points come out in
/// lexicographic (p, f, s, e, variant) order.
fn expand(grid: &SearchGrid) -> Vec<GridPoint> {
    let mut ps = grid.p.clone();
    ps.sort_unstable();
    ps.dedup();
    let mut fs = grid.f.clone();
    fs.sort_unstable();
    fs.dedup();
    let mut ss = grid.s.clone();
    ss.sort_unstable();
    ss.dedup();
    let mut es = grid.e.clone();
    es.sort_unstable();
    es.dedup();
    let mut points = Vec::new();
    for &p in &ps {
        for &f in &fs {
            for &s in &ss {
                for &e in &es {
                    for &variant in &grid.variants {
                        points.push(GridPoint {
                            p,
                            f,
                            s,
                            e,
                            variant,
                        });
                    }
                }
            }
        }
    }
    points
}

fn process_point(pt: &GridPoint, grid: &SearchGrid) -> Result<VerificationReport, String> {
    let order = ext_order(pt.p, pt.f, pt.s);
    if order > u128::from(grid.cap) {
        return Err(format!("field order {order} exceeds the cap {}", grid.cap));
    }
    let code = Code::build(pt.p, pt.f, pt.s, pt.e, pt.variant).map_err(|e| e.to_string())?;
    let widths = grid.b_policy.widths_for(pt.s, code.length());
    verify_construction(&code, &widths).map_err(|e| e.to_string())
}

/// Verifies every admissible grid point. Points run concurrently on the
/// current thread pool; the output keeps the lexicographic grid order.
pub fn run_search(grid: &SearchGrid) -> SearchOutcome {
    let points = expand(grid);
    let results: Vec<(GridPoint, Result<VerificationReport, String>)> = points
        .into_par_iter()
        .map(|pt| {
            let res = process_point(&pt, grid);
            (pt, res)
        })
        .collect();
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for (pt, res) in results {
        match res {
            Ok(report) => reports.push(report),
            Err(reason) => skipped.push((pt, reason)),
        }
    }
    SearchOutcome { reports, skipped }
}

pub const CSV_HEADER: &str = "p,f,q,s,Q,e,e_prime,variant,n,K,b,measured_db,predicted_db,\
ntheta_num,ntheta_den,bound_rhs_num,bound_rhs_den,meets_equality,equidistant,remark1_ok,\
constacyclic_ok";

fn opt_bool(v: Option<bool>) -> String {
    v.map(|b| b.to_string()).unwrap_or_default()
}

/// One row per (report, width); empty cells where a claim does not apply.
pub fn to_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for report in reports {
        let pb = &report.params;
        let constacyclic = if report.variant == "shortened" {
            report.closure_ok.to_string()
        } else {
            String::new()
        };
        for rec in &report.records {
            let row = [
                pb.p.to_string(),
                pb.f.to_string(),
                pb.q.to_string(),
                pb.s.to_string(),
                pb.ext_order.to_string(),
                pb.e.to_string(),
                pb.e_prime.to_string(),
                report.variant.clone(),
                report.length.to_string(),
                pb.code_size.to_string(),
                rec.b.to_string(),
                rec.measured_db.to_string(),
                rec.predicted_db.map(|d| d.to_string()).unwrap_or_default(),
                rec.n_theta_b.numer().to_string(),
                rec.n_theta_b.denom().to_string(),
                rec.bound_rhs
                    .as_ref()
                    .map(|r| r.numer().to_string())
                    .unwrap_or_default(),
                rec.bound_rhs
                    .as_ref()
                    .map(|r| r.denom().to_string())
                    .unwrap_or_default(),
                opt_bool(rec.meets_bound_with_equality),
                rec.equidistant.to_string(),
                opt_bool(rec.saturation_ok),
                constacyclic.clone(),
            ];
            out.push_str(&row.join(","));
            out.push('\n');
        }
    }
    out
}

pub fn to_json_array(reports: &[VerificationReport]) -> String {
    let mut out = serde_json::to_string_pretty(reports).expect("reports serialize");
    out.push('\n');
    out
}
