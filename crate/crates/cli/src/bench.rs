//! Structured reversibility check against dense elimination on the
//! materialized transition matrix, for cubes `(m, m, m)` with all-ones rules.

use std::time::Instant;

use anyhow::Result;
use nullca_core::ca::{build_t, RuleSpec};
use nullca_core::field::Field;
use nullca_core::{oracle, spectral};

use crate::InputError;

/// Largest `m` accepted for the structured path.
pub const MAX_STRUCTURED_M: usize = 64;
/// Largest matrix order the dense baseline is run on by default.
pub const DEFAULT_DENSE_CAP: usize = 1728;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub m: usize,
    pub n: usize,
    pub t_structured: f64,
    pub t_dense: Option<f64>,
}

impl BenchRow {
    pub fn ratio(&self) -> Option<f64> {
        self.t_dense.map(|d| d / self.t_structured)
    }
}

pub fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

/// Median wall time of `runs` calls, in seconds.
pub fn time_median<T>(runs: usize, mut f: impl FnMut() -> T) -> f64 {
    let times = (0..runs.max(1))
        .map(|_| {
            let start = Instant::now();
            std::hint::black_box(f());
            start.elapsed().as_secs_f64()
        })
        .collect();
    median(times)
}

pub fn cube_rule(p: u64, m: usize) -> Result<RuleSpec> {
    Ok(RuleSpec::all_ones(p, vec![m; 3])?)
}

pub fn structured_check(rule: &RuleSpec) -> Result<bool> {
    Ok(spectral::is_reversible(rule)?.reversible)
}

pub fn time_structured(p: u64, m: usize, runs: usize) -> Result<f64> {
    let rule = cube_rule(p, m)?;
    structured_check(&rule)?;
    Ok(time_median(runs, || structured_check(&rule).expect("checked above")))
}

/// Times only the elimination; building `T` is excluded.
pub fn time_dense(p: u64, m: usize, runs: usize) -> Result<(f64, bool)> {
    let rule = cube_rule(p, m)?;
    let t = build_t(&rule, usize::MAX)?;
    let f = *t.field();
    let nonsingular = !f.is_zero(&oracle::det(&t)?);
    let time = time_median(runs, || oracle::det(&t).expect("square"));
    Ok((time, nonsingular))
}

/// One row per `m`; the dense side is skipped above `dense_cap`.
pub fn run(sizes: &[usize], p: u64, runs: usize, dense_cap: usize) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &m in sizes {
        if !(2..=MAX_STRUCTURED_M).contains(&m) {
            return Err(InputError(format!("size m = {m} outside 2..={MAX_STRUCTURED_M}")).into());
        }
        let n = m * m * m;
        let t_structured = time_structured(p, m, runs)?;
        let t_dense = if n <= dense_cap {
            let (t, nonsingular) = time_dense(p, m, runs)?;
            if nonsingular != structured_check(&cube_rule(p, m)?)? {
                anyhow::bail!("structured and dense decisions disagree at m = {m}");
            }
            Some(t)
        } else {
            None
        };
        rows.push(BenchRow {
            m,
            n,
            t_structured,
            t_dense,
        });
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("N,t_structured,t_dense,ratio\n");
    for r in rows {
        let dense = r.t_dense.map(|t| format!("{t:.6e}")).unwrap_or_default();
        let ratio = r.ratio().map(|x| format!("{x:.1}")).unwrap_or_default();
        out.push_str(&format!("{},{:.6e},{},{}\n", r.n, r.t_structured, dense, ratio));
    }
    out
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
