//! Chromatic number sweeps over bicycle instances.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{is_k_colorable, SolverConfig, Verdict};
use crate::error::{Error, Result};
use crate::graph::{build_bicycle, discretize_circle, Interval, TAU_MARGIN};
use crate::norm::Norm;
use crate::point::PlanePoint;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPlan {
    pub s_grid: Vec<f64>,
    pub eps_grid: Vec<f64>,
    pub count: usize,
    pub k_list: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub s: f64,
    pub eps: f64,
    pub count: usize,
    /// `(k, verdict)` in increasing `k`.
    pub verdicts: Vec<(usize, Verdict)>,
    pub chi: ChiBounds,
    pub seconds: f64,
}

/// What the verdicts of one row say about the chromatic number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiBounds {
    /// One more than the largest UNSAT `k`.
    pub lower: Option<usize>,
    /// The smallest SAT `k`.
    pub upper: Option<usize>,
}

impl ChiBounds {
    pub fn from_verdicts(verdicts: &[(usize, Verdict)]) -> Self {
        ChiBounds {
            lower: verdicts.iter().filter(|v| v.1 == Verdict::Unsat).map(|v| v.0 + 1).max(),
            upper: verdicts.iter().filter(|v| v.1 == Verdict::Sat).map(|v| v.0).min(),
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match (self.lower, self.upper) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }
}

impl std::fmt::Display for ChiBounds {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.lower, self.upper) {
            (Some(a), Some(b)) if a == b => write!(f, "{a}"),
            (Some(a), Some(b)) => write!(f, "{a}..{b}"),
            (Some(a), None) => write!(f, ">={a}"),
            (None, Some(b)) => write!(f, "<={b}"),
            (None, None) => write!(f, "?"),
        }
    }
}

/// Largest norm distance between consecutive samples of a discretized unit circle.
pub fn max_sample_gap(norm: &Norm, count: usize) -> Result<f64> {
    let pts = discretize_circle(norm, PlanePoint::ORIGIN, count)?;
    Ok((0..count).map(|k| norm.dist(pts[k], pts[(k + 1) % count])).fold(0.0, f64::max))
}

/// Smallest sample count whose largest gap is below `eps / 2`.
pub fn required_count(norm: &Norm, eps: f64) -> Result<usize> {
    let ok = |n: usize| max_sample_gap(norm, n).map(|g| g < eps / 2.0);
    let mut hi = 8;
    while !ok(hi)? {
        hi *= 2;
        if hi > 1 << 26 {
            return Err(Error::Config(format!("no practical sample count resolves eps = {eps}")));
        }
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if ok(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

impl SweepPlan {
    pub fn validate(&self, norm: &Norm) -> Result<()> {
        if self.s_grid.is_empty() || self.eps_grid.is_empty() || self.k_list.is_empty() {
            return Err(Error::Config("sweep grids and the k list must be nonempty".into()));
        }
        for &eps in &self.eps_grid {
            Interval::around_unit(eps)?;
            if max_sample_gap(norm, self.count)? >= eps / 2.0 {
                return Err(Error::Refused(format!(
                    "count {} leaves sample gaps of at least eps / 2 for eps = {eps}; use count >= {}",
                    self.count,
                    required_count(norm, eps)?
                )));
            }
        }
        Ok(())
    }
}

/// Runs every `(s, eps)` cell on up to `jobs` threads; rows come back sorted
/// by `(s, eps)`. An UNSAT verdict is kept only if the strict-margin subgraph
/// is UNSAT too, otherwise it is reported as indeterminate.
pub fn bicycle_sweep(plan: &SweepPlan, norm: &Norm, config: &SolverConfig, jobs: usize) -> Result<Vec<SweepRow>> {
    plan.validate(norm)?;
    let mut k_list = plan.k_list.clone();
    k_list.sort_unstable();
    k_list.dedup();
    let mut cells: Vec<(f64, f64)> =
        plan.s_grid.iter().flat_map(|&s| plan.eps_grid.iter().map(move |&e| (s, e))).collect();
    cells.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    cells.dedup();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start {jobs} worker threads: {e}")))?;
    pool.install(|| {
        cells
            .par_iter()
            .map(|&(s, eps)| {
                let started = Instant::now();
                let g = build_bicycle(norm, s, plan.count, Interval::around_unit(eps)?)?;
                let strict = g.strict_subgraph(TAU_MARGIN);
                let mut verdicts = Vec::new();
                for &k in &k_list {
                    let mut v = is_k_colorable(&g, k, config)?.verdict;
                    if v == Verdict::Unsat && is_k_colorable(&strict, k, config)?.verdict != Verdict::Unsat {
                        v = Verdict::Indeterminate;
                    }
                    verdicts.push((k, v));
                }
                Ok(SweepRow {
                    s,
                    eps,
                    count: plan.count,
                    chi: ChiBounds::from_verdicts(&verdicts),
                    verdicts,
                    seconds: started.elapsed().as_secs_f64(),
                })
            })
            .collect()
    })
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Sat => "SAT",
        Verdict::Unsat => "UNSAT",
        Verdict::Indeterminate => "INDETERMINATE",
    }
}

/// CSV with columns `s,eps,count,k<k>...,chi,seconds`.
pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let ks: Vec<usize> = rows.first().map(|r| r.verdicts.iter().map(|v| v.0).collect()).unwrap_or_default();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["s".to_string(), "eps".into(), "count".into()];
    header.extend(ks.iter().map(|k| format!("k{k}")));
    header.extend(["chi".to_string(), "seconds".into()]);
    w.write_record(&header)?;
    for r in rows {
        let mut rec = vec![r.s.to_string(), r.eps.to_string(), r.count.to_string()];
        rec.extend(r.verdicts.iter().map(|v| verdict_name(v.1).to_string()));
        rec.extend([r.chi.to_string(), format!("{:.3}", r.seconds)]);
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_bounds_display() {
        let b = ChiBounds::from_verdicts(&[(3, Verdict::Unsat), (4, Verdict::Sat)]);
        assert_eq!(b.to_string(), "4");
        assert_eq!(b.exact(), Some(4));
        assert_eq!(ChiBounds::from_verdicts(&[(3, Verdict::Sat), (4, Verdict::Sat)]).to_string(), "<=3");
        assert_eq!(ChiBounds::from_verdicts(&[(3, Verdict::Unsat), (4, Verdict::Indeterminate)]).to_string(), ">=4");
    }

    #[test]
    fn coarse_count_is_refused_with_requirement() {
        let plan = SweepPlan { s_grid: vec![1.5], eps_grid: vec![0.05], count: 100, k_list: vec![3] };
        let err = bicycle_sweep(&plan, &Norm::euclidean(), &SolverConfig::default(), 1).unwrap_err();
        let need = required_count(&Norm::euclidean(), 0.05).unwrap();
        assert!(matches!(&err, Error::Refused(m) if m.contains(&format!("count >= {need}"))));
        assert!(max_sample_gap(&Norm::euclidean(), need).unwrap() < 0.025);
        assert!(max_sample_gap(&Norm::euclidean(), need - 1).unwrap() >= 0.025);
    }

    #[test]
    fn far_circles_need_three_colors() {
        let plan = SweepPlan { s_grid: vec![4.0], eps_grid: vec![0.05], count: 300, k_list: vec![2, 3] };
        let rows = bicycle_sweep(&plan, &Norm::euclidean(), &SolverConfig::default(), 2).unwrap();
        assert_eq!(rows[0].chi.to_string(), "3");
        let csv = sweep_csv(&rows).unwrap();
        assert!(csv.starts_with("s,eps,count,k2,k3,chi,seconds\n4,0.05,300,UNSAT,SAT,3,"));
    }
}
