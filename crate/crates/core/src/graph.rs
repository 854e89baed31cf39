//! Forbidden-interval distance graphs over finite point sets.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norm::Norm;
use crate::point::{PlanePoint, TAU_GEO};

/// Inward margin a pair must clear before it counts toward a lower bound.
pub const TAU_MARGIN: f64 = 1e-6;

/// Closed forbidden distance interval `[lo, hi]`, serialized as `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
            return Err(Error::Config(format!("interval needs 0 < lo <= hi, got [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    /// `[1 - eps, 1 + eps]`.
    pub fn around_unit(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::Config(format!("eps must lie in (0, 1), got {eps}")));
        }
        Interval::new(1.0 - eps, 1.0 + eps)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Half-width.
    pub fn eps(&self) -> f64 {
        (self.hi - self.lo) / 2.0
    }

    pub fn center(&self) -> f64 {
        (self.hi + self.lo) / 2.0
    }

    /// `lo - slack <= d <= hi + slack`; a negative slack demands an inward margin.
    pub fn contains(&self, d: f64, slack: f64) -> bool {
        self.lo - slack <= d && d <= self.hi + slack
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;
    fn try_from(a: [f64; 2]) -> Result<Self> {
        Interval::new(a[0], a[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

/// Finite subgraph of the forbidden-interval distance graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointGraph {
    pub points: Vec<PlanePoint>,
    /// Sorted pairs `(i, j)` with `i < j`.
    pub edges: Vec<[usize; 2]>,
    pub norm: Norm,
    pub interval: Interval,
    pub provenance: String,
}

impl PointGraph {
    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        adjacency(self.points.len(), &self.edges)
    }

    /// Edges whose measured distance falls outside the interval widened by `slack`.
    pub fn invalid_edges(&self, slack: f64) -> Vec<[usize; 2]> {
        self.edges
            .iter()
            .copied()
            .filter(|&[i, j]| !self.interval.contains(self.norm.dist(self.points[i], self.points[j]), slack))
            .collect()
    }

    /// The subgraph of edges clearing the inward `margin`, for lower-bound claims.
    pub fn strict_subgraph(&self, margin: f64) -> PointGraph {
        let mut g = self.clone();
        g.edges.retain(|&[i, j]| self.interval.contains(self.norm.dist(self.points[i], self.points[j]), -margin));
        g
    }

    /// Largest norm distance between consecutive points of the index range
    /// `start..start + count`, treated cyclically.
    pub fn max_cyclic_gap(&self, start: usize, count: usize) -> f64 {
        (0..count)
            .map(|k| {
                let a = self.points[start + k];
                let b = self.points[start + (k + 1) % count];
                self.norm.dist(a, b)
            })
            .fold(0.0, f64::max)
    }
}

pub fn adjacency(n: usize, edges: &[[usize; 2]]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &[i, j] in edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    adj
}

/// Distance graph with the closed interval widened outward by `TAU_GEO`.
pub fn build_point_graph(points: Vec<PlanePoint>, norm: &Norm, interval: Interval) -> PointGraph {
    build_point_graph_with(points, norm, interval, TAU_GEO, String::from("points"))
}

pub fn build_point_graph_with(
    points: Vec<PlanePoint>,
    norm: &Norm,
    interval: Interval,
    slack: f64,
    provenance: String,
) -> PointGraph {
    let edges: Vec<[usize; 2]> = (0..points.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let pts = &points;
            (i + 1..pts.len())
                .filter(move |&j| interval.contains(norm.dist(pts[i], pts[j]), slack))
                .map(move |j| [i, j])
        })
        .collect();
    PointGraph { points, edges, norm: norm.clone(), interval, provenance }
}

/// `count` points of `T1(center)` at Euclidean angles `2πk / count`.
pub fn discretize_circle(norm: &Norm, center: PlanePoint, count: usize) -> Result<Vec<PlanePoint>> {
    if count < 3 {
        return Err(Error::Config(format!("circle discretization needs at least 3 points, got {count}")));
    }
    Ok((0..count).map(|k| norm.unit_circle_point(center, 2.0 * PI * k as f64 / count as f64)).collect())
}

/// Two discretized unit circles centered at `(0, 0)` and `(s, 0)`; vertices
/// `0..count` lie on the first circle and `count..2 count` on the second.
pub fn build_bicycle(norm: &Norm, s: f64, count: usize, interval: Interval) -> Result<PointGraph> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Config(format!("bicycle offset must be positive, got {s}")));
    }
    let mut points = discretize_circle(norm, PlanePoint::ORIGIN, count)?;
    points.extend(discretize_circle(norm, PlanePoint::new(s, 0.0), count)?);
    let provenance = format!(
        "bicycle s={s} eps={} count={count} center_dist={}",
        interval.eps(),
        norm.eval(PlanePoint::new(s, 0.0))
    );
    Ok(build_point_graph_with(points, norm, interval, TAU_GEO, provenance))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_validation() {
        assert!(Interval::new(0.0, 1.0).is_err());
        assert!(Interval::new(1.2, 1.0).is_err());
        assert!(Interval::around_unit(0.0).is_err());
        let i = Interval::around_unit(0.05).unwrap();
        assert!((i.eps() - 0.05).abs() < 1e-15);
        assert!(serde_json::from_str::<Interval>("[2.0, 1.0]").is_err());
    }

    #[test]
    fn equilateral_triangle_is_k3() {
        let pts = vec![PlanePoint::new(0.0, 0.0), PlanePoint::new(1.0, 0.0), PlanePoint::new(0.5, 3f64.sqrt() / 2.0)];
        let g = build_point_graph(pts, &Norm::euclidean(), Interval::new(0.9, 1.1).unwrap());
        assert_eq!(g.edges, vec![[0, 1], [0, 2], [1, 2]]);
    }

    #[test]
    fn unit_square_drops_diagonals() {
        let pts = vec![
            PlanePoint::new(0.0, 0.0),
            PlanePoint::new(1.0, 0.0),
            PlanePoint::new(1.0, 1.0),
            PlanePoint::new(0.0, 1.0),
        ];
        let g = build_point_graph(pts, &Norm::euclidean(), Interval::new(0.99, 1.01).unwrap());
        assert_eq!(g.edges, vec![[0, 1], [0, 3], [1, 2], [2, 3]]);
    }

    #[test]
    fn circle_of_four() {
        let pts = discretize_circle(&Norm::euclidean(), PlanePoint::ORIGIN, 4).unwrap();
        let expect = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        for (p, (x, y)) in pts.iter().zip(expect) {
            assert!((*p - PlanePoint::new(x, y)).euclid() < 1e-15);
        }
        assert!(discretize_circle(&Norm::euclidean(), PlanePoint::ORIGIN, 2).is_err());
    }

    #[test]
    fn euclidean_circle_spacing_bound() {
        let n = 360;
        let pts = discretize_circle(&Norm::euclidean(), PlanePoint::ORIGIN, n).unwrap();
        let bound = 2.0 * PI * (1.0 + TAU_GEO) / n as f64;
        for k in 0..n {
            assert!((pts[k] - pts[(k + 1) % n]).euclid() < bound);
        }
    }

    #[test]
    fn far_bicycle_has_no_cross_edges() {
        let g = build_bicycle(&Norm::euclidean(), 4.0, 90, Interval::around_unit(0.3).unwrap()).unwrap();
        assert!(g.edges.iter().all(|&[i, j]| (i < 90) == (j < 90)));
        assert!(g.provenance.contains("s=4"));
    }

    #[test]
    fn strict_subgraph_drops_boundary_pairs() {
        let pts = vec![PlanePoint::new(0.0, 0.0), PlanePoint::new(1.1, 0.0)];
        let g = build_point_graph(pts, &Norm::euclidean(), Interval::new(0.9, 1.1).unwrap());
        assert_eq!(g.edges.len(), 1);
        assert!(g.strict_subgraph(TAU_MARGIN).edges.is_empty());
    }
}
