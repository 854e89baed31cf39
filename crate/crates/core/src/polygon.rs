//! Norm distances between convex polygons.

use serde::{Deserialize, Serialize};

use crate::norm::Norm;
use crate::point::{PlanePoint, TAU_GEO};

const GOLDEN_ITERS: usize = 100;

/// Convex polygon with counterclockwise vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon {
    pub vertices: Vec<PlanePoint>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<PlanePoint>) -> Self {
        ConvexPolygon { vertices }
    }

    /// Convex hull of arbitrary points (monotone chain).
    pub fn hull(mut pts: Vec<PlanePoint>) -> Self {
        pts.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap().then(a.y.partial_cmp(&b.y).unwrap()));
        pts.dedup();
        if pts.len() < 3 {
            return ConvexPolygon { vertices: pts };
        }
        let mut lower: Vec<PlanePoint> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2
                && (lower[lower.len() - 1] - lower[lower.len() - 2]).cross(p - lower[lower.len() - 1]) <= 0.0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<PlanePoint> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2
                && (upper[upper.len() - 1] - upper[upper.len() - 2]).cross(p - upper[upper.len() - 1]) <= 0.0
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        ConvexPolygon { vertices: lower }
    }

    pub fn translate(&self, by: PlanePoint) -> Self {
        ConvexPolygon { vertices: self.vertices.iter().map(|&v| v + by).collect() }
    }

    pub fn edges(&self) -> impl Iterator<Item = (PlanePoint, PlanePoint)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Whether `p` lies in the closed polygon, up to `TAU_GEO`.
    pub fn contains(&self, p: PlanePoint) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => (self.vertices[0] - p).euclid() <= TAU_GEO,
            2 => segment_euclid_dist(p, self.vertices[0], self.vertices[1]) <= TAU_GEO,
            _ => self.edges().all(|(a, b)| {
                let e = b - a;
                e.cross(p - a) >= -TAU_GEO * e.euclid()
            }),
        }
    }

    /// Largest norm distance between two of its points.
    pub fn diameter(&self, norm: &Norm) -> f64 {
        max_dist(self, self, norm)
    }
}

/// Largest norm distance between a point of `a` and a point of `b`; attained
/// at a vertex pair because a norm is convex.
pub fn max_dist(a: &ConvexPolygon, b: &ConvexPolygon, norm: &Norm) -> f64 {
    a.vertices.iter().flat_map(|&p| b.vertices.iter().map(move |&q| norm.dist(p, q))).fold(0.0, f64::max)
}

/// Smallest norm distance between a point of `a` and a point of `b`.
///
/// The minimum of `||x||` over the Minkowski difference `a - b`: zero when the
/// origin lies inside it, otherwise attained on one of its edges, each of
/// which is a vertex of one polygon against an edge of the other.
pub fn min_dist(a: &ConvexPolygon, b: &ConvexPolygon, norm: &Norm) -> f64 {
    let diffs: Vec<PlanePoint> = a.vertices.iter().flat_map(|&p| b.vertices.iter().map(move |&q| p - q)).collect();
    let diff = ConvexPolygon::hull(diffs);
    if diff.contains(PlanePoint::ORIGIN) {
        return 0.0;
    }
    if diff.vertices.len() == 1 {
        return norm.eval(diff.vertices[0]);
    }
    diff.edges().map(|(p, q)| min_on_segment(p, q, norm)).fold(f64::INFINITY, f64::min)
}

/// Minimum of the norm over the segment `p..q`.
pub fn min_on_segment(p: PlanePoint, q: PlanePoint, norm: &Norm) -> f64 {
    if norm.is_euclidean() {
        return segment_euclid_dist(PlanePoint::ORIGIN, p, q);
    }
    // The norm restricted to a segment is convex: golden-section search.
    let f = |t: f64| norm.eval(p.lerp(q, t));
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..GOLDEN_ITERS {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2).min(f(0.0)).min(f(1.0))
}

fn segment_euclid_dist(p: PlanePoint, a: PlanePoint, b: PlanePoint) -> f64 {
    let e = b - a;
    let len2 = e.dot(e);
    if len2 == 0.0 {
        return (p - a).euclid();
    }
    let t = ((p - a).dot(e) / len2).clamp(0.0, 1.0);
    (p - a.lerp(b, t)).euclid()
}
