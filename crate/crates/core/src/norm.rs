//! Minkowski norms of the plane.
//!
//! A norm is described by its unit ball: the Euclidean disk, a centrally
//! symmetric convex polygon, or a strictly convex smoothing of such a polygon.
//! [`NormSpec`] is the serialized description and [`Norm`] the validated,
//! precomputed evaluator.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::{PlanePoint, TAU_GEO};

/// Sample count of the bracketing scan in [`Norm::circle_intersection`].
pub const INTERSECTION_SCAN: usize = 1024;
/// Bisection tolerance on the angle parameter.
pub const INTERSECTION_THETA_TOL: f64 = 1e-11;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum NormSpec {
    Euclidean {},
    /// Unit ball given by its boundary vertices, counterclockwise.
    Polygonal {
        vertices: Vec<PlanePoint>,
    },
    /// Strictly convex approximation of the polygonal norm with the same
    /// vertices, within factor `1 - delta`.
    Smoothed {
        vertices: Vec<PlanePoint>,
        delta: f64,
    },
}

impl NormSpec {
    /// The unit square `max(|x|, |y|)`.
    pub fn square() -> Self {
        NormSpec::Polygonal {
            vertices: vec![
                PlanePoint::new(1.0, 1.0),
                PlanePoint::new(-1.0, 1.0),
                PlanePoint::new(-1.0, -1.0),
                PlanePoint::new(1.0, -1.0),
            ],
        }
    }

    /// Regular `2m`-gon with a vertex on the positive x-axis.
    pub fn regular_polygon(half_count: usize) -> Self {
        let m = 2 * half_count;
        let vertices = (0..m).map(|i| PlanePoint::from_angle(2.0 * PI * i as f64 / m as f64)).collect();
        NormSpec::Polygonal { vertices }
    }
}

/// Polygon facets: outward unit normals and support values, edge `i` joining
/// vertex `i` to vertex `i + 1`.
#[derive(Clone, Debug)]
struct Facets {
    vertices: Vec<PlanePoint>,
    normals: Vec<PlanePoint>,
    support: Vec<f64>,
}

impl Facets {
    fn new(vertices: &[PlanePoint]) -> Result<Self> {
        let m = vertices.len();
        if m < 4 || !m.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "a symmetric unit ball needs an even number (>= 4) of vertices, got {m}"
            )));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("non-finite unit-ball vertex".into()));
        }
        let scale = vertices.iter().map(|v| v.euclid()).fold(0.0, f64::max);
        let area2: f64 = (0..m).map(|i| vertices[i].cross(vertices[(i + 1) % m])).sum();
        if area2 <= TAU_GEO * scale * scale {
            return Err(Error::Config("unit ball must be counterclockwise with nonzero area".into()));
        }
        for i in 0..m {
            let a = vertices[i];
            let b = vertices[(i + 1) % m];
            let c = vertices[(i + 2) % m];
            if (b - a).cross(c - b) <= TAU_GEO * scale * scale {
                return Err(Error::Config(format!("unit ball is not strictly convex at vertex {}", (i + 1) % m)));
            }
            let opposite = vertices[(i + m / 2) % m];
            if (opposite + a).euclid() > TAU_GEO * scale.max(1.0) {
                return Err(Error::Config(format!("unit ball is not centrally symmetric at vertex {i}")));
            }
        }
        let mut normals = Vec::with_capacity(m);
        let mut support = Vec::with_capacity(m);
        for i in 0..m {
            let a = vertices[i];
            let b = vertices[(i + 1) % m];
            let e = b - a;
            let n = PlanePoint::new(e.y, -e.x) * (1.0 / e.euclid());
            normals.push(n);
            support.push(n.dot(a));
        }
        Ok(Facets { vertices: vertices.to_vec(), normals, support })
    }

    fn eval(&self, p: PlanePoint) -> f64 {
        self.normals.iter().zip(&self.support).map(|(n, h)| n.dot(p) / h).fold(0.0, f64::max)
    }

    /// Exterior turning angle at vertex `i`.
    fn turn(&self, i: usize) -> f64 {
        let m = self.normals.len();
        let a = self.normals[(i + m - 1) % m];
        let b = self.normals[i];
        a.cross(b).atan2(a.dot(b))
    }
}

/// One boundary piece of a smoothed ball: a circular arc over the chord
/// `start -> end`, bulging away from the origin.
#[derive(Clone, Debug)]
struct BoundaryArc {
    start: PlanePoint,
    end: PlanePoint,
    center: PlanePoint,
    radius: f64,
}

/// Strictly convex ball squeezed between `(1 - delta) P` and `P`.
///
/// The polygon is shrunk by `1 - delta/2` and every edge of the shrunk
/// polygon is replaced by a circular arc. The sagitta is bounded by the gap
/// `(delta/2) * min support` so the arc stays inside `P`, and by a quarter of
/// the smaller adjacent turning angle so consecutive arcs still meet convexly.
#[derive(Clone, Debug)]
struct SmoothBall {
    arcs: Vec<BoundaryArc>,
}

impl SmoothBall {
    fn new(facets: &Facets, delta: f64) -> Self {
        let m = facets.vertices.len();
        let shrink = 1.0 - delta / 2.0;
        let gap = (1.0 - shrink) * facets.support.iter().cloned().fold(f64::INFINITY, f64::min);
        let arcs = (0..m)
            .map(|i| {
                let start = facets.vertices[i] * shrink;
                let end = facets.vertices[(i + 1) % m] * shrink;
                let half_chord = (end - start).euclid() / 2.0;
                let deviation = facets.turn(i).min(facets.turn((i + 1) % m)) / 4.0;
                let sagitta = gap.min(half_chord * (deviation / 2.0).tan());
                let radius = (half_chord * half_chord + sagitta * sagitta) / (2.0 * sagitta);
                let mid = start.lerp(end, 0.5);
                let center = mid - facets.normals[i] * (radius - sagitta);
                BoundaryArc { start, end, center, radius }
            })
            .collect();
        SmoothBall { arcs }
    }

    fn eval(&self, p: PlanePoint) -> f64 {
        let len = p.euclid();
        if len == 0.0 {
            return 0.0;
        }
        let d = p * (1.0 / len);
        let arc = self.arcs.iter().find(|a| a.start.cross(d) >= 0.0 && d.cross(a.end) > 0.0).unwrap_or(&self.arcs[0]);
        // Exit point of the ray from the origin through the arc's disk.
        let dc = d.dot(arc.center);
        let disc = (dc * dc - arc.center.dot(arc.center) + arc.radius * arc.radius).max(0.0);
        let t = dc + disc.sqrt();
        len / t
    }
}

#[derive(Clone, Debug)]
enum Ball {
    Euclidean,
    Polygonal(Facets),
    Smoothed { facets: Facets, ball: SmoothBall },
}

/// A validated norm.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "NormSpec", into = "NormSpec")]
pub struct Norm {
    spec: NormSpec,
    ball: Ball,
}

impl PartialEq for Norm {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl TryFrom<NormSpec> for Norm {
    type Error = Error;

    fn try_from(spec: NormSpec) -> Result<Self> {
        let ball = match &spec {
            NormSpec::Euclidean {} => Ball::Euclidean,
            NormSpec::Polygonal { vertices } => Ball::Polygonal(Facets::new(vertices)?),
            NormSpec::Smoothed { vertices, delta } => {
                if !(*delta > 0.0 && *delta < 1.0) {
                    return Err(Error::Config(format!("smoothing parameter must lie in (0, 1), got {delta}")));
                }
                let facets = Facets::new(vertices)?;
                let ball = SmoothBall::new(&facets, *delta);
                Ball::Smoothed { facets, ball }
            }
        };
        Ok(Norm { spec, ball })
    }
}

impl From<Norm> for NormSpec {
    fn from(n: Norm) -> Self {
        n.spec
    }
}

impl Norm {
    pub fn new(spec: NormSpec) -> Result<Self> {
        Norm::try_from(spec)
    }

    pub fn euclidean() -> Self {
        Norm { spec: NormSpec::Euclidean {}, ball: Ball::Euclidean }
    }

    pub fn spec(&self) -> &NormSpec {
        &self.spec
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self.ball, Ball::Euclidean)
    }

    pub fn is_strictly_convex(&self) -> bool {
        !matches!(self.ball, Ball::Polygonal(_))
    }

    pub fn eval(&self, p: PlanePoint) -> f64 {
        match &self.ball {
            Ball::Euclidean => p.euclid(),
            Ball::Polygonal(f) => f.eval(p),
            Ball::Smoothed { ball, .. } => ball.eval(p),
        }
    }

    pub fn dist(&self, a: PlanePoint, b: PlanePoint) -> f64 {
        self.eval(a - b)
    }

    /// Euclidean length of the unit-sphere point in direction `theta`.
    pub fn radius(&self, theta: f64) -> f64 {
        1.0 / self.eval(PlanePoint::from_angle(theta))
    }

    /// Largest Euclidean length of a unit vector, so `|p| <= bound * ||p||`.
    pub fn max_euclid_radius(&self) -> f64 {
        match &self.ball {
            Ball::Euclidean => 1.0,
            Ball::Polygonal(f) | Ball::Smoothed { facets: f, .. } => {
                f.vertices.iter().map(|v| v.euclid()).fold(0.0, f64::max)
            }
        }
    }

    /// Strictly convex approximation G of this polygonal norm H with
    /// `(1 - delta) G <= H <= G`.
    pub fn strict_convex_approx(&self, delta: f64) -> Result<Norm> {
        match &self.spec {
            NormSpec::Polygonal { vertices } => Norm::new(NormSpec::Smoothed { vertices: vertices.clone(), delta }),
            _ => Err(Error::Config("smoothing applies to polygonal norms only".into())),
        }
    }

    /// The point of the unit circle about `center` in Euclidean direction `theta`.
    pub fn unit_circle_point(&self, center: PlanePoint, theta: f64) -> PlanePoint {
        let d = PlanePoint::from_angle(theta);
        center + d * (1.0 / self.eval(d))
    }

    /// The two points of `T1(u) ∩ T1(v)`, the one left of the directed line
    /// `u -> v` first.
    pub fn circle_intersection(&self, u: PlanePoint, v: PlanePoint) -> Result<[PlanePoint; 2]> {
        let d = self.dist(u, v);
        if d <= TAU_GEO {
            return Err(Error::Degenerate("coincident circle centers".into()));
        }
        if d >= 2.0 - TAU_GEO {
            return Err(Error::Degenerate(format!("unit circles at center distance {d} meet in at most one point")));
        }
        let g = |theta: f64| self.dist(self.unit_circle_point(u, theta), v) - 1.0;
        let step = 2.0 * PI / INTERSECTION_SCAN as f64;
        let mut roots = Vec::new();
        let mut prev = g(0.0);
        for i in 1..=INTERSECTION_SCAN {
            let theta = step * i as f64;
            let cur = g(theta);
            if prev == 0.0 {
                roots.push(theta - step);
            } else if prev * cur < 0.0 {
                roots.push(bisect(&g, theta - step, theta, prev));
            }
            prev = cur;
        }
        if roots.len() != 2 {
            return Err(Error::Degenerate(format!("expected two intersection points, found {}", roots.len())));
        }
        let mut pts = [self.unit_circle_point(u, roots[0]), self.unit_circle_point(u, roots[1])];
        if (v - u).cross(pts[0] - u) < (v - u).cross(pts[1] - u) {
            pts.swap(0, 1);
        }
        Ok(pts)
    }
}

fn bisect(g: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, g_lo: f64) -> f64 {
    let lo_sign = g_lo.signum();
    for _ in 0..200 {
        if hi - lo <= INTERSECTION_THETA_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if gm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Norm {
        Norm::new(NormSpec::square()).unwrap()
    }

    #[test]
    fn euclidean_pythagorean() {
        assert_eq!(Norm::euclidean().eval(PlanePoint::new(3.0, 4.0)), 5.0);
    }

    #[test]
    fn square_vertex_has_unit_norm() {
        assert!((square().eval(PlanePoint::new(1.0, 1.0)) - 1.0).abs() < 1e-15);
        assert!((square().eval(PlanePoint::new(-0.5, 2.0)) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_malformed_balls() {
        let not_symmetric = NormSpec::Polygonal {
            vertices: vec![
                PlanePoint::new(1.0, 0.0),
                PlanePoint::new(0.0, 1.0),
                PlanePoint::new(-1.0, 0.0),
                PlanePoint::new(0.0, -2.0),
            ],
        };
        assert!(matches!(Norm::new(not_symmetric), Err(Error::Config(_))));
        let clockwise = NormSpec::Polygonal {
            vertices: vec![
                PlanePoint::new(1.0, 1.0),
                PlanePoint::new(1.0, -1.0),
                PlanePoint::new(-1.0, -1.0),
                PlanePoint::new(-1.0, 1.0),
            ],
        };
        assert!(Norm::new(clockwise).is_err());
        let odd = NormSpec::Polygonal { vertices: vec![PlanePoint::new(1.0, 0.0); 3] };
        assert!(Norm::new(odd).is_err());
        // A non-convex symmetric hexagon.
        let dent = NormSpec::Polygonal {
            vertices: vec![
                PlanePoint::new(1.0, 0.0),
                PlanePoint::new(0.1, 0.1),
                PlanePoint::new(-1.0, 1.0),
                PlanePoint::new(-1.0, 0.0),
                PlanePoint::new(-0.1, -0.1),
                PlanePoint::new(1.0, -1.0),
            ],
        };
        assert!(Norm::new(dent).is_err());
    }

    #[test]
    fn smoothing_delta_range() {
        assert!(square().strict_convex_approx(0.0).is_err());
        assert!(square().strict_convex_approx(1.0).is_err());
        assert!(Norm::euclidean().strict_convex_approx(0.1).is_err());
        let g = square().strict_convex_approx(0.1).unwrap();
        assert!(matches!(g.spec(), NormSpec::Smoothed { .. }));
        assert!(g.is_strictly_convex());
    }

    #[test]
    fn smoothed_sandwich_on_axis() {
        let h = square();
        let g = h.strict_convex_approx(0.1).unwrap();
        let x = PlanePoint::new(1.0, 0.0);
        let (gx, hx) = (g.eval(x), h.eval(x));
        assert!(0.9 * gx <= hx && hx <= gx, "G={gx} H={hx}");
    }

    #[test]
    fn unit_circle_points() {
        let e = Norm::euclidean().unit_circle_point(PlanePoint::ORIGIN, 0.0);
        assert!((e - PlanePoint::new(1.0, 0.0)).euclid() < 1e-15);
        let s = square().unit_circle_point(PlanePoint::ORIGIN, PI / 4.0);
        assert!((s - PlanePoint::new(1.0, 1.0)).euclid() < 1e-12);
    }

    #[test]
    fn euclidean_lens() {
        let [l, r] = Norm::euclidean().circle_intersection(PlanePoint::ORIGIN, PlanePoint::new(1.0, 0.0)).unwrap();
        let h = 3f64.sqrt() / 2.0;
        assert!((l - PlanePoint::new(0.5, h)).euclid() < 1e-9);
        assert!((r - PlanePoint::new(0.5, -h)).euclid() < 1e-9);
    }

    #[test]
    fn tangent_and_coincident_circles_are_degenerate() {
        let e = Norm::euclidean();
        assert!(matches!(
            e.circle_intersection(PlanePoint::ORIGIN, PlanePoint::new(2.0, 0.0)),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(e.circle_intersection(PlanePoint::ORIGIN, PlanePoint::ORIGIN), Err(Error::Degenerate(_))));
    }

    #[test]
    fn spec_json_shapes() {
        let e: NormSpec = serde_json::from_str(r#"{"kind":"euclidean"}"#).unwrap();
        assert_eq!(e, NormSpec::Euclidean {});
        let s: Norm =
            serde_json::from_str(r#"{"kind":"smoothed","vertices":[[1,1],[-1,1],[-1,-1],[1,-1]],"delta":0.1}"#)
                .unwrap();
        assert!(s.is_strictly_convex());
        assert!(serde_json::from_str::<NormSpec>(r#"{"kind":"euclidean","extra":1}"#).is_err());
        assert!(serde_json::from_str::<Norm>(r#"{"kind":"polygonal","vertices":[[1,0]]}"#).is_err());
    }
}
