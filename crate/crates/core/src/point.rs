use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Tolerance used by every geometric comparison in the crate.
pub const TAU_GEO: f64 = 1e-9;

/// A point (or vector) of the plane. Serialized as `[x, y]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub const ORIGIN: PlanePoint = PlanePoint { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        PlanePoint { x, y }
    }

    pub fn from_angle(theta: f64) -> Self {
        PlanePoint::new(theta.cos(), theta.sin())
    }

    pub fn dot(self, o: PlanePoint) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-d cross product.
    pub fn cross(self, o: PlanePoint) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn euclid(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn perp(self) -> PlanePoint {
        PlanePoint::new(-self.y, self.x)
    }

    pub fn lerp(self, o: PlanePoint, t: f64) -> PlanePoint {
        self + (o - self) * t
    }
}

impl From<[f64; 2]> for PlanePoint {
    fn from(a: [f64; 2]) -> Self {
        PlanePoint::new(a[0], a[1])
    }
}

impl From<PlanePoint> for [f64; 2] {
    fn from(p: PlanePoint) -> Self {
        [p.x, p.y]
    }
}

impl Add for PlanePoint {
    type Output = PlanePoint;
    fn add(self, o: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for PlanePoint {
    type Output = PlanePoint;
    fn sub(self, o: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for PlanePoint {
    type Output = PlanePoint;
    fn neg(self) -> PlanePoint {
        PlanePoint::new(-self.x, -self.y)
    }
}

impl Mul<f64> for PlanePoint {
    type Output = PlanePoint;
    fn mul(self, s: f64) -> PlanePoint {
        PlanePoint::new(self.x * s, self.y * s)
    }
}
