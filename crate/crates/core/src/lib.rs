pub mod circle_index;
pub mod coloring;
pub mod error;
pub mod graph;
pub mod hex;
pub mod hex_bound;
pub mod job;
pub mod norm;
pub mod point;
pub mod polygon;
pub mod render;
pub mod sat;
pub mod sweep;

pub use error::{Error, Result};
pub use graph::{Interval, PointGraph};
pub use norm::{Norm, NormSpec};
pub use point::{PlanePoint, TAU_GEO};
