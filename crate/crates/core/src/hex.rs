//! Regular hexagonal tilings with the classic 7-coloring, and tile graphs.
//!
//! Hexagons are pointy-top and addressed by axial coordinates `(q, r)`; the
//! center of `(q, r)` is `R * (√3 (q + r/2), 3r/2)` for circumradius `R`. The
//! tile `(q, r)` gets color `(q + 3r) mod 7 + 1`, so each tile and its six
//! neighbors use all seven colors and same-colored tiles form the lattice
//! spanned by the axial offsets `(1, 2)` and `(3, -1)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Interval;
use crate::norm::Norm;
use crate::point::{PlanePoint, TAU_GEO};
use crate::polygon::{max_dist, min_dist, ConvexPolygon};

pub const HEX_COLORS: u8 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Axial {
    pub q: i32,
    pub r: i32,
}

impl Axial {
    pub const fn new(q: i32, r: i32) -> Self {
        Axial { q, r }
    }

    /// Hex distance to the origin tile.
    pub fn ring(self) -> u32 {
        self.q.unsigned_abs().max(self.r.unsigned_abs()).max((self.q + self.r).unsigned_abs())
    }

    pub fn neighbors(self) -> [Axial; 6] {
        const DIRS: [(i32, i32); 6] = [(1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1)];
        DIRS.map(|(dq, dr)| Axial::new(self.q + dq, self.r + dr))
    }
}

/// Color in `1..=7` of the classic pattern.
pub fn hex_color(a: Axial) -> u8 {
    ((a.q + 3 * a.r).rem_euclid(HEX_COLORS as i32)) as u8 + 1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HexTile {
    pub q: i32,
    pub r: i32,
    pub color: u8,
}

impl HexTile {
    pub fn axial(&self) -> Axial {
        Axial::new(self.q, self.r)
    }
}

/// A finite patch of the 7-colored tessellation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HexTiling {
    /// Hexagon diameter (vertex to opposite vertex).
    pub scale: f64,
    pub rings: u32,
    /// Counterclockwise rotation of the whole pattern, in radians.
    #[serde(default)]
    pub rotation: f64,
    /// All tiles with `ring() <= rings`, ordered by `(q, r)`.
    pub tiles: Vec<HexTile>,
}

pub fn build_hex_tiling(scale: f64, rings: u32) -> Result<HexTiling> {
    build_rotated_hex_tiling(scale, rings, 0.0)
}

pub fn build_rotated_hex_tiling(scale: f64, rings: u32, rotation: f64) -> Result<HexTiling> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Config(format!("hexagon diameter must be positive, got {scale}")));
    }
    if !rotation.is_finite() {
        return Err(Error::Config(format!("rotation must be finite, got {rotation}")));
    }
    let r = rings as i32;
    let mut tiles = Vec::new();
    for q in -r..=r {
        for rr in (-r).max(-q - r)..=r.min(-q + r) {
            let a = Axial::new(q, rr);
            tiles.push(HexTile { q, r: rr, color: hex_color(a) });
        }
    }
    Ok(HexTiling { scale, rings, rotation, tiles })
}

impl HexTiling {
    pub fn circumradius(&self) -> f64 {
        self.scale / 2.0
    }

    pub fn center(&self, a: Axial) -> PlanePoint {
        let r = self.circumradius();
        let (x, y) = (r * 3f64.sqrt() * (a.q as f64 + a.r as f64 / 2.0), r * 1.5 * a.r as f64);
        let (sin, cos) = self.rotation.sin_cos();
        PlanePoint::new(cos * x - sin * y, sin * x + cos * y)
    }

    /// Closed hexagon of tile `a`.
    pub fn polygon(&self, a: Axial) -> ConvexPolygon {
        self.prototype().translate(self.center(a))
    }

    /// The hexagon centered at the origin.
    pub fn prototype(&self) -> ConvexPolygon {
        let r = self.circumradius();
        ConvexPolygon::new(
            (0..6).map(|i| PlanePoint::from_angle(self.rotation + PI / 6.0 + PI / 3.0 * i as f64) * r).collect(),
        )
    }

    pub fn index_of(&self, a: Axial) -> Option<usize> {
        self.tiles.binary_search_by(|t| (t.q, t.r).cmp(&(a.q, a.r))).ok()
    }
}

/// Adjacency between tiles: some pair of their points lies at a distance in
/// `interval`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TileGraph {
    pub tiles: Vec<Axial>,
    pub edges: Vec<[usize; 2]>,
    /// Tiles containing a pair of their own points at a forbidden distance.
    pub self_conflicts: Vec<usize>,
    /// The shrunk interval `[c - (eps - 2h), c + (eps - 2h)]` used for the edges.
    pub interval: Interval,
    pub h: f64,
}

/// Tile graph of `tiling` for the interval shrunk by `2h`: a proper coloring
/// of the plane for `interval` yields a proper tile coloring for the shrunk
/// interval, so lower bounds on this graph transfer back.
pub fn tile_graph(tiling: &HexTiling, norm: &Norm, interval: Interval, h: f64) -> Result<TileGraph> {
    let eps = interval.eps();
    if !(h > 0.0 && 2.0 * h < eps) {
        return Err(Error::Precondition(format!("tile diameter bound needs 0 < 2h < eps, got h = {h}, eps = {eps}")));
    }
    let proto = tiling.prototype();
    let diam = proto.diameter(norm);
    if diam > h + TAU_GEO {
        return Err(Error::Precondition(format!("tile diameter {diam} exceeds h = {h}")));
    }
    let shrunk = Interval::new(interval.center() - (eps - 2.0 * h), interval.center() + (eps - 2.0 * h))?;
    let pieces: Vec<ConvexPolygon> = tiling.tiles.iter().map(|t| tiling.polygon(t.axial())).collect();
    let centers: Vec<PlanePoint> = tiling.tiles.iter().map(|t| tiling.center(t.axial())).collect();
    let reach = shrunk.hi() * norm.max_euclid_radius() + 2.0 * tiling.circumradius();
    let mut edges = Vec::new();
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            if (centers[i] - centers[j]).euclid() > reach + TAU_GEO {
                continue;
            }
            if min_dist(&pieces[i], &pieces[j], norm) <= shrunk.hi() + TAU_GEO
                && max_dist(&pieces[i], &pieces[j], norm) >= shrunk.lo() - TAU_GEO
            {
                edges.push([i, j]);
            }
        }
    }
    let self_conflicts = if diam >= shrunk.lo() - TAU_GEO { (0..pieces.len()).collect() } else { Vec::new() };
    Ok(TileGraph {
        tiles: tiling.tiles.iter().map(|t| t.axial()).collect(),
        edges,
        self_conflicts,
        interval: shrunk,
        h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn central_patch_uses_seven_colors() {
        let t = build_hex_tiling(1.0, 1).unwrap();
        assert_eq!(t.tiles.len(), 7);
        let mut colors: Vec<u8> = t.tiles.iter().map(|t| t.color).collect();
        colors.sort_unstable();
        assert_eq!(colors, vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn neighbors_always_differ() {
        let t = build_hex_tiling(0.3, 6).unwrap();
        for tile in &t.tiles {
            let mut seen = vec![tile.color];
            for n in tile.axial().neighbors() {
                let c = hex_color(n);
                assert_ne!(c, tile.color);
                seen.push(c);
            }
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len(), 7);
        }
    }

    #[test]
    fn ring_counts() {
        for rings in 0..6u32 {
            let t = build_hex_tiling(1.0, rings).unwrap();
            assert_eq!(t.tiles.len() as u32, 3 * rings * (rings + 1) + 1);
            assert!(t.tiles.iter().all(|x| x.axial().ring() <= rings));
        }
        assert!(build_hex_tiling(0.0, 1).is_err());
    }

    #[test]
    fn geometry_of_unit_diameter_hexagon() {
        let t = build_hex_tiling(1.0, 1).unwrap();
        let e = Norm::euclidean();
        assert!((t.prototype().diameter(&e) - 1.0).abs() < 1e-12);
        // Neighboring tiles share an edge.
        let a = t.polygon(Axial::new(0, 0));
        let b = t.polygon(Axial::new(1, 0));
        assert!(min_dist(&a, &b, &e) < 1e-9);
        assert_eq!(t.index_of(Axial::new(0, 0)), Some(3));
    }

    #[test]
    fn rotation_preserves_euclidean_geometry() {
        let e = Norm::euclidean();
        let a = build_hex_tiling(1.0, 2).unwrap();
        let b = build_rotated_hex_tiling(1.0, 2, 0.4).unwrap();
        let p = Axial::new(1, 2);
        assert!((a.center(p).euclid() - b.center(p).euclid()).abs() < 1e-12);
        assert!((b.prototype().diameter(&e) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tile_graph_rejects_coarse_tiles() {
        let t = build_hex_tiling(0.05, 2).unwrap();
        let e = Norm::euclidean();
        let i = Interval::around_unit(0.05).unwrap();
        assert!(matches!(tile_graph(&t, &e, i, 0.03), Err(Error::Precondition(_))));
        // h large enough for the hypothesis but below the tile diameter.
        let t = build_hex_tiling(0.02, 2).unwrap();
        assert!(matches!(tile_graph(&t, &e, i, 0.01), Err(Error::Precondition(_))));
    }
}
