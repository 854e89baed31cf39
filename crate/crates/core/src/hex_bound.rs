//! Upper-bound certificates for the hexagonal 7-coloring.
//!
//! Tiles are compared through their interiors: a pair of closed tiles at
//! exactly `lo` or `hi` only realizes that distance on boundary points, which
//! may take the color of a neighboring tile. So a tiling passes when every
//! tile diameter is at most `lo` and every same-colored pair of distinct tiles
//! has `max <= lo` or `min >= hi`, all up to `TAU_GEO`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Interval;
use crate::hex::{build_hex_tiling, build_rotated_hex_tiling, Axial, HexTiling};
use crate::norm::Norm;
use crate::point::TAU_GEO;
use crate::polygon::{max_dist, min_dist};

const SCALE_GRID: usize = 64;
const GOLDEN_ITERS: usize = 80;
const EPS_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TilePair {
    pub a: Axial,
    pub b: Axial,
    pub min_dist: f64,
    pub max_dist: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HexCertificate {
    pub pass: bool,
    pub scale: f64,
    #[serde(default)]
    pub rotation: f64,
    pub interval: Interval,
    pub rings: u32,
    pub tile_diameter: f64,
    /// Smallest distance between distinct same-colored tiles.
    pub min_same_color_gap: f64,
    /// Same-colored pairs checked.
    pub pairs_checked: usize,
    /// Smallest slack over all constraints; negative on failure.
    pub margin: f64,
    /// On failure: the straddling pair with the smallest minimum distance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub straddling: Option<TilePair>,
}

/// Rings a tiling needs so that every same-colored tile within reach of the
/// seven central tiles is present.
pub fn required_rings(scale: f64, norm: &Norm, interval: Interval) -> u32 {
    let r = scale / 2.0;
    let reach = interval.hi() * norm.max_euclid_radius() + (2.0 + 3f64.sqrt()) * r;
    (reach / (1.5 * r)).ceil() as u32 + 1
}

pub fn verify_hex_coloring(tiling: &HexTiling, norm: &Norm, interval: Interval) -> Result<HexCertificate> {
    let need = required_rings(tiling.scale, norm, interval);
    if tiling.rings < need {
        return Err(Error::Refused(format!(
            "tiling has {} rings but this interval needs at least {need}",
            tiling.rings
        )));
    }
    let proto = tiling.prototype();
    let diam = proto.diameter(norm);
    let mut margin = interval.lo() - diam;
    let mut gap = f64::INFINITY;
    let mut checked = 0;
    let mut straddling: Option<TilePair> = None;
    // The seven central tiles represent every color class up to translation.
    for rep in tiling.tiles.iter().filter(|t| t.axial().ring() <= 1) {
        let pa = tiling.polygon(rep.axial());
        for other in tiling.tiles.iter().filter(|t| t.color == rep.color && t.axial() != rep.axial()) {
            let pb = tiling.polygon(other.axial());
            let lo_d = min_dist(&pa, &pb, norm);
            let hi_d = max_dist(&pa, &pb, norm);
            checked += 1;
            gap = gap.min(lo_d);
            let slack = (interval.lo() - hi_d).max(lo_d - interval.hi());
            margin = margin.min(slack);
            if slack < -TAU_GEO && straddling.as_ref().is_none_or(|s| lo_d < s.min_dist) {
                straddling = Some(TilePair { a: rep.axial(), b: other.axial(), min_dist: lo_d, max_dist: hi_d });
            }
        }
    }
    Ok(HexCertificate {
        pass: margin >= -TAU_GEO,
        scale: tiling.scale,
        rotation: tiling.rotation,
        interval,
        rings: tiling.rings,
        tile_diameter: diam,
        min_same_color_gap: gap,
        pairs_checked: checked,
        margin,
        straddling,
    })
}

/// Builds a sufficiently large tiling and verifies it.
pub fn verify_at_scale(scale: f64, norm: &Norm, interval: Interval) -> Result<HexCertificate> {
    verify_rotated(scale, 0.0, norm, interval)
}

pub fn verify_rotated(scale: f64, rotation: f64, norm: &Norm, interval: Interval) -> Result<HexCertificate> {
    let tiling = build_rotated_hex_tiling(scale, required_rings(scale, norm, interval), rotation)?;
    verify_hex_coloring(&tiling, norm, interval)
}

/// Distances of the pattern at unit diameter; every distance scales linearly.
#[derive(Clone, Debug)]
pub struct HexProfile {
    /// Norm diameter of a tile of Euclidean diameter 1.
    pub diameter: f64,
    /// `(min, max)` distances from each central tile to its same-colored tiles.
    pub pairs: Vec<(f64, f64)>,
    /// Largest `hi / scale` ratio the pair list covers.
    pub reach: f64,
    pub rotation: f64,
}

impl HexProfile {
    pub fn new(norm: &Norm, reach: f64, rotation: f64) -> Result<Self> {
        let unit = Interval::new(reach, reach)?;
        let tiling = build_rotated_hex_tiling(1.0, required_rings(1.0, norm, unit), rotation)?;
        let diameter = tiling.prototype().diameter(norm);
        let mut pairs = Vec::new();
        for rep in tiling.tiles.iter().filter(|t| t.axial().ring() <= 1) {
            let pa = tiling.polygon(rep.axial());
            for other in tiling.tiles.iter().filter(|t| t.color == rep.color && t.axial() != rep.axial()) {
                let pb = tiling.polygon(other.axial());
                pairs.push((min_dist(&pa, &pb, norm), max_dist(&pa, &pb, norm)));
            }
        }
        Ok(HexProfile { diameter, pairs, reach, rotation })
    }

    /// Smallest same-color gap over the tile diameter.
    pub fn separation_ratio(&self) -> f64 {
        self.pairs.iter().map(|p| p.0).fold(f64::INFINITY, f64::min) / self.diameter
    }

    /// Smallest constraint slack of the pattern at diameter `scale`.
    pub fn margin(&self, scale: f64, interval: Interval) -> f64 {
        debug_assert!(interval.hi() / scale <= self.reach + 1e-12);
        let mut m = interval.lo() - scale * self.diameter;
        for &(lo_d, hi_d) in &self.pairs {
            m = m.min((interval.lo() - scale * hi_d).max(scale * lo_d - interval.hi()));
        }
        m
    }

    /// Best scale for `interval`: coarse grid on `[s_max/4, s_max]` with
    /// `s_max = lo / diameter`, then golden-section refinement.
    pub fn best_scale(&self, interval: Interval) -> (f64, f64) {
        let s_max = interval.lo() / self.diameter;
        let s_min = s_max / 4.0;
        let step = (s_max - s_min) / (SCALE_GRID - 1) as f64;
        let (best_i, _) = (0..SCALE_GRID)
            .map(|i| (i, self.margin(s_min + step * i as f64, interval)))
            .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
        let mut lo = s_min + step * best_i.saturating_sub(1) as f64;
        let mut hi = (s_min + step * (best_i + 1) as f64).min(s_max);
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let mut x1 = hi - phi * (hi - lo);
        let mut x2 = lo + phi * (hi - lo);
        let (mut f1, mut f2) = (self.margin(x1, interval), self.margin(x2, interval));
        for _ in 0..GOLDEN_ITERS {
            if f1 >= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - phi * (hi - lo);
                f1 = self.margin(x1, interval);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + phi * (hi - lo);
                f2 = self.margin(x2, interval);
            }
        }
        let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
        let at_max = self.margin(s_max, interval);
        if at_max > best.1 {
            best = (s_max, at_max);
        }
        best
    }
}

/// Best hexagon diameter for `interval` at a fixed rotation, with its margin.
pub fn best_scale_for(norm: &Norm, interval: Interval, rotation: f64) -> Result<(f64, f64)> {
    let unit_diameter = build_hex_tiling(1.0, 0)?.prototype().diameter(norm);
    let reach = 4.0 * unit_diameter * interval.hi() / interval.lo() + 1.0;
    Ok(HexProfile::new(norm, reach, rotation)?.best_scale(interval))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaxEpsilon {
    pub eps: f64,
    pub scale: f64,
    pub rotation: f64,
    pub separation_ratio: f64,
    /// Full verification at `(eps, scale, rotation)`.
    pub certificate: HexCertificate,
}

/// Largest `eps` for which some hexagon diameter and rotation make the
/// 7-coloring proper for `[1 - eps, 1 + eps]`.
///
/// Bisection on `eps` for each rotation; the Euclidean pattern is rotation
/// invariant, otherwise a grid over `[0, π/3)` is refined around the best cell.
pub fn max_epsilon(norm: &Norm) -> Result<MaxEpsilon> {
    // The scale search goes down to a quarter of lo / diameter, and
    // hi / lo <= 3 for eps <= 0.5.
    let unit_diameter = build_hex_tiling(1.0, 0)?.prototype().diameter(norm);
    let reach = 12.0 * unit_diameter + 1.0;
    let solve = |rotation: f64| -> Result<Option<(f64, f64, HexProfile)>> {
        let profile = HexProfile::new(norm, reach, rotation)?;
        Ok(bisect_eps(&profile)?.map(|(eps, scale)| (eps, scale, profile)))
    };
    let best = if norm.is_euclidean() {
        solve(0.0)?
    } else {
        let step = std::f64::consts::FRAC_PI_3 / ROTATION_GRID as f64;
        let grid: Vec<_> = (0..ROTATION_GRID).into_par_iter().map(|i| solve(step * i as f64)).collect::<Result<_>>()?;
        let (best_i, mut best) =
            grid.into_iter().enumerate().fold((0, None), |acc, (i, x)| if better(&x, &acc.1) { (i, x) } else { acc });
        let (mut lo, mut hi) = (step * (best_i as f64 - 1.0), step * (best_i as f64 + 1.0));
        for _ in 0..ROTATION_REFINE {
            let third = (hi - lo) / 3.0;
            let a = solve(lo + third)?;
            let b = solve(hi - third)?;
            if eps_of(&a) >= eps_of(&b) {
                hi -= third;
            } else {
                lo += third;
            }
            for x in [a, b] {
                if better(&x, &best) {
                    best = x;
                }
            }
        }
        best
    };
    let Some((eps, scale, profile)) = best else {
        return Err(Error::Refused("the hexagonal pattern is not proper for any eps and rotation".into()));
    };
    let certificate = verify_rotated(scale, profile.rotation, norm, Interval::around_unit(eps)?)?;
    Ok(MaxEpsilon { eps, scale, rotation: profile.rotation, separation_ratio: profile.separation_ratio(), certificate })
}

const ROTATION_GRID: usize = 24;
const ROTATION_REFINE: usize = 20;

type Solved = Option<(f64, f64, HexProfile)>;

fn eps_of(x: &Solved) -> f64 {
    x.as_ref().map_or(f64::NEG_INFINITY, |s| s.0)
}

fn better(x: &Solved, than: &Solved) -> bool {
    eps_of(x) > eps_of(than)
}

fn bisect_eps(profile: &HexProfile) -> Result<Option<(f64, f64)>> {
    let feasible = |eps: f64| -> Result<(bool, f64)> {
        let (scale, m) = profile.best_scale(Interval::around_unit(eps)?);
        Ok((m >= -TAU_GEO, scale))
    };
    let (mut lo, mut hi) = (1e-6, 0.5);
    let (ok, mut scale) = feasible(lo)?;
    if !ok {
        return Ok(None);
    }
    while hi - lo > EPS_TOL {
        let mid = 0.5 * (lo + hi);
        let (ok, s) = feasible(mid)?;
        if ok {
            lo = mid;
            scale = s;
        } else {
            hi = mid;
        }
    }
    Ok(Some((lo, scale)))
}
