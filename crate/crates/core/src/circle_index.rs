//! Arc colorings of a unit circle, bichromatic-point indices and the
//! complementary-arc calculus.
//!
//! Positions are Euclidean direction angles about the circle center: the
//! point at position `t` is `norm.unit_circle_point(center, t)`. A transition
//! at `pos` separates the color `left`, just below `pos`, from `right`, just
//! above it.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_point_graph, discretize_circle, Interval, PointGraph};
use crate::norm::Norm;
use crate::point::{PlanePoint, TAU_GEO};

pub const ARC_COLORS: u8 = 3;

/// Counterexamples kept in a report; the total is always counted.
const MAX_REPORTED: usize = 32;

fn check_color(c: u8) -> Result<()> {
    if (1..=ARC_COLORS).contains(&c) {
        Ok(())
    } else {
        Err(Error::Input(format!("arc colors are 1, 2 or 3, got {c}")))
    }
}

/// `+1` if `right ≡ left + 1 (mod 3)`, `-1` otherwise.
pub fn index_of_point(left: u8, right: u8) -> Result<i32> {
    check_color(left)?;
    check_color(right)?;
    if left == right {
        return Err(Error::Input(format!("a bichromatic point needs two colors, got {left} twice")));
    }
    Ok(point_index(left, right))
}

fn point_index(left: u8, right: u8) -> i32 {
    if right % 3 == (left + 1) % 3 {
        1
    } else {
        -1
    }
}

fn third_color(a: u8, b: u8) -> u8 {
    6 - a - b
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Transition {
    pub pos: f64,
    pub left: u8,
    pub right: u8,
}

/// Binds positions to points of `T1(center)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleGeometry {
    pub norm: Norm,
    pub center: PlanePoint,
}

impl CircleGeometry {
    pub fn point(&self, pos: f64) -> PlanePoint {
        self.norm.unit_circle_point(self.center, pos)
    }
}

/// A coloring of the whole circle by finitely many arcs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, try_from = "RawArcColoring")]
pub struct ArcColoring {
    /// Sorted by position in `[0, 2π)`.
    pub transitions: Vec<Transition>,
    /// Color of a coloring without transitions.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<CircleGeometry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArcColoring {
    transitions: Vec<Transition>,
    #[serde(default)]
    color: Option<u8>,
    #[serde(default)]
    geometry: Option<CircleGeometry>,
}

impl TryFrom<RawArcColoring> for ArcColoring {
    type Error = Error;

    fn try_from(raw: RawArcColoring) -> Result<Self> {
        match raw.color {
            None => ArcColoring::new(raw.transitions, raw.geometry),
            Some(c) if raw.transitions.is_empty() => ArcColoring::monochromatic(c, raw.geometry),
            Some(_) => Err(Error::Input("\"color\" is only allowed without transitions".into())),
        }
    }
}

impl ArcColoring {
    pub fn new(transitions: Vec<Transition>, geometry: Option<CircleGeometry>) -> Result<Self> {
        if transitions.is_empty() {
            return Err(Error::Input("a coloring without transitions needs a color".into()));
        }
        for (i, t) in transitions.iter().enumerate() {
            if !(t.pos.is_finite() && (0.0..TAU).contains(&t.pos)) {
                return Err(Error::Input(format!("transition position {} is outside [0, 2π)", t.pos)));
            }
            check_color(t.left)?;
            check_color(t.right)?;
            if t.left == t.right {
                return Err(Error::Input(format!("transition at {} does not change color", t.pos)));
            }
            let next = &transitions[(i + 1) % transitions.len()];
            if i + 1 < transitions.len() && next.pos <= t.pos {
                return Err(Error::Input(format!(
                    "transitions must have strictly increasing positions, {} then {}",
                    t.pos, next.pos
                )));
            }
            if next.left != t.right {
                return Err(Error::Input(format!(
                    "color {} after {} does not match color {} before {}",
                    t.right, t.pos, next.left, next.pos
                )));
            }
        }
        Ok(ArcColoring { transitions, color: None, geometry })
    }

    pub fn monochromatic(color: u8, geometry: Option<CircleGeometry>) -> Result<Self> {
        check_color(color)?;
        Ok(ArcColoring { transitions: Vec::new(), color: Some(color), geometry })
    }

    /// Equal arcs colored cyclically by `colors`, the first starting at 0.
    pub fn equal_arcs(colors: &[u8], geometry: Option<CircleGeometry>) -> Result<Self> {
        let n = colors.len();
        let mut transitions: Vec<Transition> = (0..n)
            .filter(|&i| colors[i] != colors[(i + 1) % n])
            .map(|i| Transition {
                pos: TAU * (i + 1) as f64 / n as f64 % TAU,
                left: colors[i],
                right: colors[(i + 1) % n],
            })
            .collect();
        if transitions.is_empty() {
            return ArcColoring::monochromatic(
                *colors.first().ok_or_else(|| Error::Input("no arcs".into()))?,
                geometry,
            );
        }
        transitions.sort_by(|a, b| a.pos.total_cmp(&b.pos));
        ArcColoring::new(transitions, geometry)
    }

    /// The piecewise-constant coloring by nearest sample of `colors`, sample
    /// `k` sitting at `2πk / n`; transitions fall halfway between samples.
    pub fn from_samples(colors: &[u8], geometry: Option<CircleGeometry>) -> Result<Self> {
        let n = colors.len();
        if n == 0 {
            return Err(Error::Input("no samples".into()));
        }
        for &c in colors {
            check_color(c)?;
        }
        let mut transitions: Vec<Transition> = (0..n)
            .filter(|&k| colors[k] != colors[(k + 1) % n])
            .map(|k| Transition { pos: TAU * (k as f64 + 0.5) / n as f64, left: colors[k], right: colors[(k + 1) % n] })
            .collect();
        if transitions.is_empty() {
            return ArcColoring::monochromatic(colors[0], geometry);
        }
        transitions.sort_by(|a, b| a.pos.total_cmp(&b.pos));
        ArcColoring::new(transitions, geometry)
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    /// Arc colors; arc `i` runs from transition `i` to transition `i + 1`.
    pub fn arc_colors(&self) -> Vec<u8> {
        if self.transitions.is_empty() {
            return self.color.into_iter().collect();
        }
        self.transitions.iter().map(|t| t.right).collect()
    }

    pub fn arc_length(&self, i: usize) -> f64 {
        let n = self.transitions.len();
        if n == 0 {
            return TAU;
        }
        (self.transitions[(i + 1) % n].pos - self.transitions[i].pos).rem_euclid(TAU)
    }

    /// Color at `pos`; at a transition, the color above it.
    pub fn color_at(&self, pos: f64) -> u8 {
        let Some(last) = self.transitions.last() else {
            return self.color.unwrap_or(1);
        };
        let pos = pos.rem_euclid(TAU);
        match self.transitions.partition_point(|t| t.pos <= pos) {
            0 => last.right,
            k => self.transitions[k - 1].right,
        }
    }

    /// Euclidean angular distance from `pos` to the nearest transition.
    pub fn clearance(&self, pos: f64) -> f64 {
        self.transitions
            .iter()
            .map(|t| {
                let d = (t.pos - pos).rem_euclid(TAU);
                d.min(TAU - d)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// No two arcs of the same color have exactly one arc between them.
    pub fn is_cyclic(&self) -> bool {
        let arcs = self.arc_colors();
        let n = arcs.len();
        n <= 1 || (0..n).all(|i| arcs[i] != arcs[(i + 2) % n])
    }

    pub fn transition_indices(&self) -> Vec<i32> {
        self.transitions.iter().map(|t| point_index(t.left, t.right)).collect()
    }

    /// The directed arc from `start` sweeping `sweep` radians
    /// (counterclockwise when positive), `|sweep| <= 2π`.
    pub fn arc(&self, start: f64, sweep: f64) -> Result<DirectedArcColoring> {
        if !(start.is_finite() && sweep.is_finite() && sweep.abs() <= TAU) {
            return Err(Error::Input(format!("arc sweep {sweep} is not within [-2π, 2π]")));
        }
        if self.clearance(start) <= TAU_GEO || self.clearance(start + sweep) <= TAU_GEO {
            return Err(Error::Degenerate(format!("arc {start} + {sweep} ends on a transition")));
        }
        let orientation: i8 = if sweep < 0.0 { -1 } else { 1 };
        let width = sweep.abs();
        let mut inside: Vec<(f64, Transition)> = self
            .transitions
            .iter()
            .map(|t| {
                let offset =
                    if orientation > 0 { (t.pos - start).rem_euclid(TAU) } else { (start - t.pos).rem_euclid(TAU) };
                (offset, *t)
            })
            .filter(|(offset, _)| *offset < width)
            .collect();
        inside.sort_by(|a, b| a.0.total_cmp(&b.0));
        let transitions = inside
            .into_iter()
            .map(|(offset, t)| {
                let pos = start + f64::from(orientation) * offset;
                if orientation > 0 {
                    Transition { pos, ..t }
                } else {
                    Transition { pos, left: t.right, right: t.left }
                }
            })
            .collect();
        Ok(DirectedArcColoring {
            start,
            end: start + sweep,
            orientation,
            start_color: self.color_at(start),
            transitions,
        })
    }
}

/// A directed arc with the transitions met along it. Positions are
/// unwrapped: they run monotonically from `start` to `end`, and `left` is the
/// color met first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectedArcColoring {
    pub start: f64,
    pub end: f64,
    pub orientation: i8,
    pub start_color: u8,
    pub transitions: Vec<Transition>,
}

impl DirectedArcColoring {
    pub fn validate(&self) -> Result<()> {
        if self.orientation != 1 && self.orientation != -1 {
            return Err(Error::Input(format!("orientation must be +1 or -1, got {}", self.orientation)));
        }
        let dir = f64::from(self.orientation);
        if (self.end - self.start) * dir < 0.0 {
            return Err(Error::Input("arc end lies behind its start".into()));
        }
        check_color(self.start_color)?;
        let mut color = self.start_color;
        let mut at = self.start;
        for t in &self.transitions {
            if (t.pos - at) * dir <= 0.0 || (self.end - t.pos) * dir <= 0.0 {
                return Err(Error::Input(format!("transition {} is not strictly inside the arc in order", t.pos)));
            }
            if t.left != color || t.right == t.left {
                return Err(Error::Input(format!("transition {} does not continue color {color}", t.pos)));
            }
            check_color(t.right)?;
            color = t.right;
            at = t.pos;
        }
        Ok(())
    }

    pub fn end_color(&self) -> u8 {
        self.transitions.last().map_or(self.start_color, |t| t.right)
    }

    /// Sum of the point indices along the orientation.
    pub fn index(&self) -> i32 {
        self.transitions.iter().map(|t| point_index(t.left, t.right)).sum()
    }

    pub fn reverse(&self) -> DirectedArcColoring {
        DirectedArcColoring {
            start: self.end,
            end: self.start,
            orientation: -self.orientation,
            start_color: self.end_color(),
            transitions: self
                .transitions
                .iter()
                .rev()
                .map(|t| Transition { pos: t.pos, left: t.right, right: t.left })
                .collect(),
        }
    }
}

/// A vertex of the transition graph: the colors `(φ(γ₁(t)), φ(γ₂(t)))` of
/// two complementary arcs.
pub type ColorPair = (u8, u8);

/// The six vertices in cycle order.
pub const C6_VERTICES: [ColorPair; 6] = [(1, 2), (1, 3), (2, 3), (2, 1), (3, 1), (3, 2)];

/// Starting pair with `a₂ ≡ a₁ + 1 (mod 3)`.
pub fn is_positive_pair(p: ColorPair) -> bool {
    point_index(p.0, p.1) == 1
}

/// One arc changes color at a time, and never to the other arc's color.
pub fn c6_neighbors(p: ColorPair) -> [ColorPair; 2] {
    let third = third_color(p.0, p.1);
    [(third, p.1), (p.0, third)]
}

/// How a step of the walk changes `δ = Ind γ₁ - Ind γ₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaRule {
    /// The index of the bichromatic point met on the arc whose color
    /// changes, counted positively on `γ₁` and negatively on `γ₂`.
    PointIndices,
    /// `+1` when leaving a positive pair, `-1` otherwise. Wrong; kept as a
    /// negative control for the verifier.
    LeavePositiveIncreases,
}

impl DeltaRule {
    pub fn step(self, from: ColorPair, to: ColorPair) -> i32 {
        match self {
            DeltaRule::PointIndices if from.1 == to.1 => point_index(from.0, to.0),
            DeltaRule::PointIndices => -point_index(from.1, to.1),
            DeltaRule::LeavePositiveIncreases if is_positive_pair(from) => 1,
            DeltaRule::LeavePositiveIncreases => -1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct C6Walk {
    pub vertices: Vec<ColorPair>,
}

impl C6Walk {
    pub fn new(vertices: Vec<ColorPair>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Input("a walk needs a start vertex".into()));
        }
        for &(a, b) in &vertices {
            check_color(a)?;
            check_color(b)?;
            if a == b {
                return Err(Error::Input(format!("({a}, {b}) is not a vertex of the pair graph")));
            }
        }
        for w in vertices.windows(2) {
            if !c6_neighbors(w[0]).contains(&w[1]) {
                return Err(Error::Input(format!("{:?} -> {:?} is not an admissible transition", w[0], w[1])));
            }
        }
        Ok(C6Walk { vertices })
    }

    /// `δ` after each prefix, starting with 0.
    pub fn deltas(&self, rule: DeltaRule) -> Vec<i32> {
        let mut out = vec![0];
        for w in self.vertices.windows(2) {
            out.push(out[out.len() - 1] + rule.step(w[0], w[1]));
        }
        out
    }
}

/// `δ` allowed after any prefix of a walk from `start`.
pub fn claimed_deltas(start: ColorPair) -> [i32; 2] {
    if is_positive_pair(start) {
        [-1, 0]
    } else {
        [0, 1]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkCounterexample {
    pub walk: Vec<ColorPair>,
    pub delta: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplementaryReport {
    pub walk_len: usize,
    pub rule: DeltaRule,
    /// Walks of every length `0..=walk_len` from every start vertex.
    pub walks_checked: u64,
    pub max_abs_delta: i32,
    pub counterexample_count: u64,
    pub counterexamples: Vec<WalkCounterexample>,
}

impl ComplementaryReport {
    pub fn holds(&self) -> bool {
        self.counterexample_count == 0
    }
}

/// Walks every path of the pair graph up to `walk_len` steps and checks
/// that `δ` stays in the claimed pair.
pub fn verify_complementary_index(walk_len: usize) -> ComplementaryReport {
    verify_complementary_index_with(walk_len, DeltaRule::PointIndices)
}

pub fn verify_complementary_index_with(walk_len: usize, rule: DeltaRule) -> ComplementaryReport {
    struct Acc {
        checked: u64,
        max_abs: i32,
        count: u64,
        found: Vec<WalkCounterexample>,
    }
    fn walk(path: &mut Vec<ColorPair>, delta: i32, left: usize, rule: DeltaRule, acc: &mut Acc) {
        acc.checked += 1;
        acc.max_abs = acc.max_abs.max(delta.abs());
        if !claimed_deltas(path[0]).contains(&delta) {
            acc.count += 1;
            if acc.found.len() < MAX_REPORTED {
                acc.found.push(WalkCounterexample { walk: path.clone(), delta });
            }
        }
        if left == 0 {
            return;
        }
        let here = path[path.len() - 1];
        for next in c6_neighbors(here) {
            path.push(next);
            walk(path, delta + rule.step(here, next), left - 1, rule, acc);
            path.pop();
        }
    }
    let per_start: Vec<Acc> = C6_VERTICES
        .par_iter()
        .map(|&start| {
            let mut acc = Acc { checked: 0, max_abs: 0, count: 0, found: Vec::new() };
            walk(&mut vec![start], 0, walk_len, rule, &mut acc);
            acc
        })
        .collect();
    let mut counterexamples = Vec::new();
    for acc in &per_start {
        counterexamples.extend(acc.found.iter().cloned());
    }
    counterexamples.truncate(MAX_REPORTED);
    ComplementaryReport {
        walk_len,
        rule,
        walks_checked: per_start.iter().map(|a| a.checked).sum(),
        max_abs_delta: per_start.iter().map(|a| a.max_abs).max().unwrap_or(0),
        counterexample_count: per_start.iter().map(|a| a.count).sum(),
        counterexamples,
    }
}

/// Decides whether repainting part of a circle keeps its coloring proper.
pub trait RecolorOracle {
    /// Whether `coloring` stays proper after the counterclockwise arc from
    /// `from` to `to` is painted `color`.
    fn allows(&self, coloring: &ArcColoring, from: f64, to: f64, color: u8) -> bool;
}

/// A unit circle sampled at `2πk / count` together with the distance graph of
/// the samples; colorings are judged on the samples.
#[derive(Clone, Debug)]
pub struct DiscreteCircle {
    pub geometry: CircleGeometry,
    pub graph: PointGraph,
    adjacency: Vec<Vec<usize>>,
}

impl DiscreteCircle {
    pub fn new(norm: &Norm, center: PlanePoint, count: usize, interval: Interval) -> Result<Self> {
        let points = discretize_circle(norm, center, count)?;
        let graph = build_point_graph(points, norm, interval);
        let adjacency = graph.adjacency();
        Ok(DiscreteCircle { geometry: CircleGeometry { norm: norm.clone(), center }, graph, adjacency })
    }

    pub fn count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn angle(&self, k: usize) -> f64 {
        TAU * k as f64 / self.count() as f64
    }

    pub fn sample_colors(&self, c: &ArcColoring) -> Vec<u8> {
        (0..self.count()).map(|k| c.color_at(self.angle(k))).collect()
    }

    pub fn is_proper(&self, c: &ArcColoring) -> bool {
        let colors = self.sample_colors(c);
        self.graph.edges.iter().all(|&[a, b]| colors[a] != colors[b])
    }

    /// Arc coloring of a proper sample coloring, with single-sample runs
    /// repainted to a neighboring color wherever that stays proper.
    pub fn to_arc_coloring(&self, colors: &[u8]) -> Result<ArcColoring> {
        let n = self.count();
        if colors.len() != n {
            return Err(Error::Input(format!("expected {n} sample colors, got {}", colors.len())));
        }
        let mut colors = colors.to_vec();
        loop {
            let mut changed = false;
            for k in 0..n {
                let (prev, next) = (colors[(k + n - 1) % n], colors[(k + 1) % n]);
                if colors[k] == prev || colors[k] == next {
                    continue;
                }
                if let Some(c) = [prev, next].into_iter().find(|&c| self.adjacency[k].iter().all(|&j| colors[j] != c)) {
                    colors[k] = c;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        ArcColoring::from_samples(&colors, Some(self.geometry.clone()))
    }
}

impl RecolorOracle for DiscreteCircle {
    fn allows(&self, coloring: &ArcColoring, from: f64, to: f64, color: u8) -> bool {
        let width = (to - from).rem_euclid(TAU);
        let painted = |k: usize| (self.angle(k) - from).rem_euclid(TAU) < width;
        let colors = self.sample_colors(coloring);
        (0..self.count())
            .filter(|&k| painted(k))
            .all(|k| self.adjacency[k].iter().all(|&j| painted(j) || colors[j] != color))
    }
}

/// Repeatedly repaints the shortest arc `b` of a pattern `a, b, a` in
/// color `a`, skipping arcs the oracle rejects, until the coloring is cyclic.
pub fn make_cyclic(c: &ArcColoring, oracle: Option<&dyn RecolorOracle>) -> Result<ArcColoring> {
    let mut cur = c.clone();
    while !cur.is_cyclic() {
        let oracle = oracle.ok_or_else(|| Error::Input("recoloring needs a properness oracle".into()))?;
        let n = cur.transitions.len();
        if n <= 2 {
            return Err(Error::Refused("a two-arc coloring cannot be made cyclic".into()));
        }
        let arcs = cur.arc_colors();
        let mut candidates: Vec<usize> = (0..n).filter(|&i| arcs[(i + n - 1) % n] == arcs[(i + 1) % n]).collect();
        candidates.sort_by(|&a, &b| cur.arc_length(a).total_cmp(&cur.arc_length(b)).then(a.cmp(&b)));
        let chosen = candidates.into_iter().find(|&i| {
            oracle.allows(&cur, cur.transitions[i].pos, cur.transitions[(i + 1) % n].pos, arcs[(i + n - 1) % n])
        });
        let Some(i) = chosen else {
            return Err(Error::Refused("no arc of an a, b, a pattern can be repainted properly".into()));
        };
        let j = (i + 1) % n;
        let transitions =
            cur.transitions.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, t)| *t).collect();
        cur = ArcColoring::new(transitions, cur.geometry.clone())?;
    }
    Ok(cur)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MulticolorClass {
    pub colors: [u8; 2],
    pub positions: Vec<f64>,
    /// Positions of three transitions at pairwise distances above 1.
    pub triple: Option<[f64; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MulticolorReport {
    pub classes: Vec<MulticolorClass>,
    pub at_least_three: bool,
    pub triples_found: bool,
}

impl MulticolorReport {
    pub fn holds(&self) -> bool {
        self.at_least_three && self.triples_found
    }
}

/// Groups transitions by their color pair and searches each group for three
/// points at pairwise norm distance above 1.
pub fn multicolor_triples(c: &ArcColoring) -> Result<MulticolorReport> {
    let geometry =
        c.geometry.as_ref().ok_or_else(|| Error::Input("multicolor triples need bound circle geometry".into()))?;
    let mut classes = Vec::new();
    for colors in [[1, 2], [2, 3], [1, 3]] {
        let positions: Vec<f64> = c
            .transitions
            .iter()
            .filter(|t| {
                let mut pair = [t.left, t.right];
                pair.sort_unstable();
                pair == colors
            })
            .map(|t| t.pos)
            .collect();
        let points: Vec<PlanePoint> = positions.iter().map(|&p| geometry.point(p)).collect();
        let far = |a: usize, b: usize| geometry.norm.dist(points[a], points[b]) > 1.0;
        let m = points.len();
        let mut triple = None;
        'search: for a in 0..m {
            for b in a + 1..m {
                if !far(a, b) {
                    continue;
                }
                for d in b + 1..m {
                    if far(a, d) && far(b, d) {
                        triple = Some([positions[a], positions[b], positions[d]]);
                        break 'search;
                    }
                }
            }
        }
        classes.push(MulticolorClass { colors, positions, triple });
    }
    Ok(MulticolorReport {
        at_least_three: classes.iter().all(|c| c.positions.len() >= 3),
        triples_found: classes.iter().all(|c| c.triple.is_some()),
        classes,
    })
}

/// The index relation checked on one pair of complementary arcs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplementaryCheck {
    pub arcs: String,
    pub start_colors: ColorPair,
    pub indices: (i32, i32),
    pub holds: bool,
}

fn complementary_check(arcs: &str, g1: &DirectedArcColoring, g2: &DirectedArcColoring) -> ComplementaryCheck {
    let start = (g1.start_color, g2.start_color);
    let diff = g1.index() - g2.index();
    ComplementaryCheck {
        arcs: arcs.into(),
        start_colors: start,
        indices: (g1.index(), g2.index()),
        holds: start.0 != start.1 && claimed_deltas(start).contains(&diff),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditAnchors {
    pub x0: PlanePoint,
    pub x1: PlanePoint,
    pub y0: PlanePoint,
    pub y1: PlanePoint,
    pub z1: PlanePoint,
    /// Shift of the positions on the second circle.
    pub rotation: f64,
    /// Largest distance an anchor moved under the shift.
    pub displacement: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditIndices {
    pub x0x1: i32,
    pub y0y1: i32,
    pub z0z1: i32,
    pub y1z1: i32,
    /// `Ind y₁y₀ + Ind z₀z₁`.
    pub y1z1_via_y0: i32,
    pub y1x1: i32,
    pub x1z1: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BicycleAudit {
    pub applicable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Whether the input is a proper coloring of the bicycle graph.
    pub proper: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchors: Option<AuditAnchors>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indices: Option<AuditIndices>,
    /// `x₁` lies on the arc `y₁ → y₀ → z₁`.
    pub x1_on_arc: bool,
    /// Both splittings of `y₁z₁` give its direct index.
    pub additivity_holds: bool,
    /// `|Ind y₁z₁| <= 1`, from the first two complementary pairs.
    pub est1_holds: bool,
    /// `|Ind y₁x₁ + Ind x₁z₁| >= 2` with both summands nonzero and of one sign.
    pub est2_holds: bool,
    pub complementary: Vec<ComplementaryCheck>,
    /// `φ(y₁) ≠ φ(x₁) ≠ φ(z₁)`.
    pub anchor_colors_differ: bool,
}

const AUDIT_TRACK_STEPS: usize = 256;
const AUDIT_ROTATION_STEPS: usize = 64;

fn signed_gap(from: f64, to: f64) -> f64 {
    let d = (to - from).rem_euclid(TAU);
    if d > TAU / 2.0 {
        d - TAU
    } else {
        d
    }
}

fn direction(p: PlanePoint) -> f64 {
    p.y.atan2(p.x).rem_euclid(TAU)
}

/// Positions along `T1(center)` where `‖p - other‖ = target`, restricted to
/// the upper half plane and found by scan and bisection.
fn upper_root(norm: &Norm, center: PlanePoint, other: PlanePoint, target: f64) -> Result<f64> {
    let g = |t: f64| norm.dist(norm.unit_circle_point(center, t), other) - target;
    let steps = 2048;
    let h = std::f64::consts::PI / steps as f64;
    for i in 0..steps {
        let (a, b) = (h * i as f64, h * (i + 1) as f64);
        let (ga, gb) = (g(a), g(b));
        if ga == 0.0 {
            return Ok(a);
        }
        if ga * gb < 0.0 {
            let (mut lo, mut hi, mut glo) = (a, b, ga);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                let gm = g(mid);
                if (gm < 0.0) == (glo < 0.0) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            return Ok(0.5 * (lo + hi));
        }
    }
    Err(Error::Degenerate(format!("no point of the upper half circle lies at distance {target}")))
}

/// Recomputes the index estimates of the three-coloring argument for the
/// bicycle on the actual arcs of a coloring of `graph`.
///
/// `graph` must be laid out as by `build_bicycle`: `count` samples of
/// `T1((0, 0))` followed by `count` samples of `T1((s, 0))`.
pub fn bicycle_index_audit(graph: &PointGraph, colors: &[u8], s: f64) -> Result<BicycleAudit> {
    let n = graph.vertex_count();
    if colors.len() != n || !n.is_multiple_of(2) || n == 0 {
        return Err(Error::Input(format!("expected one color per vertex of a bicycle, got {} for {n}", colors.len())));
    }
    let norm = &graph.norm;
    let proper = graph.edges.iter().all(|&[a, b]| colors[a] != colors[b]);
    let inapplicable = |reason: String| BicycleAudit {
        applicable: false,
        reason: Some(reason),
        proper,
        anchors: None,
        indices: None,
        x1_on_arc: false,
        additivity_holds: false,
        est1_holds: false,
        est2_holds: false,
        complementary: Vec::new(),
        anchor_colors_differ: false,
    };
    if let Some(&c) = colors.iter().find(|&&c| !(1..=ARC_COLORS).contains(&c)) {
        return Ok(inapplicable(format!("color {c} is used; the index argument covers three colors only")));
    }
    let (u, v) = (PlanePoint::ORIGIN, PlanePoint::new(s, 0.0));
    let d = norm.dist(u, v);
    if !(d > 1.0 + TAU_GEO && d < 2.0 - TAU_GEO) {
        return Err(Error::Precondition(format!("the audit needs 1 < ‖u - v‖ < 2, got {d}")));
    }
    let count = n / 2;
    let cu = ArcColoring::from_samples(&colors[..count], Some(CircleGeometry { norm: norm.clone(), center: u }))?;
    let cv = ArcColoring::from_samples(&colors[count..], Some(CircleGeometry { norm: norm.clone(), center: v }))?;

    // x moves on T(u) from ‖x0 - v‖ = 2, where both unit-distance partners on
    // T(v) coincide at the midpoint, to x1 ∈ T(u) ∩ T(v).
    let tx0 = upper_root(norm, u, v, 2.0)?;
    let tx1 = upper_root(norm, u, v, 1.0)?;
    let x0 = norm.unit_circle_point(u, tx0);
    let x1 = norm.unit_circle_point(u, tx1);
    let y0 = (x0 + v) * 0.5;
    let [y1, z1] = norm.circle_intersection(x1, v)?;
    let (ty0, ty1, tz1, tx1v) = (direction(y0 - v), direction(y1 - v), direction(z1 - v), direction(x1 - v));
    let (mut sweep_y, mut sweep_z) = (0.0, 0.0);
    let (mut prev_y, mut prev_z) = (ty0, ty0);
    for i in 1..=AUDIT_TRACK_STEPS {
        let t = tx0 + (tx1 - tx0) * i as f64 / AUDIT_TRACK_STEPS as f64;
        let [y, z] = norm.circle_intersection(norm.unit_circle_point(u, t), v)?;
        let (ay, az) = (direction(y - v), direction(z - v));
        sweep_y += signed_gap(prev_y, ay);
        sweep_z += signed_gap(prev_z, az);
        prev_y = ay;
        prev_z = az;
    }

    // Re-anchor by shifting positions on T(v), keeping every anchor within
    // eps of where it was.
    let eps = graph.interval.eps();
    let anchors_v = [ty0, ty1, tz1, tx1v];
    let displacement = |alpha: f64| {
        anchors_v
            .iter()
            .map(|&t| norm.dist(norm.unit_circle_point(v, t), norm.unit_circle_point(v, t + alpha)))
            .fold(0.0, f64::max)
    };
    let (mut lo, mut hi) = (0.0, std::f64::consts::FRAC_PI_2);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if displacement(mid) < eps {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let clear = |alpha: f64| anchors_v.iter().all(|&t| cv.clearance(t + alpha) > TAU_GEO);
    if cu.clearance(tx0) <= TAU_GEO || cu.clearance(tx1) <= TAU_GEO {
        return Err(Error::Degenerate("an anchor on the first circle sits on a transition".into()));
    }
    let alpha = (0..AUDIT_ROTATION_STEPS)
        .map(|k| lo * k as f64 / AUDIT_ROTATION_STEPS as f64)
        .find(|&a| clear(a))
        .ok_or_else(|| Error::Degenerate("no small rotation moves the anchors off the transitions".into()))?;
    let (ty0, ty1, tx1v) = (ty0 + alpha, ty1 + alpha, tx1v + alpha);

    let arc_x0x1 = cu.arc(tx0, tx1 - tx0)?;
    let arc_y0y1 = cv.arc(ty0, sweep_y)?;
    let arc_z0z1 = cv.arc(ty0, sweep_z)?;
    let sweep_yz = sweep_z - sweep_y;
    let arc_y1z1 = cv.arc(ty1, sweep_yz)?;
    let offset = if sweep_yz >= 0.0 { (tx1v - ty1).rem_euclid(TAU) } else { -(ty1 - tx1v).rem_euclid(TAU) };
    let x1_on_arc = offset.abs() < sweep_yz.abs();
    let arc_y1x1 = cv.arc(ty1, offset)?;
    let arc_x1z1 = cv.arc(tx1v, sweep_yz - offset)?;

    let indices = AuditIndices {
        x0x1: arc_x0x1.index(),
        y0y1: arc_y0y1.index(),
        z0z1: arc_z0z1.index(),
        y1z1: arc_y1z1.index(),
        y1z1_via_y0: -arc_y0y1.index() + arc_z0z1.index(),
        y1x1: arc_y1x1.index(),
        x1z1: arc_x1z1.index(),
    };
    let (a, b) = (indices.y1x1, indices.x1z1);
    let complementary = vec![
        complementary_check("x0x1, y0y1", &arc_x0x1, &arc_y0y1),
        complementary_check("x0x1, z0z1", &arc_x0x1, &arc_z0z1),
        complementary_check("y1x1, x1z1", &arc_y1x1, &arc_x1z1),
    ];
    let (cy1, cx1, cz1) = (arc_y1z1.start_color, arc_x1z1.start_color, arc_y1z1.end_color());
    Ok(BicycleAudit {
        applicable: true,
        reason: None,
        proper,
        anchors: Some(AuditAnchors { x0, x1, y0, y1, z1, rotation: alpha, displacement: displacement(alpha) }),
        x1_on_arc,
        additivity_holds: indices.y1z1 == indices.y1z1_via_y0 && (!x1_on_arc || indices.y1z1 == a + b),
        est1_holds: indices.y1z1.abs() <= 1,
        est2_holds: a != 0 && b != 0 && a.signum() == b.signum() && (a + b).abs() >= 2,
        complementary,
        anchor_colors_differ: cy1 != cx1 && cx1 != cz1,
        indices: Some(indices),
    })
}

/// A random proper-looking coloring: between 2 and `max_transitions`
/// transitions at distinct uniform positions, adjacent arcs differing.
pub fn random_arc_coloring<R: Rng>(rng: &mut R, max_transitions: usize) -> ArcColoring {
    let n = rng.gen_range(2..=max_transitions.max(2));
    let mut colors = vec![rng.gen_range(1..=ARC_COLORS)];
    for i in 1..n {
        let prev = colors[i - 1];
        let choices: Vec<u8> = (1..=ARC_COLORS).filter(|&c| c != prev && (i + 1 < n || c != colors[0])).collect();
        colors.push(choices[rng.gen_range(0..choices.len())]);
    }
    let mut positions: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
    positions.sort_by(f64::total_cmp);
    let transitions =
        (0..n).map(|i| Transition { pos: positions[i], left: colors[(i + n - 1) % n], right: colors[i] }).collect();
    ArcColoring::new(transitions, None).expect("random colorings are valid by construction")
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropertySweep {
    pub arcs_checked: usize,
    pub negation_failures: usize,
    pub additivity_failures: usize,
    /// Arcs a cyclic coloring yields whose transitions disagree in sign.
    pub cyclic_sign_failures: usize,
}

impl PropertySweep {
    pub fn holds(&self) -> bool {
        self.negation_failures == 0 && self.additivity_failures == 0 && self.cyclic_sign_failures == 0
    }
}

/// Checks reversal negation and additivity on `samples` random arcs of random
/// colorings, and that cyclic colorings have transitions of one sign.
pub fn index_property_sweep(samples: usize, seed: u64) -> PropertySweep {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = PropertySweep::default();
    while out.arcs_checked < samples {
        let c = random_arc_coloring(&mut rng, 24);
        if c.is_cyclic() {
            let signs = c.transition_indices();
            if signs.iter().any(|&s| s != signs[0]) {
                out.cyclic_sign_failures += 1;
            }
        }
        let start = rng.gen_range(0.0..TAU);
        let sweep = rng.gen_range(-TAU..TAU);
        let t = rng.gen_range(0.0..1.0);
        let (Ok(whole), Ok(a), Ok(b)) =
            (c.arc(start, sweep), c.arc(start, t * sweep), c.arc(start + t * sweep, (1.0 - t) * sweep))
        else {
            continue;
        };
        out.arcs_checked += 1;
        if whole.reverse().index() != -whole.index() {
            out.negation_failures += 1;
        }
        if a.index() + b.index() != whole.index() {
            out.additivity_failures += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn colors_along(c: &DirectedArcColoring) -> Vec<u8> {
        std::iter::once(c.start_color).chain(c.transitions.iter().map(|t| t.right)).collect()
    }

    #[test]
    fn point_index_examples() {
        assert_eq!(index_of_point(1, 2).unwrap(), 1);
        assert_eq!(index_of_point(3, 1).unwrap(), 1);
        assert_eq!(index_of_point(2, 1).unwrap(), -1);
        assert!(matches!(index_of_point(2, 2), Err(Error::Input(_))));
        assert!(index_of_point(0, 1).is_err());
    }

    #[test]
    fn arc_index_examples() {
        let c = ArcColoring::equal_arcs(&[1, 2, 3, 1], None).unwrap();
        let whole = c.arc(0.1, 5.0).unwrap();
        assert_eq!(colors_along(&whole), vec![1, 2, 3, 1]);
        assert_eq!(whole.index(), 3);
        let c = ArcColoring::equal_arcs(&[1, 2, 1, 3], None).unwrap();
        let a = c.arc(0.1, 3.5).unwrap();
        assert_eq!(colors_along(&a), vec![1, 2, 1]);
        assert_eq!(a.index(), 0);
        assert_eq!(c.arc(0.1, 1.0).unwrap().index(), 0);
    }

    #[test]
    fn reverse_negates() {
        let c = ArcColoring::equal_arcs(&[1, 2, 3, 1, 2, 3], None).unwrap();
        let a = c.arc(0.1, 2.5).unwrap();
        assert_eq!(a.index(), 2);
        let r = a.reverse();
        r.validate().unwrap();
        assert_eq!(r.index(), -2);
        let back = c.arc(a.end, -2.5).unwrap();
        assert_eq!(back.index(), -2);
        assert_eq!(colors_along(&back), colors_along(&r));
    }

    #[test]
    fn cyclic_examples() {
        assert!(ArcColoring::equal_arcs(&[1, 2, 3, 1, 2, 3, 1, 2, 3], None).unwrap().is_cyclic());
        assert!(!ArcColoring::equal_arcs(&[1, 2, 1, 3, 2, 3], None).unwrap().is_cyclic());
        assert!(ArcColoring::equal_arcs(&[1, 2, 3], None).unwrap().is_cyclic());
    }

    #[test]
    fn validation_rejects_broken_chains() {
        let t = |pos, left, right| Transition { pos, left, right };
        assert!(ArcColoring::new(vec![t(0.0, 1, 2), t(1.0, 3, 1)], None).is_err());
        assert!(ArcColoring::new(vec![t(1.0, 1, 2), t(1.0, 2, 1)], None).is_err());
        assert!(ArcColoring::new(vec![t(0.0, 1, 1)], None).is_err());
        assert!(ArcColoring::new(vec![t(7.0, 1, 2), t(1.0, 2, 1)], None).is_err());
        assert!(ArcColoring::new(vec![t(0.5, 1, 2), t(1.0, 2, 1)], None).is_ok());
        let json = r#"{"transitions":[{"pos":0.5,"left":1,"right":2},{"pos":1.0,"left":2,"right":2}]}"#;
        assert!(serde_json::from_str::<ArcColoring>(json).is_err());
    }

    #[test]
    fn single_steps_from_positive_pair() {
        for next in c6_neighbors((1, 2)) {
            let w = C6Walk::new(vec![(1, 2), next]).unwrap();
            assert_eq!(w.deltas(DeltaRule::PointIndices), vec![0, -1]);
        }
        assert!(C6Walk::new(vec![(1, 2), (2, 1)]).is_err());
    }

    #[test]
    fn corrupted_rule_is_caught() {
        let good = verify_complementary_index(6);
        assert!(good.holds());
        assert_eq!(good.max_abs_delta, 1);
        let bad = verify_complementary_index_with(6, DeltaRule::LeavePositiveIncreases);
        assert!(!bad.holds());
        assert!(!bad.counterexamples.is_empty());
    }

    #[test]
    fn empty_walks() {
        let r = verify_complementary_index(0);
        assert_eq!(r.walks_checked, 6);
        assert!(r.holds());
    }

    #[test]
    fn samples_to_arcs() {
        let c = ArcColoring::from_samples(&[1, 1, 2, 2, 3, 3], None).unwrap();
        assert_eq!(c.transition_count(), 3);
        assert_eq!(c.arc_colors(), vec![2, 3, 1]);
        assert_eq!(c.color_at(0.0), 1);
        assert_eq!(c.color_at(TAU * 2.0 / 6.0), 2);
        let m = ArcColoring::from_samples(&[2, 2, 2], None).unwrap();
        assert_eq!(m.color, Some(2));
        assert_eq!(m.arc(0.3, 1.0).unwrap().index(), 0);
    }

    #[test]
    fn nine_arcs_have_far_triples() {
        let geometry = CircleGeometry { norm: Norm::euclidean(), center: PlanePoint::ORIGIN };
        let c = ArcColoring::equal_arcs(&[1, 2, 3, 1, 2, 3, 1, 2, 3], Some(geometry.clone())).unwrap();
        let r = multicolor_triples(&c).unwrap();
        assert!(r.holds());
        assert!(r.classes.iter().all(|k| k.positions.len() == 3));
        let two = ArcColoring::equal_arcs(&[1, 2, 3, 1, 2, 3], Some(geometry)).unwrap();
        assert!(!multicolor_triples(&two).unwrap().holds());
        assert!(multicolor_triples(&ArcColoring::equal_arcs(&[1, 2, 3], None).unwrap()).is_err());
    }

    #[test]
    fn property_sweep_is_clean() {
        let r = index_property_sweep(2000, 7);
        assert_eq!(r.arcs_checked, 2000);
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn make_cyclic_requires_oracle() {
        let c = ArcColoring::equal_arcs(&[1, 2, 1, 3, 2, 3], None).unwrap();
        assert!(matches!(make_cyclic(&c, None), Err(Error::Input(_))));
        let cyc = ArcColoring::equal_arcs(&[1, 2, 3], None).unwrap();
        assert_eq!(make_cyclic(&cyc, None).unwrap(), cyc);
    }
}
