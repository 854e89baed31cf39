//! Exact k-colorability with certificates.
//!
//! The search is DSATUR-ordered backtracking with forward checking: every
//! assignment removes its color from the neighbors' domains, a vertex whose
//! domain empties triggers a backtrack, and the next vertex is the one with
//! the fewest remaining colors (ties: higher degree, then lower rank). A
//! greedy clique is pre-colored `1..=|clique|` to break color symmetry, and
//! unused colors are only ever tried one at a time.
//!
//! That search has no memory of why a branch failed, which makes it hopeless
//! on the bicycle graphs, so the default engine runs the same clique
//! pre-coloring through the CDCL solver of [`crate::sat`] on the direct
//! encoding, with decision activity seeded by vertex degree.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{adjacency, PointGraph};
use crate::sat::{Lit, SatLimits, SatResult, Solver};

/// Largest graph [`brute_force_chromatic`] accepts.
pub const BRUTE_FORCE_MAX_VERTICES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Sat,
    Unsat,
    /// A budget ran out before the search finished.
    Indeterminate,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    #[default]
    Cdcl,
    Dsatur,
}

#[derive(Clone, Debug, Default)]
pub struct SolverConfig {
    pub engine: Engine,
    /// Decisions (CDCL) or search nodes (DSATUR).
    pub node_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Permutes the tie-breaking order among equally saturated vertices.
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchStats {
    pub engine: Engine,
    /// Decisions (CDCL) or assignments tried (DSATUR).
    pub nodes: u64,
    /// Conflicts (CDCL) or exhausted frames (DSATUR).
    pub backtracks: u64,
    pub clique_size: usize,
    pub wall_secs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColorCertificate {
    pub verdict: Verdict,
    pub k: usize,
    /// Colors in `1..=k`, one per vertex; present only for SAT.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<Vec<u8>>,
    pub stats: SearchStats,
    /// Set once [`verify_coloring`] accepted the coloring.
    pub verified: bool,
    /// Set by callers that confirmed an UNSAT verdict by exhaustive enumeration.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brute_force_confirmed: Option<bool>,
}

/// Result of [`verify_coloring`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringCheck {
    pub proper: bool,
    pub violated: Vec<[usize; 2]>,
}

/// Checks that no edge is monochromatic.
pub fn verify_coloring(g: &PointGraph, coloring: &[u8]) -> Result<ColoringCheck> {
    verify_edges(g.vertex_count(), &g.edges, coloring)
}

pub fn verify_edges(n: usize, edges: &[[usize; 2]], coloring: &[u8]) -> Result<ColoringCheck> {
    if coloring.len() != n {
        return Err(Error::Input(format!("coloring covers {} of {n} vertices", coloring.len())));
    }
    let violated: Vec<[usize; 2]> = edges.iter().copied().filter(|&[i, j]| coloring[i] == coloring[j]).collect();
    Ok(ColoringCheck { proper: violated.is_empty(), violated })
}

pub fn is_k_colorable(g: &PointGraph, k: usize, config: &SolverConfig) -> Result<ColorCertificate> {
    solve_edges(g.vertex_count(), &g.edges, k, config)
}

/// [`is_k_colorable`] on a bare edge list.
pub fn solve_edges(n: usize, edges: &[[usize; 2]], k: usize, config: &SolverConfig) -> Result<ColorCertificate> {
    if k == 0 || k > MAX_COLORS {
        return Err(Error::Config(format!("color count must lie in 1..={MAX_COLORS}, got {k}")));
    }
    if let Some(&[i, j]) = edges.iter().find(|&&[i, j]| i == j || i >= n || j >= n) {
        return Err(Error::Input(format!("invalid edge ({i}, {j})")));
    }
    let started = Instant::now();
    let adj = dedup_adjacency(n, edges);
    let (outcome, mut stats) = match config.engine {
        Engine::Dsatur => {
            let mut search = Search::new(&adj, k, config, started);
            let outcome = search.run();
            (outcome, search.stats)
        }
        Engine::Cdcl => solve_cdcl(&adj, k, config, started),
    };
    stats.engine = config.engine;
    stats.wall_secs = started.elapsed().as_secs_f64();
    let mut cert = ColorCertificate {
        verdict: Verdict::Indeterminate,
        k,
        coloring: None,
        stats,
        verified: false,
        brute_force_confirmed: None,
    };
    match outcome {
        Outcome::Sat(colors) => {
            let check = verify_edges(n, edges, &colors)?;
            if !check.proper {
                return Err(Error::Input(format!(
                    "internal error: solver coloring violates {} edges",
                    check.violated.len()
                )));
            }
            cert.verdict = Verdict::Sat;
            cert.coloring = Some(colors);
            cert.verified = true;
        }
        Outcome::Unsat => cert.verdict = Verdict::Unsat,
        Outcome::OutOfBudget => {}
    }
    Ok(cert)
}

/// Smallest `k <= kmax` for which the graph is k-colorable, by repeated search.
pub fn chromatic_number(g: &PointGraph, kmax: usize, config: &SolverConfig) -> Result<Option<usize>> {
    let start = if g.vertex_count() == 0 { 0 } else { 1 };
    for k in start.max(1)..=kmax {
        match is_k_colorable(g, k, config)?.verdict {
            Verdict::Sat => return Ok(Some(k)),
            Verdict::Unsat => continue,
            Verdict::Indeterminate => return Err(Error::Refused(format!("budget exhausted while testing k = {k}"))),
        }
    }
    Ok(None)
}

/// Exact chromatic number by exhaustive enumeration of canonical colorings
/// (vertex `i` may only open color `max(previous) + 1`). Returns `None` when
/// more than `kmax` colors are needed. Test oracle only.
pub fn brute_force_chromatic(g: &PointGraph, kmax: usize) -> Result<Option<usize>> {
    brute_force_edges(g.vertex_count(), &g.edges, kmax)
}

pub fn brute_force_edges(n: usize, edges: &[[usize; 2]], kmax: usize) -> Result<Option<usize>> {
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::Refused(format!("brute force is limited to {BRUTE_FORCE_MAX_VERTICES} vertices, got {n}")));
    }
    if n == 0 {
        return Ok(Some(0));
    }
    let adj = adjacency(n, edges);
    let mut colors = vec![0u8; n];
    for k in 1..=kmax.min(n) {
        if canonical_fill(&adj, &mut colors, 0, 0, k) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn canonical_fill(adj: &[Vec<usize>], colors: &mut [u8], v: usize, used: usize, k: usize) -> bool {
    if v == colors.len() {
        return true;
    }
    for c in 1..=(used + 1).min(k) {
        let clash = adj[v].iter().any(|&w| w < v && colors[w] as usize == c);
        if clash {
            continue;
        }
        colors[v] = c as u8;
        if canonical_fill(adj, colors, v + 1, used.max(c), k) {
            return true;
        }
    }
    false
}

/// DIMACS CNF of the direct encoding. Variable `v * k + c + 1` states that
/// vertex `v` has color `c` (both zero-based).
pub fn export_cnf(g: &PointGraph, k: usize) -> String {
    cnf_edges(g.vertex_count(), &g.edges, k)
}

pub fn cnf_edges(n: usize, edges: &[[usize; 2]], k: usize) -> String {
    let var = |v: usize, c: usize| v * k + c + 1;
    let mut clauses: Vec<String> = Vec::new();
    for v in 0..n {
        let alo: Vec<String> = (0..k).map(|c| var(v, c).to_string()).collect();
        clauses.push(format!("{} 0", alo.join(" ")));
        for a in 0..k {
            for b in a + 1..k {
                clauses.push(format!("-{} -{} 0", var(v, a), var(v, b)));
            }
        }
    }
    for &[i, j] in edges {
        for c in 0..k {
            clauses.push(format!("-{} -{} 0", var(i, c), var(j, c)));
        }
    }
    let mut out = format!("p cnf {} {}\n", n * k, clauses.len());
    for c in clauses {
        out.push_str(&c);
        out.push('\n');
    }
    out
}

/// Parsed answer of an external DIMACS solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExternalAnswer {
    Sat(Vec<i64>),
    Unsat,
    Unknown,
}

/// Reads the `s ...` status line and `v ...` model lines of standard solver output.
pub fn parse_solver_output(text: &str) -> ExternalAnswer {
    let mut status = None;
    let mut model = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("v ") {
            model.extend(rest.split_whitespace().filter_map(|t| t.parse::<i64>().ok()).filter(|&l| l != 0));
        }
    }
    match status.as_deref() {
        Some("SATISFIABLE") => ExternalAnswer::Sat(model),
        Some("UNSATISFIABLE") => ExternalAnswer::Unsat,
        _ => ExternalAnswer::Unknown,
    }
}

/// Decodes a model of the direct encoding into colors `1..=k`.
pub fn decode_model(model: &[i64], n: usize, k: usize) -> Result<Vec<u8>> {
    let mut colors = vec![0u8; n];
    for &lit in model.iter().filter(|&&l| l > 0) {
        let idx = (lit - 1) as usize;
        let (v, c) = (idx / k, idx % k);
        if v < n && colors[v] == 0 {
            colors[v] = c as u8 + 1;
        }
    }
    if colors.contains(&0) {
        return Err(Error::Input("model leaves a vertex uncolored".into()));
    }
    Ok(colors)
}

const MAX_COLORS: usize = 32;

/// Number of highest-degree start vertices tried by [`greedy_clique`].
const CLIQUE_STARTS: usize = 32;

/// Greedy clique of at most `k + 1` vertices: from each of the highest-degree
/// start vertices, repeatedly add the candidate with the most neighbors among
/// the remaining candidates; keep the largest result. `adj` must be sorted.
fn greedy_clique(adj: &[Vec<usize>], k: usize, rank: &[usize]) -> Vec<usize> {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), rank[v]));
    let mut best: Vec<usize> = Vec::new();
    for &first in order.iter().take(CLIQUE_STARTS) {
        let mut clique = vec![first];
        let mut candidates: Vec<usize> = adj[first].clone();
        while !candidates.is_empty() && clique.len() < k + 1 {
            let next = *candidates
                .iter()
                .max_by_key(|&&c| {
                    let inside = candidates.iter().filter(|&&w| adj[c].binary_search(&w).is_ok()).count();
                    (inside, adj[c].len(), std::cmp::Reverse(rank[c]))
                })
                .unwrap();
            clique.push(next);
            candidates.retain(|&c| c != next && adj[next].binary_search(&c).is_ok());
        }
        if clique.len() > best.len() {
            best = clique;
        }
        if best.len() > k {
            break;
        }
    }
    best
}

fn tie_rank(n: usize, seed: Option<u64>) -> Vec<usize> {
    let mut rank: Vec<usize> = (0..n).collect();
    if let Some(seed) = seed {
        rank.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    rank
}

fn solve_cdcl(adj: &[Vec<usize>], k: usize, config: &SolverConfig, started: Instant) -> (Outcome, SearchStats) {
    let n = adj.len();
    let rank = tie_rank(n, config.seed);
    let mut stats = SearchStats::default();
    let clique = greedy_clique(adj, k, &rank);
    stats.clique_size = clique.len();
    if clique.len() > k {
        return (Outcome::Unsat, stats);
    }
    let var = |v: usize, c: usize| v * k + c;
    // Higher degree first, seeded rank breaking ties.
    let activity: Vec<f64> = (0..n * k)
        .map(|x| {
            let v = x / k;
            adj[v].len() as f64 * 1e-3 - rank[v] as f64 * 1e-9 / n.max(1) as f64
        })
        .collect();
    let mut solver = Solver::new(n * k, Some(&activity), true);
    for (v, nbrs) in adj.iter().enumerate() {
        let alo: Vec<Lit> = (0..k).map(|c| Lit::new(var(v, c), false)).collect();
        solver.add_clause(&alo);
        for a in 0..k {
            for b in a + 1..k {
                solver.add_clause(&[Lit::new(var(v, a), true), Lit::new(var(v, b), true)]);
            }
        }
        for &w in nbrs.iter().filter(|&&w| w > v) {
            for c in 0..k {
                solver.add_clause(&[Lit::new(var(v, c), true), Lit::new(var(w, c), true)]);
            }
        }
    }
    for (c, &v) in clique.iter().enumerate() {
        solver.add_clause(&[Lit::new(var(v, c), false)]);
    }
    let limits = SatLimits { max_decisions: config.node_budget, deadline: config.time_budget.map(|d| started + d) };
    let result = solver.solve(&limits);
    stats.nodes = solver.stats.decisions;
    stats.backtracks = solver.stats.conflicts;
    let outcome = match result {
        SatResult::Sat(model) => {
            let colors = (0..n).map(|v| (0..k).find(|&c| model[var(v, c)]).map_or(0, |c| c as u8 + 1)).collect();
            Outcome::Sat(colors)
        }
        SatResult::Unsat => Outcome::Unsat,
        SatResult::Unknown => Outcome::OutOfBudget,
    };
    (outcome, stats)
}

fn dedup_adjacency(n: usize, edges: &[[usize; 2]]) -> Vec<Vec<usize>> {
    let mut adj = adjacency(n, edges);
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    adj
}

enum Outcome {
    Sat(Vec<u8>),
    Unsat,
    OutOfBudget,
}

const UNCOLORED: u8 = u8::MAX;

struct Frame {
    vertex: usize,
    /// Colors not yet tried at this vertex.
    remaining: u32,
    /// `used` before the vertex was assigned.
    used_before: usize,
    /// Length of the undo trail before the current assignment.
    trail_mark: usize,
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    k: usize,
    config: &'a SolverConfig,
    started: Instant,
    color: Vec<u8>,
    /// `forbid[v * k + c]`: colored neighbors of `v` with color `c`.
    forbid: Vec<u16>,
    /// Bitmask of allowed colors per vertex.
    domain: Vec<u32>,
    rank: Vec<usize>,
    /// Uncolored vertices keyed by (domain size, -degree, rank).
    queue: BTreeSet<(u32, std::cmp::Reverse<usize>, usize, usize)>,
    /// Vertices whose `forbid` entry went 0 -> 1 for a given color.
    trail: Vec<(usize, u8)>,
    used: usize,
    stats: SearchStats,
}

impl<'a> Search<'a> {
    fn new(adj: &'a [Vec<usize>], k: usize, config: &'a SolverConfig, started: Instant) -> Self {
        let n = adj.len();
        let rank = tie_rank(n, config.seed);
        let full = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
        let mut s = Search {
            adj,
            k,
            config,
            started,
            color: vec![UNCOLORED; n],
            forbid: vec![0; n * k],
            domain: vec![full; n],
            rank,
            queue: BTreeSet::new(),
            trail: Vec::new(),
            used: 0,
            stats: SearchStats::default(),
        };
        for v in 0..n {
            s.queue.insert(s.key(v));
        }
        s
    }

    fn key(&self, v: usize) -> (u32, std::cmp::Reverse<usize>, usize, usize) {
        (self.domain[v].count_ones(), std::cmp::Reverse(self.adj[v].len()), self.rank[v], v)
    }

    /// Assigns `c` to `v`; returns false on a domain wipe-out (state stays
    /// consistent for undo either way).
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.queue.remove(&self.key(v));
        self.color[v] = c as u8;
        let mut ok = true;
        let adj = self.adj;
        for &w in &adj[v] {
            if self.color[w] != UNCOLORED {
                continue;
            }
            let slot = w * self.k + c;
            self.forbid[slot] += 1;
            if self.forbid[slot] == 1 {
                let key = self.key(w);
                self.queue.remove(&key);
                self.domain[w] &= !(1 << c);
                self.queue.insert(self.key(w));
                self.trail.push((w, c as u8));
                if self.domain[w] == 0 {
                    ok = false;
                }
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize, trail_mark: usize) {
        let c = self.color[v] as usize;
        let adj = self.adj;
        for &w in &adj[v] {
            if self.color[w] == UNCOLORED {
                self.forbid[w * self.k + c] -= 1;
            }
        }
        while self.trail.len() > trail_mark {
            let (w, tc) = self.trail.pop().unwrap();
            let key = self.key(w);
            self.queue.remove(&key);
            self.domain[w] |= 1 << tc;
            self.queue.insert(self.key(w));
        }
        self.color[v] = UNCOLORED;
        self.queue.insert(self.key(v));
    }

    fn over_budget(&self) -> bool {
        if let Some(max) = self.config.node_budget {
            if self.stats.nodes >= max {
                return true;
            }
        }
        if let Some(limit) = self.config.time_budget {
            if self.stats.nodes % 1024 == 1 && self.started.elapsed() >= limit {
                return true;
            }
        }
        false
    }

    fn run(&mut self) -> Outcome {
        let clique = greedy_clique(self.adj, self.k, &self.rank);
        self.stats.clique_size = clique.len();
        if clique.len() > self.k {
            return Outcome::Unsat;
        }
        for (c, &v) in clique.iter().enumerate() {
            if !self.assign(v, c) {
                return Outcome::Unsat;
            }
        }
        self.used = clique.len();

        let mut stack: Vec<Frame> = Vec::new();
        loop {
            // Descend: pick the most saturated vertex.
            let next = self.queue.iter().next().map(|&(_, _, _, v)| v);
            let Some(v) = next else {
                return Outcome::Sat(self.color.iter().map(|&c| c + 1).collect());
            };
            let mut remaining = self.domain[v];
            if self.used < self.k {
                // Unused colors are interchangeable: keep only the first one.
                let unused_mask = !((1u32 << self.used) - 1);
                let opened = remaining & unused_mask;
                if opened != 0 {
                    remaining = (remaining & !unused_mask) | (opened & opened.wrapping_neg());
                }
            }
            stack.push(Frame { vertex: v, remaining, used_before: self.used, trail_mark: self.trail.len() });

            // Try colors, backtracking as needed.
            loop {
                let Some(frame) = stack.last_mut() else {
                    return Outcome::Unsat;
                };
                if frame.remaining == 0 {
                    stack.pop();
                    self.stats.backtracks += 1;
                    match stack.last() {
                        Some(parent) => {
                            let (pv, mark, used) = (parent.vertex, parent.trail_mark, parent.used_before);
                            self.unassign(pv, mark);
                            self.used = used;
                            continue;
                        }
                        None => return Outcome::Unsat,
                    }
                }
                let c = frame.remaining.trailing_zeros() as usize;
                frame.remaining &= frame.remaining - 1;
                let (v, mark, used) = (frame.vertex, frame.trail_mark, frame.used_before);
                self.stats.nodes += 1;
                if self.over_budget() {
                    return Outcome::OutOfBudget;
                }
                self.used = used.max(c + 1);
                if self.assign(v, c) {
                    break;
                }
                self.unassign(v, mark);
                self.used = used;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Vec<[usize; 2]> {
        vec![[0, 1], [0, 2], [1, 2]]
    }

    fn cycle(n: usize) -> Vec<[usize; 2]> {
        (0..n)
            .map(|i| {
                let j = (i + 1) % n;
                [i.min(j), i.max(j)]
            })
            .collect()
    }

    #[test]
    fn triangle_verdicts() {
        let cfg = SolverConfig::default();
        assert_eq!(solve_edges(3, &k3(), 2, &cfg).unwrap().verdict, Verdict::Unsat);
        let sat = solve_edges(3, &k3(), 3, &cfg).unwrap();
        assert_eq!(sat.verdict, Verdict::Sat);
        assert!(sat.verified);
        assert!(verify_edges(3, &k3(), sat.coloring.as_ref().unwrap()).unwrap().proper);
    }

    #[test]
    fn verify_reports_violations() {
        let ok = verify_edges(3, &k3(), &[1, 2, 3]).unwrap();
        assert!(ok.proper && ok.violated.is_empty());
        let bad = verify_edges(3, &k3(), &[1, 1, 2]).unwrap();
        assert_eq!(bad.violated, vec![[0, 1]]);
        assert!(matches!(verify_edges(3, &k3(), &[1, 2]), Err(Error::Input(_))));
    }

    #[test]
    fn brute_force_small_cases() {
        assert_eq!(brute_force_edges(3, &k3(), 4).unwrap(), Some(3));
        assert_eq!(brute_force_edges(5, &cycle(5), 4).unwrap(), Some(3));
        assert_eq!(brute_force_edges(6, &cycle(6), 4).unwrap(), Some(2));
        assert_eq!(brute_force_edges(3, &k3(), 2).unwrap(), None);
        assert!(matches!(brute_force_edges(21, &[], 3), Err(Error::Refused(_))));
    }

    #[test]
    fn odd_cycle_needs_three() {
        let cfg = SolverConfig::default();
        assert_eq!(solve_edges(7, &cycle(7), 2, &cfg).unwrap().verdict, Verdict::Unsat);
        assert_eq!(solve_edges(7, &cycle(7), 3, &cfg).unwrap().verdict, Verdict::Sat);
    }

    #[test]
    fn empty_and_edgeless() {
        let cfg = SolverConfig::default();
        let c = solve_edges(0, &[], 1, &cfg).unwrap();
        assert_eq!(c.verdict, Verdict::Sat);
        let c = solve_edges(4, &[], 1, &cfg).unwrap();
        assert_eq!(c.coloring.unwrap(), vec![1, 1, 1, 1]);
        assert!(solve_edges(2, &[[0, 0]], 2, &cfg).is_err());
        assert!(solve_edges(2, &[], 0, &cfg).is_err());
    }

    #[test]
    fn budgets_yield_indeterminate() {
        // Odd wheel: 4-chromatic, so k = 3 needs real search.
        let n = 42;
        let mut edges = cycle(n - 1);
        for i in 0..n - 1 {
            edges.push([i, n - 1]);
        }
        let cfg = SolverConfig { engine: Engine::Dsatur, node_budget: Some(1), ..Default::default() };
        let c = solve_edges(n, &edges, 3, &cfg).unwrap();
        assert_eq!(c.verdict, Verdict::Indeterminate);
        assert!(c.coloring.is_none());
        let cfg = SolverConfig { node_budget: Some(0), ..Default::default() };
        let c = solve_edges(5, &[], 2, &cfg).unwrap();
        assert_eq!(c.verdict, Verdict::Indeterminate);
        let cfg = SolverConfig { engine: Engine::Dsatur, ..Default::default() };
        assert_eq!(solve_edges(n, &edges, 3, &cfg).unwrap().verdict, Verdict::Unsat);
        assert_eq!(solve_edges(n, &edges, 4, &cfg).unwrap().verdict, Verdict::Sat);
    }

    #[test]
    fn cnf_single_vertex() {
        assert_eq!(cnf_edges(1, &[], 2), "p cnf 2 2\n1 2 0\n-1 -2 0\n");
    }

    #[test]
    fn cnf_triangle_counts() {
        let text = cnf_edges(3, &k3(), 3);
        assert!(text.starts_with("p cnf 9 21\n"));
        assert_eq!(text.lines().count(), 22);
    }

    #[test]
    fn solver_output_parsing() {
        let out = "c comment\ns SATISFIABLE\nv 1 -2 -3 -4\nv 5 -6 0\n";
        let ExternalAnswer::Sat(model) = parse_solver_output(out) else { panic!() };
        assert_eq!(decode_model(&model, 2, 3).unwrap(), vec![1, 2]);
        assert_eq!(parse_solver_output("s UNSATISFIABLE\n"), ExternalAnswer::Unsat);
        assert_eq!(parse_solver_output("garbage"), ExternalAnswer::Unknown);
    }
}
