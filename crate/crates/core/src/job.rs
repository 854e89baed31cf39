//! Job files and the serialized artifacts written by the command line.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::coloring::{is_k_colorable, solve_edges, verify_coloring, ColorCertificate, Engine, SolverConfig, Verdict};
use crate::error::{Error, Result};
use crate::graph::{build_bicycle, build_point_graph, discretize_circle, Interval, PointGraph, TAU_MARGIN};
use crate::hex::{build_rotated_hex_tiling, tile_graph, HexTiling, TileGraph};
use crate::hex_bound::{HexCertificate, MaxEpsilon};
use crate::norm::Norm;
use crate::point::PlanePoint;

pub const FORMAT_VERSION: u32 = 1;

fn check_version(v: u32) -> Result<()> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(Error::Config(format!("unsupported format version {v}, expected {FORMAT_VERSION}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Generator {
    Points {
        points: Vec<PlanePoint>,
    },
    Circle {
        count: usize,
        #[serde(default = "origin")]
        center: PlanePoint,
    },
    Bicycle {
        s: f64,
        count: usize,
    },
    /// Tiles of a hexagonal patch; `h` defaults to the tile diameter.
    Hex {
        scale: f64,
        rings: u32,
        #[serde(default)]
        rotation: f64,
        #[serde(default)]
        h: Option<f64>,
    },
}

fn origin() -> PlanePoint {
    PlanePoint::ORIGIN
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub secs: Option<f64>,
}

/// A k-colorability job.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub version: u32,
    pub generator: Generator,
    #[serde(default = "Norm::euclidean")]
    pub norm: Norm,
    /// Either `interval` or `eps` (for `[1 - eps, 1 + eps]`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<Interval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    pub k: usize,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default)]
    pub engine: Engine,
}

/// The instance a job describes.
#[derive(Clone, Debug)]
pub enum Instance {
    Points(PointGraph),
    Tiles { tiling: HexTiling, graph: TileGraph },
}

impl Instance {
    pub fn vertex_count(&self) -> usize {
        match self {
            Instance::Points(g) => g.vertex_count(),
            Instance::Tiles { graph, .. } => graph.tiles.len(),
        }
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        match self {
            Instance::Points(g) => &g.edges,
            Instance::Tiles { graph, .. } => &graph.edges,
        }
    }

    pub fn provenance(&self) -> String {
        match self {
            Instance::Points(g) => g.provenance.clone(),
            Instance::Tiles { tiling, graph } => format!(
                "hex scale={} rings={} rotation={} h={} shrunk=[{}, {}]",
                tiling.scale,
                tiling.rings,
                tiling.rotation,
                graph.h,
                graph.interval.lo(),
                graph.interval.hi()
            ),
        }
    }
}

impl Job {
    pub fn from_json(text: &str) -> Result<Job> {
        let job: Job = serde_json::from_str(text)?;
        job.validate()?;
        Ok(job)
    }

    pub fn validate(&self) -> Result<()> {
        check_version(self.version)?;
        self.interval()?;
        if self.k == 0 {
            return Err(Error::Config("k must be positive".into()));
        }
        if let Some(secs) = self.budgets.secs {
            if !(secs >= 0.0 && secs.is_finite()) {
                return Err(Error::Config(format!("time budget must be non-negative, got {secs}")));
            }
        }
        Ok(())
    }

    pub fn interval(&self) -> Result<Interval> {
        match (self.interval, self.eps) {
            (Some(i), None) => Ok(i),
            (None, Some(eps)) => Interval::around_unit(eps),
            _ => Err(Error::Config("a job needs exactly one of \"interval\" and \"eps\"".into())),
        }
    }

    pub fn solver_config(&self, seed: Option<u64>) -> SolverConfig {
        SolverConfig {
            engine: self.engine,
            node_budget: self.budgets.nodes,
            time_budget: self.budgets.secs.map(Duration::from_secs_f64),
            seed,
        }
    }

    pub fn build(&self) -> Result<Instance> {
        let interval = self.interval()?;
        let norm = &self.norm;
        Ok(match &self.generator {
            Generator::Points { points } => {
                if let Some(p) = points.iter().find(|p| !p.is_finite()) {
                    return Err(Error::Input(format!("point {:?} is not finite", p)));
                }
                Instance::Points(build_point_graph(points.clone(), norm, interval))
            }
            Generator::Circle { count, center } => {
                let mut g = build_point_graph(discretize_circle(norm, *center, *count)?, norm, interval);
                g.provenance = format!("circle count={count} center=({}, {})", center.x, center.y);
                Instance::Points(g)
            }
            Generator::Bicycle { s, count } => Instance::Points(build_bicycle(norm, *s, *count, interval)?),
            Generator::Hex { scale, rings, rotation, h } => {
                let tiling = build_rotated_hex_tiling(*scale, *rings, *rotation)?;
                let h = h.unwrap_or_else(|| tiling.prototype().diameter(norm));
                let graph = tile_graph(&tiling, norm, interval, h)?;
                Instance::Tiles { tiling, graph }
            }
        })
    }
}

/// UNSAT re-check on the edges that clear the interval by a margin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrictCheck {
    pub margin: f64,
    pub edges: usize,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChiCertificate {
    pub version: u32,
    pub job: Job,
    pub vertices: usize,
    pub edges: usize,
    pub provenance: String,
    pub certificate: ColorCertificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strict: Option<StrictCheck>,
}

/// Builds and solves a job. UNSAT answers on point graphs are repeated on
/// the strict-margin subgraph, so the lower bound does not hinge on edges
/// whose length is within rounding of an interval endpoint.
pub fn run_chi_check(job: &Job, seed: Option<u64>) -> Result<ChiCertificate> {
    job.validate()?;
    let instance = job.build()?;
    let config = job.solver_config(seed);
    let (certificate, strict) = match &instance {
        Instance::Points(g) => {
            let cert = is_k_colorable(g, job.k, &config)?;
            let strict = if cert.verdict == Verdict::Unsat {
                let sub = g.strict_subgraph(TAU_MARGIN);
                let verdict = is_k_colorable(&sub, job.k, &config)?.verdict;
                Some(StrictCheck { margin: TAU_MARGIN, edges: sub.edges.len(), verdict })
            } else {
                None
            };
            (cert, strict)
        }
        Instance::Tiles { graph, .. } => {
            let mut cert = solve_edges(graph.tiles.len(), &graph.edges, job.k, &config)?;
            if !graph.self_conflicts.is_empty() {
                // A tile at a forbidden distance from itself has no color.
                cert.verdict = Verdict::Unsat;
                cert.coloring = None;
                cert.verified = false;
            }
            (cert, None)
        }
    };
    Ok(ChiCertificate {
        version: FORMAT_VERSION,
        job: job.clone(),
        vertices: instance.vertex_count(),
        edges: instance.edges().len(),
        provenance: instance.provenance(),
        certificate,
        strict,
    })
}

impl ChiCertificate {
    /// The verdict a fresh check of this certificate supports: a SAT coloring
    /// is re-verified on the rebuilt instance, anything else is re-solved.
    pub fn recheck(&self, seed: Option<u64>) -> Result<Verdict> {
        check_version(self.version)?;
        match (&self.certificate.coloring, self.certificate.verdict) {
            (Some(colors), Verdict::Sat) => {
                let instance = self.job.build()?;
                let proper = match &instance {
                    Instance::Points(g) => verify_coloring(g, colors)?.proper,
                    Instance::Tiles { graph, .. } => {
                        graph.self_conflicts.is_empty()
                            && crate::coloring::verify_edges(graph.tiles.len(), &graph.edges, colors)?.proper
                    }
                };
                Ok(if proper && colors.iter().all(|&c| (1..=self.certificate.k as u8).contains(&c)) {
                    Verdict::Sat
                } else {
                    Verdict::Indeterminate
                })
            }
            _ => Ok(run_chi_check(&self.job, seed)?.certificate.verdict),
        }
    }
}

/// Every artifact the command line writes, tagged by `kind`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Artifact {
    ChiCertificate(ChiCertificate),
    PointGraph {
        version: u32,
        graph: PointGraph,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        coloring: Option<Vec<u8>>,
    },
    HexTiling {
        version: u32,
        tiling: HexTiling,
    },
    HexCertificate {
        version: u32,
        certificate: HexCertificate,
    },
    MaxEpsilon {
        version: u32,
        result: MaxEpsilon,
    },
}

impl Artifact {
    pub fn from_json(text: &str) -> Result<Artifact> {
        let a: Artifact = serde_json::from_str(text)?;
        check_version(a.version())?;
        Ok(a)
    }

    pub fn version(&self) -> u32 {
        match self {
            Artifact::ChiCertificate(c) => c.version,
            Artifact::PointGraph { version, .. }
            | Artifact::HexTiling { version, .. }
            | Artifact::HexCertificate { version, .. }
            | Artifact::MaxEpsilon { version, .. } => *version,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("artifacts serialize")
    }
}
