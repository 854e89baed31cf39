//! Deterministic SVG drawings of graphs, colorings and tilings.

use std::fmt::Write;

use crate::error::Result;
use crate::hex::{build_rotated_hex_tiling, HexTiling};
use crate::job::{Artifact, Instance};
use crate::point::PlanePoint;

/// Fill colors for colors `1..=7`; larger colors wrap around.
pub const PALETTE: [&str; 7] = ["#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6"];
const UNCOLORED: &str = "#9e9e9e";
const CANVAS_PX: f64 = 800.0;

fn fill(color: Option<u8>) -> &'static str {
    match color {
        Some(c) if c > 0 => PALETTE[(c as usize - 1) % PALETTE.len()],
        _ => UNCOLORED,
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Scene {
    pub polygons: Vec<(Vec<PlanePoint>, Option<u8>)>,
    pub segments: Vec<(PlanePoint, PlanePoint)>,
    pub disks: Vec<(PlanePoint, Option<u8>)>,
}

impl Scene {
    fn tiling(tiling: &HexTiling, colors: Option<&[u8]>) -> Scene {
        let polygons = tiling
            .tiles
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let color = colors.map_or(Some(t.color), |c| c.get(i).copied());
                (tiling.polygon(t.axial()).vertices, color)
            })
            .collect();
        Scene { polygons, ..Scene::default() }
    }

    fn graph(points: &[PlanePoint], edges: &[[usize; 2]], colors: Option<&[u8]>) -> Scene {
        Scene {
            polygons: Vec::new(),
            segments: edges.iter().map(|&[a, b]| (points[a], points[b])).collect(),
            disks: points.iter().enumerate().map(|(i, &p)| (p, colors.and_then(|c| c.get(i).copied()))).collect(),
        }
    }

    pub fn from_artifact(artifact: &Artifact) -> Result<Scene> {
        Ok(match artifact {
            Artifact::ChiCertificate(c) => {
                let colors = c.certificate.coloring.as_deref();
                match c.job.build()? {
                    Instance::Points(g) => Scene::graph(&g.points, &g.edges, colors),
                    Instance::Tiles { tiling, .. } => Scene::tiling(&tiling, colors.or(Some(&[]))),
                }
            }
            Artifact::PointGraph { graph, coloring, .. } => {
                Scene::graph(&graph.points, &graph.edges, coloring.as_deref())
            }
            Artifact::HexTiling { tiling, .. } => Scene::tiling(tiling, None),
            Artifact::HexCertificate { certificate: c, .. } => {
                Scene::tiling(&build_rotated_hex_tiling(c.scale, c.rings, c.rotation)?, None)
            }
            Artifact::MaxEpsilon { result, .. } => {
                let c = &result.certificate;
                Scene::tiling(&build_rotated_hex_tiling(c.scale, c.rings, c.rotation)?, None)
            }
        })
    }

    fn points(&self) -> impl Iterator<Item = PlanePoint> + '_ {
        self.polygons
            .iter()
            .flat_map(|p| p.0.iter().copied())
            .chain(self.segments.iter().flat_map(|s| [s.0, s.1]))
            .chain(self.disks.iter().map(|d| d.0))
    }

    /// SVG text; model `y` points up. Identical scenes give identical bytes.
    pub fn to_svg(&self) -> String {
        let mut out = String::new();
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in self.points() {
            x0 = x0.min(p.x);
            y0 = y0.min(p.y);
            x1 = x1.max(p.x);
            y1 = y1.max(p.y);
        }
        if !x0.is_finite() {
            out.push_str(r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 1 1">"#);
            out.push_str("\n</svg>\n");
            return out;
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-9);
        let pad = 0.05 * span;
        let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
        let height_px = (CANVAS_PX * h / w).round().max(1.0);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS_PX}" height="{height_px}" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
            x0 - pad,
            -(y1 + pad),
            w,
            h
        );
        let stroke = span / 1000.0;
        for (vertices, color) in &self.polygons {
            let pts: Vec<String> = vertices.iter().map(|p| format!("{:.6},{:.6}", p.x, -p.y)).collect();
            let _ = writeln!(
                out,
                r##"<polygon points="{}" fill="{}" stroke="#000000" stroke-width="{stroke:.6}"/>"##,
                pts.join(" "),
                fill(*color)
            );
        }
        if !self.segments.is_empty() {
            let _ = writeln!(out, r##"<g stroke="#404040" stroke-opacity="0.25" stroke-width="{:.6}">"##, stroke * 0.5);
            for (a, b) in &self.segments {
                let _ = writeln!(out, r#"<line x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}"/>"#, a.x, -a.y, b.x, -b.y);
            }
            out.push_str("</g>\n");
        }
        let r = span / 250.0;
        for (p, color) in &self.disks {
            let _ = writeln!(out, r#"<circle cx="{:.6}" cy="{:.6}" r="{r:.6}" fill="{}"/>"#, p.x, -p.y, fill(*color));
        }
        out.push_str("</svg>\n");
        out
    }
}
