//! `hexagon`: the phase portrait of `F̃_ω = drop_signs ∘ F_ω` on the closed
//! Jacobi cell for `n = 3`.
//!
//! Interior points come from positive Lanczos weights on a barycentric grid.
//! The six edges are `T̃(θ) ⊕ λ_k` (deflation edges, `b1 = 0`) and
//! `λ_k ⊕ T̃(θ)` (`b2 = 0`), where `T̃(θ)` is the 2×2 Jacobi matrix with the
//! other two eigenvalues rotated by `θ ∈ (0, π/2)`. The vertices are the six
//! diagonal matrices.

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::format::{g17, CsvTable};
use crate::dynamics::drop_signs;
use crate::error::{Error, Result};
use crate::geometry::SpectrumInfo;
use crate::linalg::{eigenvalues, lanczos_from_spectrum, SymTridiag};
use crate::strategy::{ShiftStrategy, StrategyKind};

pub const HEXAGON_HEADER: [&str; 13] = [
    "index", "kind", "t11", "t22", "b1", "b2", "img_t11", "img_t22", "img_b1", "img_b2",
    "ss_dist", "component", "fixed",
];

/// Tolerance for the `fixed` flag.
pub const FIXED_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    Interior,
    Edge,
    Vertex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HexEdge {
    pub id: usize,
    /// `true` for `b1 = 0` edges.
    pub deflation: bool,
    /// The eigenvalue split off by the edge.
    pub split: f64,
    /// Endpoint vertex indices.
    pub ends: [usize; 2],
    pub samples: usize,
    /// Largest `|b1|` (deflation edges) or `|b2|` (others) over samples.
    pub max_zero_entry: f64,
    /// Largest distance from an image to the edge's closure.
    pub max_escape: f64,
    /// Largest `‖F̃_ω(T) - T‖_max` over samples.
    pub max_motion: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HexagonSummary {
    pub spectrum: Vec<f64>,
    pub strategy: String,
    pub grid: usize,
    pub vertices: Vec<[f64; 3]>,
    pub max_vertex_motion: f64,
    pub edges: Vec<HexEdge>,
    /// Edge ids in cyclic order around the boundary.
    pub cycle: Vec<usize>,
    /// Deflation flags along the cycle alternate.
    pub alternating: bool,
    /// The deflation edge splitting off the middle eigenvalue.
    pub bottom_edge: usize,
    pub bottom_edge_fixed: bool,
    pub max_isospectral_drift: f64,
    pub min_image_sub: f64,
    pub failures: usize,
}

pub struct Hexagon {
    pub csv: CsvTable,
    pub summary: HexagonSummary,
}

/// `T̃(θ)`: the 2×2 matrix with eigenvalues `p, q` and eigenvectors rotated
/// by `θ`, with non-negative off-diagonal for `θ ∈ [0, π/2]` and `p < q`.
pub fn rotated_pair(p: f64, q: f64, theta: f64) -> (f64, f64, f64) {
    let (c, s) = (theta.cos(), theta.sin());
    (p * c * c + q * s * s, p * s * s + q * c * c, (q - p) * s * c)
}

fn sample(t: &SymTridiag, omega: &StrategyKind) -> Result<SymTridiag> {
    Ok(drop_signs(&omega.step(t)?.next))
}

fn nearest_index(lambda: &[f64], x: f64) -> usize {
    let mut best = 0;
    for (j, l) in lambda.iter().enumerate() {
        if (l - x).abs() < (lambda[best] - x).abs() {
            best = j;
        }
    }
    best
}

pub fn cmd_hexagon(cfg: &ExperimentConfig) -> Result<Hexagon> {
    let info = SpectrumInfo::new(&cfg.spectrum)?;
    if info.n() != 3 {
        return Err(Error::InvalidInput("the hexagon needs a spectrum of size 3".into()));
    }
    let l = info.lambda.clone();
    let omega = StrategyKind::Wilkinson;
    let n_grid = cfg.hexagon_grid;
    let mut csv = CsvTable::new(&HEXAGON_HEADER);
    let mut index = 0usize;
    let mut drift: f64 = 0.0;
    let mut min_image_sub = f64::INFINITY;
    let mut failures = 0;

    let mut emit = |kind: PointKind, t: &SymTridiag, csv: &mut CsvTable| -> Option<SymTridiag> {
        let img = match sample(t, &omega) {
            Ok(x) => x,
            Err(e) => {
                eprintln!("hexagon point {index}: {e}");
                failures += 1;
                index += 1;
                return None;
            }
        };
        if let (Ok(a), Ok(b)) = (eigenvalues(t), eigenvalues(&img)) {
            for j in 0..3 {
                drift = drift.max((a[j] - l[j]).abs()).max((b[j] - l[j]).abs());
            }
        }
        min_image_sub = min_image_sub.min(img.sub()[0]).min(img.sub()[1]);
        let fixed = img.max_diff(t) <= FIXED_TOL;
        csv.push(vec![
            index.to_string(),
            serde_json::to_value(kind)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
            g17(t.diag()[0]),
            g17(t.diag()[1]),
            g17(t.b()),
            g17(t.sub()[0]),
            g17(img.diag()[0]),
            g17(img.diag()[1]),
            g17(img.b()),
            g17(img.sub()[0]),
            g17(omega.singular_support_distance(t)),
            nearest_index(&l, t.corner()).to_string(),
            u8::from(fixed).to_string(),
        ]);
        index += 1;
        Some(img)
    };

    // vertices
    let perms = [[0, 1, 2], [1, 0, 2], [1, 2, 0], [2, 1, 0], [2, 0, 1], [0, 2, 1]];
    let vertices: Vec<[f64; 3]> = perms.iter().map(|p| [l[p[0]], l[p[1]], l[p[2]]]).collect();
    let mut max_vertex_motion: f64 = 0.0;
    for v in &vertices {
        let t = SymTridiag::diagonal(v)?;
        match emit(PointKind::Vertex, &t, &mut csv) {
            Some(img) => max_vertex_motion = max_vertex_motion.max(img.max_diff(&t)),
            None => max_vertex_motion = f64::INFINITY,
        }
    }
    let vertex_of = |d: [f64; 3]| vertices.iter().position(|v| *v == d).expect("vertex");

    // edges
    let mut edges = Vec::new();
    for deflation in [true, false] {
        for k in 0..3 {
            let rest: Vec<f64> = info.without(k);
            let (p, q) = (rest[0], rest[1]);
            let ends = if deflation {
                [vertex_of([p, q, l[k]]), vertex_of([q, p, l[k]])]
            } else {
                [vertex_of([l[k], p, q]), vertex_of([l[k], q, p])]
            };
            let mut edge = HexEdge {
                id: edges.len(),
                deflation,
                split: l[k],
                ends,
                samples: 0,
                max_zero_entry: 0.0,
                max_escape: 0.0,
                max_motion: 0.0,
            };
            for j in 1..n_grid {
                let theta = std::f64::consts::FRAC_PI_2 * j as f64 / n_grid as f64;
                let (a, b, c) = rotated_pair(p, q, theta);
                let t = if deflation {
                    SymTridiag::new(vec![a, b, l[k]], vec![c, 0.0])?
                } else {
                    SymTridiag::new(vec![l[k], a, b], vec![0.0, c])?
                };
                edge.samples += 1;
                edge.max_zero_entry = edge
                    .max_zero_entry
                    .max(if deflation { t.b().abs() } else { t.sub()[0].abs() });
                match emit(PointKind::Edge, &t, &mut csv) {
                    Some(img) => {
                        let escape = if deflation {
                            img.b().abs().max((img.corner() - l[k]).abs())
                        } else {
                            img.sub()[0].abs().max((img.diag()[0] - l[k]).abs())
                        };
                        edge.max_escape = edge.max_escape.max(escape);
                        edge.max_motion = edge.max_motion.max(img.max_diff(&t));
                    }
                    None => edge.max_motion = f64::INFINITY,
                }
            }
            edges.push(edge);
        }
    }

    // interior: squared first components on a barycentric grid
    for a in 1..n_grid {
        for b in 1..n_grid - a {
            let c = n_grid - a - b;
            let w: Vec<f64> = [a, b, c]
                .iter()
                .map(|&x| (x as f64 / n_grid as f64).sqrt())
                .collect();
            let t = lanczos_from_spectrum(&l, &w)?;
            emit(PointKind::Interior, &t, &mut csv);
        }
    }

    let cycle = boundary_cycle(&edges);
    let flags: Vec<bool> = cycle.iter().map(|&e| edges[e].deflation).collect();
    let alternating = (0..flags.len()).all(|j| flags[j] != flags[(j + 1) % flags.len()]);
    let bottom_edge = edges
        .iter()
        .position(|e| e.deflation && e.split == l[1])
        .expect("three deflation edges");
    let bottom_edge_fixed = edges[bottom_edge].max_motion <= FIXED_TOL;

    Ok(Hexagon {
        csv,
        summary: HexagonSummary {
            spectrum: l,
            strategy: omega.name(),
            grid: n_grid,
            vertices,
            max_vertex_motion,
            edges,
            cycle,
            alternating,
            bottom_edge,
            bottom_edge_fixed,
            max_isospectral_drift: drift,
            min_image_sub,
            failures,
        },
    })
}

/// Walks the edge graph starting from edge 0.
fn boundary_cycle(edges: &[HexEdge]) -> Vec<usize> {
    let mut cycle = vec![0];
    let mut at = edges[0].ends[1];
    while cycle.len() < edges.len() {
        let last = *cycle.last().expect("non-empty");
        let Some(next) = edges
            .iter()
            .position(|e| e.id != last && e.ends.contains(&at))
        else {
            break;
        };
        if next == cycle[0] {
            break;
        }
        at = if edges[next].ends[0] == at {
            edges[next].ends[1]
        } else {
            edges[next].ends[0]
        };
        cycle.push(next);
    }
    cycle
}
