//! Odd colorings: the parity condition, exact solvers, and the constructive
//! extension procedures used to reduce critical configurations.

pub mod extend;
pub mod solver;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub use extend::{
    extend_after_edge_pair_deletion, extend_after_vertex_deletion, is_n_easy, low_even_neighbors, n_easy_preconditions,
    n_easy_recolor, LemmaTrace, RecolorStep,
};
pub use solver::{
    chromatic_number, max_clique, odd_chromatic_number, odd_chromatic_number_with, odd_colorable, Decision,
    OddChromatic, Refutation, SolverOptions,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant broken: {0}")]
    Invariant(String),
    #[error("deficiency set failed to shrink at step {}", .0.steps.len())]
    LemmaTrace(Box<LemmaTrace>),
}

/// A total map from vertices to colors `1, 2, ..`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexColoring {
    colors: Vec<u32>,
}

impl VertexColoring {
    pub fn new(colors: Vec<u32>) -> Result<Self, ColoringError> {
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(ColoringError::Domain(format!("vertex {v} has no color")));
        }
        Ok(VertexColoring { colors })
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Largest color in use.
    pub fn palette_size(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn to_json(&self) -> ColoringFile {
        ColoringFile {
            colors: self.colors.iter().enumerate().map(|(v, &c)| (v, c)).collect(),
            palette_size: self.palette_size(),
        }
    }

    /// Reads the JSON form; every vertex `0..n` must be present.
    pub fn from_json(file: &ColoringFile, n: usize) -> Result<Self, ColoringError> {
        if let Some((&v, _)) = file.colors.range(n..).next() {
            return Err(ColoringError::Domain(format!("vertex {v} does not exist (n = {n})")));
        }
        let colors: Vec<u32> = (0..n)
            .map(|v| {
                file.colors
                    .get(&v)
                    .copied()
                    .ok_or_else(|| ColoringError::Domain(format!("vertex {v} has no color")))
            })
            .collect::<Result<_, _>>()?;
        VertexColoring::new(colors)
    }
}

/// JSON shape of a coloring: `{"colors": {"0": 1, ..}, "palette_size": k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub colors: BTreeMap<usize, u32>,
    pub palette_size: u32,
}

/// Coloring of `G - D` for some deleted set `D`, indexed by `G`'s vertices;
/// color 0 marks the deleted vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialColoring {
    colors: Vec<u32>,
}

impl PartialColoring {
    pub fn new(colors: Vec<u32>) -> Self {
        PartialColoring { colors }
    }

    /// Lifts a coloring of a subgraph obtained with
    /// [`Graph::remove_vertices`] back to `n` vertices.
    pub fn lift(sub: &VertexColoring, new_to_old: &[usize], n: usize) -> Self {
        let mut colors = vec![0; n];
        for (i, &old) in new_to_old.iter().enumerate() {
            colors[old] = sub.color(i);
        }
        PartialColoring { colors }
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn uncolored(&self) -> Vec<usize> {
        (0..self.colors.len()).filter(|&v| self.colors[v] == 0).collect()
    }
}

/// `L*(v)` and the chosen `φ*(v)` for one vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexLabel {
    pub vertex: usize,
    pub color: u32,
    /// Colors of odd multiplicity in `N(v)`, ascending.
    pub l_star: Vec<u32>,
    /// `min L*(v)`, or 0 when `L*(v)` is empty.
    pub phi_star: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddVerdict {
    pub is_proper: bool,
    /// Non-isolated vertices with empty `L*`.
    pub failing_parity: Vec<usize>,
    pub per_vertex: Vec<VertexLabel>,
}

impl OddVerdict {
    pub fn is_odd(&self) -> bool {
        self.is_proper && self.failing_parity.is_empty()
    }
}

/// Colors of odd multiplicity among the colored neighbors of `v`
/// (color 0 is ignored).
pub fn odd_colors(g: &Graph, colors: &[u32], v: usize) -> Vec<u32> {
    let mut seen: Vec<u32> = g.neighbors(v).iter().map(|&w| colors[w]).filter(|&c| c != 0).collect();
    seen.sort_unstable();
    let mut out = Vec::new();
    let mut i = 0;
    while i < seen.len() {
        let mut j = i;
        while j < seen.len() && seen[j] == seen[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(seen[i]);
        }
        i = j;
    }
    out
}

/// `φ*(v) = min L*(v)`, or 0.
pub fn phi_star(g: &Graph, colors: &[u32], v: usize) -> u32 {
    odd_colors(g, colors, v).first().copied().unwrap_or(0)
}

pub fn odd_verdict(g: &Graph, coloring: &VertexColoring) -> Result<OddVerdict, ColoringError> {
    if coloring.len() != g.n() {
        return Err(ColoringError::Domain(format!(
            "coloring covers {} vertices, graph has {}",
            coloring.len(),
            g.n()
        )));
    }
    Ok(verdict_on(g, coloring.colors()))
}

/// Verdict for the subgraph induced by the colored vertices of a partial
/// coloring.
pub fn partial_verdict(g: &Graph, coloring: &PartialColoring) -> OddVerdict {
    verdict_on(g, coloring.colors())
}

fn verdict_on(g: &Graph, colors: &[u32]) -> OddVerdict {
    let present = |v: usize| colors[v] != 0;
    let is_proper = g.edges().all(|(u, v)| !present(u) || !present(v) || colors[u] != colors[v]);
    let mut failing = Vec::new();
    let mut per_vertex = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        if !present(v) {
            continue;
        }
        let l_star = odd_colors(g, colors, v);
        let has_colored_neighbor = g.neighbors(v).iter().any(|&w| present(w));
        if l_star.is_empty() && has_colored_neighbor {
            failing.push(v);
        }
        let phi_star = l_star.first().copied().unwrap_or(0);
        per_vertex.push(VertexLabel { vertex: v, color: colors[v], l_star, phi_star });
    }
    OddVerdict { is_proper, failing_parity: failing, per_vertex }
}
