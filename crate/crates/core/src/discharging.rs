//! Charge bookkeeping for the girth-6 discharging argument on graphs of
//! thickness `t`.
//!
//! Each layer `G_i` (a plane spanning subgraph) starts with
//! `μ(f) = d(f) - 6` on faces, `μ(v) = 2 d_i(v) - 6` on vertices and
//! `μ(c) = 6` on components; Euler's formula makes every layer sum to `-6`.
//! The single rule moves charge between vertices using degrees in the union
//! graph: a vertex of degree below `3t` receives 1 from each neighbor.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Girth, Graph};
use crate::planarity::{planar_embed, EdgePartition, PartitionError, PlaneEmbedding};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error("layer {layer} has {found} vertices, expected {expected}")]
    VertexSetMismatch { layer: usize, expected: usize, found: usize },
    #[error("embedding of layer {0} does not match its graph")]
    EmbeddingMismatch(usize),
    #[error("expected {expected} layers, got {found}")]
    LayerCount { expected: usize, found: usize },
    #[error("invalid partition: {0}")]
    Partition(#[from] PartitionError),
    #[error("layer {layer} charges sum to {sum}, not -6")]
    Euler { layer: usize, sum: i64 },
    #[error("need at least one layer")]
    NoLayers,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerCharges {
    pub faces: Vec<i64>,
    pub components: Vec<i64>,
    pub vertices: Vec<i64>,
}

impl LayerCharges {
    pub fn total(&self) -> i64 {
        self.faces.iter().chain(&self.components).chain(&self.vertices).sum()
    }
}

/// Charges per layer. Transfers made by the rule are booked against layer
/// 0's vertex map; only the per-vertex sum over layers is ever inspected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeLedger {
    pub layers: Vec<LayerCharges>,
}

impl ChargeLedger {
    pub fn t(&self) -> usize {
        self.layers.len()
    }

    pub fn total(&self) -> i64 {
        self.layers.iter().map(LayerCharges::total).sum()
    }

    /// `Σ_i μ_i(v)`.
    pub fn vertex_total(&self, v: usize) -> i64 {
        self.layers.iter().map(|l| l.vertices[v]).sum()
    }
}

/// Initial charges of a list of plane layers on a common vertex set.
/// Fails if some layer does not sum to `-6`, which can only mean a broken
/// embedding.
pub fn initial_charges(layers: &[(Graph, PlaneEmbedding)]) -> Result<ChargeLedger, DischargeError> {
    let Some((first, _)) = layers.first() else {
        return Err(DischargeError::NoLayers);
    };
    let n = first.n();
    let mut out = Vec::with_capacity(layers.len());
    for (i, (h, emb)) in layers.iter().enumerate() {
        if h.n() != n {
            return Err(DischargeError::VertexSetMismatch { layer: i, expected: n, found: h.n() });
        }
        if emb.rotation.len() != n || !emb.euler_holds(h) {
            return Err(DischargeError::EmbeddingMismatch(i));
        }
        let layer = LayerCharges {
            faces: emb.faces.iter().map(|f| f.degree() as i64 - 6).collect(),
            components: vec![6; emb.component_count],
            vertices: (0..n).map(|v| 2 * h.degree(v) as i64 - 6).collect(),
        };
        let sum = layer.total();
        if sum != -6 {
            return Err(DischargeError::Euler { layer: i, sum });
        }
        out.push(layer);
    }
    Ok(ChargeLedger { layers: out })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transfer {
    pub from: usize,
    pub to: usize,
    pub amount: i64,
}

/// Applies the rule with degrees read in the union graph `g`. Returns the
/// new ledger and every unit transfer, ordered by receiver then sender.
pub fn apply_rule(g: &Graph, ledger: &ChargeLedger, t: usize) -> (ChargeLedger, Vec<Transfer>) {
    let mut out = ledger.clone();
    let mut transfers = Vec::new();
    for v in 0..g.n() {
        if g.degree(v) < 3 * t {
            for &w in g.neighbors(v) {
                out.layers[0].vertices[w] -= 1;
                out.layers[0].vertices[v] += 1;
                transfers.push(Transfer { from: w, to: v, amount: 1 });
            }
        }
    }
    debug_assert_eq!(out.total(), ledger.total());
    (out, transfers)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceViolation {
    pub layer: usize,
    pub face: usize,
    pub degree: usize,
    pub charge: i64,
    /// The layer has no cycle, so its one face has degree `2m` regardless
    /// of girth.
    pub forest_layer: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexTrace {
    pub vertex: usize,
    pub degree: usize,
    /// `μ_i(v)` per layer before the rule.
    pub initial: Vec<i64>,
    pub received: i64,
    pub sent: i64,
    pub final_charge: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub t: usize,
    /// Total charge before the rule.
    pub s: i64,
    /// Total charge after the rule.
    pub s_star: i64,
    pub face_violations: Vec<FaceViolation>,
    /// `(layer, component, charge)` with negative charge; never expected.
    pub component_violations: Vec<(usize, usize, i64)>,
    pub vertex_violations: Vec<VertexTrace>,
    pub vertex_charges: Vec<i64>,
    pub degrees: Vec<usize>,
    pub girth: Girth,
    pub min_degree: usize,
    pub girth_at_least_6: bool,
    pub min_degree_at_least_2t_minus_1: bool,
    /// `⌊3t/2⌋`, the neighborhood radius the degree-counting step uses.
    pub easy_radius_used: usize,
    /// Largest `n` with `4n + 2 <= 6t + 1`, i.e. `⌊(6t - 1)/4⌋`; the
    /// counting step is only justified up to this radius.
    pub easy_radius_valid: usize,
}

impl CertificateReport {
    /// Face violations on layers that contain a cycle; with girth at least
    /// 6 there should be none.
    pub fn cyclic_face_violations(&self) -> impl Iterator<Item = &FaceViolation> {
        self.face_violations.iter().filter(|f| !f.forest_layer)
    }

    pub fn is_clean(&self) -> bool {
        self.face_violations.is_empty() && self.component_violations.is_empty() && self.vertex_violations.is_empty()
    }
}

/// Embeds every class of a validated partition.
pub fn embed_partition(g: &Graph, partition: &EdgePartition) -> Result<Vec<PlaneEmbedding>, DischargeError> {
    partition.validate(g)?;
    Ok(partition
        .layers(g)
        .iter()
        .map(|h| planar_embed(h).embedding().cloned().expect("validated classes are planar"))
        .collect())
}

/// Builds the ledger for `(g, partition, embeddings)`, applies the rule and
/// reports which of the nonnegativity conditions fail and where.
pub fn verify_certificate(
    g: &Graph,
    partition: &EdgePartition,
    embeddings: &[PlaneEmbedding],
    t: usize,
) -> Result<CertificateReport, DischargeError> {
    partition.validate(g)?;
    if partition.t() != t || embeddings.len() != t {
        return Err(DischargeError::LayerCount { expected: t, found: partition.t().min(embeddings.len()) });
    }
    let layers: Vec<(Graph, PlaneEmbedding)> = partition.layers(g).into_iter().zip(embeddings.iter().cloned()).collect();
    for (i, (h, emb)) in layers.iter().enumerate() {
        if PlaneEmbedding::from_rotation(h, emb.rotation.clone()).ok().as_ref() != Some(emb) {
            return Err(DischargeError::EmbeddingMismatch(i));
        }
    }
    let ledger = initial_charges(&layers)?;
    let (after, transfers) = apply_rule(g, &ledger, t);

    let mut face_violations = Vec::new();
    let mut component_violations = Vec::new();
    for (i, layer) in after.layers.iter().enumerate() {
        let forest_layer = layers[i].0.girth() == Girth::Acyclic;
        for (f, &charge) in layer.faces.iter().enumerate() {
            if charge < 0 {
                let degree = embeddings[i].faces[f].degree();
                face_violations.push(FaceViolation { layer: i, face: f, degree, charge, forest_layer });
            }
        }
        for (c, &charge) in layer.components.iter().enumerate() {
            if charge < 0 {
                component_violations.push((i, c, charge));
            }
        }
    }
    let vertex_charges: Vec<i64> = (0..g.n()).map(|v| after.vertex_total(v)).collect();
    let vertex_violations = (0..g.n())
        .filter(|&v| vertex_charges[v] < 0)
        .map(|v| VertexTrace {
            vertex: v,
            degree: g.degree(v),
            initial: ledger.layers.iter().map(|l| l.vertices[v]).collect(),
            received: transfers.iter().filter(|x| x.to == v).map(|x| x.amount).sum(),
            sent: transfers.iter().filter(|x| x.from == v).map(|x| x.amount).sum(),
            final_charge: vertex_charges[v],
        })
        .collect();
    let girth = g.girth();
    let min_degree = g.min_degree().unwrap_or(0);
    Ok(CertificateReport {
        t,
        s: ledger.total(),
        s_star: after.total(),
        face_violations,
        component_violations,
        vertex_violations,
        vertex_charges,
        degrees: g.degrees(),
        girth,
        min_degree,
        girth_at_least_6: girth.at_least(6),
        min_degree_at_least_2t_minus_1: min_degree + 1 >= 2 * t,
        easy_radius_used: 3 * t / 2,
        easy_radius_valid: (6 * t - 1) / 4,
    })
}

/// Counting check for graphs whose low-degree vertices `Y` (degree between
/// 2 and `2t - 1`) are few: each has charge at least `3d(y) - 6t`, and the
/// total deficit `6|Y|(t-1)` is covered by the surplus exactly when
/// `|Y| < 2t/(t-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurplusAnalysis {
    pub t: usize,
    pub y: Vec<usize>,
    /// `(y, 3d(y) - 6t)`.
    pub deficits: Vec<(usize, i64)>,
    /// `-6|Y|(t-1)`.
    pub aggregate_bound: i64,
    /// `None` when `t = 1` (threshold undefined).
    pub applies: Option<bool>,
    /// Largest `|Y|` for which the test passes.
    pub max_admissible: Option<usize>,
}

/// `|Y| < 2t/(t-1)` in integers; `None` for `t <= 1`.
pub fn surplus_threshold_holds(y_count: usize, t: usize) -> Option<bool> {
    (t >= 2).then(|| y_count * (t - 1) < 2 * t)
}

pub fn max_admissible_y(t: usize) -> Option<usize> {
    // Largest y with y(t-1) < 2t.
    (t >= 2).then(|| (2 * t - 1) / (t - 1))
}

pub fn surplus_analysis(report: &CertificateReport) -> SurplusAnalysis {
    let t = report.t;
    let y: Vec<usize> =
        (0..report.degrees.len()).filter(|&v| (2..2 * t).contains(&report.degrees[v])).collect();
    let deficits = y.iter().map(|&v| (v, 3 * report.degrees[v] as i64 - 6 * t as i64)).collect();
    SurplusAnalysis {
        t,
        aggregate_bound: -6 * y.len() as i64 * (t as i64 - 1),
        applies: surplus_threshold_holds(y.len(), t),
        max_admissible: max_admissible_y(t),
        y,
        deficits,
    }
}
