//! Seeded random instances for the extension procedures and corpus-wide
//! checks of degree/thickness and charge invariants.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::coloring::{
    extend_after_edge_pair_deletion, extend_after_vertex_deletion, is_n_easy, low_even_neighbors, n_easy_preconditions,
    n_easy_recolor, odd_colorable, odd_verdict, ColoringError, Decision, PartialColoring, VertexColoring,
};
use crate::discharging::{embed_partition, verify_certificate, CertificateReport};
use crate::generate::random_gnp;
use crate::graph::Graph;
use crate::planarity::{thickness, EdgePartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionOp {
    VertexDeletion,
    EdgePairDeletion,
    NEasy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionInstance {
    pub op: ExtensionOp,
    pub graph: Graph,
    /// Deleted vertices: `[v]`, `[v0, v1]`, or `[v]` for the n-easy case
    /// (where `X` is derived from the graph).
    pub vertices: Vec<usize>,
    pub k: usize,
    pub n: usize,
    pub phi: PartialColoring,
}

/// Outcome counts over a batch of random instances.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionStats {
    pub instances: usize,
    pub passed: usize,
    /// Deficiency-loop traces that failed to shrink (findings, not crashes).
    pub non_shrink: usize,
    /// Descriptions of outputs that were rejected or not odd.
    pub failures: Vec<String>,
}

/// Solves `G - deleted` with `palette` colors and lifts the result.
fn coloring_without(g: &Graph, deleted: &[usize], palette: usize) -> Option<PartialColoring> {
    let (sub, map) = g.remove_vertices(deleted);
    if sub.n() == 0 {
        return Some(PartialColoring::new(vec![0; g.n()]));
    }
    match odd_colorable(&sub, palette, Budget::nodes(2_000_000)) {
        Decision::Yes(c) => Some(PartialColoring::lift(&c, &map, g.n())),
        _ => None,
    }
}

fn random_base<R: Rng + ?Sized>(rng: &mut R) -> Graph {
    let n = rng.gen_range(3..=8);
    let p = rng.gen_range(0.2..0.6);
    random_gnp(n, p, rng)
}

/// Attaches a new vertex with `d` random neighbors among `0..g.n()`.
fn attach<R: Rng + ?Sized>(g: &mut Graph, d: usize, rng: &mut R) -> usize {
    let mut pool: Vec<usize> = (0..g.n()).collect();
    pool.shuffle(rng);
    let v = g.add_vertex();
    for &w in &pool[..d] {
        g.add_edge(v, w).unwrap();
    }
    v
}

pub fn random_vertex_deletion_instance<R: Rng + ?Sized>(rng: &mut R) -> ExtensionInstance {
    loop {
        let k = rng.gen_range(4..=10);
        let degrees: Vec<usize> = (1..k / 2).filter(|d| d % 2 == 1).collect();
        let d = *degrees.choose(rng).unwrap();
        let mut g = random_base(rng);
        if g.n() < d {
            continue;
        }
        let v = attach(&mut g, d, rng);
        if let Some(phi) = coloring_without(&g, &[v], k - 1) {
            return ExtensionInstance { op: ExtensionOp::VertexDeletion, graph: g, vertices: vec![v], k, n: 0, phi };
        }
    }
}

pub fn random_edge_pair_instance<R: Rng + ?Sized>(rng: &mut R) -> ExtensionInstance {
    loop {
        let k = rng.gen_range(5..=11);
        // Even degrees with 2d <= k-1, d0 + d1 < k, not both (k-1)/2.
        let choices: Vec<usize> = (1..).map(|i| 2 * i).take_while(|d| 2 * d <= k - 1).collect();
        let d0 = *choices.choose(rng).unwrap();
        let d1 = *choices.choose(rng).unwrap();
        if d0 + d1 >= k || (2 * d0 == k - 1 && 2 * d1 == k - 1) {
            continue;
        }
        let mut g = random_base(rng);
        if g.n() < d0.max(d1) - 1 {
            continue;
        }
        let v0 = attach(&mut g, d0 - 1, rng);
        let mut pool: Vec<usize> = (0..v0).collect();
        pool.shuffle(rng);
        let v1 = g.add_vertex();
        g.add_edge(v0, v1).unwrap();
        for &w in &pool[..d1 - 1] {
            g.add_edge(v1, w).unwrap();
        }
        if let Some(phi) = coloring_without(&g, &[v0, v1], k - 1) {
            return ExtensionInstance {
                op: ExtensionOp::EdgePairDeletion,
                graph: g,
                vertices: vec![v0, v1],
                k,
                n: 0,
                phi,
            };
        }
    }
}

/// Random instance for the n-easy procedure with the given `n` and `k`.
/// Vertices of odd degree below `2n + 1` are repaired by adding edges, and
/// `v` is drawn among vertices meeting the hypotheses, preferring those
/// with a nonempty `X`.
pub fn random_n_easy_instance<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> ExtensionInstance {
    loop {
        let order = rng.gen_range(4..=10);
        let mut g = random_gnp(order, rng.gen_range(0.2..0.5), rng);
        for _ in 0..4 * order {
            let bad: Vec<usize> = (0..order).filter(|&w| g.degree(w) % 2 == 1 && g.degree(w) < 2 * n + 1).collect();
            let Some(&w) = bad.first() else { break };
            let targets: Vec<usize> = (0..order).filter(|&u| u != w && !g.has_edge(u, w) && g.degree(u) > 0).collect();
            match targets.choose(rng) {
                Some(&u) => g.add_edge(u, w).unwrap(),
                None => break,
            }
        }
        let candidates: Vec<usize> = (0..order).filter(|&v| n_easy_preconditions(&g, v, n, k).is_ok()).collect();
        if candidates.is_empty() {
            continue;
        }
        let with_x: Vec<usize> =
            candidates.iter().copied().filter(|&v| !low_even_neighbors(&g, v, n).is_empty()).collect();
        let pool = if !with_x.is_empty() && rng.gen_bool(0.8) { &with_x } else { &candidates };
        let v = *pool.choose(rng).unwrap();
        debug_assert!(is_n_easy(&g, v, n));
        let mut deleted = low_even_neighbors(&g, v, n);
        deleted.push(v);
        if let Some(phi) = coloring_without(&g, &deleted, k - 1) {
            return ExtensionInstance { op: ExtensionOp::NEasy, graph: g, vertices: vec![v], k, n, phi };
        }
    }
}

pub fn random_instance<R: Rng + ?Sized>(op: ExtensionOp, rng: &mut R) -> ExtensionInstance {
    match op {
        ExtensionOp::VertexDeletion => random_vertex_deletion_instance(rng),
        ExtensionOp::EdgePairDeletion => random_edge_pair_instance(rng),
        ExtensionOp::NEasy => random_n_easy_instance(1, 6, rng),
    }
}

/// Runs the procedure on an instance. `Ok` holds the extended coloring.
pub fn run_instance(inst: &ExtensionInstance) -> Result<VertexColoring, ColoringError> {
    let g = &inst.graph;
    match inst.op {
        ExtensionOp::VertexDeletion => extend_after_vertex_deletion(g, inst.vertices[0], &inst.phi, inst.k),
        ExtensionOp::EdgePairDeletion => {
            extend_after_edge_pair_deletion(g, inst.vertices[0], inst.vertices[1], &inst.phi, inst.k)
        }
        ExtensionOp::NEasy => n_easy_recolor(g, inst.vertices[0], inst.n, inst.k, &inst.phi).map(|(c, _)| c),
    }
}

pub fn extension_soundness<R: Rng + ?Sized>(op: ExtensionOp, count: usize, rng: &mut R) -> ExtensionStats {
    let mut stats = ExtensionStats::default();
    for _ in 0..count {
        let inst = random_instance(op, rng);
        stats.instances += 1;
        match run_instance(&inst) {
            Ok(c) => {
                let ok = odd_verdict(&inst.graph, &c).map(|v| v.is_odd()).unwrap_or(false)
                    && c.palette_size() as usize <= inst.k - 1;
                if ok {
                    stats.passed += 1;
                } else {
                    stats.failures.push(format!("{:?}: non-odd output on {:?}", op, inst.graph));
                }
            }
            Err(ColoringError::LemmaTrace(trace)) => {
                stats.non_shrink += 1;
                stats.failures.push(format!("{op:?}: deficiency loop stalled: {}", serde_json::to_string(&trace).unwrap()));
            }
            Err(e) => stats.failures.push(format!("{op:?}: {e} on {:?}", inst.graph)),
        }
    }
    stats
}

/// One graph's entry in the degree/thickness check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThicknessRecord {
    pub graph6: String,
    pub theta: Option<usize>,
    /// Average degree as `numerator/denominator`.
    pub average_degree: String,
    /// `d̃ < 6θ`, when θ is known.
    pub holds: Option<bool>,
    #[serde(skip)]
    pub certificate: Option<EdgePartition>,
}

/// Exact thickness and the strict average-degree bound for each graph.
pub fn thickness_records(graphs: &[Graph], t_max: usize, budget: Budget) -> Vec<ThicknessRecord> {
    graphs
        .iter()
        .map(|g| {
            let outcome = thickness(g, t_max, budget);
            let theta = outcome.exact();
            let avg = g.degree_stats().map(|s| s.average_degree).unwrap_or(Ratio::from_integer(0));
            ThicknessRecord {
                graph6: crate::format::to_graph6(g),
                theta,
                average_degree: format!("{}/{}", avg.numer(), avg.denom()),
                holds: theta.map(|t| avg < Ratio::from_integer(6 * t as u64)),
                certificate: outcome.certificate().cloned(),
            }
        })
        .collect()
}

/// Random planar graph on `n_min..=n_max` vertices.
pub fn random_planar_graph<R: Rng + ?Sized>(
    n_min: usize,
    n_max: usize,
    min_girth: usize,
    rng: &mut R,
) -> Graph {
    let n = rng.gen_range(n_min..=n_max);
    let target = rng.gen_range(n..=3 * n);
    crate::generate::random_planar(n, target, min_girth, true, rng)
}

/// Certificate report for a single-layer (planar) graph.
pub fn planar_certificate(g: &Graph) -> Option<CertificateReport> {
    let p = EdgePartition { classes: vec![g.edges().collect()] };
    let e = embed_partition(g, &p).ok()?;
    verify_certificate(g, &p, &e, 1).ok()
}
