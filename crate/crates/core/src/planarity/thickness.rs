//! Exact thickness by edge-partition search.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{is_planar, kuratowski_witness};
use crate::budget::{Budget, Meter};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("edge {0}-{1} is not an edge of the graph")]
    ForeignEdge(usize, usize),
    #[error("edge {0}-{1} appears in more than one class")]
    Overlap(usize, usize),
    #[error("edge {0}-{1} is not covered by any class")]
    Uncovered(usize, usize),
    #[error("class {0} is not planar")]
    NonPlanarClass(usize),
}

/// Edge classes `E_1..E_t` covering `E(G)`; each `(V(G), E_i)` must be planar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgePartition {
    pub classes: Vec<Vec<(usize, usize)>>,
}

impl EdgePartition {
    pub fn t(&self) -> usize {
        self.classes.len()
    }

    /// Layer `i` as a spanning subgraph of `g`.
    pub fn layer(&self, g: &Graph, i: usize) -> Graph {
        let mut h = Graph::new(g.n());
        for &(u, v) in &self.classes[i] {
            h.add_edge(u, v).expect("validated partition");
        }
        h
    }

    pub fn layers(&self, g: &Graph) -> Vec<Graph> {
        (0..self.t()).map(|i| self.layer(g, i)).collect()
    }

    /// Checks disjointness, coverage and planarity of every class.
    pub fn validate(&self, g: &Graph) -> Result<(), PartitionError> {
        let n = g.n();
        let mut owner = vec![usize::MAX; n * n];
        for (i, class) in self.classes.iter().enumerate() {
            for &(u, v) in class {
                if !g.has_edge(u, v) {
                    return Err(PartitionError::ForeignEdge(u, v));
                }
                let key = u.min(v) * n + u.max(v);
                if owner[key] != usize::MAX {
                    return Err(PartitionError::Overlap(u.min(v), u.max(v)));
                }
                owner[key] = i;
            }
        }
        if let Some((u, v)) = g.edges().find(|&(u, v)| owner[u * n + v] == usize::MAX) {
            return Err(PartitionError::Uncovered(u, v));
        }
        for i in 0..self.t() {
            if !is_planar(&self.layer(g, i)) {
                return Err(PartitionError::NonPlanarClass(i));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThicknessOutcome {
    /// `θ(G)` with a validated certificate.
    Exact { theta: usize, certificate: EdgePartition },
    /// Every `t <= t_max` was refuted exhaustively.
    ExceedsMax { lower: usize, upper: Option<usize>, best: Option<EdgePartition> },
    /// Budget ran out; `lower <= θ(G)` and, when known, `θ(G) <= upper`.
    Unknown { lower: usize, upper: Option<usize>, best: Option<EdgePartition> },
}

impl ThicknessOutcome {
    pub fn exact(&self) -> Option<usize> {
        match self {
            ThicknessOutcome::Exact { theta, .. } => Some(*theta),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&EdgePartition> {
        match self {
            ThicknessOutcome::Exact { certificate, .. } => Some(certificate),
            ThicknessOutcome::ExceedsMax { best, .. } | ThicknessOutcome::Unknown { best, .. } => best.as_ref(),
        }
    }
}

/// Euler bound `⌈m / (3n - 6)⌉`, also never below the smallest `t` with
/// `2m/n < 6t`. Graphs with fewer than three vertices get 1.
pub fn thickness_lower_bound(g: &Graph) -> usize {
    let (n, m) = (g.n(), g.m());
    if n < 3 {
        return 1;
    }
    let euler = m.div_ceil(3 * n - 6);
    let average = m / (3 * n) + 1;
    euler.max(average).max(1)
}

/// Exact thickness when the search finishes within `budget`.
///
/// For `t` from the lower bound upward, edges are assigned in a fixed order
/// (minimum endpoint degree descending, then lexicographic) to one of `t`
/// classes. A class may only be opened after all lower classes are
/// nonempty, each class stays within `3n - 6` edges and stays planar, and
/// the remaining edges must fit in the remaining capacity.
///
/// `t_max` caps the exhaustive search. When the lower bound and the greedy
/// certificate already agree, that exact answer is returned even if it
/// exceeds `t_max`.
pub fn thickness(g: &Graph, t_max: usize, budget: Budget) -> ThicknessOutcome {
    assert!(t_max >= 1, "t_max must be at least 1");
    let edges = branching_order(g);
    let lb = thickness_lower_bound(g);
    if is_planar(g) {
        return ThicknessOutcome::Exact { theta: 1, certificate: EdgePartition { classes: vec![edges] } };
    }

    let greedy = greedy_partition(g, &edges);
    let ub = greedy.t();
    if ub == lb {
        return ThicknessOutcome::Exact { theta: ub, certificate: greedy };
    }

    let mut meter = budget.meter();
    let mut t = lb.max(2);
    while t < ub && t <= t_max {
        if let Some(p) = local_search(g, t, LOCAL_SEARCH_STEPS, &mut meter).filter(|p| p.validate(g).is_ok()) {
            return ThicknessOutcome::Exact { theta: t, certificate: p };
        }
        if meter.exhausted() {
            return ThicknessOutcome::Unknown { lower: t, upper: Some(ub), best: Some(greedy) };
        }
        match search(g, &edges, t, &mut meter) {
            Search::Found(p) => return ThicknessOutcome::Exact { theta: t, certificate: p },
            Search::Refuted => t += 1,
            Search::OutOfBudget => {
                return ThicknessOutcome::Unknown { lower: t, upper: Some(ub), best: Some(greedy) };
            }
        }
    }
    if ub <= t_max {
        ThicknessOutcome::Exact { theta: ub, certificate: greedy }
    } else {
        ThicknessOutcome::ExceedsMax { lower: t_max + 1, upper: Some(ub), best: Some(greedy) }
    }
}

/// `Some(true)` when `θ <= 2`, `Some(false)` when refuted, `None` when the
/// budget ran out first.
pub fn is_biplanar(g: &Graph, budget: Budget) -> Option<bool> {
    match thickness(g, 2, budget) {
        ThicknessOutcome::Exact { theta, .. } => Some(theta <= 2),
        ThicknessOutcome::ExceedsMax { .. } => Some(false),
        ThicknessOutcome::Unknown { lower, upper, .. } => {
            if lower > 2 {
                Some(false)
            } else if upper.is_some_and(|u| u <= 2) {
                Some(true)
            } else {
                None
            }
        }
    }
}

pub(crate) fn branching_order(g: &Graph) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.sort_by_key(|&(u, v)| (std::cmp::Reverse(g.degree(u).min(g.degree(v))), u, v));
    edges
}

/// First-fit: each edge goes to the lowest class that stays planar.
fn greedy_partition(g: &Graph, order: &[(usize, usize)]) -> EdgePartition {
    let mut layers: Vec<Graph> = Vec::new();
    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    for &(u, v) in order {
        let mut placed = false;
        for (layer, class) in layers.iter_mut().zip(classes.iter_mut()) {
            layer.add_edge(u, v).unwrap();
            if is_planar(layer) {
                class.push((u, v));
                placed = true;
                break;
            }
            layer.remove_edge(u, v);
        }
        if !placed {
            let mut layer = Graph::new(g.n());
            layer.add_edge(u, v).unwrap();
            layers.push(layer);
            classes.push(vec![(u, v)]);
        }
    }
    EdgePartition { classes }
}

const LOCAL_SEARCH_STEPS: usize = 20_000;

/// Min-conflicts search for a `t`-partition: layers are kept planar, and an
/// unplaced edge that fits nowhere is forced into a layer, evicting an edge
/// of the resulting Kuratowski subgraph. Recently evicted (edge, layer)
/// pairs are tabu for a few steps. Seeded, so the outcome is reproducible.
fn local_search(g: &Graph, t: usize, steps: usize, meter: &mut Meter) -> Option<EdgePartition> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7468_6963_6b6e_6573);
    let mut layers = vec![Graph::new(g.n()); t];
    let mut pending: Vec<(usize, usize)> = g.edges().collect();
    pending.shuffle(&mut rng);
    let mut tabu: std::collections::HashMap<((usize, usize), usize), usize> = Default::default();
    let tenure = 2 + g.m() / 10;
    for step in 0..steps {
        let Some(i) = (!pending.is_empty()).then(|| rng.gen_range(0..pending.len())) else {
            let classes: Vec<_> = layers.iter().map(|l| l.edges().collect()).collect();
            return Some(EdgePartition { classes });
        };
        if !meter.tick() {
            return None;
        }
        let (u, v) = pending.swap_remove(i);
        let mut order: Vec<usize> = (0..t).collect();
        order.shuffle(&mut rng);
        let fits = order.iter().copied().find(|&j| {
            layers[j].add_edge(u, v).unwrap();
            let ok = is_planar(&layers[j]);
            if !ok {
                layers[j].remove_edge(u, v);
            }
            ok
        });
        if fits.is_some() {
            continue;
        }
        let j = order
            .iter()
            .copied()
            .find(|&j| tabu.get(&((u, v), j)).map_or(true, |&until| until <= step))
            .unwrap_or(order[0]);
        layers[j].add_edge(u, v).unwrap();
        // One eviction may leave another obstruction through (u, v).
        while !is_planar(&layers[j]) {
            let candidates: Vec<(usize, usize)> =
                kuratowski_witness(&layers[j]).edges.into_iter().filter(|&e| e != (u, v)).collect();
            let evict = *candidates.choose(&mut rng).expect("the new edge lies on every obstruction");
            layers[j].remove_edge(evict.0, evict.1);
            tabu.insert((evict, j), step + tenure);
            pending.push(evict);
        }
    }
    None
}

enum Search {
    Found(EdgePartition),
    Refuted,
    OutOfBudget,
}

fn search(g: &Graph, edges: &[(usize, usize)], t: usize, meter: &mut Meter) -> Search {
    let cap = 3 * g.n() - 6;
    let mut layers = vec![Graph::new(g.n()); t];
    let mut assign = vec![usize::MAX; edges.len()];
    match dfs(edges, 0, 0, cap, &mut layers, &mut assign, meter) {
        Some(true) => {
            let mut classes = vec![Vec::new(); t];
            for (i, &c) in assign.iter().enumerate() {
                classes[c].push(edges[i]);
            }
            classes.retain(|c| !c.is_empty());
            Search::Found(EdgePartition { classes })
        }
        Some(false) => Search::Refuted,
        None => Search::OutOfBudget,
    }
}

/// `Some(found)` on completion, `None` when the budget ran out.
fn dfs(
    edges: &[(usize, usize)],
    i: usize,
    opened: usize,
    cap: usize,
    layers: &mut [Graph],
    assign: &mut [usize],
    meter: &mut Meter,
) -> Option<bool> {
    if i == edges.len() {
        return Some(true);
    }
    if !meter.tick() {
        return None;
    }
    let t = layers.len();
    let free: usize = layers.iter().map(|l| cap - l.m()).sum();
    if edges.len() - i > free {
        return Some(false);
    }
    let (u, v) = edges[i];
    for j in 0..t.min(opened + 1) {
        if layers[j].m() >= cap {
            continue;
        }
        layers[j].add_edge(u, v).unwrap();
        if is_planar(&layers[j]) {
            assign[i] = j;
            match dfs(edges, i + 1, opened.max(j + 1), cap, layers, assign, meter) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => {
                    layers[j].remove_edge(u, v);
                    return None;
                }
            }
        }
        layers[j].remove_edge(u, v);
    }
    Some(false)
}
