//! Exact chromatic and odd chromatic numbers by backtracking.

use super::{odd_verdict, VertexColoring};
use crate::budget::{Budget, Meter};
use crate::graph::{Graph, GraphError};

/// Result of a budgeted decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision<T> {
    Yes(T),
    No,
    Unknown,
}

/// Per-`k` search record: `k` was refuted after visiting `nodes` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Refutation {
    pub k: usize,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OddChromatic {
    /// `χ_o = k`; every `k' < k` starting at `χ` was refuted exhaustively.
    Exact { k: usize, witness: VertexColoring, refuted: Vec<Refutation> },
    /// Budget ran out while deciding `lower`; `χ_o >= lower` and the witness
    /// shows `χ_o <= upper`.
    Unknown { lower: usize, upper: usize, witness: VertexColoring },
}

impl OddChromatic {
    pub fn exact(&self) -> Option<usize> {
        match self {
            OddChromatic::Exact { k, .. } => Some(*k),
            OddChromatic::Unknown { .. } => None,
        }
    }

    pub fn witness(&self) -> &VertexColoring {
        match self {
            OddChromatic::Exact { witness, .. } | OddChromatic::Unknown { witness, .. } => witness,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SolverOptions {
    /// Forward checking: after each assignment every uncolored neighbor must
    /// still have a usable color. Off by default.
    pub lookahead: bool,
}

/// `χ(G)` and a witness: clique lower bound, greedy upper bound, then
/// backtracking for each `k` in between.
pub fn chromatic_number(g: &Graph) -> Result<(usize, VertexColoring), GraphError> {
    if g.n() == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let order = search_order(g, false);
    let greedy = greedy_coloring(g, &order);
    let ub = *greedy.iter().max().unwrap() as usize;
    let lb = max_clique(g).max(1);
    for k in lb..ub {
        let mut colors = vec![0u32; g.n()];
        if proper_dfs(g, &order, 0, 0, k as u32, &mut colors) {
            return Ok((k, VertexColoring::new(colors).unwrap()));
        }
    }
    Ok((ub, VertexColoring::new(greedy).unwrap()))
}

/// `χ_o(G)` by increasing `k` from `χ(G)`. The witness is the first odd
/// coloring found in the fixed search order, so it is deterministic.
pub fn odd_chromatic_number(g: &Graph, budget: Budget) -> Result<OddChromatic, GraphError> {
    odd_chromatic_number_with(g, budget, SolverOptions::default())
}

pub fn odd_chromatic_number_with(
    g: &Graph,
    budget: Budget,
    options: SolverOptions,
) -> Result<OddChromatic, GraphError> {
    let (chi, _) = chromatic_number(g)?;
    let trivial = distinct_coloring(g);
    let ub = trivial.palette_size() as usize;
    let mut meter = budget.meter();
    let mut refuted = Vec::new();
    for k in chi..ub {
        let before = meter.nodes();
        match odd_search(g, k, &mut meter, options) {
            Decision::Yes(w) => return Ok(OddChromatic::Exact { k, witness: w, refuted }),
            Decision::No => refuted.push(Refutation { k, nodes: meter.nodes() - before }),
            Decision::Unknown => return Ok(OddChromatic::Unknown { lower: k, upper: ub, witness: trivial }),
        }
    }
    Ok(OddChromatic::Exact { k: ub.max(1), witness: trivial, refuted })
}

/// Decides whether an odd coloring with at most `k` colors exists.
pub fn odd_colorable(g: &Graph, k: usize, budget: Budget) -> Decision<VertexColoring> {
    if g.n() == 0 {
        return Decision::No;
    }
    let mut meter = budget.meter();
    odd_search(g, k, &mut meter, SolverOptions::default())
}

/// [`odd_colorable`] drawing on a caller-owned meter, so a budget can span
/// many calls.
pub(crate) fn odd_search_metered(g: &Graph, k: usize, meter: &mut Meter) -> Decision<VertexColoring> {
    odd_search(g, k, meter, SolverOptions::default())
}

/// Every non-isolated vertex gets its own color; isolated ones get 1.
fn distinct_coloring(g: &Graph) -> VertexColoring {
    let mut next = 0;
    let colors = (0..g.n())
        .map(|v| {
            if g.is_isolated(v) {
                1
            } else {
                next += 1;
                next
            }
        })
        .collect();
    VertexColoring::new(colors).unwrap()
}

/// Descending degree, ties by index. Isolated vertices are left out when
/// `skip_isolated` is set.
fn search_order(g: &Graph, skip_isolated: bool) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).filter(|&v| !skip_isolated || !g.is_isolated(v)).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

fn greedy_coloring(g: &Graph, order: &[usize]) -> Vec<u32> {
    let mut colors = vec![0u32; g.n()];
    for &v in order {
        let mut c = 1;
        while g.neighbors(v).iter().any(|&w| colors[w] == c) {
            c += 1;
        }
        colors[v] = c;
    }
    colors
}

fn proper_dfs(g: &Graph, order: &[usize], i: usize, max_used: u32, k: u32, colors: &mut [u32]) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    for c in 1..=k.min(max_used + 1) {
        if g.neighbors(v).iter().all(|&w| colors[w] != c) {
            colors[v] = c;
            if proper_dfs(g, order, i + 1, max_used.max(c), k, colors) {
                return true;
            }
        }
    }
    colors[v] = 0;
    false
}

/// Size of a maximum clique (simple branch and bound).
pub fn max_clique(g: &Graph) -> usize {
    fn expand(g: &Graph, size: usize, cand: Vec<usize>, best: &mut usize) {
        if cand.is_empty() {
            *best = (*best).max(size);
            return;
        }
        for (i, &v) in cand.iter().enumerate() {
            if size + cand.len() - i <= *best {
                return;
            }
            let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            expand(g, size + 1, next, best);
        }
    }
    let mut best = 0;
    expand(g, 0, search_order(g, false), &mut best);
    best
}

/// Incremental state for the odd-coloring search.
struct OddState<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<u32>,
    /// `count[w * (k + 1) + c]`: neighbors of `w` colored `c`.
    count: Vec<u32>,
    /// Colors of odd multiplicity in the colored part of `N(w)`.
    odd: Vec<u32>,
    uncolored_nbrs: Vec<usize>,
}

impl OddState<'_> {
    fn can_use(&self, v: usize, c: u32) -> bool {
        self.count[v * (self.k + 1) + c as usize] == 0
    }

    /// Colors `v` and reports whether every neighbor whose neighborhood is
    /// now complete still has an odd color.
    fn assign(&mut self, v: usize, c: u32) -> bool {
        self.colors[v] = c;
        let mut ok = true;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.count[w * (self.k + 1) + c as usize];
            *slot += 1;
            if *slot % 2 == 1 {
                self.odd[w] += 1;
            } else {
                self.odd[w] -= 1;
            }
            self.uncolored_nbrs[w] -= 1;
            if self.uncolored_nbrs[w] == 0 && self.odd[w] == 0 {
                ok = false;
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colors[v];
        self.colors[v] = 0;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.count[w * (self.k + 1) + c as usize];
            *slot -= 1;
            if *slot % 2 == 1 {
                self.odd[w] += 1;
            } else {
                self.odd[w] -= 1;
            }
            self.uncolored_nbrs[w] += 1;
        }
    }

    fn neighbors_have_room(&self, v: usize) -> bool {
        self.g.neighbors(v).iter().all(|&w| {
            self.colors[w] != 0 || (1..=self.k as u32).any(|c| self.can_use(w, c))
        })
    }
}

fn odd_search(g: &Graph, k: usize, meter: &mut Meter, options: SolverOptions) -> Decision<VertexColoring> {
    let n = g.n();
    if k == 0 {
        return Decision::No;
    }
    let order = search_order(g, true);
    let mut st = OddState {
        g,
        k,
        colors: vec![0; n],
        count: vec![0; n * (k + 1)],
        odd: vec![0; n],
        uncolored_nbrs: g.degrees(),
    };
    match odd_dfs(&mut st, &order, 0, 0, meter, options) {
        Some(true) => {
            for v in 0..n {
                if st.colors[v] == 0 {
                    st.colors[v] = 1;
                }
            }
            let witness = VertexColoring::new(st.colors).unwrap();
            debug_assert!(odd_verdict(g, &witness).unwrap().is_odd());
            Decision::Yes(witness)
        }
        Some(false) => Decision::No,
        None => Decision::Unknown,
    }
}

fn odd_dfs(
    st: &mut OddState<'_>,
    order: &[usize],
    i: usize,
    max_used: u32,
    meter: &mut Meter,
    options: SolverOptions,
) -> Option<bool> {
    if i == order.len() {
        return Some(true);
    }
    if !meter.tick() {
        return None;
    }
    let v = order[i];
    for c in 1..=(st.k as u32).min(max_used + 1) {
        if !st.can_use(v, c) {
            continue;
        }
        let ok = st.assign(v, c) && (!options.lookahead || st.neighbors_have_room(v));
        if ok {
            match odd_dfs(st, order, i + 1, max_used.max(c), meter, options) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => {
                    st.unassign(v);
                    return None;
                }
            }
        }
        st.unassign(v);
    }
    Some(false)
}
