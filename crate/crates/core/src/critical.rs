//! Odd `k⁺`-criticality with respect to subgraphs and minors, and the
//! degree conditions every critical graph must satisfy.
//!
//! `G` is critical when `χ_o(G) >= k` and every proper subgraph (or minor)
//! `H` has `χ_o(H) < k`. Odd colorings are not monotone under subgraphs, so
//! every proper subgraph is checked, not just the maximal ones.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, Meter};
use crate::canon::canonical_form;
use crate::coloring::extend::{is_n_easy, low_even_neighbors};
use crate::coloring::solver::odd_search_metered;
use crate::coloring::Decision;
use crate::format::to_graph6;
use crate::graph::Graph;

/// Default enumeration caps for the subgraph test.
pub const MAX_SUBGRAPH_ORDER: usize = 8;
pub const MAX_SUBGRAPH_SIZE: usize = 14;
/// Cap for the minor lattice.
pub const MAX_MINOR_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriticalError {
    #[error("k = {0} must be at least 2")]
    BadK(usize),
    #[error("graph with n = {n}, m = {m} is beyond the enumeration cap (n <= {max_n}, m <= {max_m})")]
    TooLarge { n: usize, m: usize, max_n: usize, max_m: usize },
    #[error("search budget exhausted after {0} nodes")]
    Budget(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphWitness {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub pass: bool,
    pub violating_vertices: Vec<usize>,
    pub violating_edges: Vec<(usize, usize)>,
}

impl LemmaCheck {
    fn from(vertices: Vec<usize>, edges: Vec<(usize, usize)>) -> Self {
        LemmaCheck { pass: vertices.is_empty() && edges.is_empty(), violating_vertices: vertices, violating_edges: edges }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalityReport {
    /// Canonical graph6 string.
    pub graph_key: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub is_critical: bool,
    /// A proper subgraph with `χ_o >= k`, in the input labeling.
    pub failing_subgraph: Option<SubgraphWitness>,
    /// Distinct proper subgraphs (up to isomorphism) that were solved.
    pub subgraphs_checked: usize,
    pub lemma_checks: BTreeMap<String, LemmaCheck>,
}

fn check_k(k: usize) -> Result<(), CriticalError> {
    if k < 2 {
        Err(CriticalError::BadK(k))
    } else {
        Ok(())
    }
}

/// `χ_o(H) < k`, i.e. `H` is odd `(k-1)`-colorable. The empty graph counts.
fn below(h: &Graph, k: usize, meter: &mut Meter) -> Result<bool, CriticalError> {
    if h.n() == 0 {
        return Ok(true);
    }
    match odd_search_metered(h, k - 1, meter) {
        Decision::Yes(_) => Ok(true),
        Decision::No => Ok(false),
        Decision::Unknown => Err(CriticalError::Budget(meter.nodes())),
    }
}

/// Subgraph spanned by an edge set (isolated vertices dropped).
fn spanned(g: &Graph, edges: &[(usize, usize)]) -> (Graph, Vec<usize>) {
    let keep: BTreeSet<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let keep: Vec<usize> = keep.into_iter().collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        index[v] = i;
    }
    let h = Graph::from_edges(keep.len(), edges.iter().map(|&(u, v)| (index[u], index[v]))).unwrap();
    (h, keep)
}

/// Exact subgraph-criticality test within the default caps.
pub fn is_odd_k_critical(g: &Graph, k: usize, budget: Budget) -> Result<CriticalityReport, CriticalError> {
    is_odd_k_critical_capped(g, k, budget, MAX_SUBGRAPH_ORDER, MAX_SUBGRAPH_SIZE)
}

/// Subgraphs differing only in isolated vertices share `χ_o`, so a proper
/// subgraph is represented by its edge set. Single-edge deletions are
/// tried first: they settle most negatives without hitting the size cap.
pub fn is_odd_k_critical_capped(
    g: &Graph,
    k: usize,
    budget: Budget,
    max_n: usize,
    max_m: usize,
) -> Result<CriticalityReport, CriticalError> {
    check_k(k)?;
    let mut meter = budget.meter();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut report = CriticalityReport {
        graph_key: canonical_form(g).0,
        n: g.n(),
        m: g.m(),
        k,
        is_critical: false,
        failing_subgraph: None,
        subgraphs_checked: 0,
        lemma_checks: BTreeMap::new(),
    };
    if g.n() == 0 || below(g, k, &mut meter)? {
        return Ok(report);
    }
    // χ_o(G) >= k >= 2, so G has an edge. Dropping an isolated vertex
    // leaves χ_o unchanged.
    if let Some(u) = (0..g.n()).find(|&u| g.is_isolated(u)) {
        let vertices: Vec<usize> = (0..g.n()).filter(|&w| w != u).collect();
        report.failing_subgraph = Some(SubgraphWitness { vertices, edges });
        return Ok(report);
    }
    let mut seen = BTreeSet::new();
    let mut check = |subset: Vec<(usize, usize)>,
                     report: &mut CriticalityReport,
                     meter: &mut Meter|
     -> Result<bool, CriticalError> {
        let (h, keep) = spanned(g, &subset);
        let key = canonical_form(&h).0;
        if !seen.insert(key) {
            return Ok(true);
        }
        report.subgraphs_checked += 1;
        if below(&h, k, meter)? {
            return Ok(true);
        }
        report.failing_subgraph = Some(SubgraphWitness { vertices: keep, edges: subset });
        Ok(false)
    };
    for skip in 0..edges.len() {
        let subset: Vec<_> = edges.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &e)| e).collect();
        if !check(subset, &mut report, &mut meter)? {
            return Ok(report);
        }
    }
    if g.n() > max_n || g.m() > max_m {
        return Err(CriticalError::TooLarge { n: g.n(), m: g.m(), max_n, max_m });
    }
    // Remaining proper edge subsets, largest first.
    let m = edges.len();
    let full = (1u64 << m) - 1;
    let mut masks: Vec<u64> = (1..full).filter(|mask| mask.count_ones() as usize <= m - 2).collect();
    masks.sort_by_key(|mask| (std::cmp::Reverse(mask.count_ones()), *mask));
    for mask in masks {
        let subset: Vec<_> = (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
        if !check(subset, &mut report, &mut meter)? {
            return Ok(report);
        }
    }
    report.is_critical = true;
    report.lemma_checks = check_structural_lemmas(g, k);
    Ok(report)
}

/// Degree conditions satisfied by every odd `k⁺`-critical graph. Meaningful
/// only for critical graphs; on other graphs the result is descriptive.
///
/// Keys: `lemma3_1`, `lemma3_2` (k >= 4), `lemma4_no_1_vertex`, `lemma4`
/// (k >= 6), and `lemma5_n{n}` for every `n >= 1` with `4n + 2 <= k`.
pub fn check_structural_lemmas(g: &Graph, k: usize) -> BTreeMap<String, LemmaCheck> {
    let mut out = BTreeMap::new();
    let d = |v: usize| g.degree(v);
    if k >= 4 {
        let bad: Vec<usize> = (0..g.n()).filter(|&v| d(v) % 2 == 1 && d(v) < k / 2).collect();
        out.insert("lemma3_1".to_string(), LemmaCheck::from(bad, Vec::new()));
        let bad: Vec<(usize, usize)> = g
            .edges()
            .filter(|&(u, v)| d(u) % 2 == d(v) % 2)
            .filter(|&(u, v)| {
                let high = 2 * d(u).max(d(v)) > k - 1;
                let equal = 2 * d(u) == k - 1 && 2 * d(v) == k - 1;
                !(high || equal)
            })
            .collect();
        out.insert("lemma3_2".to_string(), LemmaCheck::from(Vec::new(), bad));
    }
    if k >= 6 {
        let ones: Vec<usize> = (0..g.n()).filter(|&v| d(v) == 1).collect();
        out.insert("lemma4_no_1_vertex".to_string(), LemmaCheck::from(ones, Vec::new()));
        out.insert("lemma4".to_string(), LemmaCheck::from(easy_inequality_violations(g, k, 1, true), Vec::new()));
    }
    for n in (1..).take_while(|&n| 4 * n + 2 <= k) {
        let bad = easy_inequality_violations(g, k, n, false);
        out.insert(format!("lemma5_n{n}"), LemmaCheck::from(bad, Vec::new()));
    }
    out
}

/// Vertices `v` that are `n`-easy yet have
/// `2d(v) < |low even neighbors| + |n-easy neighbors| + k - 1`.
/// With `only_two` the low even neighbors are restricted to degree 2.
fn easy_inequality_violations(g: &Graph, k: usize, n: usize, only_two: bool) -> Vec<usize> {
    (0..g.n())
        .filter(|&v| is_n_easy(g, v, n))
        .filter(|&v| {
            let low = if only_two {
                g.neighbors(v).iter().filter(|&&w| g.degree(w) == 2).count()
            } else {
                low_even_neighbors(g, v, n).len()
            };
            let easy = g.neighbors(v).iter().filter(|&&w| is_n_easy(g, w, n)).count();
            2 * g.degree(v) < low + easy + k - 1
        })
        .collect()
}

/// Runs the subgraph test over a corpus and keeps the critical graphs,
/// deduplicated and sorted by canonical key. Graphs over the size cap are
/// counted in the second return value instead of failing the run.
pub fn search_critical<'a, I>(k: usize, corpus: I, budget: Budget) -> Result<(Vec<CriticalityReport>, usize), CriticalError>
where
    I: IntoParallelIterator<Item = &'a Graph>,
{
    check_k(k)?;
    let results: Vec<Result<CriticalityReport, CriticalError>> =
        corpus.into_par_iter().map(|g| is_odd_k_critical(g, k, budget)).collect();
    let mut found = BTreeMap::new();
    let mut refused = 0;
    for r in results {
        match r {
            Ok(rep) if rep.is_critical => {
                found.entry(rep.graph_key.clone()).or_insert(rep);
            }
            Ok(_) => {}
            Err(CriticalError::TooLarge { .. }) => refused += 1,
            Err(e) => return Err(e),
        }
    }
    Ok((found.into_values().collect(), refused))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorReport {
    pub graph_key: String,
    pub k: usize,
    pub is_minor_critical: bool,
    /// Canonical graph6 of a proper minor with `χ_o >= k`.
    pub failing_minor: Option<String>,
    pub minors_checked: usize,
    pub min_degree: usize,
    /// `δ(G) >= ⌊k/2⌋`; required of every minor-critical graph.
    pub min_degree_check: bool,
}

/// Exact minor-criticality test: breadth-first over all proper minors
/// (vertex deletions, edge deletions, contractions), deduplicated by
/// canonical form.
pub fn is_odd_k_minor_critical(g: &Graph, k: usize, budget: Budget) -> Result<MinorReport, CriticalError> {
    check_k(k)?;
    if g.n() > MAX_MINOR_ORDER {
        return Err(CriticalError::TooLarge {
            n: g.n(),
            m: g.m(),
            max_n: MAX_MINOR_ORDER,
            max_m: MAX_MINOR_ORDER * (MAX_MINOR_ORDER - 1) / 2,
        });
    }
    let mut meter = budget.meter();
    let (key, _) = canonical_form(g);
    let min_degree = g.min_degree().unwrap_or(0);
    let mut report = MinorReport {
        graph_key: key.clone(),
        k,
        is_minor_critical: false,
        failing_minor: None,
        minors_checked: 0,
        min_degree,
        min_degree_check: min_degree >= k / 2,
    };
    if g.n() == 0 || below(g, k, &mut meter)? {
        return Ok(report);
    }
    let mut seen = BTreeSet::from([key]);
    let mut queue = VecDeque::from([g.clone()]);
    while let Some(h) = queue.pop_front() {
        for child in one_step_minors(&h) {
            let (cert, _) = canonical_form(&child);
            if !seen.insert(cert.clone()) {
                continue;
            }
            report.minors_checked += 1;
            if !below(&child, k, &mut meter)? {
                report.failing_minor = Some(cert);
                return Ok(report);
            }
            queue.push_back(child);
        }
    }
    report.is_minor_critical = true;
    Ok(report)
}

fn one_step_minors(h: &Graph) -> Vec<Graph> {
    let mut out = Vec::new();
    for v in 0..h.n() {
        out.push(h.remove_vertices(&[v]).0);
    }
    for (u, v) in h.edges() {
        let mut d = h.clone();
        d.remove_edge(u, v);
        out.push(d);
        out.push(h.contract_edge(u, v));
    }
    out
}

/// graph6 of a subgraph witness, for reports.
pub fn witness_graph6(g: &Graph, w: &SubgraphWitness) -> String {
    let (h, _) = spanned(g, &w.edges);
    if h.n() == 0 {
        return to_graph6(&Graph::new(w.vertices.len()));
    }
    to_graph6(&h)
}
