//! Simple undirected graphs on dense vertex indices `0..n`.

use std::collections::VecDeque;
use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operation undefined on the empty graph")]
    EmptyGraph,
}

/// A simple, finite, undirected graph.
///
/// Neighbor lists are kept sorted so membership tests are a binary search
/// and iteration order is deterministic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(())
            }
        }
    }

    /// Removes the edge if present; returns whether it was there.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(pos);
                self.m -= 1;
                true
            }
            Err(_) => false,
        }
    }

    /// Appends an isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.adj[v].is_empty()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).max()
    }

    pub fn degree_stats(&self) -> Result<DegreeStats, GraphError> {
        if self.n() == 0 {
            return Err(GraphError::EmptyGraph);
        }
        Ok(DegreeStats {
            min_degree: self.min_degree().unwrap(),
            max_degree: self.max_degree().unwrap(),
            average_degree: Ratio::new(2 * self.m as u64, self.n() as u64),
        })
    }

    /// Component label per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn component_count(&self) -> usize {
        self.components().1
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.component_count() == 1
    }

    /// Length of a shortest cycle, or [`Girth::Acyclic`] for forests.
    pub fn girth(&self) -> Girth {
        let n = self.n();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                // Nothing shorter can be found from deeper layers.
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Acyclic
        } else {
            Girth::Finite(best)
        }
    }

    /// Shortest-path distance by BFS, `None` when unreachable.
    pub fn distance(&self, s: usize, t: usize) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                return Some(dist[u]);
            }
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Subgraph induced on `keep` (in the given order). Returns the graph and
    /// the map from new indices to old ones.
    pub fn induced_subgraph(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(keep.len());
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j).expect("induced edges are simple");
                }
            }
        }
        (g, keep.to_vec())
    }

    /// Deletes the listed vertices; returns the graph and the new→old map.
    pub fn remove_vertices(&self, removed: &[usize]) -> (Graph, Vec<usize>) {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        self.induced_subgraph(&keep)
    }

    /// Spanning subgraph on the same vertex set with the given edges.
    pub fn spanning_subgraph(&self, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::new(self.n());
        for &(u, v) in edges {
            if !self.has_edge(u, v) {
                return Err(GraphError::InvalidParameter(format!(
                    "edge {u}-{v} is not an edge of the host graph"
                )));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut g = Graph::new(self.n());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).expect("permutation preserves simplicity");
        }
        g
    }

    /// Contracts edge `uv` into `u`; `v` is removed and the remaining
    /// vertices keep their relative order.
    pub fn contract_edge(&self, u: usize, v: usize) -> Graph {
        debug_assert!(self.has_edge(u, v));
        let n = self.n();
        let map: Vec<usize> = (0..n)
            .map(|x| {
                let x = if x == v { u } else { x };
                if x > v {
                    x - 1
                } else {
                    x
                }
            })
            .collect();
        let mut g = Graph::new(n - 1);
        for (a, b) in self.edges() {
            let (a, b) = (map[a], map[b]);
            if a != b && !g.has_edge(a, b) {
                g.add_edge(a, b).unwrap();
            }
        }
        g
    }

    /// Vertex-disjoint union; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = Graph::new(off + other.n());
        for (u, v) in self.edges() {
            g.add_edge(u, v).unwrap();
        }
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off).unwrap();
        }
        g
    }

    /// `G ∨ H`: disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let mut g = self.disjoint_union(other);
        let off = self.n();
        for u in 0..self.n() {
            for v in 0..other.n() {
                g.add_edge(u, off + v).unwrap();
            }
        }
        g
    }

    /// Vertices whose degree is nonzero.
    pub fn non_isolated(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(|&v| !self.adj[v].is_empty())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub min_degree: usize,
    pub max_degree: usize,
    /// `2m / n`, kept exact.
    pub average_degree: Ratio<u64>,
}

/// Girth with forests mapped to a sentinel that orders above every length.
/// Serializes as the length, or `null` for forests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
pub enum Girth {
    Finite(usize),
    Acyclic,
}

impl Girth {
    pub fn at_least(self, len: usize) -> bool {
        self >= Girth::Finite(len)
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Acyclic => f.write_str("acyclic"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, path, star_subdivision};

    #[test]
    fn rejects_loops_and_duplicates() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop(1)));
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(GraphError::DuplicateEdge(0, 1)));
        assert!(matches!(g.add_edge(0, 7), Err(GraphError::VertexOutOfRange { vertex: 7, .. })));
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn degree_stats_exact() {
        let k4 = complete(4).unwrap();
        let s = k4.degree_stats().unwrap();
        assert_eq!((s.min_degree, s.max_degree), (3, 3));
        assert_eq!(s.average_degree, Ratio::from_integer(3));
        assert_eq!(star_subdivision(5).unwrap().degree_stats().unwrap().min_degree, 2);
        assert_eq!(Graph::new(0).degree_stats(), Err(GraphError::EmptyGraph));
    }

    #[test]
    fn girth_values() {
        assert_eq!(cycle(6).unwrap().girth(), Girth::Finite(6));
        assert_eq!(path(5).unwrap().girth(), Girth::Acyclic);
        assert_eq!(complete(4).unwrap().girth(), Girth::Finite(3));
        assert!(Girth::Acyclic > Girth::Finite(1_000_000));
        assert!(Girth::Acyclic.at_least(6));
    }

    #[test]
    fn contraction_merges_parallel_edges() {
        let c4 = cycle(4).unwrap();
        let c3 = c4.contract_edge(0, 1);
        assert_eq!((c3.n(), c3.m()), (3, 3));
        let k3 = complete(3).unwrap();
        let p = k3.contract_edge(1, 2);
        assert_eq!((p.n(), p.m()), (2, 1));
    }
}
