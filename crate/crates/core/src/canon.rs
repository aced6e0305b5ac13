//! Canonical labeling by partition refinement and individualization.
//!
//! The search explores the usual refinement tree: refine to an equitable
//! ordered partition, individualize each vertex of the first non-singleton
//! cell, recurse. Leaves are compared by the graph6 string of the relabeled
//! graph and the largest wins. Automorphisms discovered at equal leaves
//! prune the tree (orbit pruning plus jumping back to the divergence level),
//! which keeps highly symmetric graphs like `K_12` cheap.

use crate::format::to_graph6;
use crate::graph::Graph;

/// Byte string that is equal for two graphs exactly when they are
/// isomorphic. It is the graph6 encoding of the canonical relabeling.
pub fn canonical_key(g: &Graph) -> Vec<u8> {
    canonical_form(g).0.into_bytes()
}

/// Canonical graph6 string and the labeling `old vertex -> new vertex`
/// that produces it.
pub fn canonical_form(g: &Graph) -> (String, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (to_graph6(g), Vec::new());
    }
    let mut search = Search { g, best: None, first: None, automorphisms: Vec::new() };
    let root = vec![(0..n).collect::<Vec<_>>()];
    search.descend(root, &mut Vec::new());
    let best = search.best.expect("at least one leaf");
    (best.cert, to_labeling(&best.order))
}

struct Leaf {
    cert: String,
    order: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<Leaf>,
    first: Option<Leaf>,
    /// Each entry maps vertex -> image.
    automorphisms: Vec<Vec<usize>>,
}

/// Explored the node fully, or abort back up to the given depth.
enum Flow {
    Done,
    JumpTo(usize),
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<Vec<usize>>, path: &mut Vec<usize>) -> Flow {
        let cells = refine(self.g, cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            return self.leaf(order, path);
        };
        let depth = path.len();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if !explored.is_empty() && self.same_orbit(path, &explored, v) {
                continue;
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            path.push(v);
            let flow = self.descend(child, path);
            path.pop();
            if let Flow::JumpTo(level) = flow {
                if level < depth {
                    return flow;
                }
            }
        }
        Flow::Done
    }

    fn leaf(&mut self, order: Vec<usize>, path: &[usize]) -> Flow {
        let relabeled = self.g.relabel(&to_labeling(&order));
        let cert = to_graph6(&relabeled);
        let leaf = Leaf { cert, order, path: path.to_vec() };
        let Some(first) = &self.first else {
            self.first = Some(Leaf { cert: leaf.cert.clone(), order: leaf.order.clone(), path: leaf.path.clone() });
            self.best = Some(leaf);
            return Flow::Done;
        };
        if leaf.cert == first.cert {
            let level = divergence(&first.path, &leaf.path);
            let gamma = automorphism(self.g, &first.order, &leaf.order);
            self.automorphisms.push(gamma);
            return Flow::JumpTo(level);
        }
        let best = self.best.as_ref().unwrap();
        match leaf.cert.cmp(&best.cert) {
            std::cmp::Ordering::Greater => {
                self.best = Some(leaf);
                Flow::Done
            }
            std::cmp::Ordering::Equal => {
                let level = divergence(&best.path, &leaf.path);
                let gamma = automorphism(self.g, &best.order, &leaf.order);
                self.automorphisms.push(gamma);
                Flow::JumpTo(level)
            }
            std::cmp::Ordering::Less => Flow::Done,
        }
    }

    /// Whether `v` shares an orbit with an explored sibling under the group
    /// generated by the known automorphisms that fix `path` pointwise.
    fn same_orbit(&self, path: &[usize], explored: &[usize], v: usize) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if path.iter().all(|&p| gamma[p] == p) {
                any = true;
                for x in 0..n {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, gamma[x]));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }
}

/// Maps each vertex of `source` to the vertex at the same position in `target`.
fn automorphism(g: &Graph, target: &[usize], source: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; target.len()];
    for (&s, &t) in source.iter().zip(target) {
        gamma[s] = t;
    }
    debug_assert!(g.edges().all(|(u, v)| g.has_edge(gamma[u], gamma[v])));
    gamma
}

fn divergence(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn to_labeling(order: &[usize]) -> Vec<usize> {
    let mut lab = vec![0; order.len()];
    for (pos, &v) in order.iter().enumerate() {
        lab[v] = pos;
    }
    lab
}

/// Refines an ordered partition until it is equitable. Cells split by the
/// number of neighbors in a splitter cell, sub-cells ordered by that count,
/// so the result depends only on the graph structure and input partition.
fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut in_splitter = vec![false; n];
    let mut count = vec![0usize; n];
    'outer: loop {
        for si in 0..cells.len() {
            for &v in &cells[si] {
                in_splitter[v] = true;
            }
            for v in 0..n {
                count[v] = g.neighbors(v).iter().filter(|&&w| in_splitter[w]).count();
            }
            for &v in &cells[si] {
                in_splitter[v] = false;
            }
            let mut split = false;
            let mut next = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 || cell.iter().all(|&v| count[v] == count[cell[0]]) {
                    next.push(cell.clone());
                    continue;
                }
                split = true;
                let mut sorted = cell.clone();
                sorted.sort_by_key(|&v| (count[v], v));
                let mut start = 0;
                for i in 1..=sorted.len() {
                    if i == sorted.len() || count[sorted[i]] != count[sorted[start]] {
                        next.push(sorted[start..i].to_vec());
                        start = i;
                    }
                }
            }
            if split {
                cells = next;
                continue 'outer;
            }
        }
        return cells;
    }
}
