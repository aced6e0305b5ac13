//! Planarity testing, plane embeddings as rotation systems, Kuratowski
//! witnesses, and exact thickness search.

mod dmp;
pub mod thickness;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub use thickness::{
    is_biplanar, thickness, thickness_lower_bound, EdgePartition, PartitionError, ThicknessOutcome,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("rotation has {found} entries, graph has {expected} vertices")]
    WrongOrder { expected: usize, found: usize },
    #[error("rotation at vertex {0} is not a permutation of its neighbors")]
    BadRotation(usize),
    #[error("rotation system has genus > 0 on the component containing vertex {0}")]
    NotPlanar(usize),
}

/// One face of a plane embedding. A face of a disconnected embedding can
/// have several boundary walks; isolated vertices sit in the outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Each walk `[v0, v1, ..]` traverses darts `v0->v1, .., v_last->v0`.
    pub walks: Vec<Vec<usize>>,
    pub isolated: Vec<usize>,
}

impl Face {
    /// Number of dart traversals on the boundary (bridges count twice).
    pub fn degree(&self) -> usize {
        self.walks.iter().map(Vec::len).sum()
    }
}

/// Rotation system plus the faces it induces.
///
/// `rotation[v]` lists the neighbors of `v` in cyclic order; the face to the
/// left of dart `u->v` continues with `v->w` where `w` follows `u` in
/// `rotation[v]`. Components are placed in the face containing the dart
/// `v->rotation[v][0]` of their smallest vertex, so the outer face collects
/// one walk per component and every isolated vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneEmbedding {
    pub rotation: Vec<Vec<usize>>,
    pub faces: Vec<Face>,
    pub component_count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RotationFile {
    pub rotation: Vec<Vec<usize>>,
}

impl PlaneEmbedding {
    /// Validates a rotation system against `g` and traces its faces.
    pub fn from_rotation(g: &Graph, rotation: Vec<Vec<usize>>) -> Result<Self, EmbeddingError> {
        let n = g.n();
        if rotation.len() != n {
            return Err(EmbeddingError::WrongOrder { expected: n, found: rotation.len() });
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return Err(EmbeddingError::BadRotation(v));
            }
        }
        let (comp, count) = g.components();

        // Dart ids: position of the dart u->rotation[u][i].
        let mut offset = vec![0usize; n + 1];
        for v in 0..n {
            offset[v + 1] = offset[v] + rotation[v].len();
        }
        let pos_in = |v: usize, u: usize| rotation[v].iter().position(|&x| x == u).unwrap();
        let mut visited = vec![false; offset[n]];
        let mut walks_of: Vec<Vec<Vec<usize>>> = vec![Vec::new(); count];
        for s in 0..n {
            for i in 0..rotation[s].len() {
                if visited[offset[s] + i] {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut u, mut j) = (s, i);
                while !visited[offset[u] + j] {
                    visited[offset[u] + j] = true;
                    walk.push(u);
                    let v = rotation[u][j];
                    let k = pos_in(v, u);
                    let next = (k + 1) % rotation[v].len();
                    u = v;
                    j = next;
                }
                walks_of[comp[s]].push(walk);
            }
        }

        let mut n_c = vec![0usize; count];
        let mut m_c = vec![0usize; count];
        let mut first = vec![usize::MAX; count];
        for v in 0..n {
            n_c[comp[v]] += 1;
            m_c[comp[v]] += g.degree(v);
            if first[comp[v]] == usize::MAX {
                first[comp[v]] = v;
            }
        }
        let mut outer = Face { walks: Vec::new(), isolated: Vec::new() };
        let mut faces = Vec::new();
        for c in 0..count {
            let m = m_c[c] / 2;
            if m == 0 {
                outer.isolated.push(first[c]);
                continue;
            }
            // Euler: n - m + f = 2 on each component.
            if n_c[c] + walks_of[c].len() != m + 2 {
                return Err(EmbeddingError::NotPlanar(first[c]));
            }
            // Tracing starts at the component's smallest vertex, so walk 0
            // holds the dart v0 -> rotation[v0][0].
            let mut walks = std::mem::take(&mut walks_of[c]);
            outer.walks.push(walks.remove(0));
            faces.extend(walks.into_iter().map(|w| Face { walks: vec![w], isolated: Vec::new() }));
        }
        faces.insert(0, outer);
        Ok(PlaneEmbedding { rotation, faces, component_count: count })
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// `n - m + f == 1 + c`.
    pub fn euler_holds(&self, g: &Graph) -> bool {
        g.n() + self.faces.len() == g.m() + 1 + self.component_count
    }

    pub fn to_file(&self) -> RotationFile {
        RotationFile { rotation: self.rotation.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of `K5` or `K3,3` contained in the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub enum Planarity {
    Planar(PlaneEmbedding),
    NonPlanar(KuratowskiWitness),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }

    pub fn embedding(&self) -> Option<&PlaneEmbedding> {
        match self {
            Planarity::Planar(e) => Some(e),
            Planarity::NonPlanar(_) => None,
        }
    }
}

pub fn is_planar(g: &Graph) -> bool {
    rotation_system(g).is_some()
}

/// Planar embedding, or a Kuratowski subdivision when none exists.
pub fn planar_embed(g: &Graph) -> Planarity {
    match rotation_system(g) {
        Some(rot) => {
            let emb = PlaneEmbedding::from_rotation(g, rot).expect("path addition yields a plane rotation");
            debug_assert!(emb.euler_holds(g));
            Planarity::Planar(emb)
        }
        None => Planarity::NonPlanar(kuratowski_witness(g)),
    }
}

fn rotation_system(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let active = g.non_isolated().count();
    if active >= 3 && g.m() > 3 * active - 6 {
        return None;
    }
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for block in blocks(g) {
        if block.len() == 1 {
            let (u, v) = block[0];
            rotation[u].push(v);
            rotation[v].push(u);
            continue;
        }
        let mut verts: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        let local = |x: usize| verts.binary_search(&x).unwrap();
        let b = Graph::from_edges(verts.len(), block.iter().map(|&(u, v)| (local(u), local(v)))).unwrap();
        let rot = dmp::embed_block(&b)?;
        for (i, r) in rot.into_iter().enumerate() {
            rotation[verts[i]].extend(r.into_iter().map(|x| verts[x]));
        }
    }
    Some(rotation)
}

/// Edge sets of the biconnected components (Hopcroft–Tarjan, iterative).
pub fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX || g.is_isolated(root) {
            continue;
        }
        // Frames: (vertex, parent, next neighbor index).
        let mut stack = vec![(root, usize::MAX, 0usize)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.degree(u) {
                let w = g.neighbors(u)[*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((u, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, u, 0));
                } else if w != parent && disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (p, u) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

/// Deletes edges while the graph stays non-planar; what remains is an
/// edge-minimal non-planar subgraph, hence a Kuratowski subdivision.
pub(crate) fn kuratowski_witness(g: &Graph) -> KuratowskiWitness {
    let mut h = g.clone();
    for (u, v) in g.edges() {
        h.remove_edge(u, v);
        if is_planar(&h) {
            h.add_edge(u, v).unwrap();
        }
    }
    let branch: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) >= 3).collect();
    let kind = if branch.len() == 5 && branch.iter().all(|&v| h.degree(v) == 4) {
        KuratowskiKind::K5
    } else {
        debug_assert!(branch.len() == 6 && branch.iter().all(|&v| h.degree(v) == 3));
        KuratowskiKind::K33
    };
    KuratowskiWitness { kind, branch_vertices: branch, edges: h.edges().collect() }
}
