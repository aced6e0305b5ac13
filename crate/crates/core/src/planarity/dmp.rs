// Path-addition planarity test for biconnected blocks (Demoucron, Malgrange
// and Pertuiset). Quadratic, but the graphs here have at most a few dozen
// edges per layer and the embedding falls out directly as oriented faces.

use crate::graph::Graph;

/// Embeds a biconnected graph with at least three vertices. Returns the
/// rotation system (successor order of neighbors around each vertex) or
/// `None` if the block is not planar.
pub(super) fn embed_block(b: &Graph) -> Option<Vec<Vec<usize>>> {
    let n = b.n();
    debug_assert!(n >= 3);
    if b.m() > 3 * n - 6 {
        return None;
    }
    let mut vertex_in = vec![false; n];
    let mut edge_in = EdgeSet::new(b);

    let cycle = initial_cycle(b);
    for i in 0..cycle.len() {
        vertex_in[cycle[i]] = true;
        edge_in.insert(cycle[i], cycle[(i + 1) % cycle.len()]);
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    let mut embedded_edges = cycle.len();

    while embedded_edges < b.m() {
        let fragments = fragments(b, &vertex_in, &edge_in);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attachments.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("fragments exist while edges remain");
        let path = fragments[fi].path(b, &vertex_in);
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            edge_in.insert(w[0], w[1]);
            embedded_edges += 1;
        }
        for &v in &path {
            vertex_in[v] = true;
        }
    }

    // Consecutive darts u->v, v->w on a face mean w follows u around v.
    let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for f in &faces {
        let r = f.len();
        for i in 0..r {
            let (u, v, w) = (f[i], f[(i + 1) % r], f[(i + 2) % r]);
            succ[v].push((u, w));
        }
    }
    let rotation = (0..n)
        .map(|v| {
            let d = b.degree(v);
            let mut order = Vec::with_capacity(d);
            let start = b.neighbors(v)[0];
            let mut cur = start;
            loop {
                order.push(cur);
                cur = succ[v].iter().find(|&&(u, _)| u == cur).expect("every corner is on a face").1;
                if cur == start {
                    break;
                }
            }
            debug_assert_eq!(order.len(), d);
            order
        })
        .collect();
    Some(rotation)
}

struct EdgeSet {
    // Row-major bit per ordered pair; the blocks are small.
    bits: Vec<bool>,
    n: usize,
}

impl EdgeSet {
    fn new(b: &Graph) -> Self {
        EdgeSet { bits: vec![false; b.n() * b.n()], n: b.n() }
    }
    fn insert(&mut self, u: usize, v: usize) {
        self.bits[u * self.n + v] = true;
        self.bits[v * self.n + u] = true;
    }
    fn contains(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.n + v]
    }
}

/// Any cycle through vertex 0: edge `0 -> w` closed by a BFS path from `w`
/// back to 0 avoiding that edge.
fn initial_cycle(b: &Graph) -> Vec<usize> {
    let w = b.neighbors(0)[0];
    let n = b.n();
    let mut prev = vec![usize::MAX; n];
    prev[w] = w;
    let mut queue = std::collections::VecDeque::from([w]);
    while let Some(u) = queue.pop_front() {
        for &x in b.neighbors(u) {
            if u == w && x == 0 {
                continue;
            }
            if prev[x] == usize::MAX {
                prev[x] = u;
                if x == 0 {
                    let mut cyc = vec![0];
                    let mut cur = u;
                    while cur != w {
                        cyc.push(cur);
                        cur = prev[cur];
                    }
                    cyc.push(w);
                    cyc.reverse();
                    // cyc = w ... 0 along the path; rotate so it starts at 0.
                    let last = cyc.pop().unwrap();
                    cyc.insert(0, last);
                    return cyc;
                }
                queue.push_back(x);
            }
        }
    }
    unreachable!("blocks are biconnected")
}

struct Fragment {
    attachments: Vec<usize>,
    /// Internal (not yet embedded) vertices; empty for a chord.
    internal: Vec<usize>,
    chord: Option<(usize, usize)>,
}

fn fragments(b: &Graph, vertex_in: &[bool], edge_in: &EdgeSet) -> Vec<Fragment> {
    let n = b.n();
    let mut out = Vec::new();
    for (u, v) in b.edges() {
        if vertex_in[u] && vertex_in[v] && !edge_in.contains(u, v) {
            out.push(Fragment { attachments: vec![u, v], internal: Vec::new(), chord: Some((u, v)) });
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if vertex_in[s] || seen[s] {
            continue;
        }
        let mut internal = vec![s];
        let mut attach = Vec::new();
        seen[s] = true;
        let mut i = 0;
        while i < internal.len() {
            let u = internal[i];
            i += 1;
            for &x in b.neighbors(u) {
                if vertex_in[x] {
                    if !attach.contains(&x) {
                        attach.push(x);
                    }
                } else if !seen[x] {
                    seen[x] = true;
                    internal.push(x);
                }
            }
        }
        attach.sort_unstable();
        out.push(Fragment { attachments: attach, internal, chord: None });
    }
    out
}

impl Fragment {
    /// A path between two distinct attachment vertices through the fragment.
    fn path(&self, b: &Graph, vertex_in: &[bool]) -> Vec<usize> {
        if let Some((u, v)) = self.chord {
            return vec![u, v];
        }
        let a = self.attachments[0];
        let n = b.n();
        let mut prev = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        for &x in b.neighbors(a) {
            if !vertex_in[x] && self.internal.contains(&x) && prev[x] == usize::MAX {
                prev[x] = a;
                queue.push_back(x);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &x in b.neighbors(u) {
                if vertex_in[x] {
                    if x != a {
                        let mut path = vec![x, u];
                        let mut cur = u;
                        while prev[cur] != a {
                            cur = prev[cur];
                            path.push(cur);
                        }
                        path.push(a);
                        path.reverse();
                        return path;
                    }
                } else if prev[x] == usize::MAX {
                    prev[x] = u;
                    queue.push_back(x);
                }
            }
        }
        unreachable!("fragments of a biconnected block have two attachments")
    }
}

/// Splits an oriented face along a path whose endpoints lie on it.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let r = face.len();
    let a = path[0];
    let b = *path.last().unwrap();
    let ia = face.iter().position(|&x| x == a).unwrap();
    let ib = face.iter().position(|&x| x == b).unwrap();
    let interior = &path[1..path.len() - 1];

    let mut f1 = Vec::new();
    let mut i = ia;
    loop {
        f1.push(face[i]);
        if i == ib {
            break;
        }
        i = (i + 1) % r;
    }
    f1.extend(interior.iter().rev());

    let mut f2 = Vec::new();
    let mut i = ib;
    loop {
        f2.push(face[i]);
        if i == ia {
            break;
        }
        i = (i + 1) % r;
    }
    f2.extend(interior.iter());
    (f1, f2)
}
