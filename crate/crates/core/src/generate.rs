//! Named graph families and seeded random generators.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, GraphError};
use crate::planarity::is_planar;

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameter(msg.into())
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("complete graph needs n >= 1"));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(invalid("cycle needs length >= 3"));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(invalid("path needs n >= 1"));
    }
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// Complete multipartite graph with the given part sizes.
pub fn complete_multipartite(parts: &[usize]) -> Result<Graph, GraphError> {
    if parts.is_empty() || parts.iter().any(|&p| p == 0) {
        return Err(invalid("complete multipartite needs at least one part, all parts >= 1"));
    }
    let n: usize = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat(i).take(p));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// `K_n` with every edge subdivided exactly once.
///
/// Vertices `0..n` are the original vertices; the subdivision vertex of
/// pair `(i, j)` follows in lexicographic pair order.
pub fn star_subdivision(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(invalid("star_subdivision needs n >= 2"));
    }
    let pairs = n * (n - 1) / 2;
    let mut g = Graph::new(n + pairs);
    let mut s = n;
    for i in 0..n {
        for j in i + 1..n {
            g.add_edge(i, s)?;
            g.add_edge(s, j)?;
            s += 1;
        }
    }
    Ok(g)
}

/// The seven-vertex example: a 5-cycle `v2..v6` with pendant `v1` at `v2`
/// and an isolated `v7` (vertices numbered from 0).
pub fn fig1() -> Graph {
    Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|l| (0, l))).unwrap()
}

/// Honeycomb patch in brick-wall form: a `rows x cols` grid with every
/// horizontal edge and the vertical edges at even `row + col`.
pub fn honeycomb(rows: usize, cols: usize) -> Result<Graph, GraphError> {
    if rows < 2 || cols < 3 {
        return Err(invalid("honeycomb needs rows >= 2 and cols >= 3"));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut g = Graph::new(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                g.add_edge(id(r, c), id(r, c + 1))?;
            }
            if r + 1 < rows && (r + c) % 2 == 0 {
                g.add_edge(id(r, c), id(r + 1, c))?;
            }
        }
    }
    Ok(g)
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random planar graph: candidate edges are tried in shuffled order and
/// kept while the graph stays planar and every new cycle has length at
/// least `min_girth` (use 3 for no girth constraint). Stops at `target_m`
/// edges. When `min_degree_one` is set, isolated vertices are afterwards
/// attached by a pendant edge, which preserves both planarity and girth.
pub fn random_planar<R: Rng + ?Sized>(
    n: usize,
    target_m: usize,
    min_girth: usize,
    min_degree_one: bool,
    rng: &mut R,
) -> Graph {
    let mut candidates: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    candidates.shuffle(rng);
    let mut g = Graph::new(n);
    for (u, v) in candidates {
        if g.m() >= target_m {
            break;
        }
        if min_girth > 3 {
            if let Some(d) = g.distance(u, v) {
                if d + 1 < min_girth {
                    continue;
                }
            }
        }
        g.add_edge(u, v).unwrap();
        if !is_planar(&g) {
            g.remove_edge(u, v);
        }
    }
    if min_degree_one && n > 1 {
        for v in 0..n {
            if g.is_isolated(v) {
                let mut w = rng.gen_range(0..n - 1);
                if w >= v {
                    w += 1;
                }
                g.add_edge(v, w).unwrap();
            }
        }
    }
    g
}

/// Parsed generator expression, e.g. `join(cycle(5),complete(6))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    CompleteMultipartite(Vec<usize>),
    StarSubdivision(usize),
    Join(Box<GraphSpec>, Box<GraphSpec>),
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph, GraphError> {
        match self {
            GraphSpec::Complete(n) => complete(*n),
            GraphSpec::Cycle(n) => cycle(*n),
            GraphSpec::Path(n) => path(*n),
            GraphSpec::CompleteMultipartite(parts) => complete_multipartite(parts),
            GraphSpec::StarSubdivision(n) => star_subdivision(*n),
            GraphSpec::Join(a, b) => Ok(a.build()?.join(&b.build()?)),
        }
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Complete(n) => write!(f, "complete({n})"),
            GraphSpec::Cycle(n) => write!(f, "cycle({n})"),
            GraphSpec::Path(n) => write!(f, "path({n})"),
            GraphSpec::CompleteMultipartite(p) => {
                let p: Vec<String> = p.iter().map(ToString::to_string).collect();
                write!(f, "complete_multipartite({})", p.join(","))
            }
            GraphSpec::StarSubdivision(n) => write!(f, "star_subdivision({n})"),
            GraphSpec::Join(a, b) => write!(f, "join({a},{b})"),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let open = s.find('(').ok_or_else(|| invalid(format!("expected kind(params), got {s:?}")))?;
        if !s.ends_with(')') {
            return Err(invalid(format!("unbalanced parentheses in {s:?}")));
        }
        let kind = &s[..open];
        let inner = &s[open + 1..s.len() - 1];
        let args = split_top_level(inner)?;
        let ints = || -> Result<Vec<usize>, GraphError> {
            args.iter()
                .map(|a| a.parse::<usize>().map_err(|_| invalid(format!("expected integer, got {a:?}"))))
                .collect()
        };
        let one = || -> Result<usize, GraphError> {
            match ints()?.as_slice() {
                [x] => Ok(*x),
                _ => Err(invalid(format!("{kind} takes exactly one integer"))),
            }
        };
        Ok(match kind {
            "complete" => GraphSpec::Complete(one()?),
            "cycle" => GraphSpec::Cycle(one()?),
            "path" => GraphSpec::Path(one()?),
            "star_subdivision" => GraphSpec::StarSubdivision(one()?),
            "complete_multipartite" => GraphSpec::CompleteMultipartite(ints()?),
            "join" => match args.as_slice() {
                [a, b] => GraphSpec::Join(Box::new(a.parse()?), Box::new(b.parse()?)),
                _ => return Err(invalid("join takes exactly two graphs")),
            },
            other => return Err(invalid(format!("unknown graph kind {other:?}"))),
        })
    }
}

fn split_top_level(s: &str) -> Result<Vec<&str>, GraphError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(invalid("unbalanced parentheses"));
                }
            }
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(invalid("unbalanced parentheses"));
    }
    if !s.is_empty() {
        parts.push(&s[start..]);
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Girth;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn star_subdivision_counts() {
        let g = star_subdivision(4).unwrap();
        assert_eq!((g.n(), g.m()), (10, 12));
        // Every triangle becomes a 6-cycle.
        assert_eq!(g.girth(), Girth::Finite(6));
        assert_eq!(star_subdivision(2).unwrap().m(), 2);
        assert!(star_subdivision(1).is_err());
    }

    #[test]
    fn join_edge_count() {
        let g = cycle(5).unwrap().join(&complete(6).unwrap());
        assert_eq!((g.n(), g.m()), (11, 50));
    }

    #[test]
    fn cycle_is_2_regular() {
        let g = cycle(5).unwrap();
        assert_eq!((g.n(), g.m()), (5, 5));
        assert!(g.degrees().iter().all(|&d| d == 2));
        let err = cycle(2).unwrap_err();
        assert!(err.to_string().contains("length >= 3"));
    }

    #[test]
    fn spec_strings_parse() {
        let spec: GraphSpec = "join(cycle(5), complete(6))".parse().unwrap();
        assert_eq!(spec.to_string(), "join(cycle(5),complete(6))");
        assert_eq!(spec.build().unwrap().m(), 50);
        let mp: GraphSpec = "complete_multipartite(2,2,2)".parse().unwrap();
        assert_eq!(mp.build().unwrap().m(), 12);
        assert!("wheel(5)".parse::<GraphSpec>().is_err());
        assert!("cycle(5".parse::<GraphSpec>().is_err());
    }

    #[test]
    fn honeycomb_faces_are_hexagons() {
        let g = honeycomb(4, 7).unwrap();
        assert_eq!(g.girth(), Girth::Finite(6));
        assert!(g.max_degree().unwrap() == 3);
    }

    #[test]
    fn random_planar_respects_girth() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let g = random_planar(12, 30, 6, true, &mut rng);
            assert!(g.girth().at_least(6));
            assert!(g.min_degree().unwrap() >= 1);
            assert!(is_planar(&g));
        }
    }
}
