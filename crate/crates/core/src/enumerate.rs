//! Non-isomorphic small graphs by vertex addition and canonical dedupe.

use std::collections::BTreeMap;

use crate::canon::canonical_form;
use crate::graph::{Graph, GraphError};

/// Largest order the internal enumerator will produce.
pub const MAX_ORDER: usize = 7;

/// One representative per isomorphism class for each order `0..=n_max`,
/// in canonical-certificate order. Every graph on `n` vertices arises from
/// one on `n - 1` by adding a vertex with some neighborhood, so extending
/// every class representative in every way reaches every class.
pub fn all_graphs(n_max: usize) -> Result<Vec<Vec<Graph>>, GraphError> {
    if n_max > MAX_ORDER {
        return Err(GraphError::InvalidParameter(format!(
            "enumeration is capped at {MAX_ORDER} vertices, got {n_max}"
        )));
    }
    let mut levels = vec![vec![Graph::new(0)]];
    for n in 1..=n_max {
        let mut next: BTreeMap<String, Graph> = BTreeMap::new();
        for g in &levels[n - 1] {
            for mask in 0u32..(1 << (n - 1)) {
                let mut h = g.clone();
                let v = h.add_vertex();
                for w in 0..n - 1 {
                    if mask >> w & 1 == 1 {
                        h.add_edge(w, v)?;
                    }
                }
                let (cert, lab) = canonical_form(&h);
                next.entry(cert).or_insert_with(|| h.relabel(&lab));
            }
        }
        levels.push(next.into_values().collect());
    }
    Ok(levels)
}

/// Connected graphs of order `1..=n_max`, smallest orders first.
pub fn connected_graphs(n_max: usize) -> Result<Vec<Graph>, GraphError> {
    Ok(all_graphs(n_max)?.into_iter().skip(1).flatten().filter(Graph::is_connected).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let levels = all_graphs(6).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
        let connected: Vec<usize> =
            levels.iter().skip(1).map(|l| l.iter().filter(|g| g.is_connected()).count()).collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn refuses_beyond_cap() {
        assert!(all_graphs(MAX_ORDER + 1).is_err());
    }
}
