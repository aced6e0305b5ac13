//! Library results checked against deliberately naive reimplementations.

use oddthick::enumerate::all_graphs;
use oddthick::format::{parse_graph6, to_graph6};
use oddthick::generate::{complete, cycle, fig1, path, star_subdivision};
use oddthick::{canonical_key, odd_chromatic_number, Budget, Graph};

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.n()]; g.n()];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Proper, and every vertex with a neighbor sees some color an odd number
/// of times.
fn naive_is_odd(a: &[Vec<bool>], colors: &[usize]) -> bool {
    let n = a.len();
    for v in 0..n {
        let mut counts = [0usize; 16];
        let mut has_neighbor = false;
        for w in 0..n {
            if a[v][w] {
                has_neighbor = true;
                if colors[v] == colors[w] {
                    return false;
                }
                counts[colors[w]] += 1;
            }
        }
        if has_neighbor && counts.iter().all(|c| c % 2 == 0) {
            return false;
        }
    }
    true
}

/// Tries every assignment of `k` colors.
fn naive_odd_colorable(a: &[Vec<bool>], k: usize) -> bool {
    let n = a.len();
    let mut colors = vec![0usize; n];
    loop {
        if naive_is_odd(a, &colors) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            colors[i] += 1;
            if colors[i] < k {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

fn naive_chi_o(g: &Graph) -> usize {
    let a = adjacency(g);
    (1..).find(|&k| naive_odd_colorable(&a, k)).unwrap()
}

#[test]
fn odd_chromatic_numbers_match_brute_force() {
    let graphs = [
        ("C4", cycle(4).unwrap()),
        ("C5", cycle(5).unwrap()),
        ("C6", cycle(6).unwrap()),
        ("C7", cycle(7).unwrap()),
        ("P4", path(4).unwrap()),
        ("K4", complete(4).unwrap()),
        ("fig1", fig1()),
        ("K3*", star_subdivision(3).unwrap()),
        ("K4*", star_subdivision(4).unwrap()),
    ];
    for (name, g) in graphs {
        let lib = odd_chromatic_number(&g, Budget::UNLIMITED).unwrap().exact();
        assert_eq!(lib, Some(naive_chi_o(&g)), "{name}");
    }
}

#[test]
fn every_small_graph_matches_brute_force() {
    for class in all_graphs(5).unwrap().into_iter().skip(1) {
        for g in class {
            let lib = odd_chromatic_number(&g, Budget::UNLIMITED).unwrap().exact().unwrap();
            assert_eq!(lib, naive_chi_o(&g), "{}", to_graph6(&g));
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Isomorphism by trying all relabelings.
fn naive_isomorphic(a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    let n = a.len();
    n == b.len() && permutations(n).iter().any(|p| (0..n).all(|u| (0..n).all(|v| a[u][v] == b[p[u]][p[v]])))
}

#[test]
fn four_vertex_graphs_fall_into_eleven_classes() {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let graphs: Vec<Graph> = (0u32..64)
        .map(|mask| Graph::from_edges(4, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap())
        .collect();
    let mut reps: Vec<Vec<Vec<bool>>> = Vec::new();
    for g in &graphs {
        let a = adjacency(g);
        if !reps.iter().any(|r| naive_isomorphic(r, &a)) {
            reps.push(a);
        }
    }
    assert_eq!(reps.len(), 11);
    for g in &graphs {
        for h in &graphs {
            let iso = naive_isomorphic(&adjacency(g), &adjacency(h));
            assert_eq!(iso, canonical_key(g) == canonical_key(h));
        }
    }
}

#[test]
fn class_counts_agree_with_naive_isomorphism() {
    for (n, class) in all_graphs(5).unwrap().into_iter().enumerate() {
        let mats: Vec<_> = class.iter().map(adjacency).collect();
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                assert!(!naive_isomorphic(&mats[i], &mats[j]), "n = {n}: duplicate class");
            }
        }
        // Every labelled graph on n vertices is isomorphic to some class member.
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u32..1 << pairs.len() {
            let g = Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
                .unwrap();
            let a = adjacency(&g);
            assert!(mats.iter().any(|m| naive_isomorphic(m, &a)));
        }
    }
}

/// graph6 decoding written from the format description: one size byte
/// (n + 63) for n <= 62, then the upper triangle column by column, six bits
/// per byte, each byte offset by 63.
fn naive_graph6(s: &str) -> Vec<(usize, usize)> {
    let bytes = s.as_bytes();
    let n = (bytes[0] - 63) as usize;
    let bits: Vec<bool> =
        bytes[1..].iter().flat_map(|&b| (0..6).rev().map(move |i| ((b - 63) >> i) & 1 == 1)).collect();
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    edges
}

#[test]
fn graph6_agrees_with_naive_decoder() {
    let mut samples = vec!["Dhc", "C]", "DLo", "DK{", "Bw", "@", "F?~vw", "G~~~~{"];
    let generated: Vec<String> =
        [cycle(9).unwrap(), star_subdivision(4).unwrap(), fig1(), complete(7).unwrap()].iter().map(to_graph6).collect();
    samples.extend(generated.iter().map(String::as_str));
    for s in samples {
        let g = parse_graph6(s).unwrap();
        let mut lib: Vec<(usize, usize)> = g.edges().map(|(u, v)| (u.min(v), u.max(v))).collect();
        let mut naive = naive_graph6(s);
        lib.sort_unstable();
        naive.sort_unstable();
        assert_eq!(lib, naive, "{s}");
        assert_eq!(to_graph6(&g), s);
    }
    // C5 as the path 0-1-2-3-4 closed by 0-4.
    assert_eq!(naive_graph6("Dhc"), vec![(0, 1), (1, 2), (2, 3), (0, 4), (3, 4)]);
}
