//! Constructive extensions of odd colorings of `G - S` back to `G`.
//!
//! Every "pick a color" step takes the smallest admissible color and every
//! "pick a vertex" step the smallest index, so traces are reproducible.

use serde::{Deserialize, Serialize};

use super::{odd_colors, partial_verdict, phi_star, ColoringError, PartialColoring, VertexColoring};
use crate::graph::Graph;

/// One step of the deficiency-repair loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecolorStep {
    /// Smallest vertex without an odd color.
    pub z: usize,
    /// Low even-degree neighbor of `z` that was recolored.
    pub u: usize,
    pub old_color: u32,
    pub gamma: u32,
    /// Deficiency set before and after the step.
    pub z_before: Vec<usize>,
    pub z_after: Vec<usize>,
}

/// Full record of an `n_easy_recolor` run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaTrace {
    pub v: usize,
    pub x: Vec<usize>,
    pub alpha: u32,
    /// `(x_i, β_i)` in processing order.
    pub betas: Vec<(usize, u32)>,
    pub steps: Vec<RecolorStep>,
    /// Colors at the moment the trace was cut (0 = uncolored).
    pub colors: Vec<u32>,
}

fn pre(msg: impl Into<String>) -> ColoringError {
    ColoringError::Precondition(msg.into())
}

fn min_color_outside(forbidden: &[u32], palette: u32) -> Option<u32> {
    (1..=palette).find(|c| !forbidden.contains(c))
}

/// `{φ(w), φ*(w) : w ∈ ws} \ {0}` with `φ*` taken in the colored subgraph.
fn color_and_star(g: &Graph, colors: &[u32], ws: impl Iterator<Item = usize>) -> Vec<u32> {
    let mut out = Vec::new();
    for w in ws {
        out.push(colors[w]);
        out.push(phi_star(g, colors, w));
    }
    out.retain(|&c| c != 0);
    out.sort_unstable();
    out.dedup();
    out
}

/// Checks that `phi` is an odd coloring of `G - deleted` using colors
/// `1..=palette` and leaves exactly `deleted` uncolored.
fn check_partial(g: &Graph, phi: &PartialColoring, deleted: &[usize], palette: u32) -> Result<(), ColoringError> {
    if phi.colors().len() != g.n() {
        return Err(ColoringError::Domain(format!(
            "coloring covers {} vertices, graph has {}",
            phi.colors().len(),
            g.n()
        )));
    }
    let mut expected = deleted.to_vec();
    expected.sort_unstable();
    expected.dedup();
    if phi.uncolored() != expected {
        return Err(pre(format!("uncolored vertices {:?}, expected {:?}", phi.uncolored(), expected)));
    }
    if let Some(v) = phi.colors().iter().position(|&c| c > palette) {
        return Err(pre(format!("vertex {v} uses color {} > {palette}", phi.colors()[v])));
    }
    let verdict = partial_verdict(g, phi);
    if !verdict.is_odd() {
        return Err(pre(format!(
            "input is not an odd coloring of the remaining graph (proper: {}, failing: {:?})",
            verdict.is_proper, verdict.failing_parity
        )));
    }
    Ok(())
}

fn finish(g: &Graph, colors: Vec<u32>, palette: u32) -> Result<VertexColoring, ColoringError> {
    let coloring = VertexColoring::new(colors)?;
    let verdict = super::odd_verdict(g, &coloring)?;
    if !verdict.is_odd() || coloring.palette_size() > palette {
        return Err(ColoringError::Invariant(format!(
            "extension produced a non-odd coloring (failing: {:?})",
            verdict.failing_parity
        )));
    }
    Ok(coloring)
}

/// Colors a deleted odd low-degree vertex `v`: requires `k >= 4`,
/// `d(v)` odd, `d(v) < ⌊k/2⌋`, and `phi` an odd `(k-1)`-coloring of `G - v`.
/// `v` gets the smallest color outside `{φ(w), φ*(w) : w ∈ N(v)}`.
pub fn extend_after_vertex_deletion(
    g: &Graph,
    v: usize,
    phi: &PartialColoring,
    k: usize,
) -> Result<VertexColoring, ColoringError> {
    if v >= g.n() {
        return Err(ColoringError::Domain(format!("vertex {v} out of range")));
    }
    let d = g.degree(v);
    if k < 4 {
        return Err(pre(format!("k = {k} < 4")));
    }
    if d % 2 == 0 || d >= k / 2 {
        return Err(pre(format!("d(v) = {d} must be odd and below {}", k / 2)));
    }
    let palette = (k - 1) as u32;
    check_partial(g, phi, &[v], palette)?;
    let mut colors = phi.colors().to_vec();
    let forbidden = color_and_star(g, &colors, g.neighbors(v).iter().copied());
    let alpha = min_color_outside(&forbidden, palette)
        .ok_or_else(|| ColoringError::Invariant(format!("no free color: C = {forbidden:?}")))?;
    colors[v] = alpha;
    finish(g, colors, palette)
}

/// Colors both endpoints of a deleted edge `v0 v1` of even low degrees.
///
/// Let `a_j` be the smallest odd-multiplicity color around `v_j`, not
/// counting the other endpoint. Each `v_i` avoids the colors and `φ*` of its
/// other neighbors and `a_{1-i}`, which keeps `v_{1-i}`'s parity witness
/// intact. The endpoint of larger degree is colored first; the second also
/// avoids the first one's color.
///
/// Both degrees equal to `(k-1)/2` is rejected: `C_5` with `k = 5` meets the
/// remaining hypotheses and has no odd 4-coloring.
pub fn extend_after_edge_pair_deletion(
    g: &Graph,
    v0: usize,
    v1: usize,
    phi: &PartialColoring,
    k: usize,
) -> Result<VertexColoring, ColoringError> {
    if v0 >= g.n() || v1 >= g.n() {
        return Err(ColoringError::Domain(format!("vertex pair ({v0}, {v1}) out of range")));
    }
    if k < 4 {
        return Err(pre(format!("k = {k} < 4")));
    }
    if !g.has_edge(v0, v1) {
        return Err(pre(format!("{v0}{v1} is not an edge")));
    }
    let (d0, d1) = (g.degree(v0), g.degree(v1));
    if d0 % 2 == 1 || d1 % 2 == 1 {
        return Err(pre(format!("degrees ({d0}, {d1}) must both be even")));
    }
    if d0 + d1 >= k {
        return Err(pre(format!("d(v0) + d(v1) = {} must be below k = {k}", d0 + d1)));
    }
    if 2 * d0 > k - 1 || 2 * d1 > k - 1 {
        return Err(pre(format!("degrees ({d0}, {d1}) exceed (k-1)/2")));
    }
    if 2 * d0 == k - 1 && 2 * d1 == k - 1 {
        return Err(pre(format!("d(v0) = d(v1) = (k-1)/2 = {d0} is the excluded equality case")));
    }
    let palette = (k - 1) as u32;
    check_partial(g, phi, &[v0, v1], palette)?;
    let mut colors = phi.colors().to_vec();
    let ends = [v0, v1];
    // a[j]: parity witness of v_j that survives only if v_{1-j} avoids it.
    let a: Vec<u32> = ends
        .iter()
        .map(|&vj| {
            odd_colors(g, &colors, vj).first().copied().ok_or_else(|| {
                ColoringError::Invariant(format!("no odd color around {vj} (degree {})", g.degree(vj)))
            })
        })
        .collect::<Result<_, _>>()?;
    let order = if d1 > d0 { [1, 0] } else { [0, 1] };
    for (step, &i) in order.iter().enumerate() {
        let vi = ends[i];
        let other = ends[1 - i];
        let mut forbidden =
            color_and_star(g, &colors, g.neighbors(vi).iter().copied().filter(|&w| w != other));
        forbidden.push(a[1 - i]);
        if step == 1 {
            forbidden.push(colors[other]);
        }
        let beta = min_color_outside(&forbidden, palette)
            .ok_or_else(|| ColoringError::Invariant(format!("no free color for {vi}: {forbidden:?}")))?;
        colors[vi] = beta;
    }
    finish(g, colors, palette)
}

/// The set `X` of neighbors of `v` with even degree at most `2n`.
pub fn low_even_neighbors(g: &Graph, v: usize, n: usize) -> Vec<usize> {
    g.neighbors(v).iter().copied().filter(|&w| is_low_even(g, w, n)).collect()
}

fn is_low_even(g: &Graph, w: usize, n: usize) -> bool {
    let d = g.degree(w);
    d > 0 && d % 2 == 0 && d <= 2 * n
}

/// Odd degree, or some neighbor of even degree `2i` with `i <= n`.
pub fn is_n_easy(g: &Graph, v: usize, n: usize) -> bool {
    g.degree(v) % 2 == 1 || !low_even_neighbors(g, v, n).is_empty()
}

/// Checks the hypotheses of [`n_easy_recolor`] other than the coloring itself.
pub fn n_easy_preconditions(g: &Graph, v: usize, n: usize, k: usize) -> Result<(), ColoringError> {
    if v >= g.n() {
        return Err(ColoringError::Domain(format!("vertex {v} out of range")));
    }
    if n == 0 || k < 4 * n + 2 {
        return Err(pre(format!("need n >= 1 and k >= 4n + 2 (n = {n}, k = {k})")));
    }
    if !is_n_easy(g, v, n) {
        return Err(pre(format!("vertex {v} is not {n}-easy")));
    }
    if let Some(w) = (0..g.n()).find(|&w| g.degree(w) % 2 == 1 && g.degree(w) < 2 * n + 1) {
        return Err(pre(format!("vertex {w} has odd degree {} < {}", g.degree(w), 2 * n + 1)));
    }
    let x = low_even_neighbors(g, v, n).len();
    let easy = g.neighbors(v).iter().filter(|&&w| is_n_easy(g, w, n)).count();
    if 2 * g.degree(v) > x + easy + k - 2 {
        return Err(pre(format!(
            "2d(v) = {} exceeds |X| + |N_ez(v)| + k - 2 = {}",
            2 * g.degree(v),
            x + easy + k - 2
        )));
    }
    Ok(())
}

/// Extends an odd `(k-1)`-coloring of `G - (X ∪ {v})` to `G`, where `X` is
/// the set of low even-degree neighbors of the `n`-easy vertex `v`.
///
/// Three stages: `v` takes the smallest color outside
/// `A = φ0(Y) ∪ {φ0*(y) : y ∈ Y not n-easy}` (`Y = N(v) \ X`); each `x_i`
/// in index order takes the smallest color outside the colors and `φ*` of
/// its already-colored neighbors other than `v`, plus `α`; then while some
/// non-isolated vertex `z` lacks an odd color, the smallest such `z` has its
/// smallest low even-degree neighbor `u` recolored with the smallest color
/// outside `{ψ(y), ψ*(y) : y ∈ N(u)} ∪ {ψ(u)}`.
///
/// The deficiency set must shrink strictly on every step; otherwise the
/// run stops with [`ColoringError::LemmaTrace`] carrying the full trace.
pub fn n_easy_recolor(
    g: &Graph,
    v: usize,
    n: usize,
    k: usize,
    phi0: &PartialColoring,
) -> Result<(VertexColoring, LemmaTrace), ColoringError> {
    n_easy_preconditions(g, v, n, k)?;
    let x = low_even_neighbors(g, v, n);
    let mut deleted = x.clone();
    deleted.push(v);
    let palette = (k - 1) as u32;
    check_partial(g, phi0, &deleted, palette)?;

    let mut colors = phi0.colors().to_vec();
    let mut trace = LemmaTrace { v, x: x.clone(), ..LemmaTrace::default() };

    // Stage 1. X is still uncolored here; in the full pipeline it holds the
    // auxiliary color k, which never meets the palette 1..k-1.
    let mut a = Vec::new();
    for &y in g.neighbors(v).iter().filter(|y| !x.contains(y)) {
        a.push(colors[y]);
        if !is_n_easy(g, y, n) {
            a.push(phi_star(g, &colors, y));
        }
    }
    a.retain(|&c| c != 0);
    let alpha = min_color_outside(&a, palette)
        .ok_or_else(|| ColoringError::Invariant(format!("no color for v outside A = {a:?}")))?;
    colors[v] = alpha;
    trace.alpha = alpha;

    // Stage 2.
    for &xi in &x {
        let mut b = color_and_star(g, &colors, g.neighbors(xi).iter().copied().filter(|&w| w != v));
        b.push(alpha);
        let beta = min_color_outside(&b, palette)
            .ok_or_else(|| ColoringError::Invariant(format!("no color for {xi} outside B = {b:?}")))?;
        colors[xi] = beta;
        trace.betas.push((xi, beta));
    }

    // Stage 3.
    let mut z = deficiency(g, &colors);
    while let Some(&zi) = z.first() {
        let Some(u) = g.neighbors(zi).iter().copied().find(|&u| is_low_even(g, u, n)) else {
            trace.colors = colors;
            return Err(ColoringError::LemmaTrace(Box::new(trace)));
        };
        let mut c = color_and_star(g, &colors, g.neighbors(u).iter().copied());
        c.push(colors[u]);
        let Some(gamma) = min_color_outside(&c, palette) else {
            trace.colors = colors;
            return Err(ColoringError::LemmaTrace(Box::new(trace)));
        };
        let old_color = colors[u];
        colors[u] = gamma;
        let next = deficiency(g, &colors);
        let shrinks = next.len() < z.len() && next.iter().all(|w| z.contains(w));
        trace.steps.push(RecolorStep { z: zi, u, old_color, gamma, z_before: z, z_after: next.clone() });
        if !shrinks {
            trace.colors = colors;
            return Err(ColoringError::LemmaTrace(Box::new(trace)));
        }
        z = next;
    }
    trace.colors = colors.clone();
    Ok((finish(g, colors, palette)?, trace))
}

/// Non-isolated vertices with no odd color in their neighborhood.
fn deficiency(g: &Graph, colors: &[u32]) -> Vec<usize> {
    (0..g.n()).filter(|&w| !g.is_isolated(w) && odd_colors(g, colors, w).is_empty()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::solver::odd_colorable;
    use crate::coloring::{odd_verdict, Decision};
    use crate::generate::{complete, cycle};
    use crate::Budget;

    /// Solves `G - deleted` exactly with `palette` colors and lifts it back.
    fn solve_without(g: &Graph, deleted: &[usize], palette: usize) -> PartialColoring {
        let (sub, map) = g.remove_vertices(deleted);
        match odd_colorable(&sub, palette, Budget::UNLIMITED) {
            Decision::Yes(c) => PartialColoring::lift(&c, &map, g.n()),
            other => panic!("subgraph not {palette}-colorable: {other:?}"),
        }
    }

    #[test]
    fn vertex_deletion_on_an_edge() {
        let g = complete(2).unwrap();
        let phi = PartialColoring::new(vec![1, 0]);
        let out = extend_after_vertex_deletion(&g, 1, &phi, 4).unwrap();
        assert_eq!(out.colors(), &[1, 2]);
    }

    #[test]
    fn vertex_deletion_pendant_on_hexagon() {
        let mut g = cycle(6).unwrap();
        let v = g.add_vertex();
        g.add_edge(0, v).unwrap();
        let phi = solve_without(&g, &[v], 5);
        let out = extend_after_vertex_deletion(&g, v, &phi, 6).unwrap();
        assert!(odd_verdict(&g, &out).unwrap().is_odd());
        assert!(out.palette_size() <= 5);
        assert_eq!(&out.colors()[..6], &phi.colors()[..6]);
    }

    #[test]
    fn vertex_deletion_preconditions() {
        let g = cycle(5).unwrap();
        let phi = PartialColoring::new(vec![0, 1, 2, 1, 2]);
        // even degree
        assert!(matches!(extend_after_vertex_deletion(&g, 0, &phi, 8), Err(ColoringError::Precondition(_))));
        let g = complete(2).unwrap();
        assert!(matches!(
            extend_after_vertex_deletion(&g, 1, &PartialColoring::new(vec![1, 0]), 3),
            Err(ColoringError::Precondition(_))
        ));
        // input not colored with k-1 colors
        assert!(matches!(
            extend_after_vertex_deletion(&g, 1, &PartialColoring::new(vec![5, 0]), 4),
            Err(ColoringError::Precondition(_))
        ));
    }

    #[test]
    fn edge_pair_on_four_cycle() {
        let g = cycle(4).unwrap();
        let phi = PartialColoring::new(vec![0, 0, 1, 2]);
        let out = extend_after_edge_pair_deletion(&g, 0, 1, &phi, 7).unwrap();
        assert!(odd_verdict(&g, &out).unwrap().is_odd());
        assert!(out.palette_size() <= 6);
        assert_eq!(&out.colors()[2..], &[1, 2]);
    }

    #[test]
    fn edge_pair_preconditions() {
        let g = cycle(4).unwrap();
        let phi = PartialColoring::new(vec![0, 0, 1, 2]);
        assert!(matches!(extend_after_edge_pair_deletion(&g, 0, 1, &phi, 4), Err(ColoringError::Precondition(_))));
        assert!(matches!(extend_after_edge_pair_deletion(&g, 0, 2, &phi, 7), Err(ColoringError::Precondition(_))));
        // The equality case has genuine counterexamples.
        let c5 = cycle(5).unwrap();
        let phi = PartialColoring::new(vec![0, 0, 1, 2, 3]);
        assert!(odd_colorable(&c5, 4, Budget::UNLIMITED) == Decision::No);
        assert!(matches!(extend_after_edge_pair_deletion(&c5, 0, 1, &phi, 5), Err(ColoringError::Precondition(_))));
    }

    #[test]
    fn n_easy_with_empty_x_matches_single_vertex_rule() {
        let g = complete(4).unwrap();
        let phi = solve_without(&g, &[0], 5);
        let (out, trace) = n_easy_recolor(&g, 0, 1, 6, &phi).unwrap();
        assert!(trace.x.is_empty() && trace.steps.is_empty());
        let c = color_and_star(&g, phi.colors(), g.neighbors(0).iter().copied());
        assert_eq!(out.color(0), min_color_outside(&c, 5).unwrap());
        assert_eq!(&out.colors()[1..], &phi.colors()[1..]);
        assert!(odd_verdict(&g, &out).unwrap().is_odd());
    }

    #[test]
    fn n_easy_with_a_two_neighbor() {
        // Hexagon 0..5 with chords 13 and 14; vertex 5 has the 2-neighbor 0.
        let mut g = cycle(6).unwrap();
        g.add_edge(1, 3).unwrap();
        g.add_edge(1, 4).unwrap();
        assert_eq!(low_even_neighbors(&g, 5, 1), vec![0]);
        let phi = solve_without(&g, &[0, 5], 5);
        let (out, trace) = n_easy_recolor(&g, 5, 1, 6, &phi).unwrap();
        assert!(odd_verdict(&g, &out).unwrap().is_odd());
        assert!(out.palette_size() <= 5);
        assert_eq!(trace.betas.len(), 1);
        for s in &trace.steps {
            assert!(s.z_after.len() < s.z_before.len());
        }
    }

    #[test]
    fn n_easy_preconditions_are_checked() {
        let g = cycle(4).unwrap();
        assert!(matches!(n_easy_preconditions(&g, 0, 1, 5), Err(ColoringError::Precondition(_))));
        // Path ends have odd degree 1 < 3.
        let p = crate::generate::path(4).unwrap();
        assert!(matches!(n_easy_preconditions(&p, 1, 1, 6), Err(ColoringError::Precondition(_))));
    }
}
