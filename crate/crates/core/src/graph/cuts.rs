//! Edge cuts and the reduction / connection surgeries on cubic graphs.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{GraphBuilder, Multigraph};
use crate::error::{violation, Result};

/// Label carried by the principal cut edges of a 2- or 3-cut-connection.
pub const PRINCIPAL_LABEL: &str = "principal";
/// Label carried by the edges a reduction introduces.
pub const REDUCTION_LABEL: &str = "reduction";
/// Label carried by the three edges of an expanded triangle.
pub const TRIANGLE_LABEL: &str = "triangle";

/// The set of edges with exactly one end in `side_a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCut {
    /// Crossing base edges, sorted.
    pub edges: Vec<usize>,
    /// Number of crossing edges counted with multiplicity.
    pub size: usize,
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

impl EdgeCut {
    /// `∂U` for `U = { v : in_a[v] }`.
    pub fn from_side(g: &Multigraph, in_a: &[bool]) -> Self {
        let mut edges = Vec::new();
        let mut size = 0;
        for (id, e) in g.edges().iter().enumerate() {
            if in_a[e.u] != in_a[e.v] {
                edges.push(id);
                size += e.mult as usize;
            }
        }
        let side_a = (0..g.order()).filter(|&v| in_a[v]).collect();
        let side_b = (0..g.order()).filter(|&v| !in_a[v]).collect();
        EdgeCut {
            edges,
            size,
            side_a,
            side_b,
        }
    }

    /// Recovers the sides of a cut given by its edges in a connected graph.
    /// Fails unless removing exactly these base edges splits `g` into two
    /// parts with every listed edge crossing.
    pub fn from_edges(g: &Multigraph, edges: &[usize]) -> Result<Self> {
        let mut removed = vec![false; g.base_edge_count()];
        for &e in edges {
            if e >= g.base_edge_count() {
                return Err(violation(format!("edge {e} does not exist")));
            }
            removed[e] = true;
        }
        let Some(&first) = edges.first() else {
            return Err(violation("an edge cut needs at least one edge"));
        };
        let start = g.edge(first).u;
        let mut in_a = vec![false; g.order()];
        in_a[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for (e, y) in g.neighbours(x) {
                if !removed[e] && !in_a[y] {
                    in_a[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let cut = EdgeCut::from_side(g, &in_a);
        let mut want: Vec<usize> = edges.to_vec();
        want.sort_unstable();
        want.dedup();
        if cut.edges != want {
            return Err(violation("the given edges do not form an edge cut"));
        }
        Ok(cut)
    }

    pub fn in_a(&self, n: usize) -> Vec<bool> {
        let mut in_a = vec![false; n];
        for &v in &self.side_a {
            in_a[v] = true;
        }
        in_a
    }

    /// A cut is trivial when one side is a single vertex.
    pub fn is_trivial(&self) -> bool {
        self.side_a.len() <= 1 || self.side_b.len() <= 1
    }
}

/// Crossing stubs of a cut, as (endpoint in A, endpoint in B) with repetition
/// by multiplicity, in edge order.
fn crossing_stubs(g: &Multigraph, cut: &EdgeCut, in_a: &[bool]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &id in &cut.edges {
        let e = g.edge(id);
        let (a, b) = if in_a[e.u] { (e.u, e.v) } else { (e.v, e.u) };
        for _ in 0..e.mult {
            out.push((a, b));
        }
    }
    out
}

fn side_graph(g: &Multigraph, keep: &[bool]) -> (GraphBuilder, Vec<Option<usize>>) {
    let (h, map) = g.induced(keep);
    let mut b = GraphBuilder::new(h.order());
    for (id, e) in h.edges().iter().enumerate() {
        b.add_edge_mult(e.u, e.v, e.mult, h.label(id).map(str::to_owned));
    }
    (b, map)
}

/// Splits a bridgeless cubic graph along a 2-edge-cut, joining the two
/// degree-two vertices on each side by a new edge. Returns `(G_A, G_B)` for
/// the cut's `side_a` and `side_b`.
pub fn two_edge_reduction(g: &Multigraph, cut: &EdgeCut) -> Result<(Multigraph, Multigraph)> {
    let in_a = cut.in_a(g.order());
    let recomputed = EdgeCut::from_side(g, &in_a);
    if recomputed.size != 2 || recomputed.edges != cut.edges {
        return Err(violation("two_edge_reduction needs a 2-edge-cut"));
    }
    let stubs = crossing_stubs(g, cut, &in_a);
    let (a1, b1) = stubs[0];
    let (a2, b2) = stubs[1];
    if a1 == a2 || b1 == b2 {
        return Err(violation("both cut edges meet the same vertex"));
    }
    let in_b: Vec<bool> = in_a.iter().map(|&x| !x).collect();
    let (mut ga, map_a) = side_graph(g, &in_a);
    ga.add_labelled(map_a[a1].unwrap(), map_a[a2].unwrap(), super::REDUCTION_LABEL);
    let (mut gb, map_b) = side_graph(g, &in_b);
    gb.add_labelled(map_b[b1].unwrap(), map_b[b2].unwrap(), super::REDUCTION_LABEL);
    Ok((ga.build()?, gb.build()?))
}

/// Splits a cubic graph along a non-trivial 3-edge-cut, adding a new vertex
/// on each side joined to the three stubs there. The new vertex is the last
/// vertex of each part.
pub fn three_edge_reduction(g: &Multigraph, cut: &EdgeCut) -> Result<(Multigraph, Multigraph)> {
    let in_a = cut.in_a(g.order());
    let recomputed = EdgeCut::from_side(g, &in_a);
    if recomputed.size != 3 || recomputed.edges != cut.edges {
        return Err(violation("three_edge_reduction needs a 3-edge-cut"));
    }
    if recomputed.is_trivial() {
        return Err(violation("three_edge_reduction needs a non-trivial cut"));
    }
    let stubs = crossing_stubs(g, cut, &in_a);
    let in_b: Vec<bool> = in_a.iter().map(|&x| !x).collect();
    let (mut ga, map_a) = side_graph(g, &in_a);
    let (mut gb, map_b) = side_graph(g, &in_b);
    let xa = ga.add_vertex();
    let xb = gb.add_vertex();
    for &(a, b) in &stubs {
        ga.add_labelled(map_a[a].unwrap(), xa, super::REDUCTION_LABEL);
        gb.add_labelled(map_b[b].unwrap(), xb, super::REDUCTION_LABEL);
    }
    Ok((ga.build()?, gb.build()?))
}

/// Copies every edge of `g` not incident with `skip` into `b`, renumbering
/// vertices through `map`.
fn copy_without(b: &mut GraphBuilder, g: &Multigraph, skip: Option<usize>, map: &[usize]) {
    for (id, e) in g.edges().iter().enumerate() {
        if Some(e.u) == skip || Some(e.v) == skip {
            continue;
        }
        b.add_edge_mult(map[e.u], map[e.v], e.mult, g.label(id).map(str::to_owned));
    }
}

fn index_map_without(n: usize, skip: usize, offset: usize) -> Vec<usize> {
    (0..n)
        .map(|v| match v.cmp(&skip) {
            std::cmp::Ordering::Less => v + offset,
            std::cmp::Ordering::Equal => usize::MAX,
            std::cmp::Ordering::Greater => v - 1 + offset,
        })
        .collect()
}

/// `[G1 - v1] ∪ [G2 - v2]` plus three edges pairing the neighbour stubs of
/// `v1` (in incidence order) with those of `v2` through `pairing`.
///
/// Vertices of `G1 - v1` come first, in their original order, followed by
/// those of `G2 - v2`. The principal cut edges are labelled
/// [`PRINCIPAL_LABEL`].
pub fn three_cut_connection(
    g1: &Multigraph,
    v1: usize,
    g2: &Multigraph,
    v2: usize,
    pairing: [usize; 3],
) -> Result<Multigraph> {
    if v1 >= g1.order() || v2 >= g2.order() {
        return Err(violation("connection vertex out of range"));
    }
    if g1.degree(v1) != 3 || g2.degree(v2) != 3 {
        return Err(violation("3-cut-connection needs degree-3 vertices"));
    }
    let mut seen = [false; 3];
    for &p in &pairing {
        if p > 2 || seen[p] {
            return Err(violation("pairing must be a permutation of 0, 1, 2"));
        }
        seen[p] = true;
    }
    let map1 = index_map_without(g1.order(), v1, 0);
    let map2 = index_map_without(g2.order(), v2, g1.order() - 1);
    let mut b = GraphBuilder::new(g1.order() + g2.order() - 2);
    copy_without(&mut b, g1, Some(v1), &map1);
    copy_without(&mut b, g2, Some(v2), &map2);
    let s1 = g1.stubs(v1);
    let s2 = g2.stubs(v2);
    for i in 0..3 {
        let x = map1[s1[i].1];
        let y = map2[s2[pairing[i]].1];
        b.add_labelled(x, y, PRINCIPAL_LABEL);
    }
    b.build()
}

/// Removes one copy of `e1 = ab` from `G1` and of `e2 = cd` from `G2` and
/// adds `ac` and `bd`. Vertices of `G1` keep their indices; those of `G2`
/// are shifted by `|V(G1)|`.
pub fn two_cut_connection(
    g1: &Multigraph,
    e1: usize,
    g2: &Multigraph,
    e2: usize,
) -> Result<Multigraph> {
    if e1 >= g1.base_edge_count() || e2 >= g2.base_edge_count() {
        return Err(violation("connection edge out of range"));
    }
    let off = g1.order();
    let mut b = GraphBuilder::new(g1.order() + g2.order());
    for (id, e) in g1.edges().iter().enumerate() {
        let m = if id == e1 { e.mult - 1 } else { e.mult };
        b.add_edge_mult(e.u, e.v, m, g1.label(id).map(str::to_owned));
    }
    for (id, e) in g2.edges().iter().enumerate() {
        let m = if id == e2 { e.mult - 1 } else { e.mult };
        b.add_edge_mult(e.u + off, e.v + off, m, g2.label(id).map(str::to_owned));
    }
    let a = g1.edge(e1);
    let c = g2.edge(e2);
    b.add_labelled(a.u, c.u + off, PRINCIPAL_LABEL);
    b.add_labelled(a.v, c.v + off, PRINCIPAL_LABEL);
    b.build()
}

/// Replaces the degree-3 vertex `v` by a triangle. `v` keeps its index and
/// takes the first stub; the two new vertices `n` and `n + 1` take the other
/// two.
pub fn expand_vertex_to_triangle(g: &Multigraph, v: usize) -> Result<Multigraph> {
    if v >= g.order() || g.degree(v) != 3 {
        return Err(violation("triangle expansion needs a degree-3 vertex"));
    }
    let n = g.order();
    let stubs = g.stubs(v);
    let mut b = GraphBuilder::new(n + 2);
    let identity: Vec<usize> = (0..n).collect();
    copy_without(&mut b, g, Some(v), &identity);
    let corners = [v, n, n + 1];
    for (i, &(e, x)) in stubs.iter().enumerate() {
        b.add_edge_mult(corners[i], x, 1, g.label(e).map(str::to_owned));
    }
    b.add_labelled(corners[0], corners[1], TRIANGLE_LABEL);
    b.add_labelled(corners[1], corners[2], TRIANGLE_LABEL);
    b.add_labelled(corners[0], corners[2], TRIANGLE_LABEL);
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Multigraph {
        Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn expanding_k4_gives_the_prism() {
        let p = expand_vertex_to_triangle(&k4(), 0).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.is_cubic());
        assert_eq!(p.edges_labelled(TRIANGLE_LABEL).len(), 3);
    }

    #[test]
    fn two_cut_connection_of_k4s() {
        let g = two_cut_connection(&k4(), 0, &k4(), 5).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.is_cubic());
        let principal = g.edges_labelled(PRINCIPAL_LABEL);
        let cut = EdgeCut::from_edges(&g, &principal).unwrap();
        assert_eq!(cut.size, 2);
        let (a, b) = two_edge_reduction(&g, &cut).unwrap();
        assert_eq!((a.order(), b.order()), (4, 4));
        assert!(a.is_cubic() && b.is_cubic());
    }

    #[test]
    fn three_edge_reduction_rejects_trivial_cuts() {
        let g = k4();
        let cut = EdgeCut::from_edges(&g, g.incident(0)).unwrap();
        assert!(cut.is_trivial());
        assert!(three_edge_reduction(&g, &cut).is_err());
    }

    #[test]
    fn from_edges_rejects_non_cuts() {
        let g = k4();
        assert!(EdgeCut::from_edges(&g, &[0, 5]).is_err());
        assert!(EdgeCut::from_edges(&g, &[]).is_err());
    }

    #[test]
    fn bad_pairings_are_rejected() {
        assert!(three_cut_connection(&k4(), 0, &k4(), 0, [0, 0, 1]).is_err());
        let g = three_cut_connection(&k4(), 0, &k4(), 0, [2, 0, 1]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_cubic());
    }
}
