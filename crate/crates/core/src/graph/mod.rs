//! The multigraph data model shared by every algorithm in the crate.
//!
//! Vertices are `0..n`. Parallel edges are stored once, as a *base edge*
//! carrying a multiplicity, and the base-edge list is kept sorted by
//! `(min endpoint, max endpoint)`, so an edge id is simply its position in
//! that list. Adding perfect matchings to a graph only changes multiplicities,
//! never ids, which lets colourings and matchings of `G + N1 + ... + Nk` be
//! read directly as data on `G`.

mod canon;
mod cuts;
mod edgeset;
mod format;
mod pole;
mod structure;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use cuts::{
    expand_vertex_to_triangle, three_cut_connection, three_edge_reduction, two_cut_connection,
    two_edge_reduction, EdgeCut, PRINCIPAL_LABEL, REDUCTION_LABEL, TRIANGLE_LABEL,
};
pub use edgeset::{EdgeSet, EdgeSetIter, EDGE_SET_CAPACITY};
pub use format::{
    parse_edge_list, parse_graph6, parse_graph_line, parse_sparse6, write_edge_list, write_graph6,
    write_graph_line, write_sparse6,
};
pub use pole::{KPole, Stub};
pub use structure::{
    bipartition, bridges, components, cyclic_connectivity, girth, is_bridgeless, is_connected,
    is_petersen, rank, CyclicConnectivity, CYCLIC_CONNECTIVITY_CAP,
};

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::error::{violation, Error, Result};

/// A base edge: an unordered vertex pair `u < v` with a positive multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub mult: u32,
}

impl Edge {
    /// The endpoint of this edge that is not `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// A loopless multigraph with an optional label per base edge.
///
/// Despite the name of the problem domain, regularity is not enforced: graph6
/// input may be any simple graph, and k-pole fragments have degree-deficient
/// vertices. [`Multigraph::max_degree`] and [`Multigraph::is_regular`] report
/// what was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
    labels: Vec<Option<String>>,
    incidence: Vec<Vec<usize>>,
    degrees: Vec<u32>,
}

impl Multigraph {
    /// Builds a graph from an edge list; repeated pairs become multiplicity.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v) in edges {
            b.add_edge(u, v);
        }
        b.build()
    }

    /// Builds a graph from `(u, v, multiplicity)` triples.
    pub fn with_multiplicities<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        let mut b = GraphBuilder::new(n);
        for (u, v, m) in edges {
            b.add_edge_mult(u, v, m, None);
        }
        b.build()
    }

    pub fn empty(n: usize) -> Self {
        GraphBuilder::new(n).build().expect("an edgeless graph is always valid")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of base edges (parallel classes), not counting multiplicity.
    pub fn base_edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(|e| e.mult as usize).sum()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn label(&self, id: usize) -> Option<&str> {
        self.labels[id].as_deref()
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    /// Ids of all edges whose label equals `label`.
    pub fn edges_labelled(&self, label: &str) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.label(e) == Some(label))
            .collect()
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        (0..self.edges.len()).find(|&e| self.label(e) == Some(label))
    }

    /// Base edges incident with `v`, in increasing id order.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// Degree of `v`, counting multiplicity.
    pub fn degree(&self, v: usize) -> u32 {
        self.degrees[v]
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.degrees.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_cubic(&self) -> bool {
        self.degrees.iter().all(|&d| d == 3)
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|e| e.mult == 1)
    }

    /// Id of the base edge joining `u` and `v`, if any.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(a, b)))
            .ok()
    }

    /// `(edge id, neighbour)` pairs around `v`, one per base edge.
    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.incidence[v].iter().map(move |&e| (e, self.edges[e].other(v)))
    }

    /// The three (or `degree`) stubs around `v`: each base edge repeated by
    /// its multiplicity, in id order.
    pub fn stubs(&self, v: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &e in &self.incidence[v] {
            for _ in 0..self.edges[e].mult {
                out.push((e, self.edges[e].other(v)));
            }
        }
        out
    }

    /// All base edges as an [`EdgeSet`].
    pub fn all_edges(&self) -> Result<EdgeSet> {
        self.check_edge_capacity()?;
        Ok(EdgeSet::full(self.edges.len()))
    }

    pub fn check_edge_capacity(&self) -> Result<()> {
        if self.edges.len() > EDGE_SET_CAPACITY {
            Err(Error::TooManyEdges {
                edges: self.edges.len(),
                limit: EDGE_SET_CAPACITY,
            })
        } else {
            Ok(())
        }
    }

    /// Same base edges, multiplicities replaced. Edge ids are preserved.
    pub fn with_edge_multiplicities(&self, mult: &[u32]) -> Result<Self> {
        if mult.len() != self.edges.len() {
            return Err(violation("multiplicity vector length differs from edge count"));
        }
        if mult.iter().any(|&m| m == 0) {
            return Err(violation("multiplicities must be positive"));
        }
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .zip(mult)
            .map(|(e, &m)| Edge { mult: m, ..*e })
            .collect();
        Ok(Self::assemble(self.n, edges, self.labels.clone()))
    }

    /// `G + S1 + ... + Sk`: one extra parallel copy of every edge per set it
    /// appears in. Edge ids are preserved.
    pub fn plus<'a, I>(&self, sets: I) -> Self
    where
        I: IntoIterator<Item = &'a EdgeSet>,
    {
        let mut mult: Vec<u32> = self.edges.iter().map(|e| e.mult).collect();
        for s in sets {
            for e in s.iter() {
                mult[e] += 1;
            }
        }
        self.with_edge_multiplicities(&mult)
            .expect("adding edges keeps multiplicities positive")
    }

    /// `G + t·S`.
    pub fn plus_times(&self, set: &EdgeSet, t: u32) -> Self {
        let mut mult: Vec<u32> = self.edges.iter().map(|e| e.mult).collect();
        for e in set.iter() {
            mult[e] += t;
        }
        self.with_edge_multiplicities(&mult)
            .expect("adding edges keeps multiplicities positive")
    }

    /// `tG`: every multiplicity scaled by `t`.
    pub fn scaled(&self, t: u32) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidParameter("scaling factor must be positive".into()));
        }
        let mult: Vec<u32> = self.edges.iter().map(|e| e.mult * t).collect();
        self.with_edge_multiplicities(&mult)
    }

    /// The subgraph induced on `keep`, vertices renumbered in increasing
    /// order. Returns the graph and the old-to-new vertex map.
    pub fn induced(&self, keep: &[bool]) -> (Self, Vec<Option<usize>>) {
        let mut map = vec![None; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if keep[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let mut b = GraphBuilder::new(next);
        for (id, e) in self.edges.iter().enumerate() {
            if let (Some(a), Some(c)) = (map[e.u], map[e.v]) {
                b.add_edge_mult(a, c, e.mult, self.labels[id].clone());
            }
        }
        (b.build().expect("induced subgraph of a valid graph"), map)
    }

    /// Digest of the labelled edge list (not isomorphism invariant; see
    /// [`canonical_form`] for that).
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.n as u64).to_le_bytes());
        for e in &self.edges {
            h.update((e.u as u64).to_le_bytes());
            h.update((e.v as u64).to_le_bytes());
            h.update(e.mult.to_le_bytes());
        }
        hex::encode(h.finalize())
    }

    fn assemble(n: usize, edges: Vec<Edge>, labels: Vec<Option<String>>) -> Self {
        let mut incidence = vec![Vec::new(); n];
        let mut degrees = vec![0u32; n];
        for (id, e) in edges.iter().enumerate() {
            incidence[e.u].push(id);
            incidence[e.v].push(id);
            degrees[e.u] += e.mult;
            degrees[e.v] += e.mult;
        }
        Multigraph {
            n,
            edges,
            labels,
            incidence,
            degrees,
        }
    }
}

/// Accumulates edges (merging parallel ones) and produces a sorted
/// [`Multigraph`].
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    n: usize,
    edges: BTreeMap<(usize, usize), (u32, Option<String>)>,
    error: Option<Error>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            edges: BTreeMap::new(),
            error: None,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Appends a fresh vertex and returns its index.
    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> &mut Self {
        self.add_edge_mult(u, v, 1, None)
    }

    pub fn add_labelled(&mut self, u: usize, v: usize, label: impl Into<String>) -> &mut Self {
        self.add_edge_mult(u, v, 1, Some(label.into()))
    }

    /// Adds `mult` parallel copies of `uv`. The first non-empty label given
    /// for a pair wins.
    pub fn add_edge_mult(
        &mut self,
        u: usize,
        v: usize,
        mult: u32,
        label: Option<String>,
    ) -> &mut Self {
        if self.error.is_some() {
            return self;
        }
        if u == v {
            self.error = Some(violation(format!("loop at vertex {u}")));
            return self;
        }
        if u >= self.n || v >= self.n {
            self.error = Some(violation(format!(
                "edge {u}-{v} out of range for {} vertices",
                self.n
            )));
            return self;
        }
        if mult == 0 {
            return self;
        }
        let key = if u < v { (u, v) } else { (v, u) };
        let slot = self.edges.entry(key).or_insert((0, None));
        slot.0 += mult;
        if slot.1.is_none() {
            slot.1 = label;
        }
        self
    }

    pub fn build(self) -> Result<Multigraph> {
        if let Some(e) = self.error {
            return Err(e);
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut labels = Vec::with_capacity(self.edges.len());
        for ((u, v), (mult, label)) in self.edges {
            edges.push(Edge { u, v, mult });
            labels.push(label);
        }
        Ok(Multigraph::assemble(self.n, edges, labels))
    }
}
