use std::collections::VecDeque;

use super::Multigraph;

/// Connected components as a vertex-to-component map plus the count.
pub fn components(g: &Multigraph) -> (Vec<usize>, usize) {
    let n = g.order();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            for (_, y) in g.neighbours(x) {
                if comp[y] == usize::MAX {
                    comp[y] = count;
                    queue.push_back(y);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

pub fn is_connected(g: &Multigraph) -> bool {
    components(g).1 <= 1
}

/// Cycle-space dimension `m - n + c`, counting parallel edges.
pub fn rank(g: &Multigraph) -> usize {
    let (_, c) = components(g);
    g.edge_count() + c - g.order()
}

/// Base edges whose removal disconnects their component. A base edge with
/// multiplicity above one is never a bridge.
pub fn bridges(g: &Multigraph) -> Vec<usize> {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = Vec::new();
    let mut timer = 0;
    // (vertex, edge used to enter it, next incidence position)
    let mut stack: Vec<(usize, Option<usize>, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, None, 0));
        while let Some(&mut (v, via, ref mut pos)) = stack.last_mut() {
            if *pos < g.incident(v).len() {
                let e = g.incident(v)[*pos];
                *pos += 1;
                if Some(e) == via {
                    continue;
                }
                let w = g.edge(e).other(v);
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, Some(e), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let (Some(e), Some(&(p, _, _))) = (via, stack.last()) {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] && g.edge(e).mult == 1 {
                        out.push(e);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn is_bridgeless(g: &Multigraph) -> bool {
    bridges(g).is_empty()
}

/// A proper 2-colouring of the vertices (`false`/`true` sides), if one exists.
pub fn bipartition(g: &Multigraph) -> Option<Vec<bool>> {
    let n = g.order();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            let sx = side[x].unwrap();
            for (_, y) in g.neighbours(x) {
                match side[y] {
                    None => {
                        side[y] = Some(!sx);
                        queue.push_back(y);
                    }
                    Some(sy) if sy == sx => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(side.into_iter().map(|s| s.unwrap()).collect())
}

/// Length of a shortest circuit; `None` for forests. A parallel pair is a
/// circuit of length 2.
pub fn girth(g: &Multigraph) -> Option<usize> {
    if g.edges().iter().any(|e| e.mult > 1) {
        return Some(2);
    }
    let n = g.order();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        parent_edge[s] = usize::MAX;
        queue.clear();
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            if 2 * dist[x] + 1 >= best {
                break;
            }
            for (e, y) in g.neighbours(x) {
                if e == parent_edge[x] {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent_edge[y] = e;
                    queue.push_back(y);
                } else {
                    best = best.min(dist[x] + dist[y] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

/// The Petersen graph is the unique simple cubic graph of order 10 and
/// girth 5, so these three checks recognise it completely.
pub fn is_petersen(g: &Multigraph) -> bool {
    g.order() == 10 && g.is_simple() && g.is_cubic() && girth(g) == Some(5)
}

/// Largest cycle-separating cut size searched by [`cyclic_connectivity`].
pub const CYCLIC_CONNECTIVITY_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum CyclicConnectivity {
    Exact(usize),
    /// No cycle-separating cut of size up to the cap exists.
    AtLeast(usize),
}

impl CyclicConnectivity {
    pub fn value(self) -> usize {
        match self {
            CyclicConnectivity::Exact(k) | CyclicConnectivity::AtLeast(k) => k,
        }
    }
}

/// Cyclic edge-connectivity by exhaustive search over edge subsets of
/// increasing size (with multiplicity), up to [`CYCLIC_CONNECTIVITY_CAP`].
///
/// Graphs without two vertex-disjoint circuits have no cycle-separating cut at
/// all; for those the rank `m - n + 1` is returned.
pub fn cyclic_connectivity(g: &Multigraph) -> CyclicConnectivity {
    cyclic_connectivity_capped(g, CYCLIC_CONNECTIVITY_CAP)
}

pub fn cyclic_connectivity_capped(g: &Multigraph, cap: usize) -> CyclicConnectivity {
    let Some(gi) = girth(g) else {
        return CyclicConnectivity::Exact(rank(g));
    };
    if cyclic_components(g, &[]) >= 2 {
        return CyclicConnectivity::Exact(0);
    }
    let mut search = CutSearch::new(g);
    for k in 1..=cap {
        if search.exists_with_weight(k) {
            return CyclicConnectivity::Exact(k);
        }
    }
    if g.order() < 2 * gi {
        CyclicConnectivity::Exact(rank(g))
    } else {
        CyclicConnectivity::AtLeast(cap + 1)
    }
}

/// Number of components of `g - removed` that contain a circuit.
fn cyclic_components(g: &Multigraph, removed: &[bool]) -> usize {
    let mut uf = UnionFind::new(g.order());
    for (id, e) in g.edges().iter().enumerate() {
        if removed.get(id).copied().unwrap_or(false) {
            continue;
        }
        uf.union(e.u, e.v);
    }
    let mut verts = vec![0usize; g.order()];
    let mut edges = vec![0usize; g.order()];
    for v in 0..g.order() {
        verts[uf.find(v)] += 1;
    }
    for (id, e) in g.edges().iter().enumerate() {
        if removed.get(id).copied().unwrap_or(false) {
            continue;
        }
        edges[uf.find(e.u)] += e.mult as usize;
    }
    (0..g.order())
        .filter(|&r| verts[r] > 0 && edges[r] >= verts[r])
        .count()
}

struct CutSearch<'a> {
    g: &'a Multigraph,
    removed: Vec<bool>,
}

impl<'a> CutSearch<'a> {
    fn new(g: &'a Multigraph) -> Self {
        CutSearch {
            g,
            removed: vec![false; g.base_edge_count()],
        }
    }

    fn exists_with_weight(&mut self, k: usize) -> bool {
        self.rec(0, k)
    }

    fn rec(&mut self, start: usize, remaining: usize) -> bool {
        if remaining == 0 {
            return cyclic_components(self.g, &self.removed) >= 2;
        }
        for id in start..self.g.base_edge_count() {
            let w = self.g.edge(id).mult as usize;
            if w > remaining {
                continue;
            }
            self.removed[id] = true;
            let hit = self.rec(id + 1, remaining - w);
            self.removed[id] = false;
            if hit {
                return true;
            }
        }
        false
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Multigraph {
        Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn theta() -> Multigraph {
        Multigraph::with_multiplicities(2, [(0, 1, 3)]).unwrap()
    }

    #[test]
    fn k4_basics() {
        let g = k4();
        assert_eq!(girth(&g), Some(3));
        assert_eq!(rank(&g), 3);
        assert!(is_bridgeless(&g));
        assert!(bipartition(&g).is_none());
        assert_eq!(cyclic_connectivity(&g), CyclicConnectivity::Exact(3));
        assert!(!is_petersen(&g));
    }

    #[test]
    fn triple_edge() {
        let g = theta();
        assert_eq!(girth(&g), Some(2));
        assert!(is_bridgeless(&g));
        assert_eq!(cyclic_connectivity(&g), CyclicConnectivity::Exact(2));
    }

    #[test]
    fn forests_have_infinite_girth_and_every_edge_is_a_bridge() {
        let path = Multigraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(girth(&path), None);
        assert_eq!(bridges(&path), vec![0, 1, 2]);
    }

    #[test]
    fn bridge_between_two_triangles() {
        // A double edge on the connecting pair is not a bridge.
        let mut edges = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)];
        let g = Multigraph::new(6, edges.clone()).unwrap();
        assert_eq!(bridges(&g), vec![g.edge_between(2, 3).unwrap()]);
        edges.push((2, 3));
        let g = Multigraph::new(6, edges).unwrap();
        assert!(bridges(&g).is_empty());
    }

    #[test]
    fn two_disjoint_triangles_have_cyclic_connectivity_zero() {
        let g = Multigraph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(cyclic_connectivity(&g), CyclicConnectivity::Exact(0));
    }
}
