//! Perfect matchings and the predicates built on them.

use serde::{Deserialize, Serialize};

use crate::error::{violation, Result};
use crate::graph::{bipartition, is_bridgeless, EdgeCut, EdgeSet, Multigraph};

/// Every perfect matching of a graph, sorted lexicographically by edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingList {
    pub digest: String,
    pub matchings: Vec<EdgeSet>,
}

impl MatchingList {
    pub fn len(&self) -> usize {
        self.matchings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matchings.is_empty()
    }

    pub fn get(&self, i: usize) -> EdgeSet {
        self.matchings[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &EdgeSet> {
        self.matchings.iter()
    }

    pub fn index_of(&self, m: EdgeSet) -> Option<usize> {
        self.matchings.iter().position(|&x| x == m)
    }
}

/// Depth-first enumeration branching on the lowest uncovered vertex. The
/// callback returns `false` to stop early.
fn for_each_matching(g: &Multigraph, mut visit: impl FnMut(EdgeSet) -> bool) {
    let n = g.order();
    if n % 2 == 1 {
        return;
    }
    let mut covered = vec![false; n];
    let mut current = EdgeSet::EMPTY;
    rec(g, &mut covered, &mut current, 0, &mut visit);

    fn rec(
        g: &Multigraph,
        covered: &mut [bool],
        current: &mut EdgeSet,
        from: usize,
        visit: &mut impl FnMut(EdgeSet) -> bool,
    ) -> bool {
        let Some(v) = (from..covered.len()).find(|&v| !covered[v]) else {
            return visit(*current);
        };
        covered[v] = true;
        for (e, w) in g.neighbours(v) {
            if covered[w] {
                continue;
            }
            covered[w] = true;
            current.insert(e);
            let go_on = rec(g, covered, current, v + 1, visit);
            current.remove(e);
            covered[w] = false;
            if !go_on {
                covered[v] = false;
                return false;
            }
        }
        covered[v] = false;
        true
    }
}

pub fn enumerate_perfect_matchings(g: &Multigraph) -> Result<MatchingList> {
    g.check_edge_capacity()?;
    let mut matchings = Vec::new();
    for_each_matching(g, |m| {
        matchings.push(m);
        true
    });
    matchings.sort_by_cached_key(|m| m.to_vec());
    Ok(MatchingList {
        digest: g.digest(),
        matchings,
    })
}

pub fn has_perfect_matching(g: &Multigraph) -> bool {
    let mut found = false;
    for_each_matching(g, |_| {
        found = true;
        false
    });
    found
}

/// Whether `m` meets every vertex of `g` exactly once.
pub fn is_perfect_matching(g: &Multigraph, m: EdgeSet) -> bool {
    if m.iter().any(|e| e >= g.base_edge_count()) {
        return false;
    }
    let mut hits = vec![0u8; g.order()];
    for e in m.iter() {
        let edge = g.edge(e);
        hits[edge.u] += 1;
        hits[edge.v] += 1;
    }
    hits.iter().all(|&h| h == 1)
}

/// Result of the perfect matching index search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PmIndex {
    /// The minimum, with the indices of a covering family in the list.
    Exact { value: usize, cover: Vec<usize> },
    /// No family of at most `cap` matchings covers the edges.
    AboveCap { cap: usize },
    /// The graph has an edge in no perfect matching (for instance a bridge).
    Infinite,
}

impl PmIndex {
    pub fn value(&self) -> Option<usize> {
        match self {
            PmIndex::Exact { value, .. } => Some(*value),
            _ => None,
        }
    }
}

pub const DEFAULT_PM_INDEX_CAP: usize = 6;

pub fn perfect_matching_index(g: &Multigraph, cap: usize) -> Result<PmIndex> {
    let list = enumerate_perfect_matchings(g)?;
    perfect_matching_index_with(g, &list, cap)
}

pub fn perfect_matching_index_with(
    g: &Multigraph,
    list: &MatchingList,
    cap: usize,
) -> Result<PmIndex> {
    if !is_bridgeless(g) {
        return Ok(PmIndex::Infinite);
    }
    let all = g.all_edges()?;
    let union = list.iter().fold(EdgeSet::EMPTY, |a, &m| a | m);
    if union != all {
        return Ok(PmIndex::Infinite);
    }
    let containing: Vec<Vec<usize>> = (0..g.base_edge_count())
        .map(|e| (0..list.len()).filter(|&i| list.get(i).contains(e)).collect())
        .collect();
    let per_matching = (g.order() / 2).max(1);
    for k in 1..=cap {
        let mut chosen = Vec::with_capacity(k);
        let mut cover = CoverSearch {
            list,
            containing: &containing,
            per_matching,
            chosen: &mut chosen,
        };
        if cover.run(all, k) {
            return Ok(PmIndex::Exact {
                value: k,
                cover: chosen,
            });
        }
    }
    Ok(PmIndex::AboveCap { cap })
}

struct CoverSearch<'a> {
    list: &'a MatchingList,
    containing: &'a [Vec<usize>],
    per_matching: usize,
    chosen: &'a mut Vec<usize>,
}

impl CoverSearch<'_> {
    fn run(&mut self, uncovered: EdgeSet, budget: usize) -> bool {
        if uncovered.is_empty() {
            return true;
        }
        if budget == 0 || uncovered.len() > budget * self.per_matching {
            return false;
        }
        // Branch on the uncovered edge lying in the fewest matchings.
        let e = uncovered
            .iter()
            .min_by_key(|&e| self.containing[e].len())
            .expect("non-empty");
        for &i in &self.containing[e] {
            self.chosen.push(i);
            if self.run(uncovered - self.list.get(i), budget - 1) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

/// Whether every perfect matching meets the cut in exactly one edge.
pub fn is_tight_cut(list: &MatchingList, cut: &EdgeCut) -> bool {
    let c = EdgeSet::from_ids(cut.edges.iter().copied());
    list.iter().all(|&m| (m & c).len() == 1)
}

/// All 3-edge-cuts with at least two vertices on each side, in
/// lexicographic order of their edge triples.
pub fn nontrivial_three_cuts(g: &Multigraph) -> Vec<EdgeCut> {
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(3);
    rec(g, 0, 3, &mut pick, &mut out);
    return out;

    fn rec(g: &Multigraph, from: usize, left: u32, pick: &mut Vec<usize>, out: &mut Vec<EdgeCut>) {
        if left == 0 {
            if let Ok(cut) = EdgeCut::from_edges(g, pick) {
                if cut.size == 3 && !cut.is_trivial() {
                    out.push(cut);
                }
            }
            return;
        }
        for e in from..g.base_edge_count() {
            let w = g.edge(e).mult;
            if w <= left {
                pick.push(e);
                rec(g, e + 1, left - w, pick, out);
                pick.pop();
            }
        }
    }
}

pub fn find_nontrivial_tight_three_cuts(g: &Multigraph, list: &MatchingList) -> Vec<EdgeCut> {
    nontrivial_three_cuts(g)
        .into_iter()
        .filter(|c| is_tight_cut(list, c))
        .collect()
}

/// First triple `i < j < k` (lexicographic) of matchings with no common edge.
pub fn fan_raspaud(list: &MatchingList) -> Option<[usize; 3]> {
    let l = list.len();
    for i in 0..l {
        for j in i + 1..l {
            let ij = list.get(i) & list.get(j);
            for k in j + 1..l {
                if (ij & list.get(k)).is_empty() {
                    return Some([i, j, k]);
                }
            }
        }
    }
    None
}

/// For bipartite cubic `g` and `u`: does every vertex `w` on the other side
/// admit a spanning subgraph with degree 3 at `u` and `w` and degree 1
/// everywhere else?
pub fn is_coverable(g: &Multigraph, u: usize) -> Result<bool> {
    let side = bipartition(g).ok_or_else(|| violation("is_coverable needs a bipartite graph"))?;
    if !g.is_cubic() {
        return Err(violation("is_coverable needs a cubic graph"));
    }
    if u >= g.order() {
        return Err(violation(format!("vertex {u} does not exist")));
    }
    for w in (0..g.order()).filter(|&w| side[w] != side[u]) {
        if !coverable_pair(g, u, w) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn coverable_pair(g: &Multigraph, u: usize, w: usize) -> bool {
    let n = g.order();
    let mut forced = vec![0u32; n];
    for &x in &[u, w] {
        for (e, y) in g.neighbours(x) {
            if y != u && y != w {
                forced[y] += g.edge(e).mult;
            }
        }
    }
    if forced.iter().any(|&d| d > 1) {
        return false;
    }
    let keep: Vec<bool> = (0..n).map(|v| v != u && v != w && forced[v] == 0).collect();
    let (rest, _) = g.induced(&keep);
    has_perfect_matching(&rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Multigraph {
        Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn petersen() -> Multigraph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Multigraph::new(10, e).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_perfect_matchings(&k4()).unwrap().len(), 3);
        let theta = Multigraph::with_multiplicities(2, [(0, 1, 3)]).unwrap();
        assert_eq!(enumerate_perfect_matchings(&theta).unwrap().len(), 1);
        let tri = Multigraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(enumerate_perfect_matchings(&tri).unwrap().is_empty());
    }

    #[test]
    fn list_is_sorted_and_valid() {
        let g = petersen();
        let list = enumerate_perfect_matchings(&g).unwrap();
        assert_eq!(list.len(), 6);
        let keys: Vec<Vec<usize>> = list.iter().map(|m| m.to_vec()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(list.iter().all(|&m| is_perfect_matching(&g, m)));
    }

    #[test]
    fn indices() {
        assert_eq!(perfect_matching_index(&k4(), 6).unwrap().value(), Some(3));
        assert_eq!(perfect_matching_index(&petersen(), 6).unwrap().value(), Some(5));
        assert_eq!(
            perfect_matching_index(&petersen(), 4).unwrap(),
            PmIndex::AboveCap { cap: 4 }
        );
    }

    #[test]
    fn bridge_gives_infinite_index() {
        let g = Multigraph::new(8, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        assert_eq!(perfect_matching_index(&g, 6).unwrap(), PmIndex::Infinite);
    }

    #[test]
    fn vertex_stars_are_tight() {
        let g = petersen();
        let list = enumerate_perfect_matchings(&g).unwrap();
        for v in 0..g.order() {
            let cut = EdgeCut::from_edges(&g, g.incident(v)).unwrap();
            assert!(is_tight_cut(&list, &cut));
        }
        assert!(find_nontrivial_tight_three_cuts(&g, &list).is_empty());
        assert!(nontrivial_three_cuts(&k4()).is_empty());
    }

    #[test]
    fn fan_raspaud_on_k4_is_its_colouring() {
        let list = enumerate_perfect_matchings(&k4()).unwrap();
        assert_eq!(fan_raspaud(&list), Some([0, 1, 2]));
    }

    #[test]
    fn coverable_needs_bipartite() {
        assert!(is_coverable(&k4(), 0).is_err());
    }
}
