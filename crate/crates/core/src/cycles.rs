//! Cycle covers, the translation between `(t+3)`-colourings of `G + tM` and
//! covers of length `4/3·|E|`, and cycle double covers.
//!
//! A cycle is an even subgraph, stored as a set of base edges. All
//! functions here need simple graphs.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::coloring::{decompose_tight, validate_coloring, MultiColoring, SolverOptions};
use crate::error::{violation, Error, Result};
use crate::graph::{rank, EdgeSet, Multigraph};
use crate::matching::{enumerate_perfect_matchings, is_perfect_matching};

pub const DEFAULT_CYCLE_SPACE_CAP: usize = 12;
pub const DEFAULT_FAMILY_BOUND: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleCover {
    pub cycles: Vec<EdgeSet>,
    pub length: usize,
}

impl CycleCover {
    /// Drops empty members and computes the length.
    pub fn new(cycles: impl IntoIterator<Item = EdgeSet>) -> Self {
        let cycles: Vec<EdgeSet> = cycles.into_iter().filter(|c| !c.is_empty()).collect();
        let length = cycles.iter().map(|c| c.len()).sum();
        CycleCover { cycles, length }
    }

    /// Number of members containing each base edge.
    pub fn coverage(&self, m: usize) -> Vec<usize> {
        let mut cov = vec![0; m];
        for c in &self.cycles {
            for e in c.iter() {
                cov[e] += 1;
            }
        }
        cov
    }
}

fn require_simple(g: &Multigraph) -> Result<()> {
    if !g.is_simple() {
        return Err(violation("cycle covers are implemented for simple graphs"));
    }
    g.check_edge_capacity()
}

pub fn is_even_subgraph(g: &Multigraph, c: EdgeSet) -> bool {
    let mut deg = vec![0u8; g.order()];
    for e in c.iter() {
        if e >= g.base_edge_count() {
            return false;
        }
        let edge = g.edge(e);
        deg[edge.u] ^= 1;
        deg[edge.v] ^= 1;
    }
    deg.iter().all(|&d| d == 0)
}

/// Every member is even, the union is `E`, and the stored length is right.
pub fn validate_cover(g: &Multigraph, cover: &CycleCover) -> Result<()> {
    let all = g.all_edges()?;
    let mut union = EdgeSet::EMPTY;
    for (i, &c) in cover.cycles.iter().enumerate() {
        if !is_even_subgraph(g, c) {
            return Err(violation(format!("member {i} is not an even subgraph")));
        }
        union = union | c;
    }
    if union != all {
        return Err(violation("the family does not cover every edge"));
    }
    let length: usize = cover.cycles.iter().map(|c| c.len()).sum();
    if length != cover.length {
        return Err(violation("stored length differs from the sum of member sizes"));
    }
    Ok(())
}

/// Fundamental cycles of a BFS spanning forest, one per non-tree edge, in
/// increasing order of that edge.
pub fn cycle_basis(g: &Multigraph) -> Result<Vec<EdgeSet>> {
    require_simple(g)?;
    let n = g.order();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut depth = vec![0usize; n];
    let mut tree = vec![false; g.base_edge_count()];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for (e, y) in g.neighbours(x) {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, e));
                    depth[y] = depth[x] + 1;
                    tree[e] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    let mut basis = Vec::new();
    for e in 0..g.base_edge_count() {
        if tree[e] {
            continue;
        }
        let edge = g.edge(e);
        let mut c = EdgeSet::singleton(e);
        let (mut a, mut b) = (edge.u, edge.v);
        while a != b {
            if depth[a] < depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            let (p, pe) = parent[a].expect("non-root vertex has a parent");
            c = c ^ EdgeSet::singleton(pe);
            a = p;
        }
        basis.push(c);
    }
    Ok(basis)
}

/// All `2^d` even subgraphs, `d = m - n + c`; entry `i` is the sum of the
/// basis cycles selected by the bits of `i`, so entry 0 is empty.
pub fn enumerate_cycle_space(g: &Multigraph, cap: usize) -> Result<Vec<EdgeSet>> {
    let d = rank(g);
    if d > cap {
        return Err(Error::CycleSpaceTooLarge { dimension: d, cap });
    }
    let basis = cycle_basis(g)?;
    let mut out = vec![EdgeSet::EMPTY; 1 << d];
    for i in 1..out.len() {
        let low = i.trailing_zeros() as usize;
        out[i] = out[i & (i - 1)] ^ basis[low];
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SccResult {
    pub length: usize,
    pub cover: CycleCover,
    pub nodes: u64,
}

/// Shortest cover by at most `family_bound` distinct non-empty cycles.
/// Iterative deepening on the total length: each round is an exhaustive
/// branch and bound for a cover within the target, starting from the degree
/// lower bound (`4/3·|E|` on cubic graphs).
pub fn scc_exact(g: &Multigraph, family_bound: usize, cap: usize) -> Result<Option<SccResult>> {
    let space = enumerate_cycle_space(g, cap)?;
    let cycles: Vec<EdgeSet> = space.into_iter().filter(|c| !c.is_empty()).collect();
    let all = g.all_edges()?;
    if all.is_empty() {
        return Ok(Some(SccResult {
            length: 0,
            cover: CycleCover::new([]),
            nodes: 0,
        }));
    }
    let mut lengths: Vec<usize> = cycles.iter().map(|c| c.len()).collect();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    let ceiling: usize = lengths.iter().take(family_bound).sum();
    let mut s = SccSearch::new(g, &cycles, family_bound);
    let mut target = s.bound();
    let pool: Vec<usize> = (0..cycles.len()).collect();
    while target <= ceiling {
        s.target = target;
        s.run(all, &pool);
        if let Some(picks) = s.found.take() {
            return Ok(Some(SccResult {
                length: picks.iter().map(|&i| cycles[i].len()).sum(),
                cover: CycleCover::new(picks.iter().map(|&i| cycles[i])),
                nodes: s.nodes,
            }));
        }
        target += 1;
    }
    Ok(None)
}

struct SccSearch<'a> {
    g: &'a Multigraph,
    cycles: &'a [EdgeSet],
    family_bound: usize,
    count: Vec<usize>,
    picks: Vec<usize>,
    banned: Vec<bool>,
    target: usize,
    found: Option<Vec<usize>>,
    nodes: u64,
}

impl<'a> SccSearch<'a> {
    fn new(g: &'a Multigraph, cycles: &'a [EdgeSet], family_bound: usize) -> Self {
        SccSearch {
            g,
            cycles,
            family_bound,
            count: vec![0; g.base_edge_count()],
            picks: Vec::new(),
            banned: vec![false; cycles.len()],
            target: 0,
            found: None,
            nodes: 0,
        }
    }

    /// Every vertex ends with an even total coverage of its edges, each
    /// edge counted at least once.
    fn bound(&self) -> usize {
        (0..self.g.order())
            .map(|v| {
                let s = self.vertex_sum(v);
                s + (s & 1)
            })
            .sum::<usize>()
            / 2
    }

    fn vertex_sum(&self, v: usize) -> usize {
        self.g
            .incident(v)
            .iter()
            .map(|&e| self.count[e].max(1))
            .sum()
    }

    /// Increase of the bound if cycle `c` were added.
    fn bound_increase(&self, c: EdgeSet, covered: EdgeSet, sums: &[usize], extra: &mut [usize]) -> usize {
        for e in (c & covered).iter() {
            let edge = self.g.edge(e);
            extra[edge.u] += 1;
            extra[edge.v] += 1;
        }
        let mut twice = 0;
        for e in (c & covered).iter() {
            let edge = self.g.edge(e);
            for x in [edge.u, edge.v] {
                if extra[x] > 0 {
                    let (old, new) = (sums[x], sums[x] + extra[x]);
                    twice += (new + (new & 1)) - (old + (old & 1));
                    extra[x] = 0;
                }
            }
        }
        twice / 2
    }

    fn run(&mut self, uncovered: EdgeSet, pool: &[usize]) {
        self.nodes += 1;
        let bound = self.bound();
        if bound > self.target {
            return;
        }
        if uncovered.is_empty() {
            self.found = Some(self.picks.clone());
            return;
        }
        let slots = self.family_bound.saturating_sub(self.picks.len());
        if slots == 0 {
            return;
        }
        let all = self.g.all_edges().expect("capacity checked");
        let covered = all - uncovered;
        let sums: Vec<usize> = (0..self.g.order()).map(|v| self.vertex_sum(v)).collect();
        let mut extra = vec![0usize; self.g.order()];
        let slack = self.target - bound;
        let compatible: Vec<usize> = pool
            .iter()
            .copied()
            .filter(|&i| {
                !self.banned[i]
                    && !(self.cycles[i] & uncovered).is_empty()
                    && self.bound_increase(self.cycles[i], covered, &sums, &mut extra) <= slack
            })
            .collect();
        let widest = compatible
            .iter()
            .map(|&i| (self.cycles[i] & uncovered).len())
            .max()
            .unwrap_or(0);
        if widest * slots < uncovered.len() {
            return;
        }
        let mut hits = vec![0usize; self.g.base_edge_count()];
        for &i in &compatible {
            for e in (self.cycles[i] & uncovered).iter() {
                hits[e] += 1;
            }
        }
        let e = uncovered.iter().min_by_key(|&e| hits[e]).expect("non-empty");
        if hits[e] == 0 {
            return;
        }
        let mut options: Vec<usize> = compatible
            .iter()
            .copied()
            .filter(|&i| self.cycles[i].contains(e))
            .collect();
        // Most new coverage per unit length first.
        options.sort_by(|&a, &b| {
            let (ca, cb) = (self.cycles[a], self.cycles[b]);
            let na = (ca & uncovered).len() * cb.len();
            let nb = (cb & uncovered).len() * ca.len();
            nb.cmp(&na).then(a.cmp(&b))
        });
        let mut banned_here = Vec::with_capacity(options.len());
        for &i in &options {
            let c = self.cycles[i];
            for x in c.iter() {
                self.count[x] += 1;
            }
            self.picks.push(i);
            self.run(uncovered - c, &compatible);
            self.picks.pop();
            for x in c.iter() {
                self.count[x] -= 1;
            }
            if self.found.is_some() {
                break;
            }
            self.banned[i] = true;
            banned_here.push(i);
        }
        for i in banned_here {
            self.banned[i] = false;
        }
    }
}

/// `C_i = M Δ F_i` for the colour classes `F_i` of a `(t+3)`-colouring of
/// `G + tM`; empty members are dropped.
pub fn cover_from_coloring(
    g: &Multigraph,
    m: EdgeSet,
    t: u32,
    c: &MultiColoring,
) -> Result<CycleCover> {
    require_simple(g)?;
    if !g.is_cubic() || !is_perfect_matching(g, m) {
        return Err(violation("cover_from_coloring needs a cubic graph and a perfect matching"));
    }
    if c.k() != 3 + t as usize {
        return Err(violation("colouring must use t + 3 colours"));
    }
    validate_coloring(&g.plus_times(&m, t), c)?;
    let cover = CycleCover::new(c.classes().into_iter().map(|f| m ^ f));
    validate_cover(g, &cover)?;
    Ok(cover)
}

/// Inverse translation for a cover of length `4/3·|E|`: `M` is the set of
/// twice-covered edges, `F_i = M Δ C_i` (padding with empty cycles up to
/// three), and `t` is the number of cycles minus three.
pub fn coloring_from_cover(
    g: &Multigraph,
    cover: &CycleCover,
) -> Result<(EdgeSet, u32, MultiColoring)> {
    require_simple(g)?;
    validate_cover(g, cover)?;
    let m_edges = g.base_edge_count();
    if !g.is_cubic() || 3 * cover.length != 4 * m_edges {
        return Err(violation("cover length must be exactly 4/3 of the edge count"));
    }
    let cov = cover.coverage(m_edges);
    let m = EdgeSet::from_ids((0..m_edges).filter(|&e| cov[e] == 2));
    if !is_perfect_matching(g, m) || cov.iter().any(|&x| x == 0 || x > 2) {
        return Err(violation("twice-covered edges do not form a perfect matching"));
    }
    let mut cycles = cover.cycles.clone();
    while cycles.len() < 3 {
        cycles.push(EdgeSet::EMPTY);
    }
    let t = (cycles.len() - 3) as u32;
    let k = cycles.len();
    let mut sets = vec![0u32; m_edges];
    for (i, &ci) in cycles.iter().enumerate() {
        for e in (m ^ ci).iter() {
            sets[e] |= 1 << i;
        }
    }
    let coloring = MultiColoring::from_masks(k, sets);
    validate_coloring(&g.plus_times(&m, t), &coloring)?;
    Ok((m, t, coloring))
}

/// Each member even and each edge covered exactly twice.
pub fn is_cycle_double_cover(g: &Multigraph, family: &[EdgeSet]) -> bool {
    if family.iter().any(|&c| !is_even_subgraph(g, c)) {
        return false;
    }
    let mut cov = vec![0usize; g.base_edge_count()];
    for c in family {
        for e in c.iter() {
            cov[e] += 1;
        }
    }
    cov.iter().all(|&x| x == 2)
}

/// `{M Δ M_i} ∪ {E - M}` for four perfect matchings covering `E`, `M` the
/// twice-covered edges.
pub fn cdc_from_four_cover(g: &Multigraph, matchings: &[EdgeSet; 4]) -> Result<CycleCover> {
    require_simple(g)?;
    if !g.is_cubic() {
        return Err(violation("cdc_from_four_cover needs a cubic graph"));
    }
    if matchings.iter().any(|&x| !is_perfect_matching(g, x)) {
        return Err(violation("inputs must be perfect matchings"));
    }
    let all = g.all_edges()?;
    let union = matchings.iter().fold(EdgeSet::EMPTY, |a, &b| a | b);
    if union != all {
        return Err(violation("the four matchings do not cover every edge"));
    }
    let mut cov = vec![0usize; g.base_edge_count()];
    for x in matchings {
        for e in x.iter() {
            cov[e] += 1;
        }
    }
    let m = EdgeSet::from_ids((0..cov.len()).filter(|&e| cov[e] == 2));
    let cover = CycleCover::new(
        matchings
            .iter()
            .map(|&mi| m ^ mi)
            .chain(std::iter::once(all - m)),
    );
    if !is_cycle_double_cover(g, &cover.cycles) {
        return Err(violation("construction did not produce a cycle double cover"));
    }
    Ok(cover)
}

/// How a cycle double cover through a 2-factor was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CdcMethod {
    /// From a 4-colouring of `G + N`, `N` the complementary matching.
    Coloring,
    /// From the exhaustive search over the cycle space.
    Search,
}

/// A cycle double cover containing the 2-factor `c`, or `None` if the
/// exhaustive search finds none.
pub fn cdc_extending_two_factor(
    g: &Multigraph,
    c: EdgeSet,
    cap: usize,
) -> Result<Option<(CycleCover, CdcMethod)>> {
    require_simple(g)?;
    let all = g.all_edges()?;
    let n_set = all - c;
    if !g.is_cubic() || !is_perfect_matching(g, n_set) {
        return Err(violation("c must be a 2-factor of a cubic graph"));
    }
    let list = enumerate_perfect_matchings(g)?;
    let host = g.plus_times(&n_set, 1);
    if let Some(col) = decompose_tight(&host, 4, &list, SolverOptions::default())?.definite()? {
        let cover = CycleCover::new(
            col.classes()
                .into_iter()
                .map(|j| n_set ^ j)
                .chain(std::iter::once(c)),
        );
        if !is_cycle_double_cover(g, &cover.cycles) {
            return Err(violation("construction did not produce a cycle double cover"));
        }
        return Ok(Some((cover, CdcMethod::Coloring)));
    }
    let space = enumerate_cycle_space(g, cap)?;
    let cycles: Vec<EdgeSet> = space
        .into_iter()
        .filter(|&x| !x.is_empty() && x != c)
        .collect();
    let mut demand: Vec<u8> = (0..g.base_edge_count())
        .map(|e| if c.contains(e) { 1 } else { 2 })
        .collect();
    let mut banned = vec![false; cycles.len()];
    let mut picks = Vec::new();
    if exact_double_cover(&cycles, &mut demand, &mut banned, &mut picks) {
        let cover = CycleCover::new(
            picks
                .iter()
                .map(|&i| cycles[i])
                .chain(std::iter::once(c)),
        );
        return Ok(Some((cover, CdcMethod::Search)));
    }
    Ok(None)
}

/// Picks distinct cycles meeting every edge exactly `demand[e]` times.
fn exact_double_cover(
    cycles: &[EdgeSet],
    demand: &mut [u8],
    banned: &mut [bool],
    picks: &mut Vec<usize>,
) -> bool {
    let positive = EdgeSet::from_ids((0..demand.len()).filter(|&e| demand[e] > 0));
    if positive.is_empty() {
        return true;
    }
    let usable: Vec<usize> = (0..cycles.len())
        .filter(|&i| !banned[i] && cycles[i].is_subset(positive))
        .collect();
    let e = positive
        .iter()
        .min_by_key(|&e| usable.iter().filter(|&&i| cycles[i].contains(e)).count())
        .expect("non-empty");
    let mut banned_here = Vec::new();
    let mut found = false;
    for &i in usable.iter().filter(|&&i| cycles[i].contains(e)) {
        for x in cycles[i].iter() {
            demand[x] -= 1;
        }
        picks.push(i);
        banned[i] = true;
        if exact_double_cover(cycles, demand, banned, picks) {
            found = true;
        } else {
            picks.pop();
        }
        for x in cycles[i].iter() {
            demand[x] += 1;
        }
        if found {
            break;
        }
        banned_here.push(i);
    }
    for i in banned_here {
        banned[i] = false;
    }
    if found {
        for &i in picks.iter() {
            banned[i] = false;
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::edge_color;
    use crate::constructions::{k4, petersen};

    #[test]
    fn cycle_space_sizes() {
        let k = enumerate_cycle_space(&k4(), 12).unwrap();
        assert_eq!(k.len(), 8);
        assert!(k[0].is_empty());
        assert!(k.iter().all(|&c| is_even_subgraph(&k4(), c)));
        let p = enumerate_cycle_space(&petersen(), 12).unwrap();
        assert_eq!(p.len(), 64);
        let mut sorted = p.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 64);
        assert!(matches!(
            enumerate_cycle_space(&petersen(), 5),
            Err(Error::CycleSpaceTooLarge { dimension: 6, cap: 5 })
        ));
    }

    #[test]
    fn k4_scc() {
        let r = scc_exact(&k4(), 5, 12).unwrap().unwrap();
        assert_eq!(r.length, 8);
        validate_cover(&k4(), &r.cover).unwrap();
    }

    #[test]
    fn k4_translation_round_trip() {
        let g = k4();
        let c = edge_color(&g, 3).unwrap().unwrap();
        let m = c.class(0);
        let cover = cover_from_coloring(&g, m, 0, &c).unwrap();
        assert_eq!(cover.length, 8);
        assert_eq!(cover.cycles.len(), 2);
        let (m2, t, c2) = coloring_from_cover(&g, &cover).unwrap();
        assert_eq!((m2, t), (m, 0));
        validate_coloring(&g, &c2).unwrap();
    }

    #[test]
    fn k4_double_covers() {
        let g = k4();
        let c = edge_color(&g, 3).unwrap().unwrap();
        let f = c.classes();
        assert!(is_cycle_double_cover(&g, &[f[0] | f[1], f[1] | f[2], f[0] | f[2]]));
        assert!(!is_cycle_double_cover(&g, &[f[0] | f[1], f[1] | f[2]]));
        let cover = cdc_from_four_cover(&g, &[f[0], f[1], f[2], f[0]]).unwrap();
        assert_eq!(cover.cycles.len(), 3);
        let two_factor = g.all_edges().unwrap() - f[0];
        let (cdc, method) = cdc_extending_two_factor(&g, two_factor, 12).unwrap().unwrap();
        assert_eq!(method, CdcMethod::Coloring);
        assert!(cdc.cycles.contains(&two_factor));
        assert!(is_cycle_double_cover(&g, &cdc.cycles));
    }
}
