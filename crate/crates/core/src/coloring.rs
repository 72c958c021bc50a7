//! Exact edge colouring of multigraphs.
//!
//! A colouring gives base edge `e` a set of `mult(e)` colours, with the sets
//! around every vertex pairwise disjoint. Two engines decide colourability:
//!
//! * [`edge_color_with`] backtracks over colour sets per base edge, fail-first,
//!   with interchangeable-colour symmetry breaking. It handles any host.
//! * [`decompose_tight`] handles hosts in which every vertex has degree `k`.
//!   There each colour class is a perfect matching of the base graph, so the
//!   search picks `k` matchings from a [`MatchingList`] meeting every edge
//!   exactly `mult(e)` times.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{violation, Error, Result};
use crate::graph::{EdgeSet, Multigraph};
use crate::matching::{enumerate_perfect_matchings, MatchingList};

/// Largest number of colours supported (colour sets are `u32` masks).
pub const MAX_COLOURS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiColoring {
    k: usize,
    sets: Vec<u32>,
}

impl MultiColoring {
    /// Wraps raw colour masks (bit `c` set means colour `c`), one per base edge.
    pub fn from_masks(k: usize, sets: Vec<u32>) -> Self {
        MultiColoring { k, sets }
    }

    pub fn from_colour_lists(k: usize, lists: &[Vec<usize>]) -> Result<Self> {
        let mut sets = Vec::with_capacity(lists.len());
        for l in lists {
            let mut s = 0u32;
            for &c in l {
                if c >= k || c >= MAX_COLOURS {
                    return Err(violation(format!("colour {c} out of range for k = {k}")));
                }
                if s & (1 << c) != 0 {
                    return Err(violation(format!("colour {c} repeated on one edge")));
                }
                s |= 1 << c;
            }
            sets.push(s);
        }
        Ok(MultiColoring { k, sets })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mask(&self, e: usize) -> u32 {
        self.sets[e]
    }

    pub fn masks(&self) -> &[u32] {
        &self.sets
    }

    pub fn colours(&self, e: usize) -> Vec<usize> {
        (0..self.k).filter(|&c| self.sets[e] >> c & 1 == 1).collect()
    }

    /// Base edges carrying colour `c`.
    pub fn class(&self, c: usize) -> EdgeSet {
        EdgeSet::from_ids((0..self.sets.len()).filter(|&e| self.sets[e] >> c & 1 == 1))
    }

    pub fn classes(&self) -> Vec<EdgeSet> {
        (0..self.k).map(|c| self.class(c)).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct ColoringRepr {
    k: usize,
    colours: Vec<Vec<usize>>,
}

impl Serialize for MultiColoring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ColoringRepr {
            k: self.k,
            colours: (0..self.sets.len()).map(|e| self.colours(e)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiColoring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ColoringRepr::deserialize(d)?;
        MultiColoring::from_colour_lists(r.k, &r.colours).map_err(serde::de::Error::custom)
    }
}

/// Independent check: set sizes equal multiplicities, colours lie below
/// `k`, and sets at every vertex are disjoint.
pub fn validate_coloring(g: &Multigraph, c: &MultiColoring) -> Result<()> {
    if c.sets.len() != g.base_edge_count() {
        return Err(violation("colouring length differs from the number of base edges"));
    }
    if c.k > MAX_COLOURS {
        return Err(violation("too many colours"));
    }
    let full = full_mask(c.k);
    for (e, &s) in c.sets.iter().enumerate() {
        if s & !full != 0 {
            return Err(violation(format!("edge {e} uses a colour outside 0..{}", c.k)));
        }
        if s.count_ones() != g.edge(e).mult {
            return Err(violation(format!(
                "edge {e} has {} colours but multiplicity {}",
                s.count_ones(),
                g.edge(e).mult
            )));
        }
    }
    for v in 0..g.order() {
        let mut seen = 0u32;
        for &e in g.incident(v) {
            if seen & c.sets[e] != 0 {
                return Err(violation(format!("colour clash at vertex {v}")));
            }
            seen |= c.sets[e];
        }
    }
    Ok(())
}

fn full_mask(k: usize) -> u32 {
    if k >= 32 {
        u32::MAX
    } else {
        (1u32 << k) - 1
    }
}

/// Outcome of one colourability decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "colouring")]
pub enum Verdict {
    Colourable(MultiColoring),
    NotColourable,
    /// The node limit was reached first.
    Indeterminate,
}

impl Verdict {
    pub fn is_colourable(&self) -> bool {
        matches!(self, Verdict::Colourable(_))
    }

    pub fn coloring(&self) -> Option<&MultiColoring> {
        match self {
            Verdict::Colourable(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub verdict: Verdict,
    pub nodes: u64,
}

impl SolveReport {
    /// Collapses to a definite answer, turning `Indeterminate` into an error.
    pub fn definite(self) -> Result<Option<MultiColoring>> {
        match self.verdict {
            Verdict::Colourable(c) => Ok(Some(c)),
            Verdict::NotColourable => Ok(None),
            Verdict::Indeterminate => Err(Error::InvalidParameter(format!(
                "search stopped at the node limit after {} nodes",
                self.nodes
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverOptions {
    /// Abort with [`Verdict::Indeterminate`] after this many search nodes.
    pub node_limit: Option<u64>,
}

/// Exact decision: a `k`-colouring of `g`, or `None`.
pub fn edge_color(g: &Multigraph, k: usize) -> Result<Option<MultiColoring>> {
    edge_color_auto(g, k, SolverOptions::default())?.definite()
}

/// `χ'(g) = Δ(g)`.
pub fn is_class_one(g: &Multigraph) -> Result<bool> {
    Ok(edge_color(g, g.max_degree() as usize)?.is_some())
}

/// Picks the engine: matching decomposition for hosts in which every vertex
/// has degree exactly `k`, backtracking otherwise.
pub fn edge_color_auto(g: &Multigraph, k: usize, opts: SolverOptions) -> Result<SolveReport> {
    if k > 0 && g.order() > 0 && (0..g.order()).all(|v| g.degree(v) as usize == k) {
        let list = enumerate_perfect_matchings(g)?;
        decompose_tight(g, k, &list, opts)
    } else {
        edge_color_with(g, k, opts)
    }
}

/// The backtracking engine.
pub fn edge_color_with(g: &Multigraph, k: usize, opts: SolverOptions) -> Result<SolveReport> {
    if k > MAX_COLOURS {
        return Err(Error::InvalidParameter(format!(
            "at most {MAX_COLOURS} colours are supported"
        )));
    }
    if g.max_degree() as usize > k {
        return Ok(SolveReport {
            verdict: Verdict::NotColourable,
            nodes: 0,
        });
    }
    let mut s = Backtrack::new(g, k, opts.node_limit);
    let verdict = match s.run() {
        Flow::Found => Verdict::Colourable(MultiColoring {
            k,
            sets: s.assign.clone(),
        }),
        Flow::Fail => Verdict::NotColourable,
        Flow::Abort => Verdict::Indeterminate,
    };
    Ok(SolveReport {
        verdict,
        nodes: s.nodes,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flow {
    Found,
    Fail,
    Abort,
}

struct Backtrack<'a> {
    g: &'a Multigraph,
    full: u32,
    mult: Vec<u32>,
    ends: Vec<(usize, usize)>,
    used: Vec<u32>,
    assign: Vec<u32>,
    pending: Vec<u32>,
    global: u32,
    nodes: u64,
    limit: Option<u64>,
    binom: [[u64; 33]; 33],
}

impl<'a> Backtrack<'a> {
    fn new(g: &'a Multigraph, k: usize, limit: Option<u64>) -> Self {
        let mut binom = [[0u64; 33]; 33];
        for n in 0..33 {
            binom[n][0] = 1;
            for r in 1..=n {
                binom[n][r] = binom[n - 1][r - 1] + if r < n { binom[n - 1][r] } else { 0 };
            }
        }
        let pending = (0..g.order()).map(|v| g.degree(v)).collect();
        Backtrack {
            g,
            full: full_mask(k),
            mult: g.edges().iter().map(|e| e.mult).collect(),
            ends: g.edges().iter().map(|e| (e.u, e.v)).collect(),
            used: vec![0; g.order()],
            assign: vec![0; g.base_edge_count()],
            pending,
            global: 0,
            nodes: 0,
            limit,
            binom,
        }
    }

    fn available(&self, e: usize) -> u32 {
        let (u, v) = self.ends[e];
        self.full & !(self.used[u] | self.used[v])
    }

    /// Number of colour sets the symmetry rule allows on `e`.
    fn options(&self, e: usize) -> u64 {
        let avail = self.available(e);
        let old = (avail & self.global).count_ones() as usize;
        let fresh = (self.full & !self.global).count_ones() as usize;
        let m = self.mult[e] as usize;
        let lo = m.saturating_sub(fresh);
        let hi = m.min(old);
        (lo..=hi).map(|j| self.binom[old][j]).sum::<u64>() * (lo <= hi) as u64
    }

    fn apply(&mut self, e: usize, set: u32) {
        let (u, v) = self.ends[e];
        self.assign[e] = set;
        self.used[u] |= set;
        self.used[v] |= set;
        self.pending[u] -= self.mult[e];
        self.pending[v] -= self.mult[e];
    }

    fn undo(&mut self, e: usize, set: u32) {
        let (u, v) = self.ends[e];
        self.assign[e] = 0;
        self.used[u] &= !set;
        self.used[v] &= !set;
        self.pending[u] += self.mult[e];
        self.pending[v] += self.mult[e];
    }

    /// The unassigned edges at `x` must jointly see enough colours.
    fn vertex_ok(&self, x: usize) -> bool {
        if self.pending[x] == 0 {
            return true;
        }
        let mut union = 0u32;
        for &f in self.g.incident(x) {
            if self.assign[f] == 0 {
                union |= self.available(f);
            }
        }
        union.count_ones() >= self.pending[x]
    }

    fn locally_ok(&self, e: usize) -> bool {
        let (u, v) = self.ends[e];
        for x in [u, v] {
            if !self.vertex_ok(x) {
                return false;
            }
            for (_, y) in self.g.neighbours(x) {
                if !self.vertex_ok(y) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self) -> Flow {
        if self.g.base_edge_count() == 0 {
            return Flow::Found;
        }
        // Pivot: colour the edges at a vertex of maximum degree with
        // consecutive blocks; any colouring can be permuted into this shape.
        let pivot = (0..self.g.order())
            .max_by_key(|&v| (self.g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let mut next = 0;
        let mut placed = Vec::new();
        for &e in self.g.incident(pivot) {
            let m = self.mult[e];
            let set = ((1u32 << m) - 1) << next;
            next += m;
            self.apply(e, set);
            self.global |= set;
            placed.push(e);
        }
        if placed.iter().any(|&e| !self.locally_ok(e)) {
            return Flow::Fail;
        }
        let remaining = self.g.base_edge_count() - placed.len();
        self.search(remaining)
    }

    fn search(&mut self, remaining: usize) -> Flow {
        if remaining == 0 {
            return Flow::Found;
        }
        self.nodes += 1;
        if let Some(limit) = self.limit {
            if self.nodes > limit {
                return Flow::Abort;
            }
        }
        let mut best = usize::MAX;
        let mut best_count = u64::MAX;
        for e in 0..self.assign.len() {
            if self.assign[e] != 0 {
                continue;
            }
            let c = self.options(e);
            if c < best_count {
                best_count = c;
                best = e;
                if c <= 1 {
                    break;
                }
            }
        }
        if best_count == 0 {
            return Flow::Fail;
        }
        let e = best;
        let m = self.mult[e] as usize;
        let avail = self.available(e);
        let old_colours: Vec<u32> = bits(avail & self.global);
        let fresh_colours: Vec<u32> = bits(self.full & !self.global);
        let saved_global = self.global;
        let lo = m.saturating_sub(fresh_colours.len());
        let hi = m.min(old_colours.len());
        for j in (lo..=hi).rev() {
            let fresh_part: u32 = fresh_colours[..m - j].iter().map(|&c| 1u32 << c).sum();
            let mut flow = Flow::Fail;
            for_each_subset(&old_colours, j, &mut |old_part| {
                let set = old_part | fresh_part;
                self.apply(e, set);
                self.global = saved_global | set;
                let r = if self.locally_ok(e) {
                    self.search(remaining - 1)
                } else {
                    Flow::Fail
                };
                if r != Flow::Found {
                    self.undo(e, set);
                    self.global = saved_global;
                }
                flow = r;
                r == Flow::Fail
            });
            if flow != Flow::Fail {
                return flow;
            }
        }
        Flow::Fail
    }
}

fn bits(mask: u32) -> Vec<u32> {
    (0..32).filter(|&c| mask >> c & 1 == 1).collect()
}

/// Calls `f` on every `r`-subset of `items` (as a mask) in lexicographic
/// order while it returns `true`.
fn for_each_subset(items: &[u32], r: usize, f: &mut dyn FnMut(u32) -> bool) -> bool {
    fn rec(items: &[u32], start: usize, r: usize, acc: u32, f: &mut dyn FnMut(u32) -> bool) -> bool {
        if r == 0 {
            return f(acc);
        }
        for i in start..=items.len() - r {
            if !rec(items, i + 1, r - 1, acc | 1 << items[i], f) {
                return false;
            }
        }
        true
    }
    if r > items.len() {
        return true;
    }
    rec(items, 0, r, 0, f)
}

/// Matching-decomposition engine for hosts in which every vertex has degree
/// exactly `k`. `list` must hold the perfect matchings of the base graph
/// (multiplicities ignored), as produced by
/// [`enumerate_perfect_matchings`].
pub fn decompose_tight(
    g: &Multigraph,
    k: usize,
    list: &MatchingList,
    opts: SolverOptions,
) -> Result<SolveReport> {
    if k > MAX_COLOURS {
        return Err(Error::InvalidParameter(format!(
            "at most {MAX_COLOURS} colours are supported"
        )));
    }
    if (0..g.order()).any(|v| g.degree(v) as usize != k) {
        return Err(violation("decompose_tight needs every vertex to have degree k"));
    }
    g.check_edge_capacity()?;
    let mut d = Decompose {
        list,
        demand: g.edges().iter().map(|e| e.mult as u8).collect(),
        last: vec![0; g.base_edge_count()],
        chosen: Vec::with_capacity(k),
        nodes: 0,
        limit: opts.node_limit,
        scratch: Vec::new(),
    };
    let positive = EdgeSet::full(g.base_edge_count());
    let flow = d.search(positive, k);
    let verdict = match flow {
        Flow::Found => {
            let mut sets = vec![0u32; g.base_edge_count()];
            for (c, &i) in d.chosen.iter().enumerate() {
                for e in list.get(i).iter() {
                    sets[e] |= 1 << c;
                }
            }
            Verdict::Colourable(MultiColoring { k, sets })
        }
        Flow::Fail => Verdict::NotColourable,
        Flow::Abort => Verdict::Indeterminate,
    };
    Ok(SolveReport {
        verdict,
        nodes: d.nodes,
    })
}

struct Decompose<'a> {
    list: &'a MatchingList,
    demand: Vec<u8>,
    /// Lowest matching index still allowed when branching on each edge, so
    /// that each multiset of matchings is generated once.
    last: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
    limit: Option<u64>,
    scratch: Vec<Vec<usize>>,
}

impl Decompose<'_> {
    fn search(&mut self, positive: EdgeSet, r: usize) -> Flow {
        if r == 0 {
            return if positive.is_empty() {
                Flow::Found
            } else {
                Flow::Fail
            };
        }
        self.nodes += 1;
        if let Some(limit) = self.limit {
            if self.nodes > limit {
                return Flow::Abort;
            }
        }
        // Edges needing a colour in every remaining class.
        let must = EdgeSet::from_ids(positive.iter().filter(|&e| self.demand[e] as usize == r));
        let depth = self.chosen.len();
        if self.scratch.len() <= depth {
            self.scratch.push(Vec::new());
        }
        let mut cands = std::mem::take(&mut self.scratch[depth]);
        cands.clear();
        cands.extend(
            (0..self.list.len())
                .filter(|&i| {
                    let m = self.list.get(i);
                    m.is_subset(positive) && must.is_subset(m)
                }),
        );
        let mut count = [0u32; 128];
        for &i in &cands {
            for e in self.list.get(i).iter() {
                count[e] += 1;
            }
        }
        let mut branch = usize::MAX;
        let mut fewest = u32::MAX;
        for e in positive.iter() {
            if count[e] < fewest {
                fewest = count[e];
                branch = e;
            }
        }
        let mut flow = Flow::Fail;
        if fewest > 0 {
            let floor = self.last[branch];
            for idx in 0..cands.len() {
                let i = cands[idx];
                let m = self.list.get(i);
                if i < floor || !m.contains(branch) {
                    continue;
                }
                let mut next = positive;
                for e in m.iter() {
                    self.demand[e] -= 1;
                    if self.demand[e] == 0 {
                        next.remove(e);
                    }
                }
                let saved = self.last[branch];
                self.last[branch] = i;
                self.chosen.push(i);
                flow = self.search(next, r - 1);
                if flow == Flow::Found {
                    break;
                }
                self.chosen.pop();
                self.last[branch] = saved;
                for e in m.iter() {
                    self.demand[e] += 1;
                }
                if flow == Flow::Abort {
                    break;
                }
            }
        }
        self.scratch[depth] = cands;
        flow
    }
}

/// Swaps colours `a` and `b` along the `(a, b)`-Kempe chain through base
/// edge `e`. Edges carrying both colours are unchanged by the swap.
pub fn kempe_switch(
    g: &Multigraph,
    c: &MultiColoring,
    e: usize,
    a: usize,
    b: usize,
) -> Result<MultiColoring> {
    if a == b || a >= c.k || b >= c.k {
        return Err(violation("Kempe switch needs two distinct colours in range"));
    }
    if e >= c.sets.len() {
        return Err(violation(format!("edge {e} does not exist")));
    }
    let ab = (1u32 << a) | (1u32 << b);
    if c.sets[e] & ab == 0 {
        return Err(violation("start edge carries neither Kempe colour"));
    }
    let mut in_chain = vec![false; c.sets.len()];
    let mut stack = vec![e];
    in_chain[e] = true;
    while let Some(f) = stack.pop() {
        let edge = g.edge(f);
        for x in [edge.u, edge.v] {
            for &h in g.incident(x) {
                if !in_chain[h] && c.sets[h] & ab != 0 {
                    in_chain[h] = true;
                    stack.push(h);
                }
            }
        }
    }
    let mut out = c.clone();
    for f in 0..out.sets.len() {
        if in_chain[f] {
            let s = out.sets[f];
            let has_a = s >> a & 1 == 1;
            let has_b = s >> b & 1 == 1;
            if has_a != has_b {
                out.sets[f] = s ^ ab;
            }
        }
    }
    Ok(out)
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

    /// Tries every assignment of colour sets, edge by edge.
    fn naive(g: &Multigraph, k: usize) -> bool {
        fn rec(g: &Multigraph, k: usize, e: usize, sets: &mut Vec<u32>) -> bool {
            if e == g.base_edge_count() {
                return true;
            }
            let edge = g.edge(e);
            for s in 0u32..(1 << k) {
                if s.count_ones() != edge.mult {
                    continue;
                }
                let clash = (0..e).any(|f| {
                    let o = g.edge(f);
                    let touches = o.u == edge.u || o.u == edge.v || o.v == edge.u || o.v == edge.v;
                    touches && sets[f] & s != 0
                });
                if clash {
                    continue;
                }
                sets.push(s);
                if rec(g, k, e + 1, sets) {
                    return true;
                }
                sets.pop();
            }
            false
        }
        rec(g, k, 0, &mut Vec::new())
    }

    #[test]
    fn petersen_needs_four_colours() {
        let p = petersen();
        assert!(edge_color_with(&p, 3, SolverOptions::default())
            .unwrap()
            .definite()
            .unwrap()
            .is_none());
        let c = edge_color(&p, 4).unwrap().unwrap();
        validate_coloring(&p, &c).unwrap();
        assert!(!is_class_one(&p).unwrap());
    }

    #[test]
    fn engines_agree_on_small_tight_hosts() {
        let p = petersen();
        let list = enumerate_perfect_matchings(&p).unwrap();
        for &m in list.iter() {
            for t in 1..=2u32 {
                let h = p.plus_times(&m, t);
                let k = 3 + t as usize;
                let a = edge_color_with(&h, k, SolverOptions::default()).unwrap();
                let b = decompose_tight(&h, k, &list, SolverOptions::default()).unwrap();
                assert_eq!(a.verdict.is_colourable(), b.verdict.is_colourable());
                if let Some(c) = b.verdict.coloring() {
                    validate_coloring(&h, c).unwrap();
                }
            }
        }
    }

    #[test]
    fn agrees_with_naive_enumeration() {
        let graphs = [
            k4(),
            Multigraph::with_multiplicities(2, [(0, 1, 3)]).unwrap(),
            Multigraph::with_multiplicities(4, [(0, 1, 2), (2, 3, 2), (0, 2, 1), (1, 3, 1)]).unwrap(),
            Multigraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap(),
            Multigraph::with_multiplicities(3, [(0, 1, 2), (1, 2, 2), (0, 2, 2)]).unwrap(),
        ];
        for g in &graphs {
            for k in 1..=6 {
                let fast = edge_color_auto(g, k, SolverOptions::default()).unwrap();
                assert_eq!(fast.verdict.is_colourable(), naive(g, k), "k = {k}, {g:?}");
            }
        }
    }

    #[test]
    fn node_limit_gives_indeterminate() {
        let r = edge_color_with(&petersen(), 3, SolverOptions { node_limit: Some(2) }).unwrap();
        assert_eq!(r.verdict, Verdict::Indeterminate);
        assert!(r.definite().is_err());
    }

    #[test]
    fn kempe_switch_is_an_involution() {
        let g = petersen();
        let c = edge_color(&g, 4).unwrap().unwrap();
        for e in 0..g.base_edge_count() {
            let a = c.colours(e)[0];
            for b in (0..4).filter(|&b| b != a) {
                let d = kempe_switch(&g, &c, e, a, b).unwrap();
                validate_coloring(&g, &d).unwrap();
                assert_eq!(kempe_switch(&g, &d, e, b, a).unwrap(), c);
            }
        }
    }

    #[test]
    fn serde_round_trip() {
        let g = k4();
        let c = edge_color(&g, 3).unwrap().unwrap();
        let json = serde_json::to_string(&c).unwrap();
        let back: MultiColoring = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<MultiColoring>(r#"{"k":2,"colours":[[0,5]]}"#).is_err());
    }
}
