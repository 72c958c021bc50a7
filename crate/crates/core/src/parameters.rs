//! Headline parameters: chromatic index, `l(G)`, `l_M(G)`, frumiousness,
//! membership of the all-ones vector in the perfect matching lattice, and
//! the `sp` / `sp2` sets.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{
    decompose_tight, edge_color_auto, validate_coloring, MultiColoring, SolverOptions, Verdict,
    MAX_COLOURS,
};
use crate::error::{violation, Error, Result};
use crate::graph::{
    bipartition, bridges, components, is_petersen, three_edge_reduction, two_edge_reduction,
    write_graph_line, EdgeCut, EdgeSet, Multigraph,
};
use crate::matching::{
    enumerate_perfect_matchings, find_nontrivial_tight_three_cuts, is_perfect_matching,
    perfect_matching_index_with, MatchingList, PmIndex,
};

pub const DEFAULT_L_MAX: usize = 3;
pub const DEFAULT_T_MAX: u32 = 3;
pub const DEFAULT_SP_MAX: u32 = 2;

/// Smallest `k` such that `g` is `k`-edge-colourable.
pub fn chromatic_index(g: &Multigraph) -> Result<usize> {
    let mut k = g.max_degree() as usize;
    loop {
        if k > MAX_COLOURS {
            return Err(Error::InvalidParameter("chromatic index above the colour limit".into()));
        }
        if edge_color_auto(g, k, SolverOptions::default())?
            .definite()?
            .is_some()
        {
            return Ok(k);
        }
        k += 1;
    }
}

/// Position of a bridgeless cubic graph in the `χ'` / `χ'_e` classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SnarkClass {
    /// 3-edge-colourable, so `χ'_e = 3`.
    Colourable,
    /// A snark with perfect matching index 4.
    S4,
    /// A snark with perfect matching index at least 5.
    S5Plus,
    /// Not bridgeless cubic.
    NotApplicable,
}

pub fn classify(g: &Multigraph, list: &MatchingList) -> Result<SnarkClass> {
    if !g.is_cubic() || !bridges(g).is_empty() {
        return Ok(SnarkClass::NotApplicable);
    }
    Ok(match perfect_matching_index_with(g, list, 4)? {
        PmIndex::Exact { value: 3, .. } => SnarkClass::Colourable,
        PmIndex::Exact { .. } => SnarkClass::S4,
        PmIndex::AboveCap { .. } => SnarkClass::S5Plus,
        PmIndex::Infinite => SnarkClass::NotApplicable,
    })
}

/// Why a reduction leaf is (or is not) in the lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafKind {
    Bipartite,
    BrickNonPetersen,
    Petersen,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "node")]
pub enum LatticeNode {
    Leaf {
        graph: String,
        kind: LeafKind,
    },
    /// Split along a 2-edge-cut (edge ids of `graph`).
    TwoCut {
        graph: String,
        cut: Vec<usize>,
        parts: Vec<LatticeNode>,
    },
    /// Split along a non-trivial tight 3-edge-cut.
    TightThreeCut {
        graph: String,
        cut: Vec<usize>,
        parts: Vec<LatticeNode>,
    },
    Components {
        parts: Vec<LatticeNode>,
    },
}

impl LatticeNode {
    pub fn in_lattice(&self) -> bool {
        match self {
            LatticeNode::Leaf { kind, .. } => *kind != LeafKind::Petersen,
            LatticeNode::TwoCut { parts, .. }
            | LatticeNode::TightThreeCut { parts, .. }
            | LatticeNode::Components { parts } => parts.iter().all(LatticeNode::in_lattice),
        }
    }

    pub fn leaves(&self) -> Vec<LeafKind> {
        match self {
            LatticeNode::Leaf { kind, .. } => vec![*kind],
            LatticeNode::TwoCut { parts, .. }
            | LatticeNode::TightThreeCut { parts, .. }
            | LatticeNode::Components { parts } => parts.iter().flat_map(|p| p.leaves()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeVerdict {
    pub in_lattice: bool,
    pub tree: LatticeNode,
}

/// Decides whether the all-ones vector lies in the perfect matching lattice
/// of a bridgeless cubic graph by cutting along 2-edge-cuts and tight
/// 3-edge-cuts down to pieces that are bipartite, Petersen, or neither.
pub fn one_in_lattice(g: &Multigraph) -> Result<LatticeVerdict> {
    if !g.is_cubic() {
        return Err(violation("one_in_lattice needs a cubic graph"));
    }
    if !bridges(g).is_empty() {
        return Err(Error::Bridge);
    }
    let tree = reduce(g)?;
    Ok(LatticeVerdict {
        in_lattice: tree.in_lattice(),
        tree,
    })
}

fn reduce(g: &Multigraph) -> Result<LatticeNode> {
    let (comp, count) = components(g);
    if count > 1 {
        let mut parts = Vec::with_capacity(count);
        for c in 0..count {
            let keep: Vec<bool> = comp.iter().map(|&x| x == c).collect();
            parts.push(reduce(&g.induced(&keep).0)?);
        }
        return Ok(LatticeNode::Components { parts });
    }
    let name = write_graph_line(g);
    if bipartition(g).is_some() {
        return Ok(LatticeNode::Leaf {
            graph: name,
            kind: LeafKind::Bipartite,
        });
    }
    if let Some(cut) = first_two_edge_cut(g) {
        let (a, b) = two_edge_reduction(g, &cut)?;
        return Ok(LatticeNode::TwoCut {
            graph: name,
            cut: cut.edges.clone(),
            parts: vec![reduce(&a)?, reduce(&b)?],
        });
    }
    let list = enumerate_perfect_matchings(g)?;
    if let Some(cut) = find_nontrivial_tight_three_cuts(g, &list).into_iter().next() {
        let (a, b) = three_edge_reduction(g, &cut)?;
        return Ok(LatticeNode::TightThreeCut {
            graph: name,
            cut: cut.edges.clone(),
            parts: vec![reduce(&a)?, reduce(&b)?],
        });
    }
    let kind = if is_petersen(g) {
        LeafKind::Petersen
    } else {
        LeafKind::BrickNonPetersen
    };
    Ok(LatticeNode::Leaf { graph: name, kind })
}

/// First edge set of total multiplicity 2 (in lexicographic order) whose
/// removal disconnects `g`.
pub fn first_two_edge_cut(g: &Multigraph) -> Option<EdgeCut> {
    let m = g.base_edge_count();
    for e in 0..m {
        if g.edge(e).mult == 2 {
            if let Ok(cut) = EdgeCut::from_edges(g, &[e]) {
                if cut.size == 2 {
                    return Some(cut);
                }
            }
        }
        if g.edge(e).mult != 1 {
            continue;
        }
        for f in e + 1..m {
            if g.edge(f).mult != 1 {
                continue;
            }
            if let Ok(cut) = EdgeCut::from_edges(g, &[e, f]) {
                if cut.size == 2 {
                    return Some(cut);
                }
            }
        }
    }
    None
}

/// Result of the `l(G)` search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum LValue {
    /// `g + ΣM_i` is `(k+3)`-colourable and no smaller multiset works.
    Finite {
        k: usize,
        matchings: Vec<EdgeSet>,
        coloring: MultiColoring,
    },
    /// All multisets of size below `k` failed.
    AtLeast { k: usize },
    /// The all-ones vector is outside the lattice, so no multiset works.
    Infinite { certificate: LatticeVerdict },
    /// A colouring search hit the node limit while searching size `k`.
    Indeterminate { k: usize, nodes: u64 },
}

pub fn l_value(g: &Multigraph, k_max: usize) -> Result<LValue> {
    l_value_with(g, k_max, SolverOptions::default())
}

pub fn l_value_with(g: &Multigraph, k_max: usize, opts: SolverOptions) -> Result<LValue> {
    let certificate = one_in_lattice(g)?;
    if !certificate.in_lattice {
        return Ok(LValue::Infinite { certificate });
    }
    let list = enumerate_perfect_matchings(g)?;
    for k in 0..=k_max {
        match search_multisets(g, &list, k, opts)? {
            MultisetOutcome::Found(picks, coloring) => {
                return Ok(LValue::Finite {
                    k,
                    matchings: picks.iter().map(|&i| list.get(i)).collect(),
                    coloring,
                })
            }
            MultisetOutcome::Exhausted => {}
            MultisetOutcome::Indeterminate(nodes) => {
                return Ok(LValue::Indeterminate { k, nodes })
            }
        }
    }
    Ok(LValue::AtLeast { k: k_max + 1 })
}

pub enum MultisetOutcome {
    Found(Vec<usize>, MultiColoring),
    Exhausted,
    Indeterminate(u64),
}

/// Tries every non-decreasing `k`-tuple of matching indices, in
/// lexicographic order, for `(k+3)`-colourability of `g + ΣM`.
pub fn search_multisets(
    g: &Multigraph,
    list: &MatchingList,
    k: usize,
    opts: SolverOptions,
) -> Result<MultisetOutcome> {
    let colours = g.max_degree() as usize + k;
    let mut picks = vec![0usize; k];
    if k > 0 && list.is_empty() {
        return Ok(MultisetOutcome::Exhausted);
    }
    loop {
        let sets: Vec<EdgeSet> = picks.iter().map(|&i| list.get(i)).collect();
        let host = g.plus(sets.iter());
        let report = decompose_tight(&host, colours, list, opts)?;
        match report.verdict {
            Verdict::Colourable(c) => return Ok(MultisetOutcome::Found(picks, c)),
            Verdict::Indeterminate => return Ok(MultisetOutcome::Indeterminate(report.nodes)),
            Verdict::NotColourable => {}
        }
        // Next non-decreasing tuple.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(MultisetOutcome::Exhausted);
            }
            i -= 1;
            if picks[i] + 1 < list.len() {
                picks[i] += 1;
                let v = picks[i];
                for p in picks.iter_mut().skip(i + 1) {
                    *p = v;
                }
                break;
            }
        }
    }
}

/// Re-checks a finite `l` witness: the matchings are perfect and the
/// colouring is a proper `(k+3)`-colouring of `g + ΣM_i`.
pub fn verify_l_witness(g: &Multigraph, matchings: &[EdgeSet], c: &MultiColoring) -> Result<()> {
    for &m in matchings {
        if !is_perfect_matching(g, m) {
            return Err(violation("witness contains a set that is not a perfect matching"));
        }
    }
    if c.k() != g.max_degree() as usize + matchings.len() {
        return Err(violation("witness colouring uses the wrong number of colours"));
    }
    validate_coloring(&g.plus(matchings.iter()), c)
}

/// `l_M(G)` restricted to `t <= t_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum LmValue {
    Finite { t: u32, coloring: MultiColoring },
    AtLeast { t: u32 },
    Indeterminate { t: u32, nodes: u64 },
}

impl LmValue {
    pub fn finite(&self) -> Option<u32> {
        match self {
            LmValue::Finite { t, .. } => Some(*t),
            _ => None,
        }
    }
}

/// Whether `g + tM` is `(t+3)`-colourable, with the colouring if so.
pub fn plus_tm_colourable(
    g: &Multigraph,
    list: &MatchingList,
    m: EdgeSet,
    t: u32,
    opts: SolverOptions,
) -> Result<(Verdict, u64)> {
    let host = g.plus_times(&m, t);
    let r = decompose_tight(&host, g.max_degree() as usize + t as usize, list, opts)?;
    Ok((r.verdict, r.nodes))
}

pub fn l_m(g: &Multigraph, m: EdgeSet, t_max: u32) -> Result<LmValue> {
    let list = enumerate_perfect_matchings(g)?;
    l_m_with(g, &list, m, t_max, SolverOptions::default())
}

pub fn l_m_with(
    g: &Multigraph,
    list: &MatchingList,
    m: EdgeSet,
    t_max: u32,
    opts: SolverOptions,
) -> Result<LmValue> {
    if !is_perfect_matching(g, m) {
        return Err(violation("l_M needs a perfect matching"));
    }
    for t in 0..=t_max {
        match plus_tm_colourable(g, list, m, t, opts)? {
            (Verdict::Colourable(coloring), _) => return Ok(LmValue::Finite { t, coloring }),
            (Verdict::Indeterminate, nodes) => return Ok(LmValue::Indeterminate { t, nodes }),
            (Verdict::NotColourable, _) => {}
        }
    }
    Ok(LmValue::AtLeast { t: t_max + 1 })
}

/// One row of the frumiousness table: the outcome of `g + tM` for every
/// `t` in `0..=t_max`, no monotonicity assumed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrumiousRow {
    pub matching: usize,
    pub class_one: Vec<Option<bool>>,
}

impl FrumiousRow {
    pub fn first_class_one(&self) -> Option<u32> {
        self.class_one
            .iter()
            .position(|&c| c == Some(true))
            .map(|t| t as u32)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FrumiousVerdict {
    /// `g + tM` is Class I for the listed matching.
    NotFrumious {
        matching: usize,
        t: u32,
        coloring: MultiColoring,
    },
    /// Every `g + tM` with `t <= t_max` is Class II.
    FrumiousUpTo { t_max: u32 },
    /// Some probe hit the node limit and none succeeded.
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrumiousReport {
    pub table: Vec<FrumiousRow>,
    pub verdict: FrumiousVerdict,
}

pub fn frumious_bounded(g: &Multigraph, t_max: u32) -> Result<FrumiousReport> {
    let list = enumerate_perfect_matchings(g)?;
    frumious_bounded_with(g, &list, t_max, SolverOptions::default())
}

/// Probes every matching independently (in parallel). The verdict's witness
/// is the lowest-index matching with the smallest successful `t`.
pub fn frumious_bounded_with(
    g: &Multigraph,
    list: &MatchingList,
    t_max: u32,
    opts: SolverOptions,
) -> Result<FrumiousReport> {
    let rows: Vec<Result<(FrumiousRow, Option<(u32, MultiColoring)>)>> = (0..list.len())
        .into_par_iter()
        .map(|i| {
            let mut class_one = Vec::with_capacity(t_max as usize + 1);
            let mut first = None;
            for t in 0..=t_max {
                let (v, _) = plus_tm_colourable(g, list, list.get(i), t, opts)?;
                class_one.push(match &v {
                    Verdict::Colourable(c) => {
                        if first.is_none() {
                            first = Some((t, c.clone()));
                        }
                        Some(true)
                    }
                    Verdict::NotColourable => Some(false),
                    Verdict::Indeterminate => None,
                });
            }
            Ok((FrumiousRow { matching: i, class_one }, first))
        })
        .collect();
    let mut table = Vec::with_capacity(rows.len());
    let mut witness: Option<(usize, u32, MultiColoring)> = None;
    for r in rows {
        let (row, first) = r?;
        if let Some((t, c)) = first {
            if witness.as_ref().map_or(true, |w| t < w.1) {
                witness = Some((row.matching, t, c));
            }
        }
        table.push(row);
    }
    let verdict = match witness {
        Some((matching, t, coloring)) => FrumiousVerdict::NotFrumious {
            matching,
            t,
            coloring,
        },
        None if table.iter().any(|r| r.class_one.contains(&None)) => {
            FrumiousVerdict::Indeterminate
        }
        None => FrumiousVerdict::FrumiousUpTo { t_max },
    };
    Ok(FrumiousReport { table, verdict })
}

/// `t ∈ sp(G)`: is `tG` (every multiplicity times `t`) `3t`-colourable?
pub fn sp_membership(g: &Multigraph, t: u32) -> Result<bool> {
    Ok(sp_witness(g, t)?.is_some())
}

pub fn sp_witness(g: &Multigraph, t: u32) -> Result<Option<MultiColoring>> {
    if t == 0 {
        return Err(Error::InvalidParameter("sp needs t >= 1".into()));
    }
    let list = enumerate_perfect_matchings(g)?;
    let host = g.scaled(t)?;
    decompose_tight(&host, g.max_degree() as usize * t as usize, &list, SolverOptions::default())?
        .definite()
}

/// `t ∈ sp2(G)`: does some multiset of `t` 2-factors `F_i` make
/// `G + ΣF_i` `(2t+3)`-colourable? Searched directly over complements of
/// perfect matchings.
pub fn sp2_membership(g: &Multigraph, t: u32) -> Result<bool> {
    Ok(sp2_witness(g, t)?.is_some())
}

pub fn sp2_witness(g: &Multigraph, t: u32) -> Result<Option<(Vec<EdgeSet>, MultiColoring)>> {
    if !g.is_cubic() {
        return Err(violation("sp2 needs a cubic graph"));
    }
    let list = enumerate_perfect_matchings(g)?;
    let all = g.all_edges()?;
    let colours = 3 + 2 * t as usize;
    let k = t as usize;
    if k > 0 && list.is_empty() {
        return Ok(None);
    }
    let mut picks = vec![0usize; k];
    loop {
        let factors: Vec<EdgeSet> = picks.iter().map(|&i| all - list.get(i)).collect();
        let host = g.plus(factors.iter());
        if let Some(c) = decompose_tight(&host, colours, &list, SolverOptions::default())?.definite()? {
            return Ok(Some((factors, c)));
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if picks[i] + 1 < list.len() {
                picks[i] += 1;
                let v = picks[i];
                for p in picks.iter_mut().skip(i + 1) {
                    *p = v;
                }
                break;
            }
        }
    }
}

/// Witness for the upper bound on `l` of a Petersen extension: one perfect
/// matching `N_i` containing each cut `∂(P_i - v_i)`, with `H + ΣN_i`
/// Class I. Tries the product of the candidate sets in lexicographic order.
pub fn extension_witness(
    h: &Multigraph,
    cuts: &[EdgeSet],
) -> Result<Option<(Vec<EdgeSet>, MultiColoring)>> {
    let list = enumerate_perfect_matchings(h)?;
    let candidates: Vec<Vec<EdgeSet>> = cuts
        .iter()
        .map(|&cut| list.iter().copied().filter(|m| cut.is_subset(*m)).collect())
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    let colours = h.max_degree() as usize + cuts.len();
    let mut pos = vec![0usize; cuts.len()];
    loop {
        let picks: Vec<EdgeSet> = pos.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        let host = h.plus(picks.iter());
        if let Some(c) = decompose_tight(&host, colours, &list, SolverOptions::default())?.definite()? {
            return Ok(Some((picks, c)));
        }
        let mut i = pos.len();
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            pos[i] += 1;
            if pos[i] < candidates[i].len() {
                break;
            }
            pos[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{flower_snark, k4, petersen, tietze, SPOKE_LABEL};
    use crate::graph::two_cut_connection;

    #[test]
    fn petersen_is_outside_the_lattice() {
        let v = one_in_lattice(&petersen()).unwrap();
        assert!(!v.in_lattice);
        assert_eq!(v.tree.leaves(), vec![LeafKind::Petersen]);
        assert!(matches!(l_value(&petersen(), 3).unwrap(), LValue::Infinite { .. }));
    }

    #[test]
    fn k4_is_class_one() {
        assert!(one_in_lattice(&k4()).unwrap().in_lattice);
        match l_value(&k4(), 3).unwrap() {
            LValue::Finite { k, .. } => assert_eq!(k, 0),
            other => panic!("{other:?}"),
        }
        assert_eq!(chromatic_index(&k4()).unwrap(), 3);
        assert_eq!(chromatic_index(&petersen()).unwrap(), 4);
    }

    #[test]
    fn two_cut_with_petersen_factor() {
        let g = two_cut_connection(&petersen(), 0, &k4(), 0).unwrap();
        let v = one_in_lattice(&g).unwrap();
        assert!(!v.in_lattice);
        assert!(matches!(v.tree, LatticeNode::TwoCut { .. }));
        assert!(v.tree.leaves().contains(&LeafKind::Petersen));
    }

    #[test]
    fn f5_needs_one_matching() {
        let f = flower_snark(5).unwrap();
        match l_value(&f, 3).unwrap() {
            LValue::Finite {
                k,
                matchings,
                coloring,
            } => {
                assert_eq!(k, 1);
                verify_l_witness(&f, &matchings, &coloring).unwrap();
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tietze_depends_on_spokes() {
        let g = tietze();
        let list = enumerate_perfect_matchings(&g).unwrap();
        let spokes = EdgeSet::from_ids(g.edges_labelled(SPOKE_LABEL));
        for &m in list.iter() {
            let hits = (m & spokes).len();
            let v = l_m_with(&g, &list, m, 1, SolverOptions::default()).unwrap();
            match hits {
                1 => assert_eq!(v, LmValue::AtLeast { t: 2 }),
                3 => assert_eq!(v.finite(), Some(1)),
                _ => unreachable!("an odd cut"),
            }
        }
    }

    #[test]
    fn sp_shift_on_petersen() {
        let p = petersen();
        assert!(!sp_membership(&p, 1).unwrap());
        assert!(sp_membership(&p, 2).unwrap());
        assert!(sp2_membership(&p, 1).unwrap());
        assert!(!sp2_membership(&p, 0).unwrap());
        assert!(sp_membership(&p, 0).is_err());
    }

    #[test]
    fn petersen_frumious_to_three() {
        let r = frumious_bounded(&petersen(), 3).unwrap();
        assert_eq!(r.verdict, FrumiousVerdict::FrumiousUpTo { t_max: 3 });
        assert_eq!(r.table.len(), 6);
        let k = frumious_bounded(&k4(), 2).unwrap();
        assert!(matches!(k.verdict, FrumiousVerdict::NotFrumious { t: 0, .. }));
    }
}
