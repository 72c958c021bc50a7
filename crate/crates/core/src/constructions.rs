//! Generators for the graph families: small standard graphs, flower snarks,
//! extensions of bipartite graphs by Petersen copies, and treelike snarks.

use serde::{Deserialize, Serialize};

use crate::error::{violation, Error, Result};
use crate::graph::{
    bipartition, expand_vertex_to_triangle, EdgeSet, GraphBuilder, KPole, Multigraph,
};

/// Label of the `n` spokes of a flower snark.
pub const SPOKE_LABEL: &str = "spoke";

pub fn k4() -> Multigraph {
    Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("valid")
}

pub fn k33() -> Multigraph {
    Multigraph::new(6, (0..3).flat_map(|i| (3..6).map(move |j| (i, j)))).expect("valid")
}

/// Two vertices joined by three parallel edges.
pub fn theta() -> Multigraph {
    Multigraph::with_multiplicities(2, [(0, 1, 3)]).expect("valid")
}

/// Outer cycle `0..5`, spokes `i ~ i+5`, inner pentagram `5+i ~ 5+(i+2) mod 5`.
pub fn petersen() -> Multigraph {
    let mut e = Vec::with_capacity(15);
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Multigraph::new(10, e).expect("valid")
}

/// Prism over an `n`-cycle: `2n` vertices.
pub fn circular_ladder(n: usize) -> Result<Multigraph> {
    if n < 3 {
        return Err(Error::InvalidParameter("circular ladder needs n >= 3".into()));
    }
    let mut e = Vec::with_capacity(3 * n);
    for i in 0..n {
        e.push((i, (i + 1) % n));
        e.push((n + i, n + (i + 1) % n));
        e.push((i, n + i));
    }
    Multigraph::new(2 * n, e)
}

pub fn prism() -> Multigraph {
    circular_ladder(3).expect("valid")
}

/// A `2n`-cycle with its `n` long diagonals.
pub fn moebius_ladder(n: usize) -> Result<Multigraph> {
    if n < 2 {
        return Err(Error::InvalidParameter("Moebius ladder needs n >= 2".into()));
    }
    let mut e = Vec::with_capacity(3 * n);
    for i in 0..2 * n {
        e.push((i, (i + 1) % (2 * n)));
    }
    for i in 0..n {
        e.push((i, i + n));
    }
    Multigraph::new(2 * n, e)
}

/// Label of the edge joining `r_j` of pole `i` to `l_j` of pole `i + 1`
/// (`j` in `1..=3`).
pub fn flower_join_label(i: usize, j: usize) -> String {
    format!("join-{i}-{j}")
}

/// The flower snark on `4n` vertices, `n` odd and at least 3.
///
/// Pole `i` has centre `4i`, and `4i+1`, `4i+2`, `4i+3`, with the spoke
/// `4i ~ 4i+1`. Its left dangling edges leave from `4i+1, 4i+2, 4i+3` and its
/// right ones from `4i+1, 4i+3, 4i+2`; `r_j` of pole `i` is joined to `l_j`
/// of pole `i + 1`.
pub fn flower_snark(n: usize) -> Result<Multigraph> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidParameter(
            "flower snarks need an odd n >= 3".into(),
        ));
    }
    let mut b = GraphBuilder::new(4 * n);
    for i in 0..n {
        let a = 4 * i;
        b.add_labelled(a, a + 1, SPOKE_LABEL);
        b.add_edge(a, a + 2);
        b.add_edge(a, a + 3);
    }
    let left = [1, 2, 3];
    let right = [1, 3, 2];
    for i in 0..n {
        let next = (i + 1) % n;
        for j in 0..3 {
            b.add_labelled(4 * i + right[j], 4 * next + left[j], flower_join_label(i, j + 1));
        }
    }
    b.build()
}

pub fn tietze() -> Multigraph {
    flower_snark(3).expect("valid")
}

/// Recovers `n` and the join edges `join[i][j]` from the labels of a graph
/// built by [`flower_snark`].
fn flower_joins(f: &Multigraph) -> Result<Vec<[usize; 3]>> {
    let spokes = f.edges_labelled(SPOKE_LABEL).len();
    if spokes < 3 || spokes % 2 == 0 || f.order() != 4 * spokes {
        return Err(violation("not a flower snark"));
    }
    let mut joins = Vec::with_capacity(spokes);
    for i in 0..spokes {
        let mut row = [0; 3];
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = f
                .find_label(&flower_join_label(i, j + 1))
                .ok_or_else(|| violation("not a flower snark"))?;
        }
        joins.push(row);
    }
    Ok(joins)
}

/// First position `i` such that the two consecutive flower poles `i`,
/// `i + 1` form a good double pole for `m`: the boundary meets `m` in the
/// edges of a single index `j`, one on each side.
pub fn detect_good_df_pole(f: &Multigraph, m: EdgeSet) -> Result<Option<usize>> {
    let joins = flower_joins(f)?;
    let n = joins.len();
    for i in 0..n {
        let before = &joins[(i + n - 1) % n];
        let after = &joins[(i + 1) % n];
        let boundary = EdgeSet::from_ids(before.iter().chain(after.iter()).copied());
        let hit = m & boundary;
        if (0..3).any(|j| hit == EdgeSet::from_ids([before[j], after[j]])) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Petersen graph minus the adjacent vertices `0` and `5`: the left pair of
/// dangling edges is the one formerly at `0`, the right pair the one at `5`.
pub fn frumious_pole_default() -> KPole {
    KPole::by_removing(&petersen(), &[0, 5]).expect("valid")
}

/// A cubic bipartite graph extended by Petersen copies, with handles on the
/// cuts the construction introduced.
#[derive(Clone, Debug)]
pub struct PetersenExtension {
    pub graph: Multigraph,
    /// `∂(P_i - v_i)` for each vertex `w_i` of the part not containing `u`.
    pub cuts: Vec<EdgeSet>,
    /// The three edges of the triangle replacing `u`.
    pub triangle: EdgeSet,
}

pub fn principal_cut_label(i: usize) -> String {
    format!("principal-{i}")
}

/// Replaces every vertex `w_i` on the side opposite `u` by a Petersen graph
/// minus a vertex (neighbours paired in incidence order), then expands `u`
/// to a triangle. The result has `10n + 2` vertices for `|V(G)| = 2n`.
pub fn extend_with_petersens(g: &Multigraph, u: usize) -> Result<PetersenExtension> {
    let side = bipartition(g).ok_or_else(|| violation("extension needs a bipartite graph"))?;
    if !g.is_cubic() {
        return Err(violation("extension needs a cubic graph"));
    }
    if u >= g.order() {
        return Err(violation(format!("vertex {u} does not exist")));
    }
    let w: Vec<usize> = (0..g.order()).filter(|&x| side[x] != side[u]).collect();
    let mut index = vec![usize::MAX; g.order()];
    let mut next = 0;
    for x in 0..g.order() {
        if side[x] == side[u] {
            index[x] = next;
            next += 1;
        }
    }
    let p = petersen();
    let v = 0;
    let v_stubs = p.stubs(v);
    let mut b = GraphBuilder::new(next);
    let mut pole_offset = Vec::with_capacity(w.len());
    for _ in &w {
        let off = b.order();
        pole_offset.push(off);
        for _ in 0..9 {
            b.add_vertex();
        }
        for e in p.edges() {
            if e.u != v && e.v != v {
                b.add_edge_mult(off + e.u - 1, off + e.v - 1, e.mult, None);
            }
        }
    }
    for (i, &wi) in w.iter().enumerate() {
        for (k, &(_, x)) in g.stubs(wi).iter().enumerate() {
            let y = pole_offset[i] + v_stubs[k].1 - 1;
            b.add_labelled(index[x], y, principal_cut_label(i));
        }
    }
    let before = b.build()?;
    let graph = expand_vertex_to_triangle(&before, index[u])?;
    let cuts = (0..w.len())
        .map(|i| EdgeSet::from_ids(graph.edges_labelled(&principal_cut_label(i))))
        .collect();
    let triangle = EdgeSet::from_ids(graph.edges_labelled(crate::graph::TRIANGLE_LABEL));
    Ok(PetersenExtension {
        graph,
        cuts,
        triangle,
    })
}

/// Tree, leaf cycle and pole names of a treelike snark.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreelikeSpec {
    pub tree_order: usize,
    pub tree_edges: Vec<(usize, usize)>,
    /// The leaves in cyclic order.
    pub leaf_order: Vec<usize>,
    /// One pole name per edge of the leaf cycle; empty means all `"petersen"`.
    #[serde(default)]
    pub poles: Vec<String>,
}

impl TreelikeSpec {
    /// One centre with three leaves.
    pub fn claw() -> Self {
        TreelikeSpec {
            tree_order: 4,
            tree_edges: vec![(0, 1), (0, 2), (0, 3)],
            leaf_order: vec![1, 2, 3],
            poles: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            offset: 0,
            message: e.to_string(),
        })
    }

    fn validate(&self) -> Result<()> {
        let tree = Multigraph::new(self.tree_order, self.tree_edges.iter().copied())?;
        if !tree.is_simple()
            || self.tree_edges.len() + 1 != self.tree_order
            || !crate::graph::is_connected(&tree)
        {
            return Err(violation("tree_edges must form a tree"));
        }
        if (0..tree.order()).any(|v| tree.degree(v) != 1 && tree.degree(v) != 3) {
            return Err(violation("tree vertices must have degree 1 or 3"));
        }
        if !(0..tree.order()).any(|v| tree.degree(v) == 3) {
            return Err(violation("tree needs a vertex of degree 3"));
        }
        let mut leaves: Vec<usize> = (0..tree.order()).filter(|&v| tree.degree(v) == 1).collect();
        let mut order = self.leaf_order.clone();
        leaves.sort_unstable();
        order.sort_unstable();
        if leaves != order {
            return Err(violation("leaf_order must list every leaf exactly once"));
        }
        if !self.poles.is_empty() && self.poles.len() != self.leaf_order.len() {
            return Err(violation("one pole per edge of the leaf cycle"));
        }
        Ok(())
    }
}

/// Looks up a pole by name. Only the Petersen pole is built in.
pub fn named_pole(name: &str) -> Result<KPole> {
    match name {
        "petersen" => Ok(frumious_pole_default()),
        other => Err(Error::InvalidParameter(format!("unknown pole '{other}'"))),
    }
}

pub fn treelike_snark(spec: &TreelikeSpec) -> Result<Multigraph> {
    spec.validate()?;
    let poles = if spec.poles.is_empty() {
        vec![frumious_pole_default(); spec.leaf_order.len()]
    } else {
        spec.poles
            .iter()
            .map(|p| named_pole(p))
            .collect::<Result<Vec<_>>>()?
    };
    treelike_snark_with_poles(spec, &poles)
}

/// As [`treelike_snark`] with explicit poles, one per edge of the leaf cycle
/// (ignoring `spec.poles`).
pub fn treelike_snark_with_poles(spec: &TreelikeSpec, poles: &[KPole]) -> Result<Multigraph> {
    spec.validate()?;
    let l = spec.leaf_order.len();
    if poles.len() != l {
        return Err(violation("one pole per edge of the leaf cycle"));
    }
    if poles.iter().any(|p| p.arity() != 4) {
        return Err(violation("treelike poles must have arity 4"));
    }
    let mut b = GraphBuilder::new(spec.tree_order);
    for &(x, y) in &spec.tree_edges {
        b.add_edge(x, y);
    }
    let mut pair = vec![(0, 0); spec.tree_order];
    for &x in &spec.leaf_order {
        let x1 = b.add_vertex();
        let x2 = b.add_vertex();
        b.add_edge(x, x1).add_edge(x, x2);
        pair[x] = (x1, x2);
    }
    for (p, pole) in poles.iter().enumerate() {
        let x = spec.leaf_order[p];
        let y = spec.leaf_order[(p + 1) % l];
        let ends = pole.embed(&mut b);
        b.add_edge(ends[0], pair[x].0).add_edge(ends[1], pair[x].1);
        b.add_edge(ends[2], pair[y].0).add_edge(ends[3], pair[y].1);
    }
    b.build()
}

pub fn windmill() -> Multigraph {
    treelike_snark(&TreelikeSpec::claw()).expect("valid")
}

/// Generator names understood by [`generate`].
pub const GENERATOR_NAMES: &[&str] = &[
    "petersen",
    "tietze",
    "flower",
    "circular_ladder",
    "moebius_ladder",
    "windmill",
    "k4",
    "k33",
    "prism",
    "theta",
];

pub fn generate(name: &str, parameter: Option<usize>) -> Result<Multigraph> {
    let need = |what: &str| {
        parameter.ok_or_else(|| Error::InvalidParameter(format!("{what} needs a parameter")))
    };
    match name {
        "petersen" => Ok(petersen()),
        "tietze" => Ok(tietze()),
        "flower" => flower_snark(need("flower")?),
        "circular_ladder" => circular_ladder(need("circular_ladder")?),
        "moebius_ladder" => moebius_ladder(need("moebius_ladder")?),
        "windmill" => Ok(windmill()),
        "k4" => Ok(k4()),
        "k33" => Ok(k33()),
        "prism" => Ok(prism()),
        "theta" => Ok(theta()),
        other => Err(Error::InvalidParameter(format!(
            "unknown generator '{other}'; expected one of {}",
            GENERATOR_NAMES.join(", ")
        ))),
    }
}
