use super::{GraphBuilder, Multigraph};
use crate::error::{violation, Result};

/// A dangling edge: one end at `vertex` inside the fragment, the other end
/// unattached. `slot` tells two dangling edges at the same vertex apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Stub {
    pub vertex: usize,
    pub slot: u32,
}

/// A cubic fragment with an ordered list of dangling edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPole {
    graph: Multigraph,
    dangling: Vec<Stub>,
}

impl KPole {
    /// Checks that every vertex has degree 3 once its dangling edges are
    /// counted.
    pub fn new(graph: Multigraph, dangling: Vec<Stub>) -> Result<Self> {
        let mut extra = vec![0u32; graph.order()];
        for s in &dangling {
            if s.vertex >= graph.order() {
                return Err(violation(format!("stub at missing vertex {}", s.vertex)));
            }
            extra[s.vertex] += 1;
        }
        for v in 0..graph.order() {
            if graph.degree(v) + extra[v] != 3 {
                return Err(violation(format!(
                    "vertex {v} has degree {} with dangling edges counted",
                    graph.degree(v) + extra[v]
                )));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for s in &dangling {
            if !seen.insert((s.vertex, s.slot)) {
                return Err(violation("duplicate stub"));
            }
        }
        Ok(KPole { graph, dangling })
    }

    /// Deletes `removed` from `g`. Every edge from a kept vertex into a
    /// removed one becomes a dangling edge, ordered by the position of the
    /// removed endpoint in `removed` and then by incidence order there.
    pub fn by_removing(g: &Multigraph, removed: &[usize]) -> Result<Self> {
        let mut keep = vec![true; g.order()];
        for &r in removed {
            if r >= g.order() {
                return Err(violation(format!("vertex {r} does not exist")));
            }
            keep[r] = false;
        }
        let (h, map) = g.induced(&keep);
        let mut slots = vec![0u32; h.order()];
        let mut dangling = Vec::new();
        for &r in removed {
            for (_, x) in g.stubs(r) {
                if let Some(nx) = map[x] {
                    dangling.push(Stub {
                        vertex: nx,
                        slot: slots[nx],
                    });
                    slots[nx] += 1;
                }
            }
        }
        KPole::new(h, dangling)
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn dangling(&self) -> &[Stub] {
        &self.dangling
    }

    pub fn arity(&self) -> usize {
        self.dangling.len()
    }

    /// Copies the fragment into `b` (vertices appended in order, labels kept)
    /// and returns the new vertex of each dangling edge, in dangling order.
    pub fn embed(&self, b: &mut GraphBuilder) -> Vec<usize> {
        let offset = b.order();
        for _ in 0..self.graph.order() {
            b.add_vertex();
        }
        for (id, e) in self.graph.edges().iter().enumerate() {
            b.add_edge_mult(
                e.u + offset,
                e.v + offset,
                e.mult,
                self.graph.label(id).map(str::to_owned),
            );
        }
        self.dangling.iter().map(|s| s.vertex + offset).collect()
    }

    /// For a 4-pole: two new vertices `u` and `v`, `u` taking the first pair
    /// of dangling edges and `v` the second, joined by an edge. `u` and `v`
    /// are the last two vertices.
    pub fn closure(&self) -> Result<Multigraph> {
        if self.arity() != 4 {
            return Err(violation("closure is defined for 4-poles"));
        }
        let mut b = GraphBuilder::new(0);
        let ends = self.embed(&mut b);
        let u = b.add_vertex();
        let v = b.add_vertex();
        b.add_edge(ends[0], u).add_edge(ends[1], u);
        b.add_edge(ends[2], v).add_edge(ends[3], v);
        b.add_edge(u, v);
        b.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::are_isomorphic;

    fn k4() -> Multigraph {
        Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn removing_a_vertex_leaves_a_three_pole() {
        let p = KPole::by_removing(&k4(), &[0]).unwrap();
        assert_eq!(p.arity(), 3);
        assert_eq!(p.graph().order(), 3);
    }

    #[test]
    fn degree_check() {
        let tri = Multigraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let stubs = vec![Stub { vertex: 0, slot: 0 }, Stub { vertex: 1, slot: 0 }];
        assert!(KPole::new(tri, stubs).is_err());
    }

    #[test]
    fn closure_inverts_removal_of_two_adjacent_vertices() {
        let g = k4();
        let p = KPole::by_removing(&g, &[0, 1]).unwrap();
        assert_eq!(p.arity(), 4);
        assert!(are_isomorphic(&p.closure().unwrap(), &g));
    }
}
