//! Canonical labelling by colour refinement and individualisation.
//!
//! The search tree is explored exhaustively, keeping the lexicographically
//! smallest relabelled edge list. When two leaves give the same code their
//! quotient is an automorphism; automorphisms fixing the current prefix are
//! used to skip equivalent siblings.

use sha2::{Digest, Sha256};

use super::Multigraph;

const MAX_STORED_AUTOMORPHISMS: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub order: usize,
    /// Relabelled base edges `(u, v, mult)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize, u32)>,
    /// `labelling[v]` is the canonical position of input vertex `v`.
    pub labelling: Vec<usize>,
}

impl CanonicalForm {
    /// SHA-256 of the canonical edge list, as lowercase hex.
    pub fn hex_digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.order as u64).to_le_bytes());
        for &(u, v, m) in &self.edges {
            h.update((u as u64).to_le_bytes());
            h.update((v as u64).to_le_bytes());
            h.update(m.to_le_bytes());
        }
        hex::encode(h.finalize())
    }
}

pub fn canonical_form(g: &Multigraph) -> CanonicalForm {
    let n = g.order();
    let adj: Vec<Vec<(usize, u32)>> = (0..n)
        .map(|v| g.neighbours(v).map(|(e, u)| (u, g.edge(e).mult)).collect())
        .collect();
    let mut search = Search {
        g,
        adj,
        best: None,
        autos: Vec::new(),
        prefix: Vec::new(),
    };
    let initial: Vec<usize> = (0..n).map(|v| g.degree(v) as usize).collect();
    let colours = search.refine(initial);
    search.descend(colours);
    let (edges, labelling) = search.best.expect("the search tree has at least one leaf");
    CanonicalForm {
        order: n,
        edges,
        labelling,
    }
}

pub fn are_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    if a.order() != b.order()
        || a.base_edge_count() != b.base_edge_count()
        || a.edge_count() != b.edge_count()
    {
        return false;
    }
    let mut da: Vec<u32> = (0..a.order()).map(|v| a.degree(v)).collect();
    let mut db: Vec<u32> = (0..b.order()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    canonical_form(a).edges == canonical_form(b).edges
}

type Code = Vec<(usize, usize, u32)>;

struct Search<'a> {
    g: &'a Multigraph,
    adj: Vec<Vec<(usize, u32)>>,
    best: Option<(Code, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
    prefix: Vec<usize>,
}

impl Search<'_> {
    /// Iterated refinement until the number of colours stops growing. Colours
    /// are ranks of sorted signatures, so the result is isomorphism invariant
    /// and refines the input order.
    fn refine(&self, colours: Vec<usize>) -> Vec<usize> {
        let n = colours.len();
        let mut colours = ranks(&colours);
        let mut count = distinct(&colours);
        loop {
            if count == n {
                return colours;
            }
            let mut sigs: Vec<(usize, Vec<(usize, u32)>, usize)> = (0..n)
                .map(|v| {
                    let mut s: Vec<(usize, u32)> =
                        self.adj[v].iter().map(|&(u, m)| (colours[u], m)).collect();
                    s.sort_unstable();
                    (colours[v], s, v)
                })
                .collect();
            sigs.sort_unstable();
            let mut next = vec![0; n];
            let mut rank = 0;
            for i in 0..n {
                if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                    rank = i;
                }
                next[sigs[i].2] = rank;
            }
            let new_count = distinct(&next);
            colours = next;
            if new_count == count {
                return colours;
            }
            count = new_count;
        }
    }

    fn descend(&mut self, colours: Vec<usize>) {
        let n = colours.len();
        // Colours are ranks, so a cell is the set of vertices sharing a rank
        // and the smallest rank with two or more members is the target cell.
        let mut size = vec![0usize; n.max(1)];
        for &c in &colours {
            size[c] += 1;
        }
        let Some(target) = (0..n).find(|&c| size[c] > 1) else {
            self.leaf(colours);
            return;
        };
        let cell: Vec<usize> = (0..n).filter(|&v| colours[v] == target).collect();
        let mut tried: Vec<usize> = Vec::new();
        for &w in &cell {
            if !tried.is_empty() && self.equivalent_to_tried(w, &tried) {
                continue;
            }
            let mut next = colours.clone();
            for c in next.iter_mut() {
                if *c >= target {
                    *c += 1;
                }
            }
            next[w] = target;
            let refined = self.refine(next);
            self.prefix.push(w);
            self.descend(refined);
            self.prefix.pop();
            tried.push(w);
        }
    }

    /// Orbit test under the stored automorphisms that fix the prefix pointwise.
    fn equivalent_to_tried(&self, w: usize, tried: &[usize]) -> bool {
        let gens: Vec<&Vec<usize>> = self
            .autos
            .iter()
            .filter(|a| self.prefix.iter().all(|&p| a[p] == p))
            .collect();
        if gens.is_empty() {
            return false;
        }
        let n = self.adj.len();
        let mut uf = super::structure::UnionFind::new(n);
        for a in gens {
            for v in 0..n {
                uf.union(v, a[v]);
            }
        }
        let rw = uf.find(w);
        tried.iter().any(|&t| uf.find(t) == rw)
    }

    fn leaf(&mut self, pos: Vec<usize>) {
        let mut code: Code = self
            .g
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = (pos[e.u], pos[e.v]);
                (a.min(b), a.max(b), e.mult)
            })
            .collect();
        code.sort_unstable();
        match &self.best {
            None => self.best = Some((code, pos)),
            Some((best, best_pos)) => {
                if code < *best {
                    self.best = Some((code, pos));
                } else if code == *best && self.autos.len() < MAX_STORED_AUTOMORPHISMS {
                    let n = pos.len();
                    let mut inv = vec![0; n];
                    for v in 0..n {
                        inv[best_pos[v]] = v;
                    }
                    let auto: Vec<usize> = (0..n).map(|v| inv[pos[v]]).collect();
                    if auto.iter().enumerate().any(|(v, &a)| v != a) {
                        self.autos.push(auto);
                    }
                }
            }
        }
    }
}

/// Replaces each value by the number of strictly smaller entries.
fn ranks(values: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_unstable_by_key(|&v| values[v]);
    let mut out = vec![0; values.len()];
    for i in 0..order.len() {
        out[order[i]] = if i > 0 && values[order[i]] == values[order[i - 1]] {
            out[order[i - 1]]
        } else {
            i
        };
    }
    out
}

fn distinct(colours: &[usize]) -> usize {
    let mut seen = vec![false; colours.len()];
    let mut count = 0;
    for &c in colours {
        if !seen[c] {
            seen[c] = true;
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relabel(g: &Multigraph, perm: &[usize]) -> Multigraph {
        Multigraph::with_multiplicities(
            g.order(),
            g.edges().iter().map(|e| (perm[e.u], perm[e.v], e.mult)),
        )
        .unwrap()
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
    fn relabelled_copies_share_a_form() {
        let p = petersen();
        let q = relabel(&p, &[3, 7, 1, 9, 0, 2, 8, 4, 6, 5]);
        assert_ne!(p, q);
        assert_eq!(canonical_form(&p).edges, canonical_form(&q).edges);
        assert_eq!(canonical_form(&p).hex_digest(), canonical_form(&q).hex_digest());
        assert!(are_isomorphic(&p, &q));
    }

    #[test]
    fn prism_and_k33_differ() {
        let prism =
            Multigraph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
                .unwrap();
        let k33 = Multigraph::new(
            6,
            (0..3).flat_map(|i| (3..6).map(move |j| (i, j))),
        )
        .unwrap();
        assert!(!are_isomorphic(&prism, &k33));
    }

    #[test]
    fn multiplicities_matter() {
        let a = Multigraph::with_multiplicities(4, [(0, 1, 2), (2, 3, 2), (0, 2, 1), (1, 3, 1)]).unwrap();
        let b = Multigraph::with_multiplicities(4, [(0, 1, 2), (2, 3, 2), (0, 3, 1), (1, 2, 1)]).unwrap();
        let c = Multigraph::with_multiplicities(4, [(0, 1, 1), (2, 3, 1), (0, 2, 2), (1, 3, 2)]).unwrap();
        assert!(are_isomorphic(&a, &b));
        assert!(are_isomorphic(&a, &c));
        let d = Multigraph::with_multiplicities(4, [(0, 1, 3), (2, 3, 3)]).unwrap();
        assert!(!are_isomorphic(&a, &d));
    }

    #[test]
    fn labelling_is_a_permutation_mapping_onto_the_code() {
        let p = petersen();
        let f = canonical_form(&p);
        let mut seen = f.labelling.clone();
        seen.sort_unstable();
        assert_eq!(seen, (0..10).collect::<Vec<_>>());
        assert_eq!(relabel(&p, &f.labelling).edges().len(), f.edges.len());
    }
}
