//! Quadratic monomial ideals and their graphs.
//!
//! A quadratic ideal `I` in `n` variables gets a simple graph `G_I` on
//! `[n]` plus a shadow vertex `i̲` for each `x_i² ∈ I`. Shadow vertices are
//! encoded as `n + i`.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linearity::is_quasi_linear;
use crate::monomial::{Monomial, MonomialIdeal, VariableSet};

/// Largest edge count for the exhaustive induced matching search.
pub const DEFAULT_EDGE_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGraph {
    n: usize,
    shadows: VariableSet,
    /// Pairs `(a, b)` with `a < b`; `b >= n` marks the shadow of `b - n`.
    edges: BTreeSet<(usize, usize)>,
}

impl IdealGraph {
    /// Graph on `[n]` with the given plain edges (0-based, no shadows).
    pub fn simple(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::domain(format!("invalid edge ({}, {})", a + 1, b + 1)));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(IdealGraph {
            n,
            shadows: VariableSet::new(),
            edges: set,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shadows(&self) -> &VariableSet {
        &self.shadows
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    /// Vertices that carry at least one edge, plain and shadow.
    pub fn vertex_count(&self) -> usize {
        self.n + self.shadows.len()
    }

    fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; 2 * self.n];
        for &(a, b) in &self.edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    /// The quadratic ideal with this graph.
    pub fn to_ideal(&self) -> MonomialIdeal {
        let gens = self.edges.iter().map(|&(a, b)| {
            let mut e = vec![0u32; self.n];
            if b >= self.n {
                e[a] = 2;
            } else {
                e[a] = 1;
                e[b] = 1;
            }
            Monomial::new(e)
        });
        MonomialIdeal::new(self.n, gens).expect("edges give monomials in n variables")
    }

    /// `{"n": 4, "shadows": [1], "edges": [[1,2],[1,-1]]}` with `-i` for `i̲`.
    pub fn to_json(&self) -> Value {
        let label = |v: usize| {
            if v >= self.n {
                -((v - self.n + 1) as i64)
            } else {
                (v + 1) as i64
            }
        };
        json!({
            "n": self.n,
            "shadows": self.shadows.to_one_based(),
            "edges": self.edges.iter().map(|&(a, b)| vec![label(a), label(b)]).collect::<Vec<_>>(),
        })
    }
}

/// `G_I` for `I` generated in degree two.
pub fn graph_of_ideal(ideal: &MonomialIdeal) -> Result<IdealGraph> {
    let n = ideal.n();
    if n > 32 {
        return Err(Error::domain(format!("{n} variables is too many for a graph")));
    }
    let mut shadows = VariableSet::new();
    let mut edges = BTreeSet::new();
    for g in ideal.gens() {
        if g.degree() != 2 {
            return Err(Error::domain(format!("{g} is not quadratic")));
        }
        let support: Vec<usize> = g.support().iter().collect();
        match support[..] {
            [i] => {
                shadows.insert(i);
                edges.insert((i, n + i));
            }
            [i, j] => {
                edges.insert((i, j));
            }
            _ => unreachable!("degree two"),
        }
    }
    Ok(IdealGraph { n, shadows, edges })
}

/// Maximum induced matching and a witness, the lexicographically first
/// matching of maximum size.
pub fn induced_matching_number(graph: &IdealGraph) -> Result<(usize, Vec<(usize, usize)>)> {
    induced_matching_number_with_cap(graph, DEFAULT_EDGE_CAP)
}

pub fn induced_matching_number_with_cap(
    graph: &IdealGraph,
    cap: usize,
) -> Result<(usize, Vec<(usize, usize)>)> {
    if graph.edges.len() > cap {
        return Err(Error::Resource {
            what: "edge count",
            cap,
            actual: graph.edges.len(),
        });
    }
    let edges: Vec<(usize, usize)> = graph.edges.iter().copied().collect();
    let adj = graph.adjacency();
    let mut best = Vec::new();
    let mut current = Vec::new();
    extend_matching(&edges, &adj, 0, 0, 0, &mut current, &mut best);
    let witness = best.iter().map(|&k| edges[k]).collect();
    Ok((best.len(), witness))
}

fn extend_matching(
    edges: &[(usize, usize)],
    adj: &[u64],
    start: usize,
    used: u64,
    touched: u64,
    current: &mut Vec<usize>,
    best: &mut Vec<usize>,
) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    for k in start..edges.len() {
        if current.len() + (edges.len() - k) <= best.len() {
            return;
        }
        let (a, b) = edges[k];
        let ends = (1u64 << a) | (1u64 << b);
        // disjoint from the matching and no edge to its vertices
        if used & ends != 0 || touched & ends != 0 {
            continue;
        }
        current.push(k);
        extend_matching(
            edges,
            adj,
            k + 1,
            used | ends,
            touched | adj[a] | adj[b],
            current,
            best,
        );
        current.pop();
    }
}

/// First pair of edges forming an induced matching, found by scanning pairs.
pub fn induced_matching_pair(graph: &IdealGraph) -> Option<((usize, usize), (usize, usize))> {
    let adj = graph.adjacency();
    let edges: Vec<(usize, usize)> = graph.edges.iter().copied().collect();
    for (k, &(a, b)) in edges.iter().enumerate() {
        let near = adj[a] | adj[b] | (1u64 << a) | (1u64 << b);
        for &(c, d) in &edges[k + 1..] {
            if near & ((1u64 << c) | (1u64 << d)) == 0 {
                return Some(((a, b), (c, d)));
            }
        }
    }
    None
}

/// `(indmat(G_I) == 1, is_quasi_linear(I))`.
pub fn quadratic_quasilinear_check(ideal: &MonomialIdeal) -> Result<(bool, bool)> {
    if ideal.is_zero() {
        return Err(Error::domain("the zero ideal has no graph to check"));
    }
    let graph = graph_of_ideal(ideal)?;
    // G_I has an edge, so indmat is 1 unless some pair is induced
    let via_graph = induced_matching_pair(&graph).is_none();
    Ok((via_graph, is_quasi_linear(ideal).verdict))
}

/// Whether the complement of the simple graph `graph` has an induced 4-cycle.
pub fn complement_has_induced_c4(graph: &IdealGraph) -> bool {
    let n = graph.n;
    let adj = graph.adjacency();
    let co = |a: usize, b: usize| a != b && adj[a] & (1 << b) == 0;
    // a 4-cycle a-b-c-d-a in the complement with chords a-c, b-d absent there
    for a in 0..n {
        for c in a + 1..n {
            if co(a, c) {
                continue;
            }
            let common: Vec<usize> = (0..n)
                .filter(|&v| v != a && v != c && co(a, v) && co(c, v))
                .collect();
            for (s, &b) in common.iter().enumerate() {
                for &d in &common[s + 1..] {
                    if !co(b, d) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(n, gens.iter().map(|e| Monomial::new(e.to_vec()))).unwrap()
    }

    #[test]
    fn graph_construction() {
        let g = graph_of_ideal(&ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]])).unwrap();
        assert_eq!(g.edges().iter().copied().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);

        let g = graph_of_ideal(&ideal(2, &[&[2, 0]])).unwrap();
        assert_eq!(g.shadows(), &VariableSet::from_one_based(&[1]));
        assert_eq!(g.edges().iter().copied().collect::<Vec<_>>(), vec![(0, 2)]);

        let i = ideal(2, &[&[1, 1], &[2, 0]]);
        let g = graph_of_ideal(&i).unwrap();
        assert_eq!(g.to_json(), json!({"n": 2, "shadows": [1], "edges": [[1, 2], [1, -1]]}));
        assert_eq!(g.to_ideal(), i);

        assert!(graph_of_ideal(&ideal(2, &[&[1, 2]])).is_err());
    }

    #[test]
    fn induced_matchings() {
        let two = IdealGraph::simple(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(induced_matching_number(&two).unwrap().0, 2);
        let triangle = IdealGraph::simple(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(induced_matching_number(&triangle).unwrap().0, 1);
        let path = IdealGraph::simple(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(induced_matching_number(&path).unwrap().0, 1);
        assert!(induced_matching_pair(&path).is_none());
        let empty = IdealGraph::simple(3, []).unwrap();
        assert_eq!(induced_matching_number(&empty).unwrap(), (0, vec![]));

        let many = IdealGraph::simple(8, (0..8).flat_map(|a| (a + 1..8).map(move |b| (a, b)))).unwrap();
        assert!(induced_matching_number(&many).is_err());
    }

    #[test]
    fn quadratic_check_examples() {
        assert_eq!(
            quadratic_quasilinear_check(&ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]])).unwrap(),
            (false, false)
        );
        assert_eq!(
            quadratic_quasilinear_check(&ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])).unwrap(),
            (true, true)
        );
        // complement of the 4-cycle 1-2-3-4 is a perfect matching {13, 24}
        let g = IdealGraph::simple(4, [(0, 2), (1, 3)]).unwrap();
        assert!(complement_has_induced_c4(&g));
        assert_eq!(quadratic_quasilinear_check(&g.to_ideal()).unwrap(), (false, false));
        assert!(quadratic_quasilinear_check(&MonomialIdeal::zero(2)).is_err());
    }
}
