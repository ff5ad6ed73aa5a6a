//! Simple undirected graphs on dense vertex ids `0..n` and the elementary
//! invariants every other module builds on.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sorted, duplicate-free list of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Builds a set from arbitrary ids, sorting and dropping duplicates.
    pub fn from_unsorted(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut ids = self.0.clone();
        ids.extend_from_slice(&other.0);
        VertexSet::from_unsorted(ids)
    }

    /// Checks every id against the vertex count of the graph it refers to.
    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }

    /// Membership vector of length `n`.
    pub fn to_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter() {
            mask[v] = true;
        }
        mask
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_unsorted(iter.into_iter().collect())
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(ids: Vec<usize>) -> Self {
        VertexSet::from_unsorted(ids)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Simple undirected graph: symmetric adjacency, no loops, no multi-edges.
///
/// Neighbor lists are kept sorted so that two graphs with the same edge set
/// compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("valid complete graph")
    }

    /// Path 0–1–…–(n−1).
    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
    }

    /// Cycle 0–1–…–(n−1)–0, `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0).expect("valid cycle");
        g
    }

    /// Star K₁,ₗ with center 0 and leaves 1..=leaves.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("valid star")
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|nb| nb.iter().map(|&v| v + off).collect()),
        );
        Graph { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Inserts the edge `uv`; inserting an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|nb| nb.binary_search(&v).is_ok())
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// `V₀(G)`: the vertices of degree zero.
    pub fn isolated_vertices(&self) -> VertexSet {
        VertexSet((0..self.n()).filter(|&v| self.adj[v].is_empty()).collect())
    }

    /// `δ(G)`.
    pub fn min_degree(&self) -> Result<usize> {
        self.adj
            .iter()
            .map(Vec::len)
            .min()
            .ok_or_else(|| Error::domain("minimum degree of the empty graph"))
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Result<Vec<VertexSet>> {
        self.require_nonempty("connected components")?;
        Ok(self.components_avoiding(&vec![false; self.n()]))
    }

    pub fn is_connected(&self) -> Result<bool> {
        Ok(self.connected_components()?.len() == 1)
    }

    pub fn is_complete(&self) -> Result<bool> {
        self.require_nonempty("completeness")?;
        let n = self.n();
        Ok(self.adj.iter().all(|nb| nb.len() == n - 1))
    }

    /// Components of `G − removed`, where `removed` is a membership vector.
    pub(crate) fn components_avoiding(&self, removed: &[bool]) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(VertexSet::from_unsorted(comp));
        }
        out
    }

    pub(crate) fn require_nonempty(&self, what: &str) -> Result<()> {
        if self.adj.is_empty() {
            Err(Error::domain(format!("{what} is undefined for the graph on 0 vertices")))
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2_plus_k1() -> Graph {
        Graph::from_edges(3, [(0, 1)]).unwrap()
    }

    #[test]
    fn edges_are_symmetric_and_deduplicated() {
        let mut g = Graph::empty(3);
        g.add_edge(0, 2).unwrap();
        g.add_edge(2, 0).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(2, 0) && g.has_edge(0, 2));
        assert_eq!(g.add_edge(1, 1), Err(Error::SelfLoop(1)));
        assert_eq!(
            g.add_edge(0, 3),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn isolated_vertices() {
        assert_eq!(k2_plus_k1().isolated_vertices(), VertexSet::from(vec![2]));
        assert!(Graph::cycle(4).isolated_vertices().is_empty());
        assert_eq!(Graph::empty(3).isolated_vertices(), VertexSet::from(vec![0, 1, 2]));
    }

    #[test]
    fn min_degree() {
        assert_eq!(Graph::cycle(4).min_degree().unwrap(), 2);
        assert_eq!(Graph::star(3).min_degree().unwrap(), 1);
        assert_eq!(Graph::complete(4).min_degree().unwrap(), 3);
        assert!(matches!(Graph::empty(0).min_degree(), Err(Error::Domain(_))));
    }

    #[test]
    fn components_and_completeness() {
        let p3 = Graph::path(3);
        assert!(p3.is_connected().unwrap());
        assert!(!p3.is_complete().unwrap());
        let k4 = Graph::complete(4);
        assert!(k4.is_connected().unwrap() && k4.is_complete().unwrap());
        assert_eq!(
            k2_plus_k1().connected_components().unwrap(),
            vec![VertexSet::from(vec![0, 1]), VertexSet::from(vec![2])]
        );
        assert!(Graph::empty(0).is_connected().is_err());
        assert!(Graph::empty(0).is_complete().is_err());
    }

    #[test]
    fn disjoint_union_shifts_ids() {
        let g = Graph::complete(2).disjoint_union(&Graph::empty(1));
        assert_eq!(g, k2_plus_k1());
    }

    #[test]
    fn vertex_set_normalizes() {
        let s = VertexSet::from(vec![3, 1, 3, 0]);
        assert_eq!(s.as_slice(), &[0, 1, 3]);
        assert!(s.check_range(4).is_ok());
        assert!(s.check_range(3).is_err());
        assert_eq!(s.to_string(), "{0,1,3}");
    }
}
