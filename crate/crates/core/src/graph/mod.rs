//! Simple undirected graphs with stable vertex and edge identities.

mod edgelist;
mod generators;
mod graph6;

pub use edgelist::{parse_edgelist, write_edgelist};
pub use generators::{
    circulant, complete_graph, disjoint_union, gen_counterexample_disconnected,
    gen_counterexample_glued_trees, gen_counterexample_ring, glue, hamiltonian_paths,
};
pub use graph6::{parse_graph6, write_graph6};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple graph on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically; the
/// position of an edge in that order is its id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, parallel edges and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(format!(
                "parallel edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted(n, list))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        Graph {
            n,
            edges,
            adjacency,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// All edges indexed by id.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    /// `(neighbour, edge id)` pairs at `v`.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Number of edges with both endpoints in `vertices`.
    pub fn induced_edge_count(&self, vertices: &VertexSet) -> usize {
        let mask = vertices.to_mask(self.n);
        self.edges
            .iter()
            .filter(|&&(u, v)| mask[u] && mask[v])
            .count()
    }

    /// Ids of edges with both endpoints marked in `mask`.
    pub fn edges_within(&self, mask: &[bool]) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| mask[u] && mask[v])
            .map(|(id, _)| id)
            .collect()
    }

    /// The spanning subgraph keeping only the edges in `s`, renumbered densely.
    pub fn spanning_subgraph(&self, s: &EdgeSet) -> Graph {
        Self::from_sorted(self.n, s.iter().map(|id| self.edges[id]).collect())
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet((0..self.edges.len()).collect())
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet((0..self.n).collect())
    }
}

/// A set of edge ids of some host graph, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(Vec<usize>);

impl EdgeSet {
    /// Validates the ids against `host`; duplicates collapse.
    pub fn new(host: &Graph, ids: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set = Self::from_ids(ids);
        set.validate(host)?;
        Ok(set)
    }

    pub fn empty() -> Self {
        EdgeSet(Vec::new())
    }

    pub(crate) fn from_ids(ids: impl IntoIterator<Item = usize>) -> Self {
        let mut ids: Vec<usize> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        EdgeSet(ids)
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        EdgeSet(
            mask.iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(id, _)| id)
                .collect(),
        )
    }

    pub fn validate(&self, host: &Graph) -> Result<()> {
        match self.0.last() {
            Some(&id) if id >= host.edge_count() => Err(Error::ForeignEdge {
                id,
                edges: host.edge_count(),
            }),
            _ => Ok(()),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn to_mask(&self, edge_count: usize) -> Vec<bool> {
        let mut mask = vec![false; edge_count];
        for &id in &self.0 {
            mask[id] = true;
        }
        mask
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        Self::from_ids(self.iter().chain(other.iter()))
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.iter().all(|id| !other.contains(id))
    }

    /// Vertices incident to at least one edge of the set.
    pub fn vertices(&self, host: &Graph) -> VertexSet {
        VertexSet::from_indices(
            self.iter()
                .flat_map(|id| {
                    let (u, v) = host.endpoints(id);
                    [u, v]
                }),
        )
    }
}

impl FromIterator<usize> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_ids(iter)
    }
}

/// A set of vertex indices, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(host: &Graph, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set = Self::from_indices(vertices);
        match set.0.last() {
            Some(&v) if v >= host.vertex_count() => Err(Error::ForeignVertex {
                vertex: v,
                vertices: host.vertex_count(),
            }),
            _ => Ok(set),
        }
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub(crate) fn from_indices(vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        VertexSet(
            mask.iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(v, _)| v)
                .collect(),
        )
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

    pub fn to_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.0 {
            mask[v] = true;
        }
        mask
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_indices(iter)
    }
}

/// Union-find over vertex indices.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `x` and `y` were already joined.
    pub(crate) fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        match self.rank[rx].cmp(&self.rank[ry]) {
            std::cmp::Ordering::Less => self.parent[rx] = ry,
            std::cmp::Ordering::Greater => self.parent[ry] = rx,
            std::cmp::Ordering::Equal => {
                self.parent[ry] = rx;
                self.rank[rx] += 1;
            }
        }
        true
    }
}

/// Whether the edges in `s` form a forest, checked directly with union-find.
pub fn is_forest(g: &Graph, s: &EdgeSet) -> bool {
    let mut dsu = DisjointSets::new(g.vertex_count());
    s.iter().all(|id| {
        let (u, v) = g.endpoints(id);
        dsu.union(u, v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_ids_are_lexicographic() {
        let g = Graph::new(4, [(3, 2), (0, 3), (1, 0), (2, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (0, 3), (2, 3)]);
        assert_eq!(g.edge_id(3, 0), Some(2));
        assert_eq!(g.edge_id(1, 2), None);
        assert_eq!(g.degree(0), 3);
    }

    #[test]
    fn rejects_loops_parallels_and_range() {
        assert!(Graph::new(3, [(1, 1)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn edge_sets_validate_against_host() {
        let g = complete_graph(3).unwrap();
        assert!(EdgeSet::new(&g, [0, 2, 2]).unwrap().len() == 2);
        assert!(matches!(
            EdgeSet::new(&g, [3]),
            Err(Error::ForeignEdge { id: 3, edges: 3 })
        ));
        assert!(VertexSet::new(&g, [5]).is_err());
    }

    #[test]
    fn forest_check() {
        let g = complete_graph(4).unwrap();
        assert!(is_forest(&g, &EdgeSet::new(&g, [0, 1, 2]).unwrap()));
        let triangle = [g.edge_id(0, 1), g.edge_id(1, 2), g.edge_id(0, 2)];
        assert!(!is_forest(&g, &triangle.into_iter().flatten().collect()));
    }

    #[test]
    fn induced_counts() {
        let g = complete_graph(5).unwrap();
        let u = VertexSet::new(&g, [0, 2, 4]).unwrap();
        assert_eq!(g.induced_edge_count(&u), 3);
    }
}
