//! Hypergraph carrier type: structural predicates and edit operations.
//!
//! Vertices are dense ids `0..vertex_count`. Edges are strictly sorted vertex
//! lists; the edge *order* is significant for labeled constructions (spines,
//! attachments) while equality and hashing treat the edge list as a set.

use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph from raw edges. Each edge is sorted; empty edges,
    /// out-of-range ids, repeated vertices within an edge and repeated edges
    /// are rejected. Isolated vertices are permitted (edge deletion produces
    /// them); family constructors never emit any.
    pub fn new(vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut sorted_edges = Vec::with_capacity(edges.len());
        for (index, mut edge) in edges.into_iter().enumerate() {
            if edge.is_empty() {
                return Err(Error::Invalid(format!("edge {index} is empty")));
            }
            edge.sort_unstable();
            for window in edge.windows(2) {
                if window[0] == window[1] {
                    return Err(Error::Invalid(format!(
                        "edge {index} repeats vertex {}",
                        window[0]
                    )));
                }
            }
            if let Some(&last) = edge.last() {
                if last >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: last,
                        vertex_count,
                    });
                }
            }
            sorted_edges.push(edge);
        }
        let mut dedup = sorted_edges.clone();
        dedup.sort_unstable();
        for window in dedup.windows(2) {
            if window[0] == window[1] {
                return Err(Error::DuplicateEdge(window[0].clone()));
            }
        }
        Ok(Self {
            vertex_count,
            edges: sorted_edges,
        })
    }

    /// The one-vertex, zero-edge graph (used as a trivial rooted attachment).
    pub fn trivial() -> Self {
        Self {
            vertex_count: 1,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Result<&[usize]> {
        self.edges
            .get(index)
            .map(Vec::as_slice)
            .ok_or(Error::EdgeOutOfRange {
                index,
                edge_count: self.edges.len(),
            })
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.vertex_count
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            })
        }
    }

    /// Number of edges incident to `v`.
    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.edges.iter().filter(|e| e.binary_search(&v).is_ok()).count())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.vertex_count];
        for edge in &self.edges {
            for &v in edge {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Returns `Some(k)` when every edge has exactly `k` vertices.
    pub fn uniformity(&self) -> Option<usize> {
        let first = self.edges.first()?.len();
        self.edges
            .iter()
            .all(|e| e.len() == first)
            .then_some(first)
    }

    pub fn is_k_uniform(&self, k: usize) -> bool {
        !self.edges.is_empty() && self.edges.iter().all(|e| e.len() == k)
    }

    /// Co-edge adjacency lists: `u` and `v` are adjacent when some edge
    /// contains both.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for edge in &self.edges {
            for (i, &u) in edge.iter().enumerate() {
                for &v in &edge[i + 1..] {
                    adj[u].push(v);
                    adj[v].push(u);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Component labels per vertex plus the component count. Isolated
    /// vertices form singleton components.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut count = 0;
        for start in 0..self.vertex_count {
            if label[start] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            label[start] = count;
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if label[v] == usize::MAX {
                        label[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count <= 1 || self.components().0 == 1
    }

    /// Connected and incidence-acyclic. For a connected hypergraph acyclicity
    /// is equivalent to `sum(|e| - 1) == |V| - 1`.
    pub fn is_hypertree(&self) -> bool {
        if !self.is_connected() {
            return false;
        }
        let incidence: usize = self.edges.iter().map(|e| e.len() - 1).sum();
        incidence == self.vertex_count.saturating_sub(1)
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        let deg = self.degrees();
        (0..self.vertex_count).filter(|&v| deg[v] == 0).collect()
    }

    /// Removes the vertices of `removed` from the vertex set and from every
    /// edge, reindexing the survivors densely. Returns the new graph together
    /// with the old-id -> new-id table. Fails if an edge would become empty
    /// or the whole vertex set is removed.
    pub fn weak_delete(&self, removed: &[usize]) -> Result<(Hypergraph, Vec<Option<usize>>)> {
        let mut drop = vec![false; self.vertex_count];
        for &v in removed {
            self.check_vertex(v)?;
            drop[v] = true;
        }
        if drop.iter().all(|&d| d) {
            return Err(Error::Precondition(
                "weak deletion of the entire vertex set".into(),
            ));
        }
        let mut remap = vec![None; self.vertex_count];
        let mut next = 0usize;
        for v in 0..self.vertex_count {
            if !drop[v] {
                remap[v] = Some(next);
                next += 1;
            }
        }
        let mut edges = Vec::with_capacity(self.edges.len());
        for (index, edge) in self.edges.iter().enumerate() {
            let shrunk: Vec<usize> = edge.iter().filter_map(|&v| remap[v]).collect();
            if shrunk.is_empty() {
                return Err(Error::EmptiedEdge { index });
            }
            edges.push(shrunk);
        }
        let graph = Hypergraph::new(next, edges)?;
        Ok((graph, remap))
    }

    /// Drops one edge, keeping the full vertex set. Vertices that lose their
    /// only edge stay behind as isolated vertices so that component
    /// bookkeeping over the remainder stays aligned with the original ids.
    pub fn delete_edge(&self, index: usize) -> Result<Hypergraph> {
        if index >= self.edges.len() {
            return Err(Error::EdgeOutOfRange {
                index,
                edge_count: self.edges.len(),
            });
        }
        let mut edges = self.edges.clone();
        edges.remove(index);
        Hypergraph::new(self.vertex_count, edges)
    }

    /// Replaces each selected edge `e` by `(e \ {from_v}) ∪ {to_v}`. Every
    /// selected edge must contain `from_v` and avoid `to_v`.
    pub fn move_edges(&self, from_v: usize, to_v: usize, edge_indices: &[usize]) -> Result<Hypergraph> {
        self.check_vertex(from_v)?;
        self.check_vertex(to_v)?;
        let mut offending = Vec::new();
        for &index in edge_indices {
            let edge = self.edge(index)?;
            if edge.binary_search(&from_v).is_err() || edge.binary_search(&to_v).is_ok() {
                offending.push(index);
            }
        }
        if !offending.is_empty() {
            return Err(Error::Precondition(format!(
                "edges {offending:?} do not admit moving from {from_v} to {to_v}"
            )));
        }
        let mut edges = self.edges.clone();
        for &index in edge_indices {
            let edge = &mut edges[index];
            edge.retain(|&v| v != from_v);
            edge.push(to_v);
            edge.sort_unstable();
        }
        Hypergraph::new(self.vertex_count, edges)
    }

    /// Moves a degree-one vertex from one edge into another; the result may
    /// be non-uniform. The source edge must keep at least two vertices so
    /// distances stay finite through it.
    pub fn transfer_vertex(&self, v: usize, from_edge: usize, to_edge: usize) -> Result<Hypergraph> {
        let src = self.edge(from_edge)?;
        let dst = self.edge(to_edge)?;
        if src.binary_search(&v).is_err() {
            return Err(Error::Precondition(format!(
                "vertex {v} is not in edge {from_edge}"
            )));
        }
        if dst.binary_search(&v).is_ok() {
            return Err(Error::Precondition(format!(
                "vertex {v} is already in edge {to_edge}"
            )));
        }
        if self.degree(v)? != 1 {
            return Err(Error::Precondition(format!("vertex {v} must have degree 1")));
        }
        if src.len() < 3 {
            return Err(Error::Precondition(format!(
                "edge {from_edge} must retain at least 2 vertices"
            )));
        }
        let mut edges = self.edges.clone();
        edges[from_edge].retain(|&u| u != v);
        edges[to_edge].push(v);
        edges[to_edge].sort_unstable();
        Hypergraph::new(self.vertex_count, edges)
    }

    /// Per-edge count of vertices with degree at least two.
    pub fn heavy_counts(&self) -> Vec<usize> {
        let deg = self.degrees();
        self.edges
            .iter()
            .map(|e| e.iter().filter(|&&v| deg[v] >= 2).count())
            .collect()
    }

    /// An edge is pendant when at most one of its vertices has degree >= 2.
    pub fn is_pendant_edge(&self, index: usize) -> Result<bool> {
        let deg = self.degrees();
        let edge = self.edge(index)?;
        Ok(edge.iter().filter(|&&v| deg[v] >= 2).count() <= 1)
    }

    /// Pendant edge indices incident to `v` (edges where `v` is the only
    /// vertex of degree >= 2).
    pub fn pendant_edges_at(&self, v: usize) -> Result<Vec<usize>> {
        self.check_vertex(v)?;
        let deg = self.degrees();
        let mut found = Vec::new();
        for (index, edge) in self.edges.iter().enumerate() {
            if edge.binary_search(&v).is_err() {
                continue;
            }
            if edge.iter().all(|&u| u == v || deg[u] == 1) {
                found.push(index);
            }
        }
        Ok(found)
    }

    /// Edge indices incident to `v`.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.binary_search(&v).is_ok())
            .map(|(i, _)| i)
            .collect()
    }

    fn sorted_edge_set(&self) -> Vec<&Vec<usize>> {
        let mut refs: Vec<&Vec<usize>> = self.edges.iter().collect();
        refs.sort();
        refs
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count
            && self.edges.len() == other.edges.len()
            && self.sorted_edge_set() == other.sorted_edge_set()
    }
}

impl Eq for Hypergraph {}

impl std::hash::Hash for Hypergraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.vertex_count.hash(state);
        for edge in self.sorted_edge_set() {
            edge.hash(state);
        }
    }
}
