//! Exact isomorphism-invariant codes.
//!
//! Hypertrees (the overwhelmingly common case: every family constructor and
//! the enumeration pipeline produce them) are encoded by a canonical form of
//! their vertex-edge incidence tree rooted at its center. Anything else goes
//! through color refinement plus an individualization search over the refined
//! cells, taking the minimum certificate over all branches. Both paths are
//! exact: equal codes hold if and only if the graphs are isomorphic.

use crate::hypergraph::Hypergraph;

/// Deterministic byte string identifying an isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Short hex fingerprint for logs and reports (the full code stays the
    /// equality witness).
    pub fn fingerprint(&self) -> String {
        let mut hash = 0xcbf2_9ce4_8422_2325u64;
        for &b in &self.0 {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x1000_0000_01b3);
        }
        format!("{hash:016x}")
    }
}

impl std::fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.fingerprint())
    }
}

impl Hypergraph {
    pub fn canonical_code(&self) -> CanonicalCode {
        if self.is_hypertree() {
            let mut bytes = vec![b'T'];
            bytes.extend_from_slice(&incidence_tree_code(self));
            CanonicalCode(bytes)
        } else {
            let mut bytes = vec![b'G'];
            bytes.extend_from_slice(&refined_search_code(self));
            CanonicalCode(bytes)
        }
    }

    pub fn is_isomorphic(&self, other: &Hypergraph) -> bool {
        self.canonical_code() == other.canonical_code()
    }
}

// ---------------------------------------------------------------------------
// Incidence-tree canonical form (AHU with typed nodes).

/// Nodes `0..n` are vertices, `n..n+m` are edges. The caller guarantees the
/// incidence graph is a tree.
fn incidence_tree_code(g: &Hypergraph) -> Vec<u8> {
    let n = g.vertex_count();
    let m = g.edge_count();
    let total = n + m;
    if total == 1 {
        return vec![b'v'];
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    for (i, edge) in g.edges().iter().enumerate() {
        for &v in edge {
            adj[v].push(n + i);
            adj[n + i].push(v);
        }
    }

    let centers = tree_centers(&adj);
    match centers.as_slice() {
        [c] => {
            let mut out = vec![b'C'];
            out.extend_from_slice(&rooted_code(&adj, n, *c, usize::MAX));
            out
        }
        [c1, c2] => {
            let a = rooted_code(&adj, n, *c1, *c2);
            let b = rooted_code(&adj, n, *c2, *c1);
            let (first, second) = if a <= b { (a, b) } else { (b, a) };
            let mut out = vec![b'B'];
            out.extend_from_slice(&first);
            out.extend_from_slice(&second);
            out
        }
        _ => unreachable!("a tree has one or two centers"),
    }
}

fn tree_centers(adj: &[Vec<usize>]) -> Vec<usize> {
    let total = adj.len();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut remaining = total;
    let mut layer: Vec<usize> = (0..total).filter(|&u| degree[u] <= 1).collect();
    while remaining > 2 {
        let mut next = Vec::new();
        for &u in &layer {
            for &v in &adj[u] {
                if degree[v] > 1 {
                    degree[v] -= 1;
                    if degree[v] == 1 {
                        next.push(v);
                    }
                }
            }
            degree[u] = 0;
        }
        remaining -= layer.len();
        layer = next;
    }
    let mut centers = layer;
    centers.sort_unstable();
    centers
}

/// AHU code of the subtree rooted at `root`, treating `parent` as absent.
/// Children codes are sorted, so the result is invariant under subtree
/// reordering. Node type (vertex vs edge) is part of every tag.
fn rooted_code(adj: &[Vec<usize>], vertex_nodes: usize, root: usize, parent: usize) -> Vec<u8> {
    // Iterative post-order: children resolved before parents.
    let mut order = Vec::new();
    let mut parent_of = vec![usize::MAX; adj.len()];
    let mut stack = vec![root];
    parent_of[root] = parent;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &v in &adj[u] {
            if v != parent_of[u] {
                parent_of[v] = u;
                stack.push(v);
            }
        }
    }
    let mut code: Vec<Vec<u8>> = vec![Vec::new(); adj.len()];
    for &u in order.iter().rev() {
        let mut children: Vec<Vec<u8>> = adj[u]
            .iter()
            .filter(|&&v| v != parent_of[u])
            .map(|&v| std::mem::take(&mut code[v]))
            .collect();
        children.sort();
        let tag = if u < vertex_nodes { b'v' } else { b'e' };
        let mut joined = vec![tag, b'('];
        for child in children {
            joined.extend_from_slice(&child);
        }
        joined.push(b')');
        code[u] = joined;
    }
    std::mem::take(&mut code[root])
}

// ---------------------------------------------------------------------------
// General case: color refinement + individualization search.

struct Refiner<'a> {
    g: &'a Hypergraph,
    incident: Vec<Vec<usize>>,
}

impl<'a> Refiner<'a> {
    fn new(g: &'a Hypergraph) -> Self {
        let mut incident = vec![Vec::new(); g.vertex_count()];
        for (i, edge) in g.edges().iter().enumerate() {
            for &v in edge {
                incident[v].push(i);
            }
        }
        Self { g, incident }
    }

    /// Refines vertex colors to a fixed point. Color values are ranks of
    /// structural signatures, so cell order is itself canonical.
    fn refine(&self, colors: &mut Vec<usize>) {
        loop {
            let edge_sigs: Vec<Vec<usize>> = self
                .g
                .edges()
                .iter()
                .map(|edge| {
                    let mut sig: Vec<usize> = edge.iter().map(|&v| colors[v]).collect();
                    sig.sort_unstable();
                    sig.insert(0, edge.len());
                    sig
                })
                .collect();
            let edge_colors = rank(&edge_sigs);
            let vertex_sigs: Vec<Vec<usize>> = (0..self.g.vertex_count())
                .map(|v| {
                    let mut sig: Vec<usize> =
                        self.incident[v].iter().map(|&e| edge_colors[e]).collect();
                    sig.sort_unstable();
                    sig.insert(0, colors[v]);
                    sig
                })
                .collect();
            let next = rank(&vertex_sigs);
            if next == *colors {
                return;
            }
            *colors = next;
        }
    }
}

fn rank<T: Ord + Clone>(signatures: &[T]) -> Vec<usize> {
    let mut sorted: Vec<&T> = signatures.iter().collect();
    sorted.sort();
    sorted.dedup();
    signatures
        .iter()
        .map(|sig| sorted.binary_search(&sig).unwrap())
        .collect()
}

fn refined_search_code(g: &Hypergraph) -> Vec<u8> {
    let refiner = Refiner::new(g);
    let mut colors = rank(&g.degrees());
    refiner.refine(&mut colors);
    let mut best: Option<Vec<u8>> = None;
    search(&refiner, colors, &mut best);
    best.unwrap_or_else(|| certificate(g, &[]))
}

fn search(refiner: &Refiner<'_>, colors: Vec<usize>, best: &mut Option<Vec<u8>>) {
    let n = refiner.g.vertex_count();
    // Locate the first non-singleton cell in rank order.
    let mut cell_of: Vec<Vec<usize>> = vec![Vec::new(); n.max(1)];
    for v in 0..n {
        cell_of[colors[v]].push(v);
    }
    let target = cell_of.iter().find(|cell| cell.len() > 1);
    match target {
        None => {
            // Discrete coloring: colors form a permutation.
            let mut order = vec![0usize; n];
            for v in 0..n {
                order[colors[v]] = v;
            }
            let mut position = vec![0usize; n];
            for (p, &v) in order.iter().enumerate() {
                position[v] = p;
            }
            let cert = certificate(refiner.g, &position);
            if best.as_ref().is_none_or(|b| cert < *b) {
                *best = Some(cert);
            }
        }
        Some(cell) => {
            for &v in cell {
                // Split {v} off the front of its cell, then re-rank.
                let split: Vec<(usize, usize)> = (0..n)
                    .map(|u| (colors[u], usize::from(u != v)))
                    .collect();
                let mut branched = rank(&split);
                refiner.refine(&mut branched);
                search(refiner, branched, best);
            }
        }
    }
}

/// Serializes the graph under a position map (`position[v]` is the new label
/// of `v`); with an empty map the graph must have no vertices.
fn certificate(g: &Hypergraph, position: &[usize]) -> Vec<u8> {
    let mut edges: Vec<Vec<usize>> = g
        .edges()
        .iter()
        .map(|edge| {
            let mut mapped: Vec<usize> = edge.iter().map(|&v| position[v]).collect();
            mapped.sort_unstable();
            mapped
        })
        .collect();
    edges.sort();
    let mut bytes = Vec::with_capacity(8 + edges.len() * 8);
    push_u32(&mut bytes, g.vertex_count() as u32);
    push_u32(&mut bytes, edges.len() as u32);
    for edge in edges {
        push_u32(&mut bytes, edge.len() as u32);
        for v in edge {
            push_u32(&mut bytes, v as u32);
        }
    }
    bytes
}

fn push_u32(bytes: &mut Vec<u8>, value: u32) {
    bytes.extend_from_slice(&value.to_be_bytes());
}
