//! Constructors for the named hypertree families: hyperstars, loose paths,
//! rooted products, pendant-star caterpillars and core-carrying spines, plus
//! the spine bookkeeping (component splits, representative vertices) that the
//! eigenvector identities and graft verifiers index into.
//!
//! Vertex numbering is deterministic everywhere: spine vertices first
//! (`u_0..u_m`), then the interior vertices of each spine edge in edge order,
//! then attachment vertices in spine order. Same parameters, identical graph.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// A hypergraph with one labeled root vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedHypergraph {
    pub graph: Hypergraph,
    pub root: usize,
}

impl RootedHypergraph {
    pub fn new(graph: Hypergraph, root: usize) -> Result<Self> {
        if root >= graph.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: root,
                vertex_count: graph.vertex_count(),
            });
        }
        Ok(Self { graph, root })
    }

    /// Single vertex, no edges.
    pub fn trivial() -> Self {
        Self {
            graph: Hypergraph::trivial(),
            root: 0,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.graph.edge_count() == 0
    }

    /// Non-root vertex count.
    pub fn interior_order(&self) -> usize {
        self.graph.vertex_count() - 1
    }
}

/// `m` edges of size `k` sharing exactly one center vertex, rooted there.
/// `m = 0` yields the trivial rooted graph.
pub fn hyperstar(m: usize, k: usize) -> RootedHypergraph {
    assert!(k >= 2, "edges need at least two vertices");
    if m == 0 {
        return RootedHypergraph::trivial();
    }
    let mut edges = Vec::with_capacity(m);
    for j in 0..m {
        let mut edge = vec![0];
        edge.extend(1 + j * (k - 1)..1 + (j + 1) * (k - 1));
        edges.push(edge);
    }
    let graph = Hypergraph::new(m * (k - 1) + 1, edges).expect("star construction is valid");
    RootedHypergraph { graph, root: 0 }
}

/// A loose-path host with role maps: spine vertices `u_0..u_m`, spine edges
/// `e_1..e_m`, a degree-one representative per spine edge, and the rooted
/// graphs attached at spine vertices.
#[derive(Debug, Clone)]
pub struct SpineLabeledHypergraph {
    graph: Hypergraph,
    spine: Vec<usize>,
    spine_edges: Vec<usize>,
    interiors: Vec<Vec<usize>>,
    attached: Vec<Vec<usize>>,
    attachment_edges: Vec<Vec<usize>>,
    pendant_rep: Vec<Option<usize>>,
}

impl SpineLabeledHypergraph {
    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn into_graph(self) -> Hypergraph {
        self.graph
    }

    /// Spine length `m` (number of spine edges).
    pub fn spine_len(&self) -> usize {
        self.spine_edges.len()
    }

    /// Spine vertex `u_i`, `0 <= i <= m`.
    pub fn u(&self, i: usize) -> usize {
        self.spine[i]
    }

    /// Edge index of spine edge `e_i`, `1 <= i <= m`.
    pub fn e(&self, i: usize) -> usize {
        self.spine_edges[i - 1]
    }

    /// A degree-one representative vertex of spine edge `e_i`. For `k >= 3`
    /// this is an interior vertex; for `k = 2` only the end edges have one
    /// (the bare endpoints).
    pub fn w(&self, i: usize) -> Result<usize> {
        let m = self.spine_len();
        if let Some(&v) = self.interiors[i - 1].first() {
            return Ok(v);
        }
        if i == 1 && self.attached[0].is_empty() {
            return Ok(self.u(0));
        }
        if i == m && self.attached[m].is_empty() {
            return Ok(self.u(m));
        }
        Err(Error::Precondition(format!(
            "spine edge e_{i} has no degree-one representative"
        )))
    }

    /// Interior (non-spine) vertices of `e_i`.
    pub fn interior(&self, i: usize) -> &[usize] {
        &self.interiors[i - 1]
    }

    /// Non-root vertices of the rooted graph attached at `u_i`.
    pub fn attachment(&self, i: usize) -> &[usize] {
        &self.attached[i]
    }

    /// Edge indices of the rooted graph attached at `u_i`.
    pub fn attachment_edge_indices(&self, i: usize) -> &[usize] {
        &self.attachment_edges[i]
    }

    /// A pendant neighbor of `u_i` inside its attachment, when one exists.
    pub fn pendant_neighbor(&self, i: usize) -> Option<usize> {
        self.pendant_rep[i]
    }

    /// Vertex set of `G_{u_i}` (attachment plus its root `u_i`).
    pub fn g_vertices(&self, i: usize) -> Vec<usize> {
        let mut set = vec![self.u(i)];
        set.extend_from_slice(&self.attached[i]);
        set
    }

    /// Vertex set of the component of `H - e_{i+1}` containing `u_0`
    /// (everything at or before `u_i`); for `i = m` the whole vertex set.
    pub fn upper_vertices(&self, i: usize) -> Vec<usize> {
        let mut set = Vec::new();
        for j in 0..=i {
            set.push(self.u(j));
            set.extend_from_slice(&self.attached[j]);
        }
        for j in 1..=i {
            set.extend_from_slice(self.interior(j));
        }
        set
    }

    /// Vertex set of the component of `H - e_i` containing `u_m` (everything
    /// at or after `u_i`); for `i = 0` the whole vertex set.
    pub fn lower_vertices(&self, i: usize) -> Vec<usize> {
        let m = self.spine_len();
        let mut set = Vec::new();
        for j in i..=m {
            set.push(self.u(j));
            set.extend_from_slice(&self.attached[j]);
        }
        for j in i + 1..=m {
            set.extend_from_slice(self.interior(j));
        }
        set
    }

    /// `V'(H^{u_i})`: the upper component without `G_{u_i}`.
    pub fn upper_core(&self, i: usize) -> Vec<usize> {
        let mut set = Vec::new();
        for j in 0..i {
            set.push(self.u(j));
            set.extend_from_slice(&self.attached[j]);
        }
        for j in 1..=i {
            set.extend_from_slice(self.interior(j));
        }
        set
    }

    /// `V'(H_{u_i})`: the lower component without `G_{u_i}`.
    pub fn lower_core(&self, i: usize) -> Vec<usize> {
        let m = self.spine_len();
        let mut set = Vec::new();
        for j in i + 1..=m {
            set.push(self.u(j));
            set.extend_from_slice(&self.attached[j]);
        }
        for j in i + 1..=m {
            set.extend_from_slice(self.interior(j));
        }
        set
    }

    /// The middle section between `u_c` and `u_d`: both spine vertices, the
    /// spine edges between them, and the attachments strictly inside.
    pub fn middle_vertices(&self, c: usize, d: usize) -> Vec<usize> {
        assert!(c < d && d <= self.spine_len());
        let mut set = Vec::new();
        for j in c..=d {
            set.push(self.u(j));
        }
        for j in c + 1..d {
            set.extend_from_slice(&self.attached[j]);
        }
        for j in c + 1..=d {
            set.extend_from_slice(self.interior(j));
        }
        set
    }

    /// The two component vertex sets split at `u_i` (upper from deleting
    /// `e_{i+1}`, lower from deleting `e_i`).
    pub fn spine_split(&self, i: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        if i > self.spine_len() {
            return Err(Error::Precondition(format!(
                "spine index {i} out of range 0..={}",
                self.spine_len()
            )));
        }
        Ok((self.upper_vertices(i), self.lower_vertices(i)))
    }

    /// Builds a loose-path rooted product: attachments are identified with
    /// their spine vertex. Attachment list entries are `(spine index, rooted
    /// graph)` in the order the blocks are laid out.
    pub fn from_path_attachments(
        m: usize,
        k: usize,
        attachments: &[(usize, RootedHypergraph)],
    ) -> Result<Self> {
        let mut base = loose_path(m, k);
        let points: Vec<usize> = attachments.iter().map(|(i, _)| base.u(*i)).collect();
        let roots: Vec<&RootedHypergraph> = attachments.iter().map(|(_, r)| r).collect();
        let (graph, spans) = rooted_product_spans(&base.graph, &points, &roots)?;
        for ((i, _), span) in attachments.iter().zip(spans) {
            base.attached[*i].extend(span.vertices.clone());
            base.attachment_edges[*i].extend(span.edges.clone());
        }
        base.graph = graph;
        base.fill_pendant_reps();
        Ok(base)
    }

    fn fill_pendant_reps(&mut self) {
        let deg = self.graph.degrees();
        for i in 0..=self.spine_len() {
            let u = self.u(i);
            let mut rep = None;
            for &e in &self.attachment_edges[i] {
                let edge = self.graph.edge(e).expect("attachment edge exists");
                if !edge.contains(&u) {
                    continue;
                }
                if edge.iter().all(|&v| v == u || deg[v] == 1) {
                    rep = edge.iter().copied().find(|&v| v != u);
                    if rep.is_some() {
                        break;
                    }
                }
            }
            self.pendant_rep[i] = rep;
        }
    }
}

/// The `k`-uniform loose path with `m >= 1` edges. Interior link vertices
/// have degree two, everything else degree one.
pub fn loose_path(m: usize, k: usize) -> SpineLabeledHypergraph {
    assert!(m >= 1 && k >= 2, "loose path needs m >= 1 and k >= 2");
    let mut edges = Vec::with_capacity(m);
    let mut interiors = Vec::with_capacity(m);
    let mut next = m + 1;
    for i in 1..=m {
        let inner: Vec<usize> = (next..next + (k - 2)).collect();
        next += k - 2;
        let mut edge = vec![i - 1, i];
        edge.extend_from_slice(&inner);
        edges.push(edge);
        interiors.push(inner);
    }
    let graph = Hypergraph::new(m * (k - 1) + 1, edges).expect("path construction is valid");
    SpineLabeledHypergraph {
        graph,
        spine: (0..=m).collect(),
        spine_edges: (0..m).collect(),
        interiors,
        attached: vec![Vec::new(); m + 1],
        attachment_edges: vec![Vec::new(); m + 1],
        pendant_rep: vec![None; m + 1],
    }
}

/// Which fresh ids and edge indices an attachment received.
#[derive(Debug, Clone)]
pub struct AttachmentSpan {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Glues each rooted graph onto the host by identifying its root with the
/// corresponding attach point. Host ids are preserved; attachment vertices
/// get fresh ids block by block.
pub fn rooted_product(
    host: &Hypergraph,
    points: &[usize],
    roots: &[&RootedHypergraph],
) -> Result<Hypergraph> {
    rooted_product_spans(host, points, roots).map(|(g, _)| g)
}

pub fn rooted_product_spans(
    host: &Hypergraph,
    points: &[usize],
    roots: &[&RootedHypergraph],
) -> Result<(Hypergraph, Vec<AttachmentSpan>)> {
    if points.len() != roots.len() {
        return Err(Error::Precondition(format!(
            "{} attach points vs {} rooted graphs",
            points.len(),
            roots.len()
        )));
    }
    let mut edges: Vec<Vec<usize>> = host.edges().to_vec();
    let mut next = host.vertex_count();
    let mut spans = Vec::with_capacity(roots.len());
    for (&point, rooted) in points.iter().zip(roots) {
        if point >= host.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: point,
                vertex_count: host.vertex_count(),
            });
        }
        let mut remap = vec![usize::MAX; rooted.graph.vertex_count()];
        let mut fresh = Vec::new();
        for v in rooted.graph.vertices() {
            if v == rooted.root {
                remap[v] = point;
            } else {
                remap[v] = next;
                fresh.push(next);
                next += 1;
            }
        }
        let mut edge_indices = Vec::new();
        for edge in rooted.graph.edges() {
            edge_indices.push(edges.len());
            edges.push(edge.iter().map(|&v| remap[v]).collect());
        }
        spans.push(AttachmentSpan {
            vertices: fresh,
            edges: edge_indices,
        });
    }
    let graph = Hypergraph::new(next, edges)?;
    Ok((graph, spans))
}

/// Identifies the roots of several rooted graphs as one new root vertex.
pub fn identify_roots(parts: &[RootedHypergraph]) -> Result<RootedHypergraph> {
    if parts.is_empty() {
        return Ok(RootedHypergraph::trivial());
    }
    let mut edges = Vec::new();
    let mut next = 1usize;
    for part in parts {
        let mut remap = vec![usize::MAX; part.graph.vertex_count()];
        for v in part.graph.vertices() {
            if v == part.root {
                remap[v] = 0;
            } else {
                remap[v] = next;
                next += 1;
            }
        }
        for edge in part.graph.edges() {
            edges.push(edge.iter().map(|&v| remap[v]).collect());
        }
    }
    RootedHypergraph::new(Hypergraph::new(next, edges)?, 0)
}

/// Pendant-star caterpillar parameters: a spine of `m_star` edges with
/// `(delta - 2)`-edge hyperstars at the first `a` and last `b` interior spine
/// vertices. Every star center ends up with degree `delta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaterpillarParams {
    pub k: usize,
    pub m_star: usize,
    pub delta: usize,
    pub a: usize,
    pub b: usize,
}

impl CaterpillarParams {
    pub fn new(k: usize, m_star: usize, delta: usize, a: usize, b: usize) -> Result<Self> {
        let params = Self { k, m_star, delta, a, b };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::Infeasible("k must be at least 2".into()));
        }
        if self.m_star < 1 {
            return Err(Error::Infeasible("spine length must be at least 1".into()));
        }
        if self.delta < 3 {
            return Err(Error::Infeasible("maximum degree must be at least 3".into()));
        }
        if self.a + self.b >= self.m_star {
            return Err(Error::Infeasible(format!(
                "a + b = {} must be smaller than the spine length {}",
                self.a + self.b,
                self.m_star
            )));
        }
        Ok(())
    }

    /// Total edge count `m = m* + (a + b)(delta - 2)`.
    pub fn edge_count(&self) -> usize {
        self.m_star + (self.a + self.b) * (self.delta - 2)
    }

    pub fn vertex_count(&self) -> usize {
        self.edge_count() * (self.k - 1) + 1
    }

    /// Star centers in spine order.
    pub fn star_positions(&self) -> Vec<usize> {
        let mut positions: Vec<usize> = (1..=self.a).collect();
        positions.extend(self.m_star - self.b..self.m_star);
        positions
    }
}

/// Builds the caterpillar `C_k(m*, delta, a, b)`.
pub fn caterpillar(params: &CaterpillarParams) -> Result<SpineLabeledHypergraph> {
    params.validate()?;
    let star = hyperstar(params.delta - 2, params.k);
    let attachments: Vec<(usize, RootedHypergraph)> = params
        .star_positions()
        .into_iter()
        .map(|i| (i, star.clone()))
        .collect();
    SpineLabeledHypergraph::from_path_attachments(params.m_star, params.k, &attachments)
}

/// Spine of length `s + t` with `c`-edge hyperstars at every interior vertex
/// except `u_s`, which carries the designated rooted core.
#[derive(Debug, Clone)]
pub struct GcParams {
    pub k: usize,
    pub s: usize,
    pub t: usize,
    pub c: usize,
    pub core: RootedHypergraph,
}

impl GcParams {
    pub fn new(k: usize, s: usize, t: usize, c: usize, core: RootedHypergraph) -> Result<Self> {
        let params = Self { k, s, t, c, core };
        params.validate()?;
        Ok(params)
    }

    /// Builds the core by identifying the roots of the given branches, the
    /// way the designated attachment is assembled from its pendant-edge
    /// pieces.
    pub fn from_parts(
        k: usize,
        s: usize,
        t: usize,
        parts: &[RootedHypergraph],
    ) -> Result<Self> {
        for part in parts {
            if part.graph.degree(part.root)? != 1 {
                return Err(Error::Precondition(
                    "every core branch must be rooted at a degree-one vertex".into(),
                ));
            }
        }
        let core = identify_roots(parts)?;
        Self::new(k, s, t, parts.len(), core)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::Infeasible("k must be at least 2".into()));
        }
        if self.s < 1 || self.t < 1 {
            return Err(Error::Infeasible("both spine sides must be nonempty".into()));
        }
        if self.c < 1 {
            return Err(Error::Infeasible("star size c must be at least 1".into()));
        }
        if !self.core.is_trivial() && !self.core.graph.is_k_uniform(self.k) {
            return Err(Error::Infeasible(format!(
                "core must be {}-uniform",
                self.k
            )));
        }
        if !self.core.graph.is_hypertree() {
            return Err(Error::Infeasible("core must be a hypertree".into()));
        }
        Ok(())
    }

    pub fn spine_len(&self) -> usize {
        self.s + self.t
    }
}

/// Builds `G_c(s, t)` with its spine labeling.
pub fn g_c(params: &GcParams) -> Result<SpineLabeledHypergraph> {
    params.validate()?;
    let m = params.spine_len();
    let star = hyperstar(params.c, params.k);
    let mut attachments: Vec<(usize, RootedHypergraph)> = Vec::new();
    for i in 1..m {
        if i == params.s {
            attachments.push((i, params.core.clone()));
        } else {
            attachments.push((i, star.clone()));
        }
    }
    SpineLabeledHypergraph::from_path_attachments(m, params.k, &attachments)
}

/// Attaches pendant loose paths of lengths `s` and `t` at `u` and `v`
/// (possibly `u == v`) and identifies a copy of `g_r` at every degree-two
/// link vertex of the new paths.
pub fn attach_two_paths(
    h: &Hypergraph,
    u: usize,
    v: usize,
    s: usize,
    t: usize,
    g_r: &RootedHypergraph,
) -> Result<Hypergraph> {
    let k = h
        .uniformity()
        .ok_or_else(|| Error::Precondition("host must be uniform".into()))?;
    if !g_r.is_trivial() && !g_r.graph.is_k_uniform(k) {
        return Err(Error::Precondition(format!("attachment must be {k}-uniform")));
    }
    for &point in &[u, v] {
        if point >= h.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: point,
                vertex_count: h.vertex_count(),
            });
        }
    }
    let mut edges: Vec<Vec<usize>> = h.edges().to_vec();
    let mut next = h.vertex_count();
    let mut copy_points = Vec::new();
    for &(start, len) in &[(u, s), (v, t)] {
        let mut current = start;
        for step in 1..=len {
            let link = next;
            let mut edge = vec![current, link];
            edge.extend(next + 1..next + k - 1);
            next += k - 1;
            edges.push(edge);
            if step < len {
                copy_points.push(link);
            }
            current = link;
        }
    }
    if !g_r.is_trivial() {
        for point in copy_points {
            let mut remap = vec![usize::MAX; g_r.graph.vertex_count()];
            for w in g_r.graph.vertices() {
                if w == g_r.root {
                    remap[w] = point;
                } else {
                    remap[w] = next;
                    next += 1;
                }
            }
            for edge in g_r.graph.edges() {
                edges.push(edge.iter().map(|&w| remap[w]).collect());
            }
        }
    }
    Hypergraph::new(next, edges)
}

/// True when the graph is a loose path: a hypertree whose degree sequence is
/// all ones apart from `m - 1` twos.
pub fn is_loose_path(g: &Hypergraph) -> bool {
    if !g.is_hypertree() || g.edge_count() == 0 {
        return false;
    }
    let degrees = g.degrees();
    degrees.iter().all(|&d| d <= 2)
        && degrees.iter().filter(|&&d| d == 2).count() == g.edge_count() - 1
}

/// Family mini-language: `star:m,k`, `path:m,k`, `cat:k,mstar,delta,a,b`,
/// `gc:k,s,t,c,core=<file>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Star { m: usize, k: usize },
    Path { m: usize, k: usize },
    Caterpillar(CaterpillarParams),
    Gc {
        k: usize,
        s: usize,
        t: usize,
        c: usize,
        core_path: String,
    },
}

impl FamilySpec {
    pub fn parse(text: &str) -> Result<Self> {
        let (head, rest) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse("expected `<family>:<params>` (position 0)".into()))?;
        let fields: Vec<&str> = rest.split(',').collect();
        let number = |index: usize, name: &str| -> Result<usize> {
            let raw = fields.get(index).ok_or_else(|| {
                Error::Parse(format!("missing field `{name}` (position {index})"))
            })?;
            raw.trim().parse().map_err(|_| {
                Error::Parse(format!("field `{name}` = `{raw}` is not a number (position {index})"))
            })
        };
        match head {
            "star" => Ok(Self::Star {
                m: number(0, "m")?,
                k: number(1, "k")?,
            }),
            "path" => Ok(Self::Path {
                m: number(0, "m")?,
                k: number(1, "k")?,
            }),
            "cat" => Ok(Self::Caterpillar(CaterpillarParams::new(
                number(0, "k")?,
                number(1, "mstar")?,
                number(2, "delta")?,
                number(3, "a")?,
                number(4, "b")?,
            )?)),
            "gc" => {
                let core_field = fields.get(4).ok_or_else(|| {
                    Error::Parse("missing field `core=<file>` (position 4)".into())
                })?;
                let core_path = core_field
                    .trim()
                    .strip_prefix("core=")
                    .ok_or_else(|| Error::Parse("expected `core=<file>` (position 4)".into()))?;
                Ok(Self::Gc {
                    k: number(0, "k")?,
                    s: number(1, "s")?,
                    t: number(2, "t")?,
                    c: number(3, "c")?,
                    core_path: core_path.to_string(),
                })
            }
            other => Err(Error::Parse(format!("unknown family `{other}` (position 0)"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperstar_shapes() {
        let star = hyperstar(2, 3);
        assert_eq!(star.graph.vertex_count(), 5);
        assert_eq!(star.graph.degrees(), vec![2, 1, 1, 1, 1]);
        assert!(hyperstar(0, 4).is_trivial());
        // Attachment unit of the caterpillars: one edge per unit of excess
        // degree.
        let unit = hyperstar(3 - 2, 3);
        assert_eq!(unit.graph.edge_count(), 1);
    }

    #[test]
    fn loose_path_shapes() {
        let single = loose_path(1, 3);
        assert_eq!(single.graph().edge_count(), 1);
        assert_eq!(single.graph().vertex_count(), 3);

        let p = loose_path(5, 3);
        assert_eq!(p.graph().vertex_count(), 5 * 2 + 1);
        let deg = p.graph().degrees();
        for i in 1..5 {
            assert_eq!(deg[p.u(i)], 2);
        }
        assert_eq!(deg.iter().filter(|&&d| d == 2).count(), 4);
        assert!(p.graph().is_hypertree());
    }

    #[test]
    fn caterpillar_census() {
        let params = CaterpillarParams::new(3, 5, 3, 1, 2).unwrap();
        let cat = caterpillar(&params).unwrap();
        assert_eq!(cat.graph().edge_count(), 8);
        assert_eq!(cat.graph().vertex_count(), 17);
        let deg = cat.graph().degrees();
        assert_eq!(deg.iter().filter(|&&d| d == 3).count(), 3);
        assert_eq!(cat.graph().max_degree(), 3);
        assert!(cat.graph().is_hypertree());
        // Spine vertex u_1 carries one pendant star edge plus two spine edges.
        assert_eq!(cat.graph().degree(cat.u(1)).unwrap(), 3);
        assert!(cat.pendant_neighbor(1).is_some());
        assert!(cat.pendant_neighbor(2).is_none());
    }

    #[test]
    fn caterpillar_degenerate_is_path() {
        let params = CaterpillarParams::new(3, 4, 5, 0, 0).unwrap();
        let cat = caterpillar(&params).unwrap();
        assert_eq!(cat.graph(), loose_path(4, 3).graph());
    }

    #[test]
    fn caterpillar_reversal_symmetry() {
        let ab = caterpillar(&CaterpillarParams::new(3, 5, 3, 1, 2).unwrap()).unwrap();
        let ba = caterpillar(&CaterpillarParams::new(3, 5, 3, 2, 1).unwrap()).unwrap();
        assert_eq!(
            ab.graph().canonical_code(),
            ba.graph().canonical_code()
        );
    }

    #[test]
    fn caterpillar_rejects_overfull_spine() {
        assert!(CaterpillarParams::new(3, 3, 3, 1, 2).is_err());
        assert!(CaterpillarParams::new(3, 4, 2, 1, 1).is_err());
    }

    #[test]
    fn rooted_product_trivial_identity() {
        let host = loose_path(3, 3).into_graph();
        let out = rooted_product(
            &host,
            &[0, 1, 2],
            &[
                &RootedHypergraph::trivial(),
                &RootedHypergraph::trivial(),
                &RootedHypergraph::trivial(),
            ],
        )
        .unwrap();
        assert_eq!(out, host);
    }

    #[test]
    fn rooted_product_attaches_star() {
        let base = loose_path(2, 3);
        let host = base.graph().clone();
        let star = hyperstar(1, 3);
        let out = rooted_product(&host, &[base.u(1)], &[&star]).unwrap();
        assert!(out.is_k_uniform(3));
        assert!(out.is_hypertree());
        assert_eq!(out.degree(base.u(1)).unwrap(), 3);
    }

    #[test]
    fn caterpillar_matches_two_path_attachment() {
        // C_k(m*, delta, a, b) built by gluing pendant paths onto a shorter
        // path and dropping stars on the new link vertices.
        let params = CaterpillarParams::new(3, 6, 3, 1, 2).unwrap();
        let direct = caterpillar(&params).unwrap();
        let inner = loose_path(params.m_star - params.a - params.b - 2, params.k);
        let (u, v) = (inner.u(0), inner.u(inner.spine_len()));
        let host = inner.into_graph();
        let star = hyperstar(params.delta - 2, params.k);
        let glued =
            attach_two_paths(&host, u, v, params.a + 1, params.b + 1, &star).unwrap();
        assert_eq!(
            glued.canonical_code(),
            direct.graph().canonical_code()
        );
    }

    #[test]
    fn gc_construction_degrees() {
        let core = identify_roots(&[
            RootedHypergraph::new(loose_path(2, 3).into_graph(), 0).unwrap(),
        ])
        .unwrap();
        let params = GcParams::new(3, 2, 2, 1, core).unwrap();
        let h = g_c(&params).unwrap();
        let deg = h.graph().degrees();
        // Interior spine vertices carry c extra star edges, u_s carries the
        // core root degree instead.
        assert_eq!(deg[h.u(1)], 3);
        assert_eq!(deg[h.u(2)], 3);
        assert_eq!(deg[h.u(3)], 3);
        assert!(h.graph().is_hypertree());
        assert!(h.graph().is_k_uniform(3));
    }

    #[test]
    fn gc_matches_pendant_path_attachment() {
        // G_c(s, t) is also the core with two star-decorated pendant paths
        // hanging off its root.
        let core = identify_roots(&[
            RootedHypergraph::new(loose_path(2, 3).into_graph(), 0).unwrap(),
            RootedHypergraph::new(loose_path(1, 3).into_graph(), 0).unwrap(),
        ])
        .unwrap();
        let params = GcParams::new(3, 3, 2, 2, core.clone()).unwrap();
        let direct = g_c(&params).unwrap();
        let star = hyperstar(params.c, params.k);
        let glued = attach_two_paths(
            &core.graph,
            core.root,
            core.root,
            params.s,
            params.t,
            &star,
        )
        .unwrap();
        assert_eq!(glued.canonical_code(), direct.graph().canonical_code());
    }

    #[test]
    fn spine_split_matches_component_traversal() {
        let params = CaterpillarParams::new(3, 5, 4, 1, 2).unwrap();
        let cat = caterpillar(&params).unwrap();
        let m = cat.spine_len();
        for i in 0..=m {
            let (upper, lower) = cat.spine_split(i).unwrap();
            if i < m {
                let cut = cat.graph().delete_edge(cat.e(i + 1)).unwrap();
                let (_, labels) = cut.components();
                let expect: Vec<usize> = cat
                    .graph()
                    .vertices()
                    .filter(|&v| labels[v] == labels[cat.u(0)])
                    .collect();
                let mut upper_sorted = upper.clone();
                upper_sorted.sort_unstable();
                assert_eq!(upper_sorted, expect, "upper split at {i}");
            } else {
                assert_eq!(upper.len(), cat.graph().vertex_count());
            }
            if i > 0 {
                let cut = cat.graph().delete_edge(cat.e(i)).unwrap();
                let (_, labels) = cut.components();
                let expect: Vec<usize> = cat
                    .graph()
                    .vertices()
                    .filter(|&v| labels[v] == labels[cat.u(m)])
                    .collect();
                let mut lower_sorted = lower.clone();
                lower_sorted.sort_unstable();
                assert_eq!(lower_sorted, expect, "lower split at {i}");
            } else {
                assert_eq!(lower.len(), cat.graph().vertex_count());
            }
        }
    }

    #[test]
    fn split_partition_audit() {
        let params = CaterpillarParams::new(3, 6, 3, 2, 2).unwrap();
        let cat = caterpillar(&params).unwrap();
        let n = cat.graph().vertex_count();
        for i in 1..cat.spine_len() {
            // V = V(H^{u_i}) ⊔ interior(e_{i+1}) ⊔ V(H_{u_{i+1}})
            let mut union = cat.upper_vertices(i);
            union.extend_from_slice(cat.interior(i + 1));
            union.extend(cat.lower_vertices(i + 1));
            union.sort_unstable();
            union.dedup();
            assert_eq!(union.len(), n, "partition at {i}");
        }
        for c in 0..cat.spine_len() {
            let d = c + 1;
            // Middle section complements the strict upper/lower cores.
            let mut union = cat.upper_core(c);
            union.extend(cat.lower_core(d));
            union.extend(cat.attachment(c).iter().copied());
            union.extend(cat.attachment(d).iter().copied());
            union.extend(cat.middle_vertices(c, d));
            union.sort_unstable();
            union.dedup();
            assert_eq!(union.len(), n, "middle partition at {c}");
        }
    }

    #[test]
    fn family_spec_parser() {
        assert_eq!(
            FamilySpec::parse("star:4,2").unwrap(),
            FamilySpec::Star { m: 4, k: 2 }
        );
        assert_eq!(
            FamilySpec::parse("cat:3,5,3,1,2").unwrap(),
            FamilySpec::Caterpillar(CaterpillarParams::new(3, 5, 3, 1, 2).unwrap())
        );
        match FamilySpec::parse("gc:3,2,2,1,core=core.json").unwrap() {
            FamilySpec::Gc { core_path, .. } => assert_eq!(core_path, "core.json"),
            other => panic!("unexpected parse: {other:?}"),
        }
        assert!(FamilySpec::parse("ring:3").is_err());
        assert!(FamilySpec::parse("cat:3,5,3").is_err());
        assert!(FamilySpec::parse("path:x,3").is_err());
    }

    #[test]
    fn loose_path_recognizer() {
        assert!(is_loose_path(&loose_path(4, 3).into_graph()));
        assert!(is_loose_path(&loose_path(1, 2).into_graph()));
        assert!(!is_loose_path(&hyperstar(3, 3).graph));
        let cat = caterpillar(&CaterpillarParams::new(3, 4, 3, 1, 1).unwrap()).unwrap();
        assert!(!is_loose_path(cat.graph()));
    }
}
