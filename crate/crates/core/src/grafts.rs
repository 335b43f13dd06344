//! Graft rewrites and their verifiers. Each operation performs an explicit
//! edge-relocation rewrite (or rebuilds the target shape where the rewrite is
//! a pure parameter change), computes the distance spectral radius on both
//! sides, and asserts the claimed strict comparison with a gap threshold.
//! Conditional statements report a third verdict, `Vacuous`, whenever their
//! hypotheses fail on the instance rather than counting as verified.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{
    attach_two_paths, caterpillar, g_c, rooted_product_spans, CaterpillarParams, GcParams,
    RootedHypergraph, SpineLabeledHypergraph,
};
use crate::hypergraph::Hypergraph;
use crate::report::{classify_sign, CheckReport, Sign, Tolerances, Verdict};
use crate::spectral::{perron, sigma, DistanceMatrix, PerronOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Increase,
    Decrease,
}

/// A rewrite together with the spectral radii on both sides.
#[derive(Debug, Clone)]
pub struct GraftOutcome {
    pub before: Hypergraph,
    pub after: Hypergraph,
    pub rho_before: f64,
    pub rho_after: f64,
    pub claimed: Direction,
    /// `rho_after - rho_before`.
    pub gap: f64,
}

impl GraftOutcome {
    pub fn verdict(&self, strict_gap: f64) -> Verdict {
        let threshold = strict_gap * self.rho_before;
        let ok = match self.claimed {
            Direction::Increase => self.gap > threshold,
            Direction::Decrease => self.gap < -threshold,
        };
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn summary(&self, strict_gap: f64) -> GraftSummary {
        GraftSummary {
            rho_before: self.rho_before,
            rho_after: self.rho_after,
            gap: self.gap,
            claimed: self.claimed,
            verdict: self.verdict(strict_gap),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GraftSummary {
    pub rho_before: f64,
    pub rho_after: f64,
    pub gap: f64,
    pub claimed: Direction,
    pub verdict: Verdict,
}

pub fn rho_of(g: &Hypergraph, tols: Tolerances) -> Result<f64> {
    let dm = DistanceMatrix::of(g)?;
    Ok(perron(&dm, PerronOptions::with_tol(tols.tol))?.rho)
}

fn outcome(
    before: Hypergraph,
    after: Hypergraph,
    claimed: Direction,
    tols: Tolerances,
) -> Result<GraftOutcome> {
    let rho_before = rho_of(&before, tols)?;
    let rho_after = rho_of(&after, tols)?;
    Ok(GraftOutcome {
        before,
        after,
        rho_before,
        rho_after,
        claimed,
        gap: rho_after - rho_before,
    })
}

/// Pendant-path rebalancing at a single vertex:
/// `H_u(s, t) -> H_u(s+1, t-1)` strictly increases the radius for
/// `s >= t >= 1` on a connected uniform host with at least one edge.
pub fn graft_path_shift(
    h: &Hypergraph,
    u: usize,
    s: usize,
    t: usize,
    tols: Tolerances,
) -> Result<GraftOutcome> {
    if s < t || t < 1 {
        return Err(Error::Precondition(format!("need s >= t >= 1, got ({s}, {t})")));
    }
    if h.edge_count() < 1 {
        return Err(Error::Precondition("host needs at least one edge".into()));
    }
    if !h.is_connected() {
        return Err(Error::Precondition("host must be connected".into()));
    }
    let trivial = RootedHypergraph::trivial();
    let before = attach_two_paths(h, u, u, s, t, &trivial)?;
    let after = attach_two_paths(h, u, u, s + 1, t - 1, &trivial)?;
    outcome(before, after, Direction::Increase, tols)
}

/// Pendant-path rebalancing across one edge:
/// `H_{u,v}(s, t) -> H_{u,v}(s+1, t-1)` for degree-one vertices `u, v` of a
/// common edge whose deletion splits the host into `k` components.
pub fn graft_two_vertex_shift(
    h: &Hypergraph,
    u: usize,
    v: usize,
    s: usize,
    t: usize,
    tols: Tolerances,
) -> Result<GraftOutcome> {
    if s < t || t < 1 {
        return Err(Error::Precondition(format!("need s >= t >= 1, got ({s}, {t})")));
    }
    let k = h
        .uniformity()
        .ok_or_else(|| Error::Precondition("host must be uniform".into()))?;
    if u == v {
        return Err(Error::Precondition("u and v must be distinct".into()));
    }
    if h.degree(u)? != 1 || h.degree(v)? != 1 {
        return Err(Error::Precondition("u and v must both have degree 1".into()));
    }
    let shared = h
        .edges()
        .iter()
        .position(|e| e.contains(&u) && e.contains(&v))
        .ok_or_else(|| Error::Precondition("u and v must share an edge".into()))?;
    let cut = h.delete_edge(shared)?;
    let (components, _) = cut.components();
    if components != k {
        return Err(Error::Precondition(format!(
            "deleting the shared edge leaves {components} components, expected {k}"
        )));
    }
    let trivial = RootedHypergraph::trivial();
    let before = attach_two_paths(h, u, v, s, t, &trivial)?;
    let after = attach_two_paths(h, u, v, s + 1, t - 1, &trivial)?;
    outcome(before, after, Direction::Increase, tols)
}

/// Pendant-star relocation on a caterpillar:
/// `C_k(m*, delta, a, b) -> C_k(m*, delta, a+1, b-1)` by moving every
/// pendant star edge at `u_{m*-b}` to `u_{a+1}`, strictly increasing the
/// radius while `a + 2 <= b`. The spine must leave room for both star
/// blocks (`a + b + 2 <= m*`); at `m* = a + b + 1` both parameterizations
/// describe the same attachment set and no strict comparison exists.
pub fn star_shift(params: &CaterpillarParams, tols: Tolerances) -> Result<GraftOutcome> {
    params.validate()?;
    if params.a + 2 > params.b {
        return Err(Error::Precondition(format!(
            "need a + 2 <= b, got a = {}, b = {}",
            params.a, params.b
        )));
    }
    if params.a + params.b + 2 > params.m_star {
        return Err(Error::Precondition(format!(
            "need a + b + 2 <= m*, got a + b = {}, m* = {}",
            params.a + params.b,
            params.m_star
        )));
    }
    let before_labeled = caterpillar(params)?;
    let from = before_labeled.u(params.m_star - params.b);
    let to = before_labeled.u(params.a + 1);
    let star_edges = before_labeled
        .attachment_edge_indices(params.m_star - params.b)
        .to_vec();
    let after = before_labeled.graph().move_edges(from, to, &star_edges)?;

    let target = CaterpillarParams {
        a: params.a + 1,
        b: params.b - 1,
        ..*params
    };
    let expected = caterpillar(&target)?;
    if after.canonical_code() != expected.graph().canonical_code() {
        return Err(Error::Precondition(
            "relocated caterpillar does not match its target parameterization".into(),
        ));
    }
    outcome(
        before_labeled.into_graph(),
        after,
        Direction::Increase,
        tols,
    )
}

/// Which proven configuration a core-shift instance matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GcCase {
    /// Single-branch core (`c = 1`): attachments at `u_s` and `u_{s+1}` are
    /// swapped.
    SingleBranch,
    /// One path branch, all other branches single edges: the path's second
    /// edge moves from the branch vertex to a pendant neighbor of `u_{s+1}`.
    PathBranch,
    /// Some core vertex carries at least `c` pendant edges: attachments are
    /// swapped as in the single-branch case.
    PendantRich,
}

/// One branch of the core hanging at `u_s`: the edges reachable through a
/// single root-incident edge.
#[derive(Debug, Clone)]
pub struct CorePart {
    pub root_edge: usize,
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
}

/// Splits the core attachment at `u_s` into its branches.
pub fn core_parts(h: &SpineLabeledHypergraph, s: usize) -> Vec<CorePart> {
    let us = h.u(s);
    let core_vertices = h.attachment(s);
    let core_edges = h.attachment_edge_indices(s);
    // Union-find over core vertices, connecting within each edge minus u_s.
    let mut parent: std::collections::HashMap<usize, usize> =
        core_vertices.iter().map(|&v| (v, v)).collect();
    fn find(parent: &mut std::collections::HashMap<usize, usize>, v: usize) -> usize {
        let mut root = v;
        while parent[&root] != root {
            root = parent[&root];
        }
        let mut cur = v;
        while parent[&cur] != root {
            let next = parent[&cur];
            parent.insert(cur, root);
            cur = next;
        }
        root
    }
    for &e in core_edges {
        let edge = h.graph().edge(e).expect("core edge exists");
        let members: Vec<usize> = edge.iter().copied().filter(|&v| v != us).collect();
        for pair in members.windows(2) {
            let a = find(&mut parent, pair[0]);
            let b = find(&mut parent, pair[1]);
            parent.insert(a, b);
        }
    }
    let mut parts: Vec<CorePart> = Vec::new();
    let mut index_of: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for &e in core_edges {
        let edge = h.graph().edge(e).expect("core edge exists");
        let witness = edge.iter().copied().find(|&v| v != us).expect("nonempty");
        let root = find(&mut parent, witness);
        let slot = *index_of.entry(root).or_insert_with(|| {
            parts.push(CorePart {
                root_edge: usize::MAX,
                edges: Vec::new(),
                vertices: Vec::new(),
            });
            parts.len() - 1
        });
        parts[slot].edges.push(e);
        if edge.contains(&us) {
            parts[slot].root_edge = e;
        }
    }
    for &v in core_vertices {
        let root = find(&mut parent, v);
        if let Some(&slot) = index_of.get(&root) {
            parts[slot].vertices.push(v);
        }
    }
    parts
}

/// Core relocation one step along the spine:
/// `G_c(s, t) -> G_c(s+1, t-1)` for `s >= t >= 2`, performed by the exact
/// move of the matched configuration. Instances outside the three proven
/// configurations are rejected; the unrestricted claim is only conjectured.
pub fn gc_shift(params: &GcParams, tols: Tolerances) -> Result<(GraftOutcome, GcCase)> {
    params.validate()?;
    if params.s < params.t || params.t < 2 {
        return Err(Error::Precondition(format!(
            "need s >= t >= 2, got ({}, {})",
            params.s, params.t
        )));
    }
    let h = g_c(params)?;
    let s = params.s;
    let us = h.u(s);
    let root_degree = h
        .attachment_edge_indices(s)
        .iter()
        .filter(|&&e| h.graph().edge(e).expect("edge").contains(&us))
        .count();
    if root_degree != params.c {
        return Err(Error::Precondition(format!(
            "core root degree {root_degree} differs from c = {}; no proven configuration applies",
            params.c
        )));
    }
    let parts = core_parts(&h, s);
    if !parts.iter().any(|p| p.edges.len() > 1) {
        return Err(Error::Precondition(
            "every core branch is a single edge; the shift needs a branch with more".into(),
        ));
    }

    let case = classify_gc_case(&h, params, &parts)?;
    let after = match case {
        GcCase::SingleBranch | GcCase::PendantRich => swap_attachments(&h, s)?,
        GcCase::PathBranch => move_path_branch(&h, s, &parts)?,
    };

    let target = GcParams {
        s: params.s + 1,
        t: params.t - 1,
        ..params.clone()
    };
    let expected = g_c(&target)?;
    if after.canonical_code() != expected.graph().canonical_code() {
        return Err(Error::Precondition(
            "relocated core graph does not match its target parameterization".into(),
        ));
    }
    let out = outcome(h.into_graph(), after, Direction::Increase, tols)?;
    Ok((out, case))
}

fn classify_gc_case(
    h: &SpineLabeledHypergraph,
    params: &GcParams,
    parts: &[CorePart],
) -> Result<GcCase> {
    if params.c == 1 {
        return Ok(GcCase::SingleBranch);
    }
    // One path branch, the rest single edges.
    let big: Vec<&CorePart> = parts.iter().filter(|p| p.edges.len() > 1).collect();
    if big.len() == 1 && parts.len() == params.c {
        let part = big[0];
        if parts
            .iter()
            .all(|p| p.edges.len() == 1 || std::ptr::eq(p, part))
            && part_is_pendant_rooted_path(h, part)
        {
            return Ok(GcCase::PathBranch);
        }
    }
    // A core vertex with at least c pendant edges.
    for part in parts {
        if part.edges.len() < 2 {
            continue;
        }
        for &y in &part.vertices {
            if h.graph().pendant_edges_at(y)?.len() >= params.c {
                return Ok(GcCase::PendantRich);
            }
        }
    }
    Err(Error::Precondition(
        "instance matches no proven configuration (conjecture territory)".into(),
    ))
}

fn part_is_pendant_rooted_path(h: &SpineLabeledHypergraph, part: &CorePart) -> bool {
    // Degrees within the branch; the root edge must be pendant there, and the
    // branch a loose path.
    let mut degree: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for &e in &part.edges {
        for &v in h.graph().edge(e).expect("edge") {
            *degree.entry(v).or_insert(0) += 1;
        }
    }
    if degree.values().any(|&d| d > 2) {
        return false;
    }
    let twos = degree.values().filter(|&&d| d == 2).count();
    if twos != part.edges.len() - 1 {
        return false;
    }
    let root_edge = h.graph().edge(part.root_edge).expect("edge");
    root_edge.iter().filter(|&&v| degree[&v] >= 2).count() <= 1
}

fn swap_attachments(h: &SpineLabeledHypergraph, s: usize) -> Result<Hypergraph> {
    let us = h.u(s);
    let us1 = h.u(s + 1);
    let core_root_edges: Vec<usize> = h
        .attachment_edge_indices(s)
        .iter()
        .copied()
        .filter(|&e| h.graph().edge(e).expect("edge").contains(&us))
        .collect();
    let star_edges: Vec<usize> = h.attachment_edge_indices(s + 1).to_vec();
    let step = h.graph().move_edges(us, us1, &core_root_edges)?;
    step.move_edges(us1, us, &star_edges)
}

fn move_path_branch(
    h: &SpineLabeledHypergraph,
    s: usize,
    parts: &[CorePart],
) -> Result<Hypergraph> {
    let part = parts
        .iter()
        .find(|p| p.edges.len() > 1)
        .expect("checked by case classification");
    let root_edge = h.graph().edge(part.root_edge)?;
    // Branch vertex of the root edge: its unique vertex lying in a second
    // branch edge.
    let us = h.u(s);
    let branch_vertex = root_edge
        .iter()
        .copied()
        .find(|&v| {
            v != us
                && part
                    .edges
                    .iter()
                    .filter(|&&e| h.graph().edge(e).expect("edge").contains(&v))
                    .count()
                    >= 2
        })
        .ok_or_else(|| Error::Precondition("path branch has no interior vertex".into()))?;
    let next_edge = part
        .edges
        .iter()
        .copied()
        .find(|&e| e != part.root_edge && h.graph().edge(e).expect("edge").contains(&branch_vertex))
        .ok_or_else(|| Error::Precondition("path branch has no second edge".into()))?;
    let target = h
        .pendant_neighbor(s + 1)
        .ok_or_else(|| Error::Precondition("u_{s+1} carries no pendant star".into()))?;
    h.graph().move_edges(branch_vertex, target, &[next_edge])
}

// ---------------------------------------------------------------------------
// Attachment-separation comparison.

/// Hypothesis route taken by the attachment-separation check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlemHypothesis {
    /// Both attach points pendant in a common edge.
    PendantPair,
    /// The first attachment plus its root outweighs the host.
    DominantAttachment,
    /// Neither condition certified on this instance.
    None,
}

#[derive(Debug)]
pub struct AlemOutcome {
    pub outcome: GraftOutcome,
    pub hypothesis: AlemHypothesis,
}

impl AlemOutcome {
    pub fn verdict(&self, strict_gap: f64) -> Verdict {
        match self.hypothesis {
            AlemHypothesis::None => Verdict::Vacuous,
            _ => self.outcome.verdict(strict_gap),
        }
    }
}

/// Separating two rooted attachments: `H((u1, u1), (G1, G2))` against
/// `H((u1, u2), (G1, G2))`. The radius strictly increases when either (1)
/// `u1` and `u2` are degree-one co-edge vertices of the host, or (2) the
/// first attachment dominates: `sigma(V'(G1)) + x_{u1} >= sigma(V(H))` in
/// the unseparated graph.
pub fn verify_attachment_separation(
    host: &Hypergraph,
    u1: usize,
    u2: usize,
    g1: &RootedHypergraph,
    g2: &RootedHypergraph,
    tols: Tolerances,
) -> Result<AlemOutcome> {
    if u1 == u2 {
        return Err(Error::Precondition("attach points must differ".into()));
    }
    if g1.is_trivial() || g2.is_trivial() {
        return Err(Error::Precondition("both attachments must be nontrivial".into()));
    }
    let (h1, spans) = rooted_product_spans(host, &[u1, u1], &[g1, g2])?;
    let (h2, _) = rooted_product_spans(host, &[u1, u2], &[g1, g2])?;

    let pendant_pair = host.degree(u1)? == 1
        && host.degree(u2)? == 1
        && host
            .edges()
            .iter()
            .any(|e| e.contains(&u1) && e.contains(&u2));

    let hypothesis = if pendant_pair {
        AlemHypothesis::PendantPair
    } else {
        let d1 = DistanceMatrix::of(&h1)?;
        let r1 = perron(&d1, PerronOptions::with_tol(tols.tol))?;
        let host_vertices: Vec<usize> = host.vertices().collect();
        let lhs = sigma(&r1.x, &spans[0].vertices) + r1.x[u1];
        let rhs = sigma(&r1.x, &host_vertices);
        let total: f64 = r1.x.iter().sum();
        match classify_sign(lhs - rhs, total, tols.gap) {
            Sign::Positive | Sign::Zero => AlemHypothesis::DominantAttachment,
            _ => AlemHypothesis::None,
        }
    };

    let outcome = outcome(h1, h2, Direction::Increase, tols)?;
    Ok(AlemOutcome { outcome, hypothesis })
}

// ---------------------------------------------------------------------------
// Perron-component ordering chains.

#[derive(Debug, Clone, Serialize)]
pub struct FactsReport {
    pub fact1: CheckReport,
    pub fact2: CheckReport,
    pub fact3: CheckReport,
    pub verdict: Verdict,
}

/// Strictly ascending chain whose first element is positive (or, when the
/// innermost pair of indices coincides, possibly zero).
fn check_chain(
    report: &mut CheckReport,
    label: &str,
    values: &[f64],
    scale: f64,
    gap: f64,
    first_may_be_zero: bool,
) {
    for (i, pair) in values.windows(2).enumerate() {
        let step = classify_sign(pair[1] - pair[0], scale, gap);
        report.record_sign(step, Sign::Positive, &format!("{label}: step {i}"));
    }
    if let Some(&first) = values.first() {
        let sign = classify_sign(first, scale, gap);
        if !(first_may_be_zero && sign == Sign::Zero) {
            report.record_sign(sign, Sign::Positive, &format!("{label}: first element"));
        }
    }
}

/// Verifies the three Perron-component ordering chains of a caterpillar with
/// separated star blocks (`a + 2 <= b`, `a + b + 2 <= m*`): nested
/// differences across the whole spine, across the front section, and across
/// the back section.
pub fn verify_facts(params: &CaterpillarParams, tols: Tolerances) -> Result<FactsReport> {
    params.validate()?;
    let (a, b, m) = (params.a, params.b, params.m_star);
    if a + 2 > b {
        return Err(Error::Precondition(format!("need a + 2 <= b, got ({a}, {b})")));
    }
    if a + b + 2 > m {
        return Err(Error::Precondition(format!(
            "need a + b + 2 <= m*, got a + b = {}, m* = {m}",
            a + b
        )));
    }
    let h = caterpillar(params)?;
    let dm = DistanceMatrix::of(h.graph())?;
    let r = perron(&dm, PerronOptions::with_tol(tols.tol))?;
    let x = &r.x;
    let total: f64 = x.iter().sum();
    let xu = |i: usize| x[h.u(i)];
    let mut xw_cache = Vec::with_capacity(m);
    for i in 1..=m {
        xw_cache.push(x[h.w(i)?]);
    }
    let xw = |i: usize| xw_cache[i - 1];

    // Whole-spine chain: pairs (i, m - i) for u, (j, m + 1 - j) for w.
    let mut fact1 = CheckReport::new("fact1");
    let u_chain: Vec<f64> = (0..=a + 1).map(|i| xu(i) - xu(m - i)).collect();
    check_chain(&mut fact1, "u-chain", &u_chain, total, tols.gap, false);
    let mut w_chain: Vec<f64> = (1..=a + 1).map(|j| xw(j) - xw(m + 1 - j)).collect();
    w_chain.push(*u_chain.last().expect("nonempty"));
    check_chain(&mut fact1, "w-chain", &w_chain, total, tols.gap, false);

    // Front section: pairs summing to m' = m* + a - b + 1.
    let mut fact2 = CheckReport::new("fact2");
    let m_front = m + a + 1 - b;
    let p = if m_front % 2 == 1 {
        (m_front - 1) / 2
    } else {
        (m_front - 2) / 2
    };
    let q = m_front - p;
    let u_chain: Vec<f64> = (0..=p - (a + 1)).map(|l| xu(p - l) - xu(q + l)).collect();
    check_chain(&mut fact2, "u-chain", &u_chain, total, tols.gap, false);
    let mut w_chain: Vec<f64> = (0..=p - (a + 1)).map(|l| xw(p + 1 - l) - xw(q + l)).collect();
    w_chain.push(*u_chain.last().expect("nonempty"));
    // The innermost w-difference degenerates to zero when the section has
    // odd length (its two indices coincide).
    check_chain(&mut fact2, "w-chain", &w_chain, total, tols.gap, q - p == 1);

    // Back section: pairs summing to m'' = 2 m* - a - b - 1, all negative.
    let mut fact3 = CheckReport::new("fact3");
    let m_back = 2 * m - a - b - 1;
    let pb = if m_back % 2 == 1 {
        (m_back - 1) / 2
    } else {
        (m_back - 2) / 2
    };
    let qb = m_back - pb;
    // Negate so the ascending-chain helper applies to the mirrored claim.
    let u_chain: Vec<f64> = (0..=pb - (m - b))
        .rev()
        .map(|i| -(xu(m - b + i) - xu(m - a - 1 - i)))
        .collect();
    check_chain(&mut fact3, "u-chain", &u_chain, total, tols.gap, false);
    let w_chain: Vec<f64> = (0..=pb - (m - b))
        .rev()
        .map(|i| -(xw(m - b + 1 + i) - xw(m - a - 1 - i)))
        .collect();
    check_chain(&mut fact3, "w-chain", &w_chain, total, tols.gap, qb - pb == 1);

    let verdict = fact1
        .verdict
        .combine(fact2.verdict)
        .combine(fact3.verdict);
    Ok(FactsReport {
        fact1,
        fact2,
        fact3,
        verdict,
    })
}

/// Sign-agreement chain around two spine positions `s > t` with
/// `1 <= s - t <= 2`: if the attachment sums and vertex entries agree in
/// sign pairwise out to radius `r`, the vertex and representative
/// differences share the sign of `sigma(H_{u_s}) - sigma(H^{u_t})` one step
/// further. Returns `Vacuous` when the hypothesis cannot be certified.
pub fn verify_sign_chain(
    h: &SpineLabeledHypergraph,
    s: usize,
    t: usize,
    r: usize,
    tols: Tolerances,
) -> Result<CheckReport> {
    let m = h.spine_len();
    if !(1..=2).contains(&(s as isize - t as isize)) {
        return Err(Error::Precondition(format!(
            "need 1 <= s - t <= 2, got s = {s}, t = {t}"
        )));
    }
    if t < r + 1 || s + r + 1 > m {
        return Err(Error::Precondition(format!(
            "radius {r} exceeds the spine around ({s}, {t})"
        )));
    }
    let dm = DistanceMatrix::of(h.graph())?;
    let result = perron(&dm, PerronOptions::with_tol(tols.tol))?;
    let x = &result.x;
    let total: f64 = x.iter().sum();
    let xu = |i: usize| x[h.u(i)];
    let mut report = CheckReport::new("sign-chain");

    // Hypothesis: attachment sums vs vertex entries, pairwise to radius r.
    for l in 0..=r {
        let sig = sigma(x, &h.g_vertices(t - l)) - sigma(x, &h.g_vertices(s + l));
        let xd = xu(t - l) - xu(s + l);
        let sig_sign = classify_sign(sig, total, tols.gap);
        let xd_sign = classify_sign(xd, total, tols.gap);
        if sig_sign == Sign::Indeterminate || xd_sign == Sign::Indeterminate {
            report.mark_vacuous(&format!("hypothesis indeterminate at l = {l}"));
            return Ok(report);
        }
        if sig_sign != xd_sign {
            report.mark_vacuous(&format!("hypothesis sign mismatch at l = {l}"));
            return Ok(report);
        }
    }

    let pivot = sigma(x, &h.lower_vertices(s)) - sigma(x, &h.upper_vertices(t));
    let pivot_sign = classify_sign(pivot, total, tols.gap);
    match pivot_sign {
        Sign::Indeterminate => {
            report.mark_vacuous("pivot difference indeterminate");
            return Ok(report);
        }
        Sign::Zero => {
            // Symmetric instance: every compared difference must vanish too.
            for l in 0..=r + 1 {
                let xd = xu(t - l) - xu(s + l);
                report.record_sign(
                    classify_sign(xd, total, tols.gap),
                    Sign::Zero,
                    &format!("u-difference at l = {l} (symmetric instance)"),
                );
            }
            report.mark_vacuous("pivot difference is zero");
            return Ok(report);
        }
        _ => {}
    }

    for l in 0..=r + 1 {
        let xd = xu(t - l) - xu(s + l);
        report.record_sign(
            classify_sign(xd, total, tols.gap),
            pivot_sign,
            &format!("u-difference at l = {l}"),
        );
    }
    // Representative differences: the innermost may vanish, the rest share
    // the pivot sign.
    for l in 0..=r + 1 {
        let wd = x[h.w(t + 1 - l)?] - x[h.w(s + l)?];
        let sign = classify_sign(wd, total, tols.gap);
        if l == 0 && sign == Sign::Zero {
            continue;
        }
        report.record_sign(sign, pivot_sign, &format!("w-difference at l = {l}"));
    }
    Ok(report)
}

/// Strict nested chains under a positive pivot: the corollary form of the
/// sign chain. `mirror = false` expects the positive-pivot version, `true`
/// the negative one.
pub fn verify_sign_chain_strict(
    h: &SpineLabeledHypergraph,
    s: usize,
    t: usize,
    r: usize,
    mirror: bool,
    tols: Tolerances,
) -> Result<CheckReport> {
    let m = h.spine_len();
    if !(1..=2).contains(&(s as isize - t as isize)) {
        return Err(Error::Precondition(format!(
            "need 1 <= s - t <= 2, got s = {s}, t = {t}"
        )));
    }
    if t < r + 1 || s + r + 1 > m {
        return Err(Error::Precondition(format!(
            "radius {r} exceeds the spine around ({s}, {t})"
        )));
    }
    let dm = DistanceMatrix::of(h.graph())?;
    let result = perron(&dm, PerronOptions::with_tol(tols.tol))?;
    let x = &result.x;
    let total: f64 = x.iter().sum();
    let sign_flip = if mirror { -1.0 } else { 1.0 };
    let xu = |i: usize| x[h.u(i)];
    let name = if mirror { "sign-chain-descending" } else { "sign-chain-ascending" };
    let mut report = CheckReport::new(name);

    // Hypothesis of the underlying chain plus the pivot direction.
    for l in 0..=r {
        let sig = sigma(x, &h.g_vertices(t - l)) - sigma(x, &h.g_vertices(s + l));
        let xd = xu(t - l) - xu(s + l);
        let sig_sign = classify_sign(sig, total, tols.gap);
        let xd_sign = classify_sign(xd, total, tols.gap);
        if sig_sign == Sign::Indeterminate || xd_sign == Sign::Indeterminate || sig_sign != xd_sign
        {
            report.mark_vacuous(&format!("hypothesis not certified at l = {l}"));
            return Ok(report);
        }
    }
    let pivot = sign_flip * (sigma(x, &h.lower_vertices(s)) - sigma(x, &h.upper_vertices(t)));
    if classify_sign(pivot, total, tols.gap) != Sign::Positive {
        report.mark_vacuous("pivot not strictly signed in the expected direction");
        return Ok(report);
    }

    let u_chain: Vec<f64> = (0..=r + 1)
        .map(|l| sign_flip * (xu(t - l) - xu(s + l)))
        .collect();
    check_chain(&mut report, "u-chain", &u_chain, total, tols.gap, false);
    let mut w_chain = Vec::with_capacity(r + 2);
    for l in 0..=r + 1 {
        w_chain.push(sign_flip * (x[h.w(t + 1 - l)?] - x[h.w(s + l)?]));
    }
    check_chain(&mut report, "w-chain", &w_chain, total, tols.gap, true);
    Ok(report)
}

/// Core-side dominance on `G_c(s, t)` with `s >= t >= 2`: the strict
/// inequality `sigma(V'(H^{u_s})) + x_{u_s} > sigma(V'(H_{u_{s+1}})) +
/// x_{u_{s+1}}` and the weak one `sigma(V'(H^{u_s})) >= sigma(V'(H_{u_s}))`.
pub fn verify_core_dominance(params: &GcParams, tols: Tolerances) -> Result<CheckReport> {
    params.validate()?;
    if params.s < params.t || params.t < 2 {
        return Err(Error::Precondition(format!(
            "need s >= t >= 2, got ({}, {})",
            params.s, params.t
        )));
    }
    let h = g_c(params)?;
    let dm = DistanceMatrix::of(h.graph())?;
    let r = perron(&dm, PerronOptions::with_tol(tols.tol))?;
    let x = &r.x;
    let total: f64 = x.iter().sum();
    let s = params.s;
    let mut report = CheckReport::new("core-dominance");

    let strict = sigma(x, &h.upper_core(s)) + x[h.u(s)]
        - sigma(x, &h.lower_core(s + 1))
        - x[h.u(s + 1)];
    report.record_sign(
        classify_sign(strict, total, tols.gap),
        Sign::Positive,
        "upper-plus-root vs lower-plus-next",
    );

    let weak = sigma(x, &h.upper_core(s)) - sigma(x, &h.lower_core(s));
    let weak_sign = classify_sign(weak, total, tols.gap);
    if weak_sign != Sign::Positive && weak_sign != Sign::Zero {
        report.record_sign(weak_sign, Sign::Positive, "upper core vs lower core");
    }
    Ok(report)
}

/// Structural audit: per-edge count of vertices with degree at least two.
/// The extremal hypertrees must never exceed two per edge.
pub fn verify_edge_degree_bound(t: &Hypergraph) -> CheckReport {
    let census = t.heavy_counts();
    let max = census.iter().copied().max().unwrap_or(0);
    let mut report = CheckReport::new("edge-degree-bound");
    report.max_residual = max as f64;
    if max > 2 {
        report.verdict = Verdict::Fail;
        for (i, &count) in census.iter().enumerate() {
            if count > 2 {
                report
                    .notes
                    .push(format!("edge {i} holds {count} vertices of degree >= 2"));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{hyperstar, identify_roots, loose_path};

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn path_shift_increases_radius() {
        let host = hyperstar(1, 3).graph;
        for (s, t) in [(1, 1), (2, 1), (2, 2)] {
            let out = graft_path_shift(&host, 1, s, t, tols()).unwrap();
            assert_eq!(out.verdict(1e-9), Verdict::Pass, "s={s}, t={t}: gap {}", out.gap);
        }
        assert!(graft_path_shift(&host, 1, 1, 2, tols()).is_err());
    }

    #[test]
    fn path_shift_smallest_instance_is_star_vs_path() {
        // H a single 3-edge: H_u(1,1) is the 3-edge star, H_u(2,0) the
        // 3-edge path.
        let host = hyperstar(1, 3).graph;
        let out = graft_path_shift(&host, 0, 1, 1, tols()).unwrap();
        assert_eq!(
            out.before.canonical_code(),
            hyperstar(3, 3).graph.canonical_code()
        );
        assert_eq!(
            out.after.canonical_code(),
            loose_path(3, 3).into_graph().canonical_code()
        );
        assert!(out.gap > 0.0);
    }

    #[test]
    fn two_vertex_shift_increases_radius() {
        let host = loose_path(1, 3).into_graph();
        for (s, t) in [(1, 1), (2, 1)] {
            let out = graft_two_vertex_shift(&host, 0, 1, s, t, tols()).unwrap();
            assert_eq!(out.verdict(1e-9), Verdict::Pass, "s={s}, t={t}");
        }
        // Interior vertices fail the degree-one precondition once decorated.
        let host2 = loose_path(2, 3).into_graph();
        assert!(graft_two_vertex_shift(&host2, 0, 1, 1, 1, tols()).is_ok());
        assert!(graft_two_vertex_shift(&host2, 0, 2, 1, 1, tols()).is_err());
    }

    #[test]
    fn star_shift_moves_toward_balance() {
        let p = CaterpillarParams::new(3, 5, 3, 0, 3).unwrap();
        let out = star_shift(&p, tols()).unwrap();
        assert_eq!(out.verdict(1e-9), Verdict::Pass, "gap {}", out.gap);

        let p = CaterpillarParams::new(3, 6, 3, 0, 2).unwrap();
        let out = star_shift(&p, tols()).unwrap();
        assert_eq!(out.verdict(1e-9), Verdict::Pass);

        // Outside the hypothesis.
        let p = CaterpillarParams::new(3, 6, 3, 1, 1).unwrap();
        assert!(star_shift(&p, tols()).is_err());
    }

    #[test]
    fn gc_shift_single_branch() {
        let core = identify_roots(&[RootedHypergraph::new(
            loose_path(2, 3).into_graph(),
            0,
        )
        .unwrap()])
        .unwrap();
        let params = GcParams::new(3, 2, 2, 1, core).unwrap();
        let (out, case) = gc_shift(&params, tols()).unwrap();
        assert_eq!(case, GcCase::SingleBranch);
        assert_eq!(out.verdict(1e-9), Verdict::Pass, "gap {}", out.gap);
    }

    #[test]
    fn gc_shift_path_branch() {
        let path_part = RootedHypergraph::new(loose_path(2, 3).into_graph(), 0).unwrap();
        let edge_part = RootedHypergraph::new(loose_path(1, 3).into_graph(), 0).unwrap();
        let params = GcParams::from_parts(3, 2, 2, &[path_part, edge_part]).unwrap();
        let (out, case) = gc_shift(&params, tols()).unwrap();
        assert_eq!(case, GcCase::PathBranch);
        assert_eq!(out.verdict(1e-9), Verdict::Pass, "gap {}", out.gap);
    }

    #[test]
    fn gc_shift_pendant_rich() {
        // Branch one: a path of length one ending in a vertex with two
        // pendant edges (a 2-star at the far end).
        let mut edges = vec![vec![0, 1, 2]];
        edges.push(vec![1, 3, 4]);
        edges.push(vec![1, 5, 6]);
        let branch = RootedHypergraph::new(Hypergraph::new(7, edges).unwrap(), 0).unwrap();
        let edge_part = RootedHypergraph::new(loose_path(1, 3).into_graph(), 0).unwrap();
        let params = GcParams::from_parts(3, 2, 2, &[branch, edge_part]).unwrap();
        let (out, case) = gc_shift(&params, tols()).unwrap();
        assert_eq!(case, GcCase::PendantRich);
        assert_eq!(out.verdict(1e-9), Verdict::Pass, "gap {}", out.gap);
    }

    #[test]
    fn gc_shift_rejects_unproven_shapes() {
        // Two path branches with c = 2: matches none of the configurations.
        let p1 = RootedHypergraph::new(loose_path(2, 3).into_graph(), 0).unwrap();
        let p2 = RootedHypergraph::new(loose_path(2, 3).into_graph(), 0).unwrap();
        let params = GcParams::from_parts(3, 2, 2, &[p1, p2]).unwrap();
        assert!(gc_shift(&params, tols()).is_err());
    }

    #[test]
    fn attachment_separation_pendant_route() {
        let host = loose_path(1, 3).into_graph();
        let g1 = hyperstar(2, 3);
        let g2 = hyperstar(1, 3);
        let out = verify_attachment_separation(&host, 0, 1, &g1, &g2, tols()).unwrap();
        assert_eq!(out.hypothesis, AlemHypothesis::PendantPair);
        assert_eq!(out.verdict(1e-9), Verdict::Pass);
    }

    #[test]
    fn attachment_separation_dominant_route() {
        // Big first attachment on a small host: the dominance condition
        // carries the comparison even though the attach points are interior.
        let host = loose_path(2, 3).into_graph();
        let g1 = hyperstar(6, 3);
        let g2 = hyperstar(1, 3);
        let out = verify_attachment_separation(&host, 1, 2, &g1, &g2, tols()).unwrap();
        assert_eq!(out.hypothesis, AlemHypothesis::DominantAttachment);
        assert_eq!(out.verdict(1e-9), Verdict::Pass);
    }

    #[test]
    fn facts_hold_on_reference_instances() {
        for (k, m, a, b) in [(3, 8, 0, 2), (3, 9, 1, 3), (4, 7, 0, 2)] {
            let params = CaterpillarParams::new(k, m, 3, a, b).unwrap();
            let report = verify_facts(&params, tols()).unwrap();
            assert_eq!(
                report.verdict,
                Verdict::Pass,
                "k={k} m={m} a={a} b={b}: {:?} {:?} {:?}",
                report.fact1.notes,
                report.fact2.notes,
                report.fact3.notes
            );
        }
        // Outside the separation hypothesis.
        let params = CaterpillarParams::new(3, 6, 3, 1, 1).unwrap();
        assert!(verify_facts(&params, tols()).is_err());
    }

    #[test]
    fn sign_chain_on_symmetric_instance_is_vacuous_zero() {
        let cat = caterpillar(&CaterpillarParams::new(3, 7, 3, 2, 2).unwrap()).unwrap();
        // s + t = 7, s - t = 1: straddles the centre of a symmetric spine.
        let report = verify_sign_chain(&cat, 4, 3, 1, tols()).unwrap();
        assert_eq!(report.verdict, Verdict::Vacuous, "{:?}", report.notes);
    }

    #[test]
    fn sign_chain_on_skewed_caterpillar() {
        let params = CaterpillarParams::new(3, 9, 3, 1, 3).unwrap();
        let cat = caterpillar(&params).unwrap();
        let report = verify_sign_chain(&cat, 5, 4, 2, tols()).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.notes);
        let strict = verify_sign_chain_strict(&cat, 5, 4, 2, false, tols()).unwrap();
        assert_eq!(strict.verdict, Verdict::Pass, "{:?}", strict.notes);
    }

    #[test]
    fn core_dominance_on_small_instances() {
        let core = identify_roots(&[RootedHypergraph::new(
            loose_path(3, 3).into_graph(),
            0,
        )
        .unwrap()])
        .unwrap();
        let params = GcParams::new(3, 3, 2, 1, core).unwrap();
        let report = verify_core_dominance(&params, tols()).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.notes);
    }

    #[test]
    fn edge_degree_bound_census() {
        let cat = caterpillar(&CaterpillarParams::new(3, 5, 3, 1, 2).unwrap()).unwrap();
        let report = verify_edge_degree_bound(cat.graph());
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.max_residual, 2.0);

        assert_eq!(
            verify_edge_degree_bound(&hyperstar(3, 3).graph).max_residual,
            1.0
        );

        // Hand-built hypertree with three degree-2 vertices in one edge.
        let spider = Hypergraph::new(
            9,
            vec![vec![0, 1, 2], vec![0, 3, 4], vec![1, 5, 6], vec![2, 7, 8]],
        )
        .unwrap();
        assert!(spider.is_hypertree());
        let report = verify_edge_degree_bound(&spider);
        assert_eq!(report.verdict, Verdict::Fail);
    }
}
