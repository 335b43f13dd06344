//! Numeric checkers for the eigenvector identities that drive the graft
//! comparisons: the eigenequation itself, the pendant-neighbor identity, the
//! glued-star sign identity, the quadratic-form expansion of attachment
//! moves and swaps, and the spine difference/telescope identities.

use crate::error::{Error, Result};
use crate::families::{rooted_product_spans, RootedHypergraph, SpineLabeledHypergraph};
use crate::hypergraph::Hypergraph;
use crate::report::{classify_sign, CheckReport, Sign, Tolerances};
use crate::spectral::{
    perron, rayleigh_difference, sigma, w_sum, DistanceMatrix, PerronOptions, SpectralResult,
};

/// `rho x_u = W(G, u, x)` at every vertex; the residual bound is `tol * rho`.
pub fn check_eigenequation(dm: &DistanceMatrix, r: &SpectralResult, tol: f64) -> CheckReport {
    let mut report = CheckReport::new("eigenequation");
    let bound = tol * r.rho;
    for u in 0..dm.order() {
        let w: f64 = dm
            .row(u)
            .iter()
            .zip(&r.x)
            .map(|(d, x)| f64::from(*d) * x)
            .sum();
        report.record_residual((w - r.rho * r.x[u]).abs(), bound, &format!("vertex {u}"));
    }
    report
}

/// `(rho + k) x_{u'} - rho x_u = sigma(G)` for every pendant pair, where
/// `u'` is a pendant neighbor of `u`. Residual bound `tol * sigma(G)`.
pub fn check_pendant_identity(
    g: &Hypergraph,
    r: &SpectralResult,
    tol: f64,
) -> Result<CheckReport> {
    let k = g
        .uniformity()
        .ok_or_else(|| Error::Precondition("pendant identity needs a uniform hypergraph".into()))?
        as f64;
    let mut report = CheckReport::new("pendant-identity");
    let total: f64 = r.x.iter().sum();
    let bound = tol * total;
    let degrees = g.degrees();
    let mut pairs = 0usize;
    for edge in g.edges() {
        let heavy: Vec<usize> = edge.iter().copied().filter(|&v| degrees[v] >= 2).collect();
        if heavy.len() > 1 {
            continue;
        }
        let center = heavy.first().copied().unwrap_or(edge[0]);
        for &leaf in edge.iter().filter(|&&v| v != center) {
            pairs += 1;
            let lhs = (r.rho + k) * r.x[leaf] - r.rho * r.x[center];
            report.record_residual(
                (lhs - total).abs(),
                bound,
                &format!("pendant pair ({center}, {leaf})"),
            );
        }
    }
    if pairs == 0 {
        report.mark_vacuous("no pendant edges");
    }
    Ok(report)
}

/// Equal-size hyperstars glued at two vertices: the sign of
/// `sigma(S_1) - sigma(S_2)` agrees with the sign of `x_{u_1} - x_{u_2}`,
/// and the two differences are tied by the closed-form coefficient
/// `rho l (k-1) / (rho + k) + 1`.
#[allow(clippy::too_many_arguments)]
pub fn check_sign_identity(
    g: &Hypergraph,
    r: &SpectralResult,
    u1: usize,
    u2: usize,
    star1: &[usize],
    star2: &[usize],
    tols: Tolerances,
) -> Result<CheckReport> {
    let k = g
        .uniformity()
        .ok_or_else(|| Error::Precondition("sign identity needs a uniform hypergraph".into()))?;
    if star1.len() != star2.len() {
        return Err(Error::Precondition(format!(
            "stars must have equal size ({} vs {})",
            star1.len(),
            star2.len()
        )));
    }
    let collect = |center: usize, edges: &[usize]| -> Result<Vec<usize>> {
        let mut vertices = vec![center];
        for &e in edges {
            let edge = g.edge(e)?;
            if !edge.contains(&center) {
                return Err(Error::Precondition(format!(
                    "edge {e} does not contain its star center {center}"
                )));
            }
            if !g.is_pendant_edge(e)? {
                return Err(Error::Precondition(format!("edge {e} is not pendant")));
            }
            vertices.extend(edge.iter().copied().filter(|&v| v != center));
        }
        Ok(vertices)
    };
    let s1 = collect(u1, star1)?;
    let s2 = collect(u2, star2)?;
    let l = star1.len() as f64;
    let total: f64 = r.x.iter().sum();

    let mut report = CheckReport::new("sign-identity");
    let sigma_diff = sigma(&r.x, &s1) - sigma(&r.x, &s2);
    let x_diff = r.x[u1] - r.x[u2];
    let lhs_sign = classify_sign(sigma_diff, total, tols.gap);
    let rhs_sign = classify_sign(x_diff, total, tols.gap);
    if lhs_sign == Sign::Indeterminate || rhs_sign == Sign::Indeterminate {
        report.verdict = crate::report::Verdict::Fail;
        report
            .notes
            .push(format!("indeterminate sign: sigma {sigma_diff:e}, x {x_diff:e}"));
    } else {
        report.record_sign(lhs_sign, rhs_sign, "sigma difference vs vertex difference");
    }
    let coefficient = r.rho * l * (k as f64 - 1.0) / (r.rho + k as f64) + 1.0;
    report.record_residual(
        (sigma_diff - coefficient * x_diff).abs(),
        tols.tol.max(1e-12) * total * coefficient,
        "closed form",
    );
    Ok(report)
}

/// Checks the quadratic-form expansion of moving one rooted attachment from
/// `u1` to `u2` over a fixed host: the half Rayleigh difference equals
/// `sigma(V'(G), x) * (W(H_0, u2; x) - W(H_0, u1; x))` for any vector, and
/// with the Perron vector of the unmoved graph the eigenvalue form
/// `rho (x_{u2} - x_{u1}) = d(u1,u2) sigma(V'(G), x) + WD` holds.
pub fn check_attachment_move(
    host: &Hypergraph,
    u1: usize,
    u2: usize,
    attachment: &RootedHypergraph,
    tols: Tolerances,
) -> Result<CheckReport> {
    let (h1, spans) = rooted_product_spans(host, &[u1], &[attachment])?;
    let (h2, _) = rooted_product_spans(host, &[u2], &[attachment])?;
    let block = &spans[0].vertices;
    let d1 = DistanceMatrix::of(&h1)?;
    let d2 = DistanceMatrix::of(&h2)?;
    let r = perron(&d1, PerronOptions::with_tol(tols.tol))?;
    let host_vertices: Vec<usize> = host.vertices().collect();

    let mut report = CheckReport::new("attachment-move");
    let scale = (1.0 + r.rho) * r.x.iter().sum::<f64>();
    let bound = tols.tol.max(1e-12) * scale;

    // Any-vector form, exercised with the Perron vector and flat weights.
    let flat = vec![(h1.vertex_count() as f64).sqrt().recip(); h1.vertex_count()];
    for (label, x) in [("perron", &r.x), ("flat", &flat)] {
        let lhs = rayleigh_difference(x, &d1, &d2)?;
        let rhs = sigma(x, block)
            * (w_sum(&d1, x, &host_vertices, u2) - w_sum(&d1, x, &host_vertices, u1));
        report.record_residual((lhs - rhs).abs(), bound, &format!("quadratic form ({label})"));
    }

    // Eigenvalue form at the Perron vector.
    let lhs = r.rho * (r.x[u2] - r.x[u1]);
    let rhs = f64::from(d1.get(u1, u2)) * sigma(&r.x, block)
        + (w_sum(&d1, &r.x, &host_vertices, u2) - w_sum(&d1, &r.x, &host_vertices, u1));
    report.record_residual((lhs - rhs).abs(), bound, "eigenvalue form");
    Ok(report)
}

/// Checks the quadratic-form expansion of swapping two rooted attachments
/// between `u1` and `u2`.
pub fn check_attachment_swap(
    host: &Hypergraph,
    u1: usize,
    u2: usize,
    first: &RootedHypergraph,
    second: &RootedHypergraph,
    tols: Tolerances,
) -> Result<CheckReport> {
    let (h1, spans) = rooted_product_spans(host, &[u1, u2], &[first, second])?;
    let (h2, _) = rooted_product_spans(host, &[u2, u1], &[first, second])?;
    let d1 = DistanceMatrix::of(&h1)?;
    let d2 = DistanceMatrix::of(&h2)?;
    let r = perron(&d1, PerronOptions::with_tol(tols.tol))?;
    let host_vertices: Vec<usize> = host.vertices().collect();

    let mut report = CheckReport::new("attachment-swap");
    let scale = (1.0 + r.rho) * r.x.iter().sum::<f64>();
    let bound = tols.tol.max(1e-12) * scale;
    let lhs = rayleigh_difference(&r.x, &d1, &d2)?;
    let rhs = (sigma(&r.x, &spans[0].vertices) - sigma(&r.x, &spans[1].vertices))
        * (w_sum(&d1, &r.x, &host_vertices, u2) - w_sum(&d1, &r.x, &host_vertices, u1));
    report.record_residual((lhs - rhs).abs(), bound, "quadratic form");
    Ok(report)
}

/// Per-index data for the spine identities.
struct SpineView<'a> {
    h: &'a SpineLabeledHypergraph,
    x: &'a [f64],
    rho: f64,
    k: f64,
    total: f64,
    sigma_upper: Vec<f64>,
    sigma_lower: Vec<f64>,
    sigma_g: Vec<f64>,
    w_rep: Vec<usize>,
}

impl<'a> SpineView<'a> {
    fn build(h: &'a SpineLabeledHypergraph, r: &'a SpectralResult) -> Result<Self> {
        let k = h
            .graph()
            .uniformity()
            .ok_or_else(|| Error::Precondition("spine identities need a uniform host".into()))?;
        let m = h.spine_len();
        let mut w_rep = Vec::with_capacity(m);
        for i in 1..=m {
            w_rep.push(h.w(i)?);
        }
        let x = &r.x;
        let sigma_upper: Vec<f64> = (0..=m).map(|i| sigma(x, &h.upper_vertices(i))).collect();
        let sigma_lower: Vec<f64> = (0..=m).map(|i| sigma(x, &h.lower_vertices(i))).collect();
        let sigma_g: Vec<f64> = (0..=m).map(|i| sigma(x, &h.g_vertices(i))).collect();
        Ok(Self {
            h,
            x,
            rho: r.rho,
            k: k as f64,
            total: x.iter().sum(),
            sigma_upper,
            sigma_lower,
            sigma_g,
            w_rep,
        })
    }

    fn xu(&self, i: usize) -> f64 {
        self.x[self.h.u(i)]
    }

    fn xw(&self, i: usize) -> f64 {
        self.x[self.w_rep[i - 1]]
    }
}

/// Verifies the spine eigenvector identities on a loose-path rooted product:
/// the `w_i` relations, consecutive `u`/`w` difference forms, the summed
/// form, the double-step form, and both telescoped difference chains around
/// the spine middle. All residuals are bounded by `tol * sigma(H)`.
pub fn check_spine_identities(
    h: &SpineLabeledHypergraph,
    dm: &DistanceMatrix,
    r: &SpectralResult,
    tol: f64,
) -> Result<CheckReport> {
    let v = SpineView::build(h, r)?;
    let m = h.spine_len();
    let bound = tol * v.total;
    let mut report = CheckReport::new("spine-identities");
    let x = v.x;

    for i in 1..=m {
        // Eigenequation at u_i split across the cut edge e_i.
        let upper_prev = h.upper_vertices(i - 1);
        let lower_i = h.lower_vertices(i);
        let lhs = v.rho * v.xu(i);
        let rhs = w_sum(dm, x, &upper_prev, h.u(i))
            + w_sum(dm, x, &lower_i, h.u(i))
            + (v.k - 2.0) * v.xw(i);
        report.record_residual((lhs - rhs).abs(), bound, &format!("w-relation split, i={i}"));

        // rho x_{w_i} = rho x_{u_i} + sigma(H_{u_i}) - x_{w_i}
        let lhs = v.rho * v.xw(i);
        let rhs = v.rho * v.xu(i) + v.sigma_lower[i] - v.xw(i);
        report.record_residual((lhs - rhs).abs(), bound, &format!("w-relation lower, i={i}"));
        // rho x_{w_i} = rho x_{u_{i-1}} + sigma(H^{u_{i-1}}) - x_{w_i}
        let rhs = v.rho * v.xu(i - 1) + v.sigma_upper[i - 1] - v.xw(i);
        report.record_residual((lhs - rhs).abs(), bound, &format!("w-relation upper, i={i}"));

        // rho (x_{u_{i-1}} - x_{u_i}) = sigma(H_{u_i}) - sigma(H^{u_{i-1}})
        let lhs = v.rho * (v.xu(i - 1) - v.xu(i));
        let rhs = v.sigma_lower[i] - v.sigma_upper[i - 1];
        report.record_residual((lhs - rhs).abs(), bound, &format!("u-difference, i={i}"));

        // rho (x_{u_i} + x_{u_{i-1}}) = (2 rho + k) x_{w_i} - sigma(H)
        let lhs = v.rho * (v.xu(i) + v.xu(i - 1));
        let rhs = (2.0 * v.rho + v.k) * v.xw(i) - v.total;
        report.record_residual((lhs - rhs).abs(), bound, &format!("u-sum, i={i}"));
    }

    for i in 1..m {
        // (rho + 1)(x_{w_i} - x_{w_{i+1}}) = sigma(H_{u_i}) - sigma(H^{u_i})
        let lhs = (v.rho + 1.0) * (v.xw(i) - v.xw(i + 1));
        let rhs = v.sigma_lower[i] - v.sigma_upper[i];
        report.record_residual((lhs - rhs).abs(), bound, &format!("w-difference, i={i}"));

        // Double step through w and through the component sums.
        let lhs = v.rho * (v.xu(i - 1) - v.xu(i + 1));
        let mid = (2.0 * v.rho + v.k) * (v.xw(i) - v.xw(i + 1));
        report.record_residual((lhs - mid).abs(), bound, &format!("double-step w, i={i}"));
        let rhs = (2.0 * v.rho + v.k) / (v.rho + v.k - 1.0)
            * (v.sigma_lower[i + 1] - v.sigma_upper[i - 1]);
        report.record_residual((lhs - rhs).abs(), bound, &format!("double-step sums, i={i}"));
    }

    // Telescoped chains around the spine middle: s + t = m, s - t in {1, 2}.
    if m >= 2 {
        let t = (m - 1) / 2;
        let s = m - t;
        for i in 1..=t {
            let lhs = v.rho
                * ((v.xu(t - i) - v.xu(s + i)) - (v.xu(t + 1 - i) - v.xu(s + i - 1)));
            let rhs1 = v.sigma_lower[t + 1 - i] - v.sigma_upper[t - i] + v.sigma_lower[s + i]
                - v.sigma_upper[s + i - 1];
            report.record_residual((lhs - rhs1).abs(), bound, &format!("u-telescope raw, i={i}"));
            let rhs2 = 2.0 * (v.sigma_lower[s + i] - v.sigma_upper[t - i])
                + (v.k - 2.0) * (v.xw(s + i) - v.xw(t + 1 - i));
            report.record_residual((lhs - rhs2).abs(), bound, &format!("u-telescope mid, i={i}"));
            let mut accumulated = 0.0;
            for l in 0..i {
                accumulated += v.sigma_g[t - l] - v.sigma_g[s + l]
                    + (v.k - 2.0) * (v.xw(t - l) - v.xw(s + 1 + l));
            }
            let rhs3 = 2.0 * (v.sigma_lower[s] - v.sigma_upper[t])
                + 2.0 * accumulated
                + (v.k - 2.0) * (v.xw(s + i) - v.xw(t + 1 - i));
            report.record_residual((lhs - rhs3).abs(), bound, &format!("u-telescope full, i={i}"));

            let lhs = (v.rho + 1.0)
                * ((v.xw(t - i + 1) - v.xw(s + i)) - (v.xw(t + 2 - i) - v.xw(s + i - 1)));
            let rhs1 = 2.0 * (v.sigma_lower[s + i - 1] - v.sigma_upper[t - i + 1])
                + v.sigma_g[t - i + 1]
                - v.sigma_g[s + i - 1];
            report.record_residual((lhs - rhs1).abs(), bound, &format!("w-telescope raw, i={i}"));
            let mut accumulated = 0.0;
            for l in 0..i.saturating_sub(1) {
                accumulated += v.sigma_g[t - l] - v.sigma_g[s + l]
                    + (v.k - 2.0) * (v.xw(t - l) - v.xw(s + 1 + l));
            }
            let rhs2 = 2.0 * (v.sigma_lower[s] - v.sigma_upper[t])
                + 2.0 * accumulated
                + v.sigma_g[t - i + 1]
                - v.sigma_g[s + i - 1];
            report.record_residual((lhs - rhs2).abs(), bound, &format!("w-telescope full, i={i}"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{caterpillar, g_c, hyperstar, loose_path, CaterpillarParams, GcParams};
    use crate::report::Verdict;
    use crate::spectral::perron_default;

    fn solved(h: &SpineLabeledHypergraph) -> (DistanceMatrix, SpectralResult) {
        let dm = DistanceMatrix::of(h.graph()).unwrap();
        let r = perron(&dm, PerronOptions::with_tol(1e-13)).unwrap();
        (dm, r)
    }

    #[test]
    fn eigenequation_passes_when_converged() {
        let cat = caterpillar(&CaterpillarParams::new(3, 5, 3, 1, 2).unwrap()).unwrap();
        let dm = DistanceMatrix::of(cat.graph()).unwrap();
        let r = perron_default(&dm).unwrap();
        let report = check_eigenequation(&dm, &r, 1e-10);
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.notes);
    }

    #[test]
    fn eigenequation_flags_unconverged_vector() {
        let dm = DistanceMatrix::of(&loose_path(3, 3).into_graph()).unwrap();
        let r = perron_default(&dm).unwrap();
        let n = dm.order();
        let skewed = SpectralResult {
            rho: r.rho,
            x: {
                let mut x = vec![(n as f64).sqrt().recip(); n];
                x[0] *= 1.5;
                let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                x.iter_mut().for_each(|v| *v /= norm);
                x
            },
            residual: 1.0,
            iterations: 1,
        };
        let report = check_eigenequation(&dm, &skewed, 1e-10);
        assert_eq!(report.verdict, Verdict::Fail);
    }

    #[test]
    fn pendant_identity_on_small_graphs() {
        for g in [
            hyperstar(2, 3).graph,
            hyperstar(1, 4).graph,
            loose_path(3, 3).into_graph(),
        ] {
            let dm = DistanceMatrix::of(&g).unwrap();
            let r = perron(&dm, PerronOptions::with_tol(1e-13)).unwrap();
            let report = check_pendant_identity(&g, &r, 1e-10).unwrap();
            assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.notes);
        }
    }

    #[test]
    fn sign_identity_symmetric_and_skewed() {
        // Symmetric stars at u_1 and u_5 of a 6-edge spine: both sides zero.
        let cat = caterpillar(&CaterpillarParams::new(3, 6, 3, 1, 1).unwrap()).unwrap();
        let (_, r) = solved(&cat);
        let star1 = cat.attachment_edge_indices(1).to_vec();
        let star2 = cat.attachment_edge_indices(5).to_vec();
        let report = check_sign_identity(
            cat.graph(),
            &r,
            cat.u(1),
            cat.u(5),
            &star1,
            &star2,
            Tolerances::default(),
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.notes);

        // Skewed placement: stars at u_1 and u_4 of an asymmetric caterpillar.
        let cat = caterpillar(&CaterpillarParams::new(3, 6, 3, 1, 2).unwrap()).unwrap();
        let (_, r) = solved(&cat);
        let star1 = cat.attachment_edge_indices(1).to_vec();
        let star2 = cat.attachment_edge_indices(4).to_vec();
        let report = check_sign_identity(
            cat.graph(),
            &r,
            cat.u(1),
            cat.u(4),
            &star1,
            &star2,
            Tolerances::default(),
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.notes);
    }

    #[test]
    fn spine_identities_on_paths_and_caterpillars() {
        let path = loose_path(4, 3);
        let (dm, r) = solved(&path);
        let report = check_spine_identities(&path, &dm, &r, 1e-10).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.notes);

        let cat = caterpillar(&CaterpillarParams::new(3, 5, 3, 1, 2).unwrap()).unwrap();
        let (dm, r) = solved(&cat);
        let report = check_spine_identities(&cat, &dm, &r, 1e-10).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.notes);

        // Symmetric caterpillar: the central u-difference identity balances
        // to zero on both sides.
        let cat = caterpillar(&CaterpillarParams::new(3, 4, 3, 1, 1).unwrap()).unwrap();
        let (dm, r) = solved(&cat);
        let report = check_spine_identities(&cat, &dm, &r, 1e-10).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.notes);
    }

    #[test]
    fn spine_identities_on_gc() {
        let core = crate::families::identify_roots(&[RootedHypergraph::new(
            loose_path(2, 3).into_graph(),
            0,
        )
        .unwrap()])
        .unwrap();
        let params = GcParams::new(3, 2, 2, 1, core).unwrap();
        let h = g_c(&params).unwrap();
        let (dm, r) = solved(&h);
        let report = check_spine_identities(&h, &dm, &r, 1e-10).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.notes);
    }

    #[test]
    fn spine_identities_need_representatives() {
        // Ordinary 2-uniform paths of length >= 3 have no degree-one vertex
        // in their interior edges.
        let path = loose_path(3, 2);
        let (dm, r) = solved(&path);
        assert!(check_spine_identities(&path, &dm, &r, 1e-10).is_err());
    }

    #[test]
    fn attachment_move_and_swap_forms() {
        let host = loose_path(3, 3).into_graph();
        let star = hyperstar(2, 3);
        let report =
            check_attachment_move(&host, 1, 2, &star, Tolerances::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.notes);

        let small = hyperstar(1, 3);
        let report =
            check_attachment_swap(&host, 1, 2, &star, &small, Tolerances::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.notes);

        // Moving between similar vertices changes nothing.
        let report =
            check_attachment_move(&host, 0, 3, &star, Tolerances::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Pass, "{:?}", report.notes);
    }
}
