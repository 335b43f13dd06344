//! Distance matrices, the distance spectral radius and its Perron vector,
//! and the weighted-sum accumulators the eigenvector identities are written
//! in.

pub mod identities;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Dense symmetric matrix of pairwise distances (shortest walk length over
/// the co-edge adjacency relation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    /// Breadth-first distances from every source. Fails on disconnected
    /// input, reporting the component count.
    pub fn of(g: &Hypergraph) -> Result<Self> {
        let n = g.vertex_count();
        let (components, _) = g.components();
        if n > 1 && components != 1 {
            return Err(Error::Disconnected { components });
        }
        let adj = g.adjacency();
        let rows: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|source| {
                let mut dist = vec![u32::MAX; n];
                dist[source] = 0;
                let mut queue = std::collections::VecDeque::from([source]);
                while let Some(u) = queue.pop_front() {
                    for &v in &adj[u] {
                        if dist[v] == u32::MAX {
                            dist[v] = dist[u] + 1;
                            queue.push_back(v);
                        }
                    }
                }
                dist
            })
            .collect();
        let mut d = Vec::with_capacity(n * n);
        for row in rows {
            d.extend_from_slice(&row);
        }
        Ok(Self { n, d })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.n)
            .map(|u| self.row(u).iter().map(|&x| x as u64).sum())
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for u in 0..self.n {
            let cells: Vec<String> = self.row(u).iter().map(u32::to_string).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn as_f64(&self) -> Vec<f64> {
        self.d.iter().map(|&x| x as f64).collect()
    }
}

/// Converged dominant eigenpair of a distance matrix.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    pub rho: f64,
    /// Positive eigenvector, Euclidean norm one.
    pub x: Vec<f64>,
    /// Final `max |D x - rho x|`.
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct PerronOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PerronOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 1_000_000,
        }
    }
}

impl PerronOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

pub fn perron(dm: &DistanceMatrix, opts: PerronOptions) -> Result<SpectralResult> {
    perron_with_trace(dm, opts).map(|(result, _)| result)
}

pub fn perron_default(dm: &DistanceMatrix) -> Result<SpectralResult> {
    perron(dm, PerronOptions::default())
}

/// Power iteration on the shifted matrix `D + I`, whose dominant eigenvalue
/// `rho + 1` strictly exceeds `|lambda + 1|` for every other distance
/// eigenvalue, so the iteration converges from the all-ones start even when
/// `D` itself is dominance-degenerate (the two-vertex case). The returned
/// trace holds the per-iteration estimates `|A x_k| - 1`, a nondecreasing
/// sequence by the Cauchy-Schwarz log-convexity of iterate norms.
pub fn perron_with_trace(
    dm: &DistanceMatrix,
    opts: PerronOptions,
) -> Result<(SpectralResult, Vec<f64>)> {
    let n = dm.order();
    if n == 0 {
        return Err(Error::Precondition("empty distance matrix".into()));
    }
    if n == 1 {
        return Ok((
            SpectralResult {
                rho: 0.0,
                x: vec![1.0],
                residual: 0.0,
                iterations: 0,
            },
            Vec::new(),
        ));
    }
    let a = dm.as_f64();
    let mut x = vec![(n as f64).sqrt().recip(); n];
    let mut z = vec![0.0f64; n];
    let mut trace = Vec::new();
    let mut prev_estimate = f64::NEG_INFINITY;
    for iteration in 1..=opts.max_iter {
        // z = (D + I) x
        for (i, zi) in z.iter_mut().enumerate() {
            let row = &a[i * n..(i + 1) * n];
            let mut acc = 0.0;
            for (rv, xv) in row.iter().zip(&x) {
                acc += rv * xv;
            }
            *zi = acc + x[i];
        }
        let norm_z = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        let estimate = norm_z - 1.0;
        trace.push(estimate);
        if (estimate - prev_estimate).abs() <= opts.tol * estimate.abs() {
            // Candidate convergence; gate on the true residual of the
            // current (unit, positive) iterate.
            let rho = x.iter().zip(&z).map(|(xi, zi)| xi * zi).sum::<f64>() - 1.0;
            let residual = x
                .iter()
                .zip(&z)
                .map(|(xi, zi)| (zi - xi - rho * xi).abs())
                .fold(0.0f64, f64::max);
            if residual <= opts.tol * rho {
                return Ok((
                    SpectralResult {
                        rho,
                        x,
                        residual,
                        iterations: iteration,
                    },
                    trace,
                ));
            }
        }
        prev_estimate = estimate;
        for (xi, zi) in x.iter_mut().zip(&z) {
            *xi = zi / norm_z;
        }
    }
    let rho = prev_estimate;
    let residual = x
        .iter()
        .zip(&z)
        .map(|(xi, zi)| (zi - xi - (rho + 1.0) * xi).abs())
        .fold(0.0f64, f64::max);
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        rho,
        residual,
    })
}

/// Rayleigh quotient `x^T D x` of a unit vector; never exceeds the spectral
/// radius, with equality exactly at the Perron vector.
pub fn rayleigh(dm: &DistanceMatrix, x: &[f64]) -> Result<f64> {
    let n = dm.order();
    if x.len() != n {
        return Err(Error::Precondition(format!(
            "vector length {} vs order {n}",
            x.len()
        )));
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::Precondition(format!("vector norm {norm} is not 1")));
    }
    Ok(quadratic_form(dm, x))
}

fn quadratic_form(dm: &DistanceMatrix, x: &[f64]) -> f64 {
    let n = dm.order();
    let mut total = 0.0;
    for u in 0..n {
        let row = dm.row(u);
        let mut acc = 0.0;
        for (rv, xv) in row.iter().zip(x) {
            acc += f64::from(*rv) * xv;
        }
        total += acc * x[u];
    }
    total
}

/// `x^T (D2 - D1) x / 2` over a shared vertex correspondence.
pub fn rayleigh_difference(x: &[f64], d1: &DistanceMatrix, d2: &DistanceMatrix) -> Result<f64> {
    if d1.order() != d2.order() || x.len() != d1.order() {
        return Err(Error::Precondition(format!(
            "order mismatch: {} vs {} (vector {})",
            d1.order(),
            d2.order(),
            x.len()
        )));
    }
    Ok(0.5 * (quadratic_form(d2, x) - quadratic_form(d1, x)))
}

// ---------------------------------------------------------------------------
// Accumulators over Perron weights.

/// Sum of vector entries over a vertex set.
pub fn sigma(x: &[f64], set: &[usize]) -> f64 {
    set.iter().map(|&v| x[v]).sum()
}

/// `W(U, v)`: Perron-weighted sum of distances from `v` to `U`.
pub fn w_sum(dm: &DistanceMatrix, x: &[f64], set: &[usize], v: usize) -> f64 {
    set.iter().map(|&u| x[u] * f64::from(dm.get(u, v))).sum()
}

/// `W_0(U, v)`: plain distance sum (all-ones weights).
pub fn w0_sum(dm: &DistanceMatrix, set: &[usize], v: usize) -> u64 {
    set.iter().map(|&u| u64::from(dm.get(u, v))).sum()
}

/// `W(U1, U2)`: weights on the first argument only.
pub fn w_pair(dm: &DistanceMatrix, x: &[f64], set1: &[usize], set2: &[usize]) -> f64 {
    set1.iter()
        .map(|&u| {
            let xu = x[u];
            set2.iter()
                .map(|&v| xu * f64::from(dm.get(u, v)))
                .sum::<f64>()
        })
        .sum()
}

/// `WD(U; V1, V2) = W(U, V1) - W(U, V2)`.
pub fn wd(dm: &DistanceMatrix, x: &[f64], u: &[usize], v1: &[usize], v2: &[usize]) -> f64 {
    w_pair(dm, x, u, v1) - w_pair(dm, x, u, v2)
}

/// Distance sums routed through a cut vertex: when every path from `set` to
/// `target` passes through `cut`, `W(set, target) = W(set, cut) +
/// d(cut, target) * sigma(set)`.
pub fn w_via_cut(dm: &DistanceMatrix, x: &[f64], set: &[usize], cut: usize, target: usize) -> f64 {
    w_sum(dm, x, set, cut) + f64::from(dm.get(cut, target)) * sigma(x, set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{hyperstar, loose_path};
    use crate::hypergraph::Hypergraph;

    fn rho_of(g: &Hypergraph) -> SpectralResult {
        perron_default(&DistanceMatrix::of(g).unwrap()).unwrap()
    }

    #[test]
    fn distances_of_single_edge() {
        let g = Hypergraph::new(3, vec![vec![0, 1, 2]]).unwrap();
        let dm = DistanceMatrix::of(&g).unwrap();
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(dm.get(u, v), u32::from(u != v));
            }
        }
    }

    #[test]
    fn distances_of_ordinary_path() {
        let g = loose_path(2, 2).into_graph();
        let dm = DistanceMatrix::of(&g).unwrap();
        assert_eq!(dm.row(0), &[0, 1, 2]);
        assert_eq!(dm.row(1), &[1, 0, 1]);
        assert_eq!(dm.row(2), &[2, 1, 0]);
    }

    #[test]
    fn distances_of_star() {
        let g = hyperstar(2, 3).graph;
        let dm = DistanceMatrix::of(&g).unwrap();
        // Center at 0; edge one is {0,1,2}, edge two is {0,3,4}.
        assert_eq!(dm.get(1, 2), 1);
        assert_eq!(dm.get(1, 3), 2);
        assert_eq!(dm.get(0, 4), 1);
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let g = Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        match DistanceMatrix::of(&g) {
            Err(Error::Disconnected { components }) => assert_eq!(components, 2),
            other => panic!("expected disconnected error, got {other:?}"),
        }
    }

    #[test]
    fn closed_form_single_edge() {
        for k in 2..=5 {
            let g = hyperstar(1, k).graph;
            let r = rho_of(&g);
            assert!((r.rho - (k as f64 - 1.0)).abs() < 1e-10, "k={k}: {}", r.rho);
        }
    }

    #[test]
    fn closed_form_two_edge_path() {
        let g = loose_path(2, 2).into_graph();
        let r = rho_of(&g);
        assert!((r.rho - (1.0 + 3f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn closed_form_two_edge_star() {
        let g = hyperstar(2, 3).graph;
        let r = rho_of(&g);
        let expected = (5.0 + 41f64.sqrt()) / 2.0;
        assert!((r.rho - expected).abs() < 1e-9);
        // Perron entries: center vs pendants, constant on the pendant orbit.
        for v in 2..5 {
            assert!((r.x[1] - r.x[v]).abs() < 1e-10);
        }
    }

    #[test]
    fn residual_meets_tolerance() {
        let g = loose_path(5, 3).into_graph();
        let r = rho_of(&g);
        assert!(r.residual <= 1e-12 * r.rho);
        assert!(r.x.iter().all(|&v| v > 0.0));
        let norm: f64 = r.x.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn estimates_are_monotone() {
        let g = loose_path(4, 3).into_graph();
        let dm = DistanceMatrix::of(&g).unwrap();
        let (_, trace) = perron_with_trace(&dm, PerronOptions::default()).unwrap();
        for pair in trace.windows(2) {
            assert!(pair[1] >= pair[0] - 1e-13, "estimates dipped: {pair:?}");
        }
    }

    #[test]
    fn rayleigh_never_exceeds_rho() {
        let g = hyperstar(3, 3).graph;
        let dm = DistanceMatrix::of(&g).unwrap();
        let r = perron_default(&dm).unwrap();
        let n = dm.order();
        // A deterministic family of perturbed unit vectors.
        for seed in 0..20 {
            let mut v: Vec<f64> = (0..n)
                .map(|i| 1.0 + 0.1 * (((i * 31 + seed * 17) % 7) as f64 - 3.0))
                .collect();
            let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
            v.iter_mut().for_each(|a| *a /= norm);
            let q = rayleigh(&dm, &v).unwrap();
            assert!(q <= r.rho + 1e-9, "rayleigh {q} above rho {}", r.rho);
        }
        let q = rayleigh(&dm, &r.x).unwrap();
        assert!((q - r.rho).abs() <= 1e-10 * r.rho);
    }

    #[test]
    fn rayleigh_rejects_non_unit_vectors() {
        let g = hyperstar(1, 3).graph;
        let dm = DistanceMatrix::of(&g).unwrap();
        assert!(rayleigh(&dm, &[1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn two_vertex_graph_converges() {
        let g = hyperstar(1, 2).graph;
        let r = rho_of(&g);
        assert!((r.rho - 1.0).abs() < 1e-10);
    }

    #[test]
    fn accumulator_shapes() {
        let g = loose_path(2, 3).into_graph();
        let dm = DistanceMatrix::of(&g).unwrap();
        let r = perron_default(&dm).unwrap();
        let all: Vec<usize> = g.vertices().collect();
        let total = sigma(&r.x, &all);
        assert!(total > 1.0);
        // Eigenequation via accumulators: rho x_u = W(V, u).
        for u in g.vertices() {
            let w = w_sum(&dm, &r.x, &all, u);
            assert!((w - r.rho * r.x[u]).abs() < 1e-10);
        }
        // Cut-vertex routing: paths from edge one to edge two pass u_1 = 1.
        let left = vec![0, 3];
        let via = w_via_cut(&dm, &r.x, &left, 1, 2);
        let direct = w_sum(&dm, &r.x, &left, 2);
        assert!((via - direct).abs() < 1e-12);
    }
}
