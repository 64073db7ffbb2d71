//! Cyclic Jacobi eigensolver for dense symmetric matrices, plus the
//! eigenvalue clustering used to read multiplicities off its output.
//!
//! This module shares no code with the analytic modules; it is the
//! numeric reference the closed forms are checked against.

use serde::{Deserialize, Serialize};

use crate::dtt::SquareMatrix;
use crate::error::{DttError, Result};

pub const MAX_SWEEPS: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub n: usize,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `j` is the eigenvector of `eigenvalues[j]`.
    pub eigenvectors: Option<SquareMatrix>,
    pub sweeps_used: usize,
    /// Frobenius norm of the strictly off-diagonal part at exit.
    pub off_diag_norm: f64,
}

fn off_diagonal_norm(a: &SquareMatrix) -> f64 {
    let n = a.n();
    let mut acc = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                acc += a.get(p, q) * a.get(p, q);
            }
        }
    }
    acc.sqrt()
}

/// Eigenvalues (and optionally eigenvectors) of a symmetric matrix by
/// cyclic-by-rows Jacobi rotations.
///
/// Stops once the off-diagonal Frobenius norm is at most
/// `1e-13 * n * ||m||_F`, or after [`MAX_SWEEPS`] sweeps, in which case
/// the partial result is returned inside [`DttError::NoConvergence`].
pub fn jacobi_eigen(m: &SquareMatrix, want_vectors: bool) -> Result<EigenResult> {
    let n = m.n();
    if n == 0 {
        return Err(DttError::DimensionMismatch {
            expected: 1,
            actual: 0,
        });
    }
    let scale = m.norm_inf();
    let asymmetry = m.max_asymmetry();
    if asymmetry > 1e-12 * scale {
        return Err(DttError::NotSymmetric {
            asymmetry,
            tolerance: 1e-12 * scale,
        });
    }

    // symmetrize the working copy so rotations see an exactly symmetric matrix
    let mut a = SquareMatrix::from_fn(n, |p, q| 0.5 * (m.get(p, q) + m.get(q, p)));
    let mut v = want_vectors.then(|| SquareMatrix::identity(n));
    let threshold = 1e-13 * n as f64 * m.norm_frobenius();

    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&a);
    while off > threshold && sweeps < MAX_SWEEPS {
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, v.as_mut(), p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&a);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).total_cmp(&a.get(j, j)));
    let eigenvalues = order.iter().map(|&i| a.get(i, i)).collect();
    let eigenvectors = v.map(|v| SquareMatrix::from_fn(n, |row, col| v.get(row, order[col])));

    let result = EigenResult {
        n,
        eigenvalues,
        eigenvectors,
        sweeps_used: sweeps,
        off_diag_norm: off,
    };
    if off > threshold {
        return Err(DttError::NoConvergence(Box::new(result)));
    }
    Ok(result)
}

/// Annihilate `a[p][q]` with one plane rotation (and accumulate it in `v`).
fn rotate(a: &mut SquareMatrix, v: Option<&mut SquareMatrix>, p: usize, q: usize) {
    let apq = a.get(p, q);
    if apq.abs() < 1e-300 {
        return;
    }
    let app = a.get(p, p);
    let aqq = a.get(q, q);
    let theta = (aqq - app) / (2.0 * apq);
    // smaller root of t^2 + 2 t theta - 1 = 0
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let n = a.n();
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        a.set(k, p, new_kp);
        a.set(p, k, new_kp);
        a.set(k, q, new_kq);
        a.set(q, k, new_kq);
    }
    a.set(p, p, app - t * apq);
    a.set(q, q, aqq + t * apq);
    a.set(p, q, 0.0);
    a.set(q, p, 0.0);

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v.get(k, p);
            let vkq = v.get(k, q);
            v.set(k, p, c * vkp - s * vkq);
            v.set(k, q, s * vkp + c * vkq);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    /// Mean of the members.
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteredSpectrum {
    pub clusters: Vec<Cluster>,
}

impl ClusteredSpectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.clusters.iter().map(|c| c.multiplicity).sum()
    }
}

/// Default `(tol_abs, tol_rel)` for an order-`n` spectrum.
pub fn default_cluster_tolerances(n: usize) -> (f64, f64) {
    (1e-8 * (n as f64).sqrt(), 1e-8)
}

/// Greedy left-to-right grouping of ascending values: a value joins the
/// current cluster when its distance to the cluster's running mean is at
/// most `tol_abs + tol_rel * max(1, |mean|)`.
pub fn cluster_eigenvalues(values: &[f64], tol_abs: f64, tol_rel: f64) -> ClusteredSpectrum {
    let mut clusters: Vec<Cluster> = Vec::new();
    let mut sum = 0.0;
    for &x in values {
        if let Some(last) = clusters.last_mut() {
            let mean = last.value;
            if (x - mean).abs() <= tol_abs + tol_rel * mean.abs().max(1.0) {
                sum += x;
                last.multiplicity += 1;
                last.value = sum / last.multiplicity as f64;
                continue;
            }
        }
        sum = x;
        clusters.push(Cluster {
            value: x,
            multiplicity: 1,
        });
    }
    ClusteredSpectrum { clusters }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dtt::{build_matrix, matrix_multiply, TransformKind};
    use proptest::prelude::*;

    fn check_decomposition(m: &SquareMatrix, r: &EigenResult) {
        let n = m.n();
        let v = r.eigenvectors.as_ref().unwrap();
        let av = matrix_multiply(m, v).unwrap();
        let vl = SquareMatrix::from_fn(n, |i, j| v.get(i, j) * r.eigenvalues[j]);
        assert!(av.max_abs_diff(&vl) <= 1e-9 * n as f64 * m.norm_inf());
        let vtv = matrix_multiply(&v.transpose(), v).unwrap();
        assert!(vtv.max_abs_diff(&SquareMatrix::identity(n)) <= 1e-10 * n as f64);
    }

    #[test]
    fn identity_and_exchange() {
        let r = jacobi_eigen(&SquareMatrix::identity(2), true).unwrap();
        assert_eq!(r.eigenvalues, vec![1.0, 1.0]);
        assert_eq!(r.sweeps_used, 0);

        let x = SquareMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let r = jacobi_eigen(&x, true).unwrap();
        assert!((r.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((r.eigenvalues[1] - 1.0).abs() < 1e-15);
        check_decomposition(&x, &r);
    }

    #[test]
    fn dst8_order_two() {
        let m = build_matrix(TransformKind::Dst8, 2).unwrap();
        let r = jacobi_eigen(&m, true).unwrap();
        assert!((r.eigenvalues[0] + 1.5).abs() < 1e-14);
        assert!((r.eigenvalues[1] - 1.0).abs() < 1e-14);
        check_decomposition(&m, &r);
    }

    #[test]
    fn rejects_asymmetric() {
        let m = SquareMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            jacobi_eigen(&m, false),
            Err(DttError::NotSymmetric { .. })
        ));
    }

    #[test]
    fn clustering() {
        let c = cluster_eigenvalues(&[1.0, 1.0 + 1e-12, 2.0], 1e-9, 1e-9);
        assert_eq!(c.clusters.len(), 2);
        assert_eq!(c.clusters[0].multiplicity, 2);
        assert!((c.clusters[0].value - 1.0).abs() < 1e-12);
        assert_eq!(
            c.clusters[1],
            Cluster {
                value: 2.0,
                multiplicity: 1
            }
        );
        assert!(cluster_eigenvalues(&[], 1e-9, 1e-9).clusters.is_empty());
    }

    #[test]
    fn dct4_order_four_clusters() {
        let m = build_matrix(TransformKind::Dct4, 4).unwrap();
        let r = jacobi_eigen(&m, false).unwrap();
        let (ta, tr) = default_cluster_tolerances(4);
        let c = cluster_eigenvalues(&r.eigenvalues, ta, tr);
        assert_eq!(c.clusters.len(), 2);
        let r2 = 2f64.sqrt();
        assert!((c.clusters[0].value + r2).abs() < 1e-12);
        assert!((c.clusters[1].value - r2).abs() < 1e-12);
        assert_eq!(c.clusters[0].multiplicity, 2);
        assert_eq!(c.clusters[1].multiplicity, 2);
    }

    #[test]
    fn dct1_order_nine_clusters() {
        let m = build_matrix(TransformKind::Dct1, 9).unwrap();
        let r = jacobi_eigen(&m, false).unwrap();
        let (ta, tr) = default_cluster_tolerances(9);
        let mults: Vec<usize> = cluster_eigenvalues(&r.eigenvalues, ta, tr)
            .clusters
            .iter()
            .map(|c| c.multiplicity)
            .collect();
        assert_eq!(mults, vec![1, 1, 2, 3, 1, 1]);
    }

    #[test]
    fn large_orders_converge_within_sweep_budget() {
        for kind in TransformKind::ALL {
            for n in [97, 256] {
                let m = build_matrix(kind, n).unwrap();
                let r = jacobi_eigen(&m, false).unwrap();
                assert!(r.sweeps_used <= MAX_SWEEPS);
                let sum: f64 = r.eigenvalues.iter().sum();
                assert!((sum - m.trace()).abs() <= 1e-10 * n as f64 * m.norm_inf());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn similarity_invariants(kind_idx in 0usize..8, n in 2usize..=40) {
            let kind = TransformKind::ALL[kind_idx];
            let m = build_matrix(kind, n).unwrap();
            let r = jacobi_eigen(&m, true).unwrap();
            prop_assert!(r.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
            let sum: f64 = r.eigenvalues.iter().sum();
            prop_assert!((sum - m.trace()).abs() <= 1e-10 * n as f64 * m.norm_inf());
            let sq: f64 = r.eigenvalues.iter().map(|x| x * x).sum();
            let fro2 = m.norm_frobenius().powi(2);
            prop_assert!((sq - fro2).abs() <= 1e-9 * n as f64 * fro2);
            check_decomposition(&m, &r);
        }

        #[test]
        fn clustering_is_idempotent(mut xs in proptest::collection::vec(-10.0f64..10.0, 1..40)) {
            xs.sort_by(f64::total_cmp);
            let once = cluster_eigenvalues(&xs, 1e-3, 1e-3);
            prop_assert_eq!(once.total_multiplicity(), xs.len());
            let reps: Vec<f64> = once.clusters.iter().map(|c| c.value).collect();
            let twice = cluster_eigenvalues(&reps, 1e-3, 1e-3);
            prop_assert_eq!(twice.clusters.len(), reps.len());
            for (c, r) in twice.clusters.iter().zip(&reps) {
                prop_assert_eq!(c.value, *r);
            }
        }
    }
}
