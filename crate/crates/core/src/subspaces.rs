//! Invariant subspaces of DCT-5, DST-8 and DCT-1.
//!
//! For these kinds `R^n` splits into a large subspace `V1` on which
//! `A^2` acts as a scalar, plus one (DCT-5, DST-8) or two (DCT-1)
//! two-dimensional subspaces spanned by a pair `q1, q2`. Restricting `A`
//! to such a pair gives a 2x2 system whose eigenvalues are exactly the
//! multiplicity-one entries of the spectrum.
//!
//! All indices here are zero-based.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::dtt::{apply, build_matrix, SquareMatrix, TransformKind, Vector};
use crate::error::{DttError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QCase {
    Dct5,
    Dst8,
    #[serde(rename = "dct1_odd_V2")]
    Dct1OddV2,
    #[serde(rename = "dct1_odd_V3")]
    Dct1OddV3,
    #[serde(rename = "dct1_even_V2")]
    Dct1EvenV2,
    #[serde(rename = "dct1_even_V3")]
    Dct1EvenV3,
}

impl QCase {
    pub const ALL: [QCase; 6] = [
        QCase::Dct5,
        QCase::Dst8,
        QCase::Dct1OddV2,
        QCase::Dct1OddV3,
        QCase::Dct1EvenV2,
        QCase::Dct1EvenV3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QCase::Dct5 => "dct5",
            QCase::Dst8 => "dst8",
            QCase::Dct1OddV2 => "dct1_odd_V2",
            QCase::Dct1OddV3 => "dct1_odd_V3",
            QCase::Dct1EvenV2 => "dct1_even_V2",
            QCase::Dct1EvenV3 => "dct1_even_V3",
        }
    }

    pub fn kind(self) -> TransformKind {
        match self {
            QCase::Dct5 => TransformKind::Dct5,
            QCase::Dst8 => TransformKind::Dst8,
            _ => TransformKind::Dct1,
        }
    }

    pub fn min_size(self) -> usize {
        match self {
            QCase::Dct5 | QCase::Dst8 => 2,
            QCase::Dct1OddV2 => 3,
            QCase::Dct1OddV3 => 5,
            QCase::Dct1EvenV2 | QCase::Dct1EvenV3 => 4,
        }
    }

    /// `Some(true)` for odd-only cases, `Some(false)` for even-only.
    fn parity(self) -> Option<bool> {
        match self {
            QCase::Dct1OddV2 | QCase::Dct1OddV3 => Some(true),
            QCase::Dct1EvenV2 | QCase::Dct1EvenV3 => Some(false),
            _ => None,
        }
    }

    pub fn is_admissible(self, n: usize) -> bool {
        n >= self.min_size() && self.parity().is_none_or(|odd| (n % 2 == 1) == odd)
    }

    fn check(self, n: usize) -> Result<()> {
        if n < self.min_size() {
            return Err(DttError::ConstructionTooSmall {
                what: self.name(),
                n,
                min: self.min_size(),
            });
        }
        if let Some(odd) = self.parity() {
            if (n % 2 == 1) != odd {
                return Err(DttError::ParityMismatch {
                    what: self.name(),
                    expected: if odd { "odd" } else { "even" },
                    n,
                });
            }
        }
        Ok(())
    }
}

/// The pair cases that apply to `(kind, n)`; empty when there are none.
pub fn cases_for(kind: TransformKind, n: usize) -> Vec<QCase> {
    let candidates: &[QCase] = match kind {
        TransformKind::Dct5 => &[QCase::Dct5],
        TransformKind::Dst8 => &[QCase::Dst8],
        TransformKind::Dct1 if n % 2 == 1 => &[QCase::Dct1OddV2, QCase::Dct1OddV3],
        TransformKind::Dct1 => &[QCase::Dct1EvenV2, QCase::Dct1EvenV3],
        _ => &[],
    };
    candidates
        .iter()
        .copied()
        .filter(|c| c.is_admissible(n))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QPair {
    pub kind: TransformKind,
    pub n: usize,
    pub case: QCase,
    pub q1: Vector,
    pub q2: Vector,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ActionCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl ActionCoeffs {
    pub fn max_abs_diff(&self, other: &ActionCoeffs) -> f64 {
        [
            self.a - other.a,
            self.b - other.b,
            self.c - other.c,
            self.d - other.d,
        ]
        .iter()
        .fold(0.0, |m, x| m.max(x.abs()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct V1Basis {
    pub kind: TransformKind,
    pub n: usize,
    pub vectors: Vec<Vector>,
}

/// Scalar by which `A^2` acts on `V1`.
pub fn v1_scalar(kind: TransformKind, n: usize) -> Result<f64> {
    let nf = n as f64;
    match kind {
        TransformKind::Dct5 | TransformKind::Dst8 => Ok((2.0 * nf - 1.0) / 4.0),
        TransformKind::Dct1 => Ok((nf - 1.0) / 2.0),
        _ => Err(DttError::UnsupportedKind {
            kind,
            what: "V1 subspace",
        }),
    }
}

fn v1_min_size(kind: TransformKind) -> Result<usize> {
    match kind {
        TransformKind::Dct5 | TransformKind::Dst8 => Ok(3),
        TransformKind::Dct1 => Ok(5),
        _ => Err(DttError::UnsupportedKind {
            kind,
            what: "V1 subspace",
        }),
    }
}

fn combo(n: usize, terms: &[(usize, f64)]) -> Vector {
    let mut v = Vector::zeros(n);
    for &(k, x) in terms {
        v.as_mut_slice()[k] += x;
    }
    v
}

/// Difference-vector basis of `V1`.
///
/// - DCT-5: first coordinate zero, remaining coordinates sum to zero.
/// - DST-8: last coordinate zero, alternating sum zero.
/// - DCT-1: first and last zero, even- and odd-indexed sums both zero.
pub fn v1_basis(kind: TransformKind, n: usize) -> Result<V1Basis> {
    let min = v1_min_size(kind)?;
    if n < min {
        return Err(DttError::SizeTooSmall { kind, n, min });
    }
    let vectors = match kind {
        TransformKind::Dct5 => (1..n - 1)
            .map(|k| combo(n, &[(k, 1.0), (k + 1, -1.0)]))
            .collect(),
        TransformKind::Dst8 => (0..n - 2)
            .map(|k| combo(n, &[(k, 1.0), (k + 1, 1.0)]))
            .collect(),
        _ => (1..n - 3)
            .map(|k| combo(n, &[(k, 1.0), (k + 2, -1.0)]))
            .collect(),
    };
    Ok(V1Basis { kind, n, vectors })
}

/// Generators `q1, q2` for `case` at order `n`.
pub fn q_pair(case: QCase, n: usize) -> Result<QPair> {
    case.check(n)?;
    let interior = 1..n - 1;
    let (q1, q2): (Vec<f64>, Vec<f64>) = match case {
        QCase::Dct5 => (
            Vector::basis(n, 0).into_vec(),
            (0..n).map(|k| if k == 0 { 0.0 } else { 1.0 }).collect(),
        ),
        QCase::Dst8 => (
            Vector::basis(n, n - 1).into_vec(),
            (0..n)
                .map(|k| match k {
                    _ if k == n - 1 => 0.0,
                    _ if k % 2 == 0 => 1.0,
                    _ => -1.0,
                })
                .collect(),
        ),
        QCase::Dct1OddV2 => (
            combo(n, &[(0, 1.0), (n - 1, -1.0)]).into_vec(),
            (0..n).map(|k| (k % 2) as f64).collect(),
        ),
        QCase::Dct1OddV3 => (
            combo(n, &[(0, 1.0), (n - 1, 1.0)]).into_vec(),
            (0..n)
                .map(|k| {
                    if interior.contains(&k) && k % 2 == 0 {
                        1.0
                    } else {
                        0.0
                    }
                })
                .collect(),
        ),
        QCase::Dct1EvenV2 | QCase::Dct1EvenV3 => {
            let (tail, even_weight) = if case == QCase::Dct1EvenV2 {
                (SQRT_2 - 1.0, SQRT_2 + 1.0)
            } else {
                (-(SQRT_2 + 1.0), 1.0 - SQRT_2)
            };
            (
                combo(n, &[(0, 1.0), (n - 1, tail)]).into_vec(),
                (0..n)
                    .map(|k| match k {
                        _ if !interior.contains(&k) => 0.0,
                        _ if k % 2 == 1 => 1.0,
                        _ => even_weight,
                    })
                    .collect(),
            )
        }
    };
    Ok(QPair {
        kind: case.kind(),
        n,
        case,
        q1: q1.into(),
        q2: q2.into(),
    })
}

/// Coefficients of the action of `A` on a pair, as derived by hand.
pub fn expected_coeffs(case: QCase, n: usize) -> Result<ActionCoeffs> {
    case.check(n)?;
    let nf = n as f64;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let (a, b, c, d) = match case {
        QCase::Dct5 => (1.0, 1.0, nf - 1.0, -0.5),
        QCase::Dst8 => (-sign, 1.0, nf - 1.0, sign / 2.0),
        QCase::Dct1OddV2 => (0.0, 2.0, (nf - 1.0) / 2.0, 0.0),
        QCase::Dct1OddV3 => (2.0, 2.0, (nf - 3.0) / 2.0, -1.0),
        QCase::Dct1EvenV2 => (
            SQRT_2,
            2.0 - SQRT_2,
            (nf - 2.0) * (1.0 + SQRT_2 / 2.0),
            -SQRT_2 / 2.0,
        ),
        QCase::Dct1EvenV3 => (
            -SQRT_2,
            2.0 + SQRT_2,
            (nf - 2.0) * (1.0 - SQRT_2 / 2.0),
            SQRT_2 / 2.0,
        ),
    };
    Ok(ActionCoeffs { a, b, c, d })
}

/// Coefficients fitted numerically, together with the worst
/// reconstruction residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FittedAction {
    pub coeffs: ActionCoeffs,
    pub residual: f64,
}

/// Project `A q1` and `A q2` onto `span{q1, q2}` via the 2x2 Gram system
/// and report the fit along with its residual, without judging it.
pub fn fit_action(a: &SquareMatrix, pair: &QPair) -> Result<FittedAction> {
    let (q1, q2) = (&pair.q1, &pair.q2);
    let g11 = q1.dot(q1);
    let g12 = q1.dot(q2);
    let g22 = q2.dot(q2);
    let det = g11 * g22 - g12 * g12;
    if det.abs() <= 1e-12 * g11 * g22 {
        return Err(DttError::DegenerateSystem);
    }
    let project = |y: &Vector| {
        let (r1, r2) = (q1.dot(y), q2.dot(y));
        let alpha = (g22 * r1 - g12 * r2) / det;
        let beta = (g11 * r2 - g12 * r1) / det;
        let fit = q1.scaled(alpha).axpy(beta, q2);
        (alpha, beta, y.max_abs_diff(&fit))
    };
    let (ca, cb, r1) = project(&apply(a, q1)?);
    let (cc, cd, r2) = project(&apply(a, q2)?);
    Ok(FittedAction {
        coeffs: ActionCoeffs {
            a: ca,
            b: cb,
            c: cc,
            d: cd,
        },
        residual: r1.max(r2),
    })
}

/// Numeric action coefficients of `build_matrix(kind, n)` on `pair`.
///
/// Fails with [`DttError::NotInvariant`] when the span is not mapped into
/// itself to within `1e-9 * n`.
pub fn action_coeffs(kind: TransformKind, n: usize, pair: &QPair) -> Result<ActionCoeffs> {
    if pair.kind != kind || pair.n != n {
        return Err(DttError::DimensionMismatch {
            expected: n,
            actual: pair.n,
        });
    }
    let a = build_matrix(kind, n)?;
    let fit = fit_action(&a, pair)?;
    let tolerance = 1e-9 * n as f64;
    if fit.residual > tolerance {
        return Err(DttError::NotInvariant {
            residual: fit.residual,
            tolerance,
        });
    }
    Ok(fit.coeffs)
}

/// One eigenpair of the reduced 2x2 system, as coordinates in `(q1, q2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedEigen {
    pub value: f64,
    /// `(1, x)` except when the eigenvector is `q2` itself, then `(0, 1)`.
    pub coords: [f64; 2],
}

impl ReducedEigen {
    /// `x` in `q1 + x q2`, when the eigenvector has that form.
    pub fn x(&self) -> Option<f64> {
        (self.coords[0] != 0.0).then_some(self.coords[1])
    }
}

/// Eigenpairs of `[[a, c], [b, d]]` acting on `(q1, q2)` coordinates,
/// ascending by value.
pub fn reduced_eigen(coeffs: ActionCoeffs) -> Result<[ReducedEigen; 2]> {
    let ActionCoeffs { a, b, c, d } = coeffs;
    let scale = a.abs().max(b.abs()).max(c.abs()).max(d.abs()).max(1.0);
    if b.abs() <= 1e-14 * scale && c.abs() <= 1e-14 * scale {
        let mut pairs = [
            ReducedEigen {
                value: a,
                coords: [1.0, 0.0],
            },
            ReducedEigen {
                value: d,
                coords: [0.0, 1.0],
            },
        ];
        pairs.sort_by(|p, q| p.value.total_cmp(&q.value));
        return Ok(pairs);
    }
    let half_gap = (a - d) / 2.0;
    let disc = half_gap * half_gap + b * c;
    if disc <= 1e-12 * scale * scale {
        return Err(DttError::DegenerateSystem);
    }
    let mid = (a + d) / 2.0;
    let root = disc.sqrt();
    let solve = |lambda: f64| {
        // lambda = a + c x  and  lambda x = b + d x; use the better conditioned one
        let x = if c.abs() >= (lambda - d).abs() {
            (lambda - a) / c
        } else {
            b / (lambda - d)
        };
        ReducedEigen {
            value: lambda,
            coords: [1.0, x],
        }
    };
    Ok([solve(mid - root), solve(mid + root)])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticEigenvector {
    pub case: QCase,
    pub value: f64,
    pub vector: Vector,
}

/// Closed-form eigenvectors `q1 + x q2` for every multiplicity-one
/// eigenvalue, built from [`expected_coeffs`].
pub fn analytic_eigenvectors(kind: TransformKind, n: usize) -> Result<Vec<AnalyticEigenvector>> {
    kind.check_size(n)?;
    let cases = cases_for(kind, n);
    let required = match kind {
        TransformKind::Dct5 | TransformKind::Dst8 => 1,
        TransformKind::Dct1 => 2,
        _ => {
            return Err(DttError::UnsupportedKind {
                kind,
                what: "analytic eigenvectors",
            })
        }
    };
    if cases.len() < required {
        let min = if kind == TransformKind::Dct1 {
            if n % 2 == 1 {
                5
            } else {
                4
            }
        } else {
            2
        };
        return Err(DttError::ConstructionTooSmall {
            what: "analytic eigenvectors",
            n,
            min,
        });
    }
    let mut out = Vec::new();
    for case in cases {
        let pair = q_pair(case, n)?;
        for eig in reduced_eigen(expected_coeffs(case, n)?)? {
            let vector = pair.q1.scaled(eig.coords[0]).axpy(eig.coords[1], &pair.q2);
            out.push(AnalyticEigenvector {
                case,
                value: eig.value,
                vector,
            });
        }
    }
    out.sort_by(|p, q| p.value.total_cmp(&q.value));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dtt::matrix_multiply;
    use crate::spectrum::analytic_spectrum;

    fn close(x: f64, y: f64) -> bool {
        (x - y).abs() <= 1e-12 * x.abs().max(1.0)
    }

    #[test]
    fn generator_examples() {
        let p = q_pair(QCase::Dct5, 3).unwrap();
        assert_eq!(p.q1.as_slice(), &[1.0, 0.0, 0.0]);
        assert_eq!(p.q2.as_slice(), &[0.0, 1.0, 1.0]);
        let p = q_pair(QCase::Dst8, 3).unwrap();
        assert_eq!(p.q1.as_slice(), &[0.0, 0.0, 1.0]);
        assert_eq!(p.q2.as_slice(), &[1.0, -1.0, 0.0]);
        let p = q_pair(QCase::Dct1OddV2, 5).unwrap();
        assert_eq!(p.q1.as_slice(), &[1.0, 0.0, 0.0, 0.0, -1.0]);
        assert_eq!(p.q2.as_slice(), &[0.0, 1.0, 0.0, 1.0, 0.0]);
        let p = q_pair(QCase::Dct1OddV3, 5).unwrap();
        assert_eq!(p.q1.as_slice(), &[1.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(p.q2.as_slice(), &[0.0, 0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn generator_preconditions() {
        assert!(matches!(
            q_pair(QCase::Dct1EvenV2, 5),
            Err(DttError::ParityMismatch { .. })
        ));
        assert!(matches!(
            q_pair(QCase::Dct1OddV3, 3),
            Err(DttError::ConstructionTooSmall { .. })
        ));
        assert!(matches!(
            v1_basis(TransformKind::Dct1, 4),
            Err(DttError::SizeTooSmall { .. })
        ));
        assert!(matches!(
            v1_basis(TransformKind::Dct4, 8),
            Err(DttError::UnsupportedKind { .. })
        ));
    }

    #[test]
    fn v1_examples() {
        let b = v1_basis(TransformKind::Dct5, 4).unwrap();
        assert_eq!(b.vectors.len(), 2);
        for v in &b.vectors {
            assert_eq!(v[0], 0.0);
            assert_eq!(v.as_slice().iter().sum::<f64>(), 0.0);
        }
        let b = v1_basis(TransformKind::Dst8, 4).unwrap();
        assert_eq!(b.vectors.len(), 2);
        for v in &b.vectors {
            assert_eq!(v[3], 0.0);
            let alt: f64 = v
                .as_slice()
                .iter()
                .enumerate()
                .map(|(k, x)| if k % 2 == 0 { *x } else { -x })
                .sum();
            assert_eq!(alt, 0.0);
        }
        assert_eq!(v1_basis(TransformKind::Dct1, 5).unwrap().vectors.len(), 1);
    }

    #[test]
    fn action_examples() {
        let p = q_pair(QCase::Dct5, 4).unwrap();
        let c = action_coeffs(TransformKind::Dct5, 4, &p).unwrap();
        assert!(
            c.max_abs_diff(&ActionCoeffs {
                a: 1.0,
                b: 1.0,
                c: 3.0,
                d: -0.5
            }) < 1e-12
        );
        let p = q_pair(QCase::Dst8, 3).unwrap();
        let c = action_coeffs(TransformKind::Dst8, 3, &p).unwrap();
        assert!(
            c.max_abs_diff(&ActionCoeffs {
                a: 1.0,
                b: 1.0,
                c: 2.0,
                d: -0.5
            }) < 1e-12
        );
        let p = q_pair(QCase::Dct1OddV3, 5).unwrap();
        let c = action_coeffs(TransformKind::Dct1, 5, &p).unwrap();
        assert!(
            c.max_abs_diff(&ActionCoeffs {
                a: 2.0,
                b: 2.0,
                c: 1.0,
                d: -1.0
            }) < 1e-12
        );
    }

    #[test]
    fn non_invariant_span_is_rejected() {
        let mut p = q_pair(QCase::Dct5, 5).unwrap();
        p.q2 = Vector::basis(5, 2);
        assert!(matches!(
            action_coeffs(TransformKind::Dct5, 5, &p),
            Err(DttError::NotInvariant { .. })
        ));
    }

    #[test]
    fn reduced_examples() {
        let [lo, hi] = reduced_eigen(ActionCoeffs {
            a: 1.0,
            b: 1.0,
            c: 3.0,
            d: -0.5,
        })
        .unwrap();
        assert!(close(lo.value, 0.25 - 57f64.sqrt() / 4.0));
        assert!(close(hi.value, 0.25 + 57f64.sqrt() / 4.0));
        let [lo, hi] = reduced_eigen(ActionCoeffs {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        })
        .unwrap();
        assert_eq!((lo.value, hi.value), (1.0, 1.0));
        let [lo, hi] = reduced_eigen(ActionCoeffs {
            a: 0.0,
            b: 2.0,
            c: 2.0,
            d: 0.0,
        })
        .unwrap();
        assert!(close(lo.value, -2.0) && close(hi.value, 2.0));
        assert!(matches!(
            reduced_eigen(ActionCoeffs {
                a: 1.0,
                b: 0.0,
                c: 1.0,
                d: 1.0
            }),
            Err(DttError::DegenerateSystem)
        ));
    }

    #[test]
    fn eigenvector_examples() {
        let v = analytic_eigenvectors(TransformKind::Dct5, 2).unwrap();
        assert!(close(v[0].value, -1.0) && close(v[1].value, 1.5));
        let v = analytic_eigenvectors(TransformKind::Dst8, 2).unwrap();
        assert!(close(v[0].value, -1.5) && close(v[1].value, 1.0));
        let v = analytic_eigenvectors(TransformKind::Dct1, 5).unwrap();
        let r17 = 17f64.sqrt();
        let expected = [-2.0, 0.5 - r17 / 2.0, 0.5 + r17 / 2.0, 2.0];
        let mut got: Vec<f64> = v.iter().map(|e| e.value).collect();
        got.sort_by(f64::total_cmp);
        let mut want = expected.to_vec();
        want.sort_by(f64::total_cmp);
        for (g, w) in got.iter().zip(&want) {
            assert!(close(*g, *w));
        }
        assert!(analytic_eigenvectors(TransformKind::Dct4, 4).is_err());
        assert!(analytic_eigenvectors(TransformKind::Dct1, 3).is_err());
    }

    const KINDS: [TransformKind; 3] = [
        TransformKind::Dct5,
        TransformKind::Dst8,
        TransformKind::Dct1,
    ];

    #[test]
    fn v1_action_and_orthogonality() {
        for kind in KINDS {
            for n in v1_min_size(kind).unwrap()..=64 {
                let a = build_matrix(kind, n).unwrap();
                let a2 = matrix_multiply(&a, &a).unwrap();
                let c = v1_scalar(kind, n).unwrap();
                let basis = v1_basis(kind, n).unwrap();
                let pairs: Vec<QPair> = cases_for(kind, n)
                    .into_iter()
                    .map(|q| q_pair(q, n).unwrap())
                    .collect();
                for v in &basis.vectors {
                    let r = apply(&a2, v).unwrap().max_abs_diff(&v.scaled(c));
                    assert!(r <= 1e-9 * n as f64, "{kind} n={n}: {r}");
                    for p in &pairs {
                        assert!(v.dot(&p.q1).abs() <= 1e-12 * n as f64);
                        assert!(v.dot(&p.q2).abs() <= 1e-12 * n as f64);
                    }
                }
            }
        }
    }

    #[test]
    fn coefficients_and_residuals() {
        for case in QCase::ALL {
            for n in case.min_size()..=64 {
                if !case.is_admissible(n) {
                    continue;
                }
                let kind = case.kind();
                let pair = q_pair(case, n).unwrap();
                let fitted = action_coeffs(kind, n, &pair).unwrap();
                let expected = expected_coeffs(case, n).unwrap();
                assert!(
                    fitted.max_abs_diff(&expected) <= 1e-9,
                    "{case:?} n={n}: {fitted:?}"
                );
            }
        }
    }

    #[test]
    fn eigenvectors_are_eigenvectors_of_simple_values() {
        for kind in KINDS {
            for n in 2..=64 {
                let Ok(vs) = analytic_eigenvectors(kind, n) else {
                    continue;
                };
                let a = build_matrix(kind, n).unwrap();
                let simple: Vec<f64> = analytic_spectrum(kind, n)
                    .unwrap()
                    .simple_values()
                    .collect();
                for e in &vs {
                    let r = apply(&a, &e.vector)
                        .unwrap()
                        .max_abs_diff(&e.vector.scaled(e.value));
                    assert!(
                        r <= 1e-9 * n as f64 * e.vector.norm_inf(),
                        "{kind} n={n}: {r}"
                    );
                    assert!(
                        simple.iter().any(|s| close(*s, e.value)),
                        "{kind} n={n}: {}",
                        e.value
                    );
                }
            }
        }
    }
}
