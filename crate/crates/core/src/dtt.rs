//! The eight symmetric non-normalized DCT/DST matrices and the dense
//! value types shared by the rest of the crate.
//!
//! All indices are zero-based: `k` is the row, `l` the column, both in
//! `0..n`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Deref, Index};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{DttError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cosine,
    Sine,
}

/// One of the eight symmetric transform types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    Dct1,
    Dct4,
    Dct5,
    Dct8,
    Dst1,
    Dst4,
    Dst5,
    Dst8,
}

impl TransformKind {
    pub const ALL: [TransformKind; 8] = [
        TransformKind::Dct1,
        TransformKind::Dct4,
        TransformKind::Dct5,
        TransformKind::Dct8,
        TransformKind::Dst1,
        TransformKind::Dst4,
        TransformKind::Dst5,
        TransformKind::Dst8,
    ];

    pub fn family(self) -> Family {
        use TransformKind::*;
        match self {
            Dct1 | Dct4 | Dct5 | Dct8 => Family::Cosine,
            Dst1 | Dst4 | Dst5 | Dst8 => Family::Sine,
        }
    }

    pub fn variant(self) -> u8 {
        use TransformKind::*;
        match self {
            Dct1 | Dst1 => 1,
            Dct4 | Dst4 => 4,
            Dct5 | Dst5 => 5,
            Dct8 | Dst8 => 8,
        }
    }

    /// Lowercase CLI name, e.g. `dct5`.
    pub fn name(self) -> &'static str {
        use TransformKind::*;
        match self {
            Dct1 => "dct1",
            Dct4 => "dct4",
            Dct5 => "dct5",
            Dct8 => "dct8",
            Dst1 => "dst1",
            Dst4 => "dst4",
            Dst5 => "dst5",
            Dst8 => "dst8",
        }
    }

    /// Smallest admissible order. DCT-1 divides by `n - 1`.
    pub fn min_size(self) -> usize {
        match self {
            TransformKind::Dct1 => 2,
            _ => 1,
        }
    }

    pub fn is_admissible(self, n: usize) -> bool {
        n >= self.min_size()
    }

    pub fn check_size(self, n: usize) -> Result<()> {
        if self.is_admissible(n) {
            Ok(())
        } else {
            Err(DttError::SizeTooSmall {
                kind: self,
                n,
                min: self.min_size(),
            })
        }
    }

    /// Entry `(k, l)` is `cos` or `sin` of `numerator * pi / denominator`.
    fn phase(self, n: usize, k: usize, l: usize) -> (i64, i64) {
        use TransformKind::*;
        let (n, k, l) = (n as i64, k as i64, l as i64);
        match self {
            Dct1 => (k * l, n - 1),
            Dct4 | Dst4 => ((2 * k + 1) * (2 * l + 1), 4 * n),
            Dct5 => (2 * k * l, 2 * n - 1),
            Dct8 => ((2 * k + 1) * (2 * l + 1), 4 * n + 2),
            Dst1 => ((k + 1) * (l + 1), n + 1),
            Dst5 => (2 * (k + 1) * (l + 1), 2 * n + 1),
            Dst8 => ((2 * k + 1) * (2 * l + 1), 4 * n - 2),
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownKind(pub String);

impl fmt::Display for UnknownKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown transform kind `{}` (expected one of dct1, dct4, dct5, dct8, dst1, dst4, dst5, dst8)",
            self.0
        )
    }
}

impl std::error::Error for UnknownKind {}

impl FromStr for TransformKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TransformKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownKind(s.to_string()))
    }
}

/// `cos(num * pi / den)` with the argument reduced in exact integer
/// arithmetic to the first octant before any floating-point work.
pub(crate) fn cos_pi_ratio(num: i64, den: i64) -> f64 {
    debug_assert!(den > 0);
    let r = num.rem_euclid(2 * den);
    // angle = r*pi/den = quadrant*pi/2 + rem*pi/(2*den), rem in [0, den)
    let twice = 2 * r;
    let quadrant = twice / den;
    let rem = twice - quadrant * den;
    let (c, s) = if 2 * rem <= den {
        let t = rem as f64 * PI / (2 * den) as f64;
        (t.cos(), t.sin())
    } else {
        let t = (den - rem) as f64 * PI / (2 * den) as f64;
        (t.sin(), t.cos())
    };
    let v = match quadrant {
        0 => c,
        1 => -s,
        2 => -c,
        _ => s,
    };
    // no negative zeros
    v + 0.0
}

/// `sin(num * pi / den)`, via `cos(x - pi/2)`.
pub(crate) fn sin_pi_ratio(num: i64, den: i64) -> f64 {
    cos_pi_ratio(2 * num - den, 2 * den)
}

/// Dense real vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![0.0; n])
    }

    /// Standard basis vector `e_k` (zero-based `k`).
    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[k] = 1.0;
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_inf(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn scaled(&self, s: f64) -> Vector {
        Vector(self.0.iter().map(|x| s * x).collect())
    }

    /// `self + s * other`
    pub fn axpy(&self, s: f64, other: &Vector) -> Vector {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + s * b)
                .collect(),
        )
    }

    pub fn max_abs_diff(&self, other: &Vector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl From<Vec<f64>> for Vector {
    fn from(v: Vec<f64>) -> Self {
        Vector(v)
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Dense `n x n` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for k in 0..n {
            for l in 0..n {
                data.push(f(k, l));
            }
        }
        SquareMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(DttError::DimensionMismatch {
                expected: n,
                actual: bad.len(),
            });
        }
        Ok(SquareMatrix {
            n,
            data: rows.concat(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, k: usize, l: usize) -> f64 {
        self.data[k * self.n + l]
    }

    #[inline]
    pub fn set(&mut self, k: usize, l: usize, v: f64) {
        self.data[k * self.n + l] = v;
    }

    pub fn row(&self, k: usize) -> &[f64] {
        &self.data[k * self.n..(k + 1) * self.n]
    }

    pub fn column(&self, l: usize) -> Vector {
        Vector((0..self.n).map(|k| self.get(k, l)).collect())
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data
            .chunks(self.n.max(1))
            .map(<[f64]>::to_vec)
            .collect()
    }

    pub fn diagonal(&self) -> Vector {
        Vector((0..self.n).map(|k| self.get(k, k)).collect())
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|k| self.get(k, k)).sum()
    }

    /// Induced infinity norm (largest absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|k| self.row(k).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &SquareMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..self.n {
            for l in k + 1..self.n {
                worst = worst.max((self.get(k, l) - self.get(l, k)).abs());
            }
        }
        worst
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|k| (k + 1..self.n).all(|l| self.get(k, l) == self.get(l, k)))
    }

    pub fn transpose(&self) -> SquareMatrix {
        SquareMatrix::from_fn(self.n, |k, l| self.get(l, k))
    }
}

/// A transform matrix tagged with its kind.
#[derive(Debug, Clone, PartialEq)]
pub struct DttMatrix {
    kind: TransformKind,
    matrix: SquareMatrix,
}

impl DttMatrix {
    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    pub fn as_matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SquareMatrix {
        self.matrix
    }
}

impl Deref for DttMatrix {
    type Target = SquareMatrix;

    fn deref(&self) -> &SquareMatrix {
        &self.matrix
    }
}

/// Single entry `(k, l)` of the transform matrix of order `n`.
pub fn entry(kind: TransformKind, n: usize, k: usize, l: usize) -> f64 {
    let (num, den) = kind.phase(n, k, l);
    match kind.family() {
        Family::Cosine => cos_pi_ratio(num, den),
        Family::Sine => sin_pi_ratio(num, den),
    }
}

pub fn build_matrix(kind: TransformKind, n: usize) -> Result<DttMatrix> {
    kind.check_size(n)?;
    Ok(DttMatrix {
        kind,
        matrix: SquareMatrix::from_fn(n, |k, l| entry(kind, n, k, l)),
    })
}

pub fn apply(m: &SquareMatrix, v: &Vector) -> Result<Vector> {
    if v.len() != m.n() {
        return Err(DttError::DimensionMismatch {
            expected: m.n(),
            actual: v.len(),
        });
    }
    Ok(Vector(
        (0..m.n())
            .map(|k| m.row(k).iter().zip(v.as_slice()).map(|(a, b)| a * b).sum())
            .collect(),
    ))
}

/// Plain triple-loop product.
pub fn matrix_multiply(a: &SquareMatrix, b: &SquareMatrix) -> Result<SquareMatrix> {
    if a.n() != b.n() {
        return Err(DttError::DimensionMismatch {
            expected: a.n(),
            actual: b.n(),
        });
    }
    let n = a.n();
    let mut out = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += a.get(i, k) * b.get(k, j);
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive(kind: TransformKind, n: usize, k: usize, l: usize) -> f64 {
        let (n, k, l) = (n as f64, k as f64, l as f64);
        use TransformKind::*;
        match kind {
            Dct1 => (k * l * PI / (n - 1.0)).cos(),
            Dct4 => ((2.0 * k + 1.0) * (2.0 * l + 1.0) * PI / (4.0 * n)).cos(),
            Dct5 => (2.0 * k * l * PI / (2.0 * n - 1.0)).cos(),
            Dct8 => ((2.0 * k + 1.0) * (2.0 * l + 1.0) * PI / (4.0 * n + 2.0)).cos(),
            Dst1 => ((k + 1.0) * (l + 1.0) * PI / (n + 1.0)).sin(),
            Dst4 => ((2.0 * k + 1.0) * (2.0 * l + 1.0) * PI / (4.0 * n)).sin(),
            Dst5 => (2.0 * (k + 1.0) * (l + 1.0) * PI / (2.0 * n + 1.0)).sin(),
            Dst8 => ((2.0 * k + 1.0) * (2.0 * l + 1.0) * PI / (4.0 * n - 2.0)).sin(),
        }
    }

    #[test]
    fn dst1_order_one() {
        let m = build_matrix(TransformKind::Dst1, 1).unwrap();
        assert_eq!(m.rows(), vec![vec![1.0]]);
    }

    #[test]
    fn dct1_order_three_is_exact() {
        let m = build_matrix(TransformKind::Dct1, 3).unwrap();
        assert_eq!(
            m.rows(),
            vec![
                vec![1.0, 1.0, 1.0],
                vec![1.0, 0.0, -1.0],
                vec![1.0, -1.0, 1.0]
            ]
        );
    }

    #[test]
    fn dct4_order_one() {
        let m = build_matrix(TransformKind::Dct4, 1).unwrap();
        assert_eq!(m.get(0, 0), std::f64::consts::FRAC_1_SQRT_2);
    }

    #[test]
    fn dct1_rejects_order_one() {
        let err = build_matrix(TransformKind::Dct1, 1).unwrap_err();
        assert!(matches!(err, DttError::SizeTooSmall { min: 2, n: 1, .. }));
        assert!(build_matrix(TransformKind::Dst4, 0).is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in TransformKind::ALL {
            assert_eq!(kind.name().parse::<TransformKind>().unwrap(), kind);
        }
        assert_eq!(
            "DST8".parse::<TransformKind>().unwrap(),
            TransformKind::Dst8
        );
        assert!("dct2".parse::<TransformKind>().is_err());
    }

    #[test]
    fn reduced_trig_matches_naive_evaluation() {
        for kind in TransformKind::ALL {
            for n in kind.min_size()..=40 {
                for k in 0..n {
                    for l in 0..n {
                        let d = (entry(kind, n, k, l) - naive(kind, n, k, l)).abs();
                        assert!(d < 1e-13, "{kind} n={n} ({k},{l}) off by {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn apply_identity_and_basis() {
        let id = SquareMatrix::identity(2);
        let v = apply(&id, &Vector::from(vec![3.0, 4.0])).unwrap();
        assert_eq!(v.as_slice(), &[3.0, 4.0]);

        let c1 = build_matrix(TransformKind::Dct1, 3).unwrap();
        let v = apply(&c1, &Vector::basis(3, 0)).unwrap();
        assert_eq!(v.as_slice(), &[1.0, 1.0, 1.0]);

        let err = apply(&c1, &Vector::zeros(2)).unwrap_err();
        assert!(matches!(
            err,
            DttError::DimensionMismatch {
                expected: 3,
                actual: 2
            }
        ));
    }

    #[test]
    fn dct5_first_basis_vector_maps_to_q1_plus_q2() {
        // q1 = e0, q2 = [0, 1, 1]
        let c5 = build_matrix(TransformKind::Dct5, 3).unwrap();
        let v = apply(&c5, &Vector::basis(3, 0)).unwrap();
        assert_eq!(v.as_slice(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn products() {
        let exchange = SquareMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(
            matrix_multiply(&exchange, &exchange).unwrap(),
            SquareMatrix::identity(2)
        );

        let c1 = build_matrix(TransformKind::Dct1, 3).unwrap();
        let sq = matrix_multiply(&c1, &c1).unwrap();
        assert_eq!(
            sq.rows(),
            vec![
                vec![3.0, 0.0, 1.0],
                vec![0.0, 2.0, 0.0],
                vec![1.0, 0.0, 3.0]
            ]
        );

        let s1 = build_matrix(TransformKind::Dst1, 2).unwrap();
        let sq = matrix_multiply(&s1, &s1).unwrap();
        let mut expected = SquareMatrix::identity(2);
        expected.set(0, 0, 1.5);
        expected.set(1, 1, 1.5);
        assert!(sq.max_abs_diff(&expected) < 1e-15);

        assert!(matrix_multiply(&c1, &exchange).is_err());
    }

    proptest! {
        #[test]
        fn matrices_are_symmetric_and_bounded(kind_idx in 0usize..8, n in 1usize..=64) {
            let kind = TransformKind::ALL[kind_idx];
            prop_assume!(kind.is_admissible(n));
            let m = build_matrix(kind, n).unwrap();
            prop_assert!(m.is_symmetric());
            for k in 0..n {
                for l in 0..n {
                    prop_assert!(m.get(k, l).abs() <= 1.0);
                }
            }
            if matches!(kind, TransformKind::Dct1 | TransformKind::Dct5) {
                for j in 0..n {
                    prop_assert_eq!(m.get(0, j), 1.0);
                    prop_assert_eq!(m.get(j, 0), 1.0);
                }
            }
        }

        #[test]
        fn apply_basis_extracts_column(kind_idx in 0usize..8, n in 2usize..=32, k in 0usize..32) {
            let kind = TransformKind::ALL[kind_idx];
            prop_assume!(k < n);
            let m = build_matrix(kind, n).unwrap();
            let v = apply(&m, &Vector::basis(n, k)).unwrap();
            prop_assert_eq!(v, m.column(k));
        }
    }
}
