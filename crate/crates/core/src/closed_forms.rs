//! Closed forms for `A^2` and `trace(A)`.
//!
//! Every square is stored as `diag(d) + P` where `P` is one of four fixed
//! full patterns (its diagonal included), so the diagonal vector `d`
//! already has the pattern's own diagonal contribution removed.

use serde::{Deserialize, Serialize};

use crate::dtt::{SquareMatrix, TransformKind, Vector};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PerturbationPattern {
    None,
    /// `1/2` everywhere.
    AllOnesHalf,
    /// `(1 + (-1)^(k+l)) / 2`: one where `k + l` is even.
    ParityP,
    /// `(-1)^(k+l) / 2`.
    AlternatingHalf,
}

impl PerturbationPattern {
    pub fn entry(self, k: usize, l: usize) -> f64 {
        let even = (k + l).is_multiple_of(2);
        match self {
            PerturbationPattern::None => 0.0,
            PerturbationPattern::AllOnesHalf => 0.5,
            PerturbationPattern::ParityP => {
                if even {
                    1.0
                } else {
                    0.0
                }
            }
            PerturbationPattern::AlternatingHalf => {
                if even {
                    0.5
                } else {
                    -0.5
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SquareClosedForm {
    pub kind: TransformKind,
    pub n: usize,
    pub diagonal: Vector,
    pub perturbation: PerturbationPattern,
}

impl SquareClosedForm {
    pub fn entry(&self, k: usize, l: usize) -> f64 {
        let d = if k == l { self.diagonal[k] } else { 0.0 };
        d + self.perturbation.entry(k, l)
    }

    pub fn materialize(&self) -> SquareMatrix {
        SquareMatrix::from_fn(self.n, |k, l| self.entry(k, l))
    }

    /// `trace(A^2)`, the sum of the materialized diagonal.
    pub fn trace(&self) -> f64 {
        (0..self.n).map(|k| self.entry(k, k)).sum()
    }
}

pub fn materialize(form: &SquareClosedForm) -> SquareMatrix {
    form.materialize()
}

fn ratio(num: i64, den: i64) -> f64 {
    num as f64 / den as f64
}

pub fn square_closed_form(kind: TransformKind, n: usize) -> Result<SquareClosedForm> {
    kind.check_size(n)?;
    let ni = n as i64;
    let constant = |v: f64| Vector::from(vec![v; n]);
    let (diagonal, perturbation) = match kind {
        TransformKind::Dct4 | TransformKind::Dst4 => {
            (constant(ratio(ni, 2)), PerturbationPattern::None)
        }
        TransformKind::Dst1 => (constant(ratio(ni + 1, 2)), PerturbationPattern::None),
        TransformKind::Dct8 | TransformKind::Dst5 => {
            (constant(ratio(2 * ni + 1, 4)), PerturbationPattern::None)
        }
        TransformKind::Dct1 => {
            // diag(n-1, (n-1)/2, ..., (n-1)/2, n-1) + P
            let mut d = vec![ratio(ni - 1, 2); n];
            d[0] = (ni - 1) as f64;
            d[n - 1] = (ni - 1) as f64;
            (Vector::from(d), PerturbationPattern::ParityP)
        }
        TransformKind::Dct5 => {
            // diag((2n-1)/2, (2n-1)/4, ...) + 1/2 * ones
            let mut d = vec![ratio(2 * ni - 1, 4); n];
            d[0] = ratio(2 * ni - 1, 2);
            (Vector::from(d), PerturbationPattern::AllOnesHalf)
        }
        TransformKind::Dst8 => {
            // diag((2n-1)/4, ..., (2n-1)/4, (2n-1)/2) + 1/2 * [(-1)^(k+l)]
            let mut d = vec![ratio(2 * ni - 1, 4); n];
            d[n - 1] = ratio(2 * ni - 1, 2);
            (Vector::from(d), PerturbationPattern::AlternatingHalf)
        }
    };
    Ok(SquareClosedForm {
        kind,
        n,
        diagonal,
        perturbation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceValue {
    pub kind: TransformKind,
    pub n: usize,
    pub value: f64,
}

pub fn trace_closed_form(kind: TransformKind, n: usize) -> Result<TraceValue> {
    kind.check_size(n)?;
    let nf = n as f64;
    let even = n.is_multiple_of(2);
    let value = match kind {
        TransformKind::Dct1 => {
            if even {
                0.0
            } else {
                (2.0 + (2.0 * nf - 2.0).sqrt()) / 2.0
            }
        }
        TransformKind::Dct4 | TransformKind::Dst4 => {
            if even {
                0.0
            } else {
                (nf / 2.0).sqrt()
            }
        }
        TransformKind::Dct5 => {
            if even {
                0.5
            } else {
                (1.0 + (2.0 * nf - 1.0).sqrt()) / 2.0
            }
        }
        TransformKind::Dct8 | TransformKind::Dst5 => {
            if even {
                0.0
            } else {
                (2.0 * nf + 1.0).sqrt() / 2.0
            }
        }
        TransformKind::Dst1 => {
            if even {
                0.0
            } else {
                ((nf + 1.0) / 2.0).sqrt()
            }
        }
        TransformKind::Dst8 => {
            if even {
                -0.5
            } else {
                (1.0 + (2.0 * nf - 1.0).sqrt()) / 2.0
            }
        }
    };
    Ok(TraceValue { kind, n, value })
}
