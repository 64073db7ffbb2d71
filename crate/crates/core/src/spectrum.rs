//! Analytic eigenvalues and multiplicities for all eight kinds.
//!
//! The tables are written with signed multiplicities so that they can be
//! evaluated at every admissible order. For very small `n` some table
//! entries coincide (e.g. DCT-1 at `n = 3`, where `1/2 - sqrt(n - 3/4)`
//! equals `-sqrt((n-1)/2)`) and some multiplicities come out zero or
//! negative; coinciding entries are merged by exact comparison and their
//! multiplicities summed before the result is validated.

use std::collections::HashMap;

use serde::Serialize;

use crate::dtt::TransformKind;
use crate::error::{DttError, Result};
use crate::exact::{Rational, Surd};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair {
    pub value: f64,
    pub multiplicity: usize,
    pub exact: Surd,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSpec {
    pub kind: TransformKind,
    pub n: usize,
    /// Sorted by strictly increasing value.
    pub pairs: Vec<EigenPair>,
}

impl SpectrumSpec {
    pub fn total_multiplicity(&self) -> usize {
        self.pairs.iter().map(|p| p.multiplicity).sum()
    }

    /// `sum(lambda * mult)`
    pub fn trace(&self) -> f64 {
        self.pairs
            .iter()
            .map(|p| p.value * p.multiplicity as f64)
            .sum()
    }

    /// `sum(lambda^2 * mult)`, equal to `trace(A^2)`.
    pub fn sum_of_squares(&self) -> f64 {
        self.pairs
            .iter()
            .map(|p| p.value * p.value * p.multiplicity as f64)
            .sum()
    }

    /// Eigenvalues with multiplicity one.
    pub fn simple_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.pairs
            .iter()
            .filter(|p| p.multiplicity == 1)
            .map(|p| p.value)
    }
}

/// A table row before merging.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawEntry {
    pub value: Surd,
    pub multiplicity: i64,
}

fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

fn zero() -> Rational {
    q(0, 1)
}

/// `offset + offset_sqrt2 * sqrt(2) + sign * sqrt(radicand)`
fn root_shifted(offset: Rational, offset_sqrt2: Rational, sign: i64, radicand: Rational) -> Surd {
    Surd::new(offset, offset_sqrt2, q(sign, 1), radicand)
}

fn entry(value: Surd, multiplicity: i64) -> RawEntry {
    RawEntry {
        value,
        multiplicity,
    }
}

/// `(positive, negative)` multiplicities for the two-eigenvalue kinds.
fn paired_counts(n: i64) -> (i64, i64) {
    if n % 2 == 0 {
        (n / 2, n / 2)
    } else {
        ((n + 1) / 2, (n - 1) / 2)
    }
}

/// The unmerged analytic table for `(kind, n)`.
pub fn raw_table(kind: TransformKind, n: usize) -> Result<Vec<RawEntry>> {
    kind.check_size(n)?;
    let ni = n as i64;
    let odd = ni % 2 == 1;
    let two_valued = |square: Rational| {
        let (p, m) = paired_counts(ni);
        vec![entry(-Surd::sqrt(square), m), entry(Surd::sqrt(square), p)]
    };
    let table = match kind {
        TransformKind::Dct4 | TransformKind::Dst4 => two_valued(q(ni, 2)),
        TransformKind::Dct8 | TransformKind::Dst5 => two_valued(q(2 * ni + 1, 4)),
        TransformKind::Dst1 => two_valued(q(ni + 1, 2)),
        TransformKind::Dct5 | TransformKind::Dst8 => {
            // DCT-5 shift is +1/4; DST-8 shift is -(-1)^n / 4
            let shift = match kind {
                TransformKind::Dct5 => q(1, 4),
                _ if odd => q(1, 4),
                _ => q(-1, 4),
            };
            let outer = q(16 * ni - 7, 16);
            let inner = q(2 * ni - 1, 4);
            let (p, m) = if odd {
                ((ni - 1) / 2, (ni - 3) / 2)
            } else {
                (ni / 2 - 1, ni / 2 - 1)
            };
            vec![
                entry(root_shifted(shift, zero(), -1, outer), 1),
                entry(-Surd::sqrt(inner), m),
                entry(Surd::sqrt(inner), p),
                entry(root_shifted(shift, zero(), 1, outer), 1),
            ]
        }
        TransformKind::Dct1 => {
            let inner = q(ni - 1, 2);
            if odd {
                let outer = q(4 * ni - 3, 4);
                vec![
                    entry(-Surd::sqrt(q(ni - 1, 1)), 1),
                    entry(root_shifted(q(1, 2), zero(), -1, outer), 1),
                    entry(-Surd::sqrt(inner), (ni - 5) / 2),
                    entry(Surd::sqrt(inner), (ni - 3) / 2),
                    entry(Surd::sqrt(q(ni - 1, 1)), 1),
                    entry(root_shifted(q(1, 2), zero(), 1, outer), 1),
                ]
            } else {
                let outer = q(8 * ni - 7, 8);
                vec![
                    entry(root_shifted(zero(), q(-1, 4), -1, outer), 1),
                    entry(root_shifted(zero(), q(1, 4), -1, outer), 1),
                    entry(-Surd::sqrt(inner), ni / 2 - 2),
                    entry(Surd::sqrt(inner), ni / 2 - 2),
                    entry(root_shifted(zero(), q(-1, 4), 1, outer), 1),
                    entry(root_shifted(zero(), q(1, 4), 1, outer), 1),
                ]
            }
        }
    };
    Ok(table)
}

/// Merge coinciding entries, drop zero multiplicities, validate.
pub fn merge_entries(kind: TransformKind, n: usize, raw: &[RawEntry]) -> Result<SpectrumSpec> {
    let mut order: Vec<Surd> = Vec::new();
    let mut totals: HashMap<Surd, i64> = HashMap::new();
    for e in raw {
        let slot = totals.entry(e.value).or_insert_with(|| {
            order.push(e.value);
            0
        });
        *slot += e.multiplicity;
    }

    let mut pairs = Vec::new();
    for value in order {
        let m = totals[&value];
        if m < 0 {
            return Err(DttError::DegenerateSpectrum {
                kind,
                n,
                reason: format!("eigenvalue {value} has multiplicity {m} after merging"),
            });
        }
        if m > 0 {
            pairs.push(EigenPair {
                value: value.to_f64(),
                multiplicity: m as usize,
                exact: value,
            });
        }
    }
    pairs.sort_by(|a, b| a.value.total_cmp(&b.value));

    if let Some(w) = pairs.windows(2).find(|w| w[0].value >= w[1].value) {
        return Err(DttError::DegenerateSpectrum {
            kind,
            n,
            reason: format!(
                "distinct exact values {} and {} are not strictly ordered",
                w[0].exact, w[1].exact
            ),
        });
    }
    let analytic = SpectrumSpec { kind, n, pairs };
    if analytic.total_multiplicity() != n {
        return Err(DttError::DegenerateSpectrum {
            kind,
            n,
            reason: format!("multiplicities sum to {}", analytic.total_multiplicity()),
        });
    }
    Ok(analytic)
}

pub fn analytic_spectrum(kind: TransformKind, n: usize) -> Result<SpectrumSpec> {
    let raw = raw_table(kind, n)?;
    merge_entries(kind, n, &raw)
}

pub fn distinct_eigenvalue_count(kind: TransformKind, n: usize) -> Result<usize> {
    Ok(analytic_spectrum(kind, n)?.pairs.len())
}
