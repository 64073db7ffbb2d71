//! Closed forms for the cosine-sum identities used to square the
//! transform matrices, and the quadratic (Gauss-type) sums used for
//! their traces. Every closed form has a term-by-term oracle next to it.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{DttError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdentityId {
    /// `sum_{m=0}^{n} cos(m a pi / n) = (1 + (-1)^a) / 2`, `2n ∤ a`
    Lag1,
    /// `sum_{m=0}^{n} cos(2 m b pi / (2n+1)) = 1/2`, `(2n+1) ∤ b`
    Lag2,
    /// `sum_{m=0}^{n-1} cos((2m+1) a pi / (2n)) = 0`, `2n ∤ a`
    Id1,
    /// `sum_{m=0}^{n-1} cos((2m+1) a pi / (2n+1)) = (-1)^(a+1) / 2`, `(2n+1) ∤ a`
    Id2,
    /// `sum_{m=1}^{n} cos(m a pi / (n+1)) = -((-1)^a + 1) / 2`, `(2n+2) ∤ a`
    Id3,
    /// `sum_{m=0}^{n-1} cos(2 (m+1) a pi / (2n+1)) = -1/2`, `(2n+1) ∤ a`
    Id4,
    /// `sum_{k=0}^{m-1} cos(2 k^2 pi / m)`
    GaussCos,
    /// `sum_{k=0}^{m-1} sin(2 k^2 pi / m)`
    GaussSin,
}

impl IdentityId {
    pub const ALL: [IdentityId; 8] = [
        IdentityId::Lag1,
        IdentityId::Lag2,
        IdentityId::Id1,
        IdentityId::Id2,
        IdentityId::Id3,
        IdentityId::Id4,
        IdentityId::GaussCos,
        IdentityId::GaussSin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Lag1 => "lag1",
            IdentityId::Lag2 => "lag2",
            IdentityId::Id1 => "id1",
            IdentityId::Id2 => "id2",
            IdentityId::Id3 => "id3",
            IdentityId::Id4 => "id4",
            IdentityId::GaussCos => "gauss_cos",
            IdentityId::GaussSin => "gauss_sin",
        }
    }

    pub fn is_gauss(self) -> bool {
        matches!(self, IdentityId::GaussCos | IdentityId::GaussSin)
    }

    /// The integer that must not divide the free parameter.
    pub fn modulus(self, n: u64) -> Option<i64> {
        let n = n as i64;
        match self {
            IdentityId::Lag1 | IdentityId::Id1 => Some(2 * n),
            IdentityId::Lag2 | IdentityId::Id2 | IdentityId::Id4 => Some(2 * n + 1),
            IdentityId::Id3 => Some(2 * n + 2),
            IdentityId::GaussCos | IdentityId::GaussSin => None,
        }
    }

    /// Denominator of the cosine argument (in units of pi).
    pub fn denominator(self, n: u64) -> i64 {
        let n = n as i64;
        match self {
            IdentityId::Lag1 => n,
            IdentityId::Id1 => 2 * n,
            IdentityId::Lag2 | IdentityId::Id2 | IdentityId::Id4 => 2 * n + 1,
            IdentityId::Id3 => n + 1,
            IdentityId::GaussCos | IdentityId::GaussSin => n,
        }
    }

    pub fn term_count(self, n: u64) -> usize {
        match self {
            IdentityId::Lag1 | IdentityId::Lag2 => n as usize + 1,
            _ => n as usize,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Structural parameter (`n`, or `m` for the Gauss sums) and the free
/// integer (`a` or `b`; absent for the Gauss sums).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumParams {
    pub n_or_m: u64,
    pub a_or_b: Option<i64>,
}

impl SumParams {
    pub fn new(n: u64, a: i64) -> Self {
        SumParams {
            n_or_m: n,
            a_or_b: Some(a),
        }
    }

    pub fn gauss(m: u64) -> Self {
        SumParams {
            n_or_m: m,
            a_or_b: None,
        }
    }
}

fn is_even(a: i64) -> bool {
    a.rem_euclid(2) == 0
}

fn check(id: IdentityId, n: u64, a: i64) -> Result<()> {
    if n == 0 {
        return Err(DttError::ZeroParameter {
            identity: id.name(),
        });
    }
    if let Some(modulus) = id.modulus(n) {
        if a.rem_euclid(modulus) == 0 {
            return Err(DttError::DivisibilityViolation {
                identity: id.name(),
                modulus,
                value: a,
            });
        }
    }
    Ok(())
}

pub fn lag1(n: u64, a: i64) -> Result<f64> {
    check(IdentityId::Lag1, n, a)?;
    Ok(if is_even(a) { 1.0 } else { 0.0 })
}

pub fn lag2(n: u64, b: i64) -> Result<f64> {
    check(IdentityId::Lag2, n, b)?;
    Ok(0.5)
}

pub fn id1(n: u64, a: i64) -> Result<f64> {
    check(IdentityId::Id1, n, a)?;
    Ok(0.0)
}

pub fn id2(n: u64, a: i64) -> Result<f64> {
    check(IdentityId::Id2, n, a)?;
    Ok(if is_even(a) { -0.5 } else { 0.5 })
}

pub fn id3(n: u64, a: i64) -> Result<f64> {
    check(IdentityId::Id3, n, a)?;
    Ok(if is_even(a) { -1.0 } else { 0.0 })
}

pub fn id4(n: u64, a: i64) -> Result<f64> {
    check(IdentityId::Id4, n, a)?;
    Ok(-0.5)
}

/// `(cos(m pi / 2), sin(m pi / 2))`, chosen exactly from `m mod 4`.
fn quarter_turn(m: u64) -> (f64, f64) {
    match m % 4 {
        0 => (1.0, 0.0),
        1 => (0.0, 1.0),
        2 => (-1.0, 0.0),
        _ => (0.0, -1.0),
    }
}

pub fn gauss_cos(m: u64) -> Result<f64> {
    check(IdentityId::GaussCos, m, 0)?;
    let (c, s) = quarter_turn(m);
    Ok((m as f64).sqrt() / 2.0 * (1.0 + c + s))
}

pub fn gauss_sin(m: u64) -> Result<f64> {
    check(IdentityId::GaussSin, m, 0)?;
    let (c, s) = quarter_turn(m);
    Ok((m as f64).sqrt() / 2.0 * (1.0 + c - s))
}

fn free_parameter(id: IdentityId, params: SumParams) -> Result<i64> {
    params.a_or_b.ok_or(DttError::MissingParameter {
        identity: id.name(),
    })
}

/// Right-hand side of `id` at `params`.
pub fn closed_form(id: IdentityId, params: SumParams) -> Result<f64> {
    let n = params.n_or_m;
    match id {
        IdentityId::GaussCos => gauss_cos(n),
        IdentityId::GaussSin => gauss_sin(n),
        _ => {
            let a = free_parameter(id, params)?;
            match id {
                IdentityId::Lag1 => lag1(n, a),
                IdentityId::Lag2 => lag2(n, a),
                IdentityId::Id1 => id1(n, a),
                IdentityId::Id2 => id2(n, a),
                IdentityId::Id3 => id3(n, a),
                IdentityId::Id4 => id4(n, a),
                IdentityId::GaussCos | IdentityId::GaussSin => unreachable!(),
            }
        }
    }
}

/// Left-hand side of the linear-phase identities as an arithmetic
/// progression of numerators over a fixed denominator:
/// `sum_{j < terms} cos((first + j * step) * pi / den)`.
#[derive(Debug, Clone, Copy)]
struct LinearPhase {
    den: i64,
    first: i64,
    step: i64,
    terms: usize,
}

impl LinearPhase {
    fn of(id: IdentityId, n: u64, a: i64) -> LinearPhase {
        let den = id.denominator(n);
        let terms = id.term_count(n);
        let (first, step) = match id {
            IdentityId::Lag1 => (0, a),
            IdentityId::Lag2 => (0, 2 * a),
            IdentityId::Id1 | IdentityId::Id2 => (a, 2 * a),
            IdentityId::Id3 => (a, a),
            IdentityId::Id4 => (2 * a, 2 * a),
            IdentityId::GaussCos | IdentityId::GaussSin => unreachable!(),
        };
        LinearPhase {
            den,
            first,
            step,
            terms,
        }
    }

    fn period(&self) -> i64 {
        2 * self.den
    }

    fn term(&self, reduced: i64) -> f64 {
        (reduced as f64 * PI / self.den as f64).cos()
    }

    fn sum(&self) -> f64 {
        let period = self.period();
        let mut acc = 0.0;
        for j in 0..self.terms as i64 {
            acc += self.term((self.first + j * self.step).rem_euclid(period));
        }
        acc
    }

    /// Same sum as [`LinearPhase::sum`], with the cosines looked up in a
    /// precomputed table and the numerator advanced incrementally.
    fn sum_with_table(&self, table: &[f64]) -> f64 {
        let period = self.period();
        let step = self.step.rem_euclid(period);
        let mut idx = self.first.rem_euclid(period);
        let mut acc = 0.0;
        for _ in 0..self.terms {
            acc += table[idx as usize];
            idx += step;
            if idx >= period {
                idx -= period;
            }
        }
        acc
    }
}

fn gauss_direct(m: u64, sine: bool) -> f64 {
    let m = m as i64;
    let mut acc = 0.0;
    for k in 0..m {
        let reduced = (2 * k * k).rem_euclid(2 * m);
        let x = reduced as f64 * PI / m as f64;
        acc += if sine { x.sin() } else { x.cos() };
    }
    acc
}

/// Term-by-term floating-point summation of the left-hand side of `id`.
/// Phase numerators are reduced modulo `2 * den` in integers first.
pub fn direct_sum(id: IdentityId, params: SumParams) -> Result<f64> {
    let n = params.n_or_m;
    match id {
        IdentityId::GaussCos | IdentityId::GaussSin => {
            check(id, n, 0)?;
            Ok(gauss_direct(n, id == IdentityId::GaussSin))
        }
        _ => {
            let a = free_parameter(id, params)?;
            check(id, n, a)?;
            Ok(LinearPhase::of(id, n, a).sum())
        }
    }
}

/// Outcome of checking one identity at one structural parameter over
/// every admissible free parameter `|a| <= 4 * den`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeCheck {
    pub identity: IdentityId,
    pub n: u64,
    pub points: usize,
    pub terms: usize,
    pub max_abs_dev: f64,
    /// Free parameter at which the largest deviation occurred.
    pub worst_param: Option<i64>,
    pub tolerance: f64,
}

impl LatticeCheck {
    pub fn passed(&self) -> bool {
        self.max_abs_dev <= self.tolerance
    }
}

/// Allowed deviation between closed form and direct summation.
pub fn tolerance_for(terms: usize) -> f64 {
    1e-10 * terms as f64
}

pub fn check_lattice(id: IdentityId, n: u64) -> Result<LatticeCheck> {
    if n == 0 {
        return Err(DttError::ZeroParameter {
            identity: id.name(),
        });
    }
    let terms = id.term_count(n);
    let tolerance = tolerance_for(terms);
    if id.is_gauss() {
        let params = SumParams::gauss(n);
        let dev = (closed_form(id, params)? - direct_sum(id, params)?).abs();
        return Ok(LatticeCheck {
            identity: id,
            n,
            points: 1,
            terms,
            max_abs_dev: dev,
            worst_param: None,
            tolerance,
        });
    }

    let den = id.denominator(n);
    let modulus = id.modulus(n).expect("linear identities have a modulus");
    let table: Vec<f64> = (0..2 * den)
        .map(|r| (r as f64 * PI / den as f64).cos())
        .collect();
    // The direct sum depends on `a` only through `a mod 2*den`.
    let mut by_residue: Vec<Option<f64>> = vec![None; (2 * den) as usize];

    let mut points = 0;
    let mut max_abs_dev: f64 = 0.0;
    let mut worst_param = None;
    let bound = 4 * den;
    for a in -bound..=bound {
        if a.rem_euclid(modulus) == 0 {
            continue;
        }
        let slot = &mut by_residue[a.rem_euclid(2 * den) as usize];
        let direct = *slot.get_or_insert_with(|| LinearPhase::of(id, n, a).sum_with_table(&table));
        let dev = (closed_form(id, SumParams::new(n, a))? - direct).abs();
        points += 1;
        if dev > max_abs_dev || worst_param.is_none() {
            max_abs_dev = max_abs_dev.max(dev);
            worst_param = Some(a);
        }
    }
    Ok(LatticeCheck {
        identity: id,
        n,
        points,
        terms,
        max_abs_dev,
        worst_param,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(x: f64, y: f64, tol: f64) {
        assert!((x - y).abs() <= tol, "{x} vs {y}");
    }

    #[test]
    fn lagrange_examples() {
        assert_eq!(lag1(4, 2).unwrap(), 1.0);
        assert_eq!(lag1(4, 3).unwrap(), 0.0);
        assert_eq!(lag1(5, 7).unwrap(), 0.0);
        assert_close(
            direct_sum(IdentityId::Lag1, SumParams::new(5, 7)).unwrap(),
            0.0,
            1e-12,
        );
        assert_close(
            direct_sum(IdentityId::Lag1, SumParams::new(4, 2)).unwrap(),
            1.0,
            1e-12,
        );

        assert_eq!(lag2(2, 1).unwrap(), 0.5);
        assert_eq!(lag2(3, 8).unwrap(), 0.5);
        assert_close(
            direct_sum(IdentityId::Lag2, SumParams::new(3, 8)).unwrap(),
            0.5,
            1e-12,
        );
        assert!(matches!(
            lag2(1, 3),
            Err(DttError::DivisibilityViolation {
                modulus: 3,
                value: 3,
                ..
            })
        ));
    }

    #[test]
    fn remaining_identity_examples() {
        assert_eq!(id1(3, 1).unwrap(), 0.0);
        assert_eq!(id2(3, 2).unwrap(), -0.5);
        assert_eq!(id4(4, 5).unwrap(), -0.5);
        assert_close(
            direct_sum(IdentityId::Id4, SumParams::new(4, 5)).unwrap(),
            -0.5,
            1e-12,
        );
        assert_close(
            direct_sum(IdentityId::Id3, SumParams::new(3, 2)).unwrap(),
            -1.0,
            1e-12,
        );
        assert_eq!(id3(3, 2).unwrap(), -1.0);
        assert_eq!(id3(3, 3).unwrap(), 0.0);
    }

    #[test]
    fn zero_is_a_divisibility_violation() {
        for id in IdentityId::ALL.into_iter().filter(|id| !id.is_gauss()) {
            assert!(matches!(
                closed_form(id, SumParams::new(3, 0)),
                Err(DttError::DivisibilityViolation { .. })
            ));
            assert!(direct_sum(id, SumParams::new(3, 0)).is_err());
        }
    }

    #[test]
    fn negative_parameters() {
        assert_eq!(lag1(4, -2).unwrap(), 1.0);
        assert_eq!(id2(3, -1).unwrap(), 0.5);
        assert_eq!(id3(3, -2).unwrap(), -1.0);
        assert!(lag1(4, -8).is_err());
        assert_close(
            direct_sum(IdentityId::Id2, SumParams::new(3, -1)).unwrap(),
            0.5,
            1e-12,
        );
    }

    #[test]
    fn gauss_examples() {
        assert_eq!(gauss_cos(1).unwrap(), 1.0);
        assert_eq!(gauss_cos(4).unwrap(), 2.0);
        assert_close(gauss_cos(8).unwrap(), 2.0 * 2f64.sqrt(), 1e-15);
        assert_eq!(gauss_sin(1).unwrap(), 0.0);
        assert_eq!(gauss_sin(4).unwrap(), 2.0);
        assert_eq!(gauss_sin(3).unwrap(), 3f64.sqrt());
        assert_close(
            direct_sum(IdentityId::GaussCos, SumParams::gauss(4)).unwrap(),
            2.0,
            1e-12,
        );
        assert_close(
            direct_sum(IdentityId::GaussCos, SumParams::gauss(8)).unwrap(),
            8f64.sqrt(),
            1e-12,
        );
        assert_close(
            direct_sum(IdentityId::GaussSin, SumParams::gauss(12)).unwrap(),
            12f64.sqrt(),
            1e-12,
        );
        assert!(gauss_cos(0).is_err());
    }

    #[test]
    fn missing_parameter_is_an_error() {
        let p = SumParams {
            n_or_m: 3,
            a_or_b: None,
        };
        assert!(matches!(
            closed_form(IdentityId::Id1, p),
            Err(DttError::MissingParameter { .. })
        ));
    }

    #[test]
    fn table_sum_matches_plain_sum() {
        for id in IdentityId::ALL.into_iter().filter(|id| !id.is_gauss()) {
            for n in 1..20u64 {
                let den = id.denominator(n);
                let table: Vec<f64> = (0..2 * den)
                    .map(|r| (r as f64 * PI / den as f64).cos())
                    .collect();
                for a in -3 * den..3 * den {
                    let phase = LinearPhase::of(id, n, a);
                    assert_eq!(phase.sum(), phase.sum_with_table(&table));
                }
            }
        }
    }

    #[test]
    fn lattice_small_range() {
        for id in IdentityId::ALL {
            for n in 1..=48 {
                let check = check_lattice(id, n).unwrap();
                assert!(check.passed(), "{check:?}");
            }
        }
        let c = check_lattice(IdentityId::Lag1, 1).unwrap();
        // a odd in [-4, 4]
        assert_eq!(c.points, 4);
    }
}
