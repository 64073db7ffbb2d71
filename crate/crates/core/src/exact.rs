//! Exact values of the form `a + b*sqrt(2) + c*sqrt(s)` with rational
//! `a`, `b`, `c` and square-free `s > 2`.
//!
//! Every eigenvalue in the analytic tables has this shape. Because
//! `1`, `sqrt(2)` and `sqrt(s)` are linearly independent over the
//! rationals, two canonical values are equal exactly when their fields
//! are equal, which is what the small-order merge relies on.

use std::fmt;
use std::ops::Neg;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Surd {
    rational: Rational,
    sqrt2: Rational,
    coeff: Rational,
    /// Square-free, `>= 3` when `coeff != 0`, otherwise `1`.
    radicand: u64,
}

/// Split `x` into `(f, s)` with `x = f^2 * s` and `s` square-free.
fn square_free_split(mut x: u64) -> (u64, u64) {
    if x == 0 {
        return (0, 1);
    }
    let mut f = 1;
    let mut s = 1;
    let mut p = 2;
    while p * p <= x {
        let mut e = 0;
        while x.is_multiple_of(p) {
            x /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            f *= p;
        }
        if e % 2 == 1 {
            s *= p;
        }
        p += 1;
    }
    s *= x;
    (f, s)
}

impl Surd {
    pub fn zero() -> Self {
        Surd::rational(Rational::from_integer(0))
    }

    pub fn rational(q: Rational) -> Self {
        Surd {
            rational: q,
            sqrt2: Rational::from_integer(0),
            coeff: Rational::from_integer(0),
            radicand: 1,
        }
    }

    /// `rational + sqrt2 * sqrt(2) + coeff * sqrt(radicand)`, canonicalized.
    ///
    /// # Panics
    /// If `radicand` is negative.
    pub fn new(rational: Rational, sqrt2: Rational, coeff: Rational, radicand: Rational) -> Self {
        assert!(radicand >= Rational::from_integer(0), "negative radicand");
        let mut out = Surd {
            rational,
            sqrt2,
            coeff: Rational::from_integer(0),
            radicand: 1,
        };
        let (p, r) = (*radicand.numer() as u64, *radicand.denom() as u64);
        // sqrt(p/r) = sqrt(p*r)/r = (f/r) sqrt(s)
        let (f, s) = square_free_split(p * r);
        let c = coeff * Rational::new(f as i64, r as i64);
        match s {
            _ if c == Rational::from_integer(0) => {}
            1 => out.rational += c,
            2 => out.sqrt2 += c,
            _ => {
                out.coeff = c;
                out.radicand = s;
            }
        }
        if out.coeff == Rational::from_integer(0) {
            out.radicand = 1;
        }
        out
    }

    /// `sqrt(q)`
    pub fn sqrt(q: Rational) -> Self {
        Surd::new(
            Rational::from_integer(0),
            Rational::from_integer(0),
            Rational::from_integer(1),
            q,
        )
    }

    /// Sum, if the result stays representable (at most one general radicand).
    pub fn checked_add(self, other: Surd) -> Option<Surd> {
        let zero = Rational::from_integer(0);
        let (coeff, radicand) = if other.coeff == zero {
            (self.coeff, self.radicand)
        } else if self.coeff == zero || self.radicand == other.radicand {
            (self.coeff + other.coeff, other.radicand)
        } else {
            return None;
        };
        Some(Surd {
            rational: self.rational + other.rational,
            sqrt2: self.sqrt2 + other.sqrt2,
            coeff,
            radicand: if coeff == zero { 1 } else { radicand },
        })
    }

    pub fn to_f64(&self) -> f64 {
        let q = |r: &Rational| *r.numer() as f64 / *r.denom() as f64;
        q(&self.rational)
            + q(&self.sqrt2) * std::f64::consts::SQRT_2
            + q(&self.coeff) * (self.radicand as f64).sqrt()
    }

    pub fn is_rational(&self) -> bool {
        self.sqrt2 == Rational::from_integer(0) && self.coeff == Rational::from_integer(0)
    }
}

impl Neg for Surd {
    type Output = Surd;

    fn neg(self) -> Surd {
        Surd {
            rational: -self.rational,
            sqrt2: -self.sqrt2,
            coeff: -self.coeff,
            radicand: self.radicand,
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = Rational::from_integer(0);
        let one = Rational::from_integer(1);
        let mut wrote = false;
        let mut term =
            |f: &mut fmt::Formatter<'_>, c: Rational, root: Option<u64>| -> fmt::Result {
                if c == zero {
                    return Ok(());
                }
                let mag = if c < zero { -c } else { c };
                if wrote {
                    f.write_str(if c < zero { " - " } else { " + " })?;
                } else if c < zero {
                    f.write_str("-")?;
                }
                wrote = true;
                match root {
                    None => write!(f, "{mag}"),
                    Some(s) if mag == one => write!(f, "sqrt({s})"),
                    Some(s) => write!(f, "{mag}*sqrt({s})"),
                }
            };
        term(f, self.rational, None)?;
        term(f, self.sqrt2, Some(2))?;
        term(f, self.coeff, Some(self.radicand))?;
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn square_free() {
        assert_eq!(square_free_split(72), (6, 2));
        assert_eq!(square_free_split(57), (1, 57));
        assert_eq!(square_free_split(1), (1, 1));
        assert_eq!(square_free_split(49), (7, 1));
    }

    #[test]
    fn folds_perfect_squares() {
        // 1/2 - sqrt(9/4) = -1
        let v = Surd::new(q(1, 2), q(0, 1), q(-1, 1), q(9, 4));
        assert_eq!(v, Surd::rational(q(-1, 1)));
        // sqrt(2)/4 - sqrt(9/8) = -sqrt(2)/2 = -sqrt(1/2)
        let v = Surd::new(q(0, 1), q(1, 4), q(-1, 1), q(9, 8));
        assert_eq!(v, -Surd::sqrt(q(1, 2)));
    }

    #[test]
    fn distinct_radicands_stay_distinct() {
        let a = Surd::new(q(1, 4), q(0, 1), q(1, 1), q(57, 16));
        let b = Surd::sqrt(q(7, 4));
        assert_ne!(a, b);
        assert!((a.to_f64() - (0.25 + 57f64.sqrt() / 4.0)).abs() < 1e-15);
        assert!(a.checked_add(b).is_none());
    }

    #[test]
    fn display() {
        assert_eq!((-Surd::sqrt(q(2, 1))).to_string(), "-sqrt(2)");
        assert_eq!(
            Surd::new(q(1, 4), q(0, 1), q(-1, 1), q(57, 16)).to_string(),
            "1/4 - 1/4*sqrt(57)"
        );
        assert_eq!(Surd::zero().to_string(), "0");
        assert_eq!(Surd::rational(q(3, 2)).to_string(), "3/2");
    }
}
