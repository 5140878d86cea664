//! Exact quadratic irrationals (p + q√D)/r and minus continued fractions.

use std::fmt;

use crate::arith::{floor_div, gcd, isqrt};
use crate::error::{Error, Result};

/// Iteration cap for the minus continued fraction.
const MAX_STEPS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadIrrational {
    p: i128,
    q: i128,
    r: i128,
    d: i128,
}

impl QuadIrrational {
    /// (p + q√d)/r in lowest terms with r > 0. `d` must be a positive
    /// non-square.
    pub fn new(p: i128, q: i128, r: i128, d: i128) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        if d <= 0 || isqrt(d) * isqrt(d) == d {
            return Err(Error::InvalidArgument(format!(
                "{d} is not a positive non-square"
            )));
        }
        let s = if r < 0 { -1 } else { 1 };
        let g = gcd(gcd(p, q), r);
        Ok(QuadIrrational {
            p: s * p / g,
            q: s * q / g,
            r: s * r / g,
            d,
        })
    }

    pub fn parts(&self) -> (i128, i128, i128) {
        (self.p, self.q, self.r)
    }

    pub fn is_rational(&self) -> bool {
        self.q == 0
    }

    pub fn value(&self) -> f64 {
        (self.p as f64 + self.q as f64 * (self.d as f64).sqrt()) / self.r as f64
    }

    pub fn conjugate(&self) -> Self {
        QuadIrrational {
            q: -self.q,
            ..*self
        }
    }

    /// Exact floor.
    pub fn floor(&self) -> i128 {
        // q√d lies strictly between k and k + 1 (or equals k when q = 0)
        let m = isqrt(self.q * self.q * self.d);
        let k = if self.q == 0 {
            0
        } else if self.q > 0 {
            m
        } else {
            -m - 1
        };
        floor_div(self.p + k, self.r)
    }

    /// Exact ceiling; for irrational values this is floor + 1.
    pub fn ceil(&self) -> i128 {
        if self.is_rational() {
            -floor_div(-self.p, self.r)
        } else {
            self.floor() + 1
        }
    }

    pub fn add_int(&self, k: i128) -> Self {
        QuadIrrational {
            p: self.p + k * self.r,
            ..*self
        }
    }

    /// k − self.
    pub fn int_sub(&self, k: i128) -> Self {
        QuadIrrational {
            p: k * self.r - self.p,
            q: -self.q,
            ..*self
        }
    }

    /// 1/self = r(p − q√d)/(p² − q²d).
    pub fn recip(&self) -> Result<Self> {
        let n = self.p * self.p - self.q * self.q * self.d;
        if n == 0 {
            return Err(Error::InvalidArgument("reciprocal of zero".into()));
        }
        QuadIrrational::new(self.r * self.p, -self.r * self.q, n, self.d)
    }

    /// w > 1 and 0 < w' < 1.
    pub fn is_reduced(&self) -> bool {
        !self.is_rational() && self.floor() >= 1 && self.conjugate().floor() == 0
    }
}

impl fmt::Display for QuadIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}√{})/{}", self.p, self.q, self.d, self.r)
    }
}

/// Minimal period [b_0, …, b_{n−1}] of the minus continued fraction of a
/// reduced quadratic irrational, with b_k = ⌈w_k⌉ and w_{k+1} = 1/(b_k − w_k).
pub fn minus_cf(w: &QuadIrrational) -> Result<Vec<i64>> {
    if !w.is_reduced() {
        return Err(Error::NotReduced(w.to_string()));
    }
    let mut out = Vec::new();
    let mut cur = *w;
    for _ in 0..MAX_STEPS {
        let b = cur.ceil();
        out.push(b as i64);
        cur = cur.int_sub(b).recip()?;
        if cur == *w {
            return Ok(out);
        }
    }
    Err(Error::NotReduced(w.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_seed() {
        let w = QuadIrrational::new(3, 1, 2, 5).unwrap();
        assert_eq!(minus_cf(&w).unwrap(), vec![3]);
    }

    #[test]
    fn floors() {
        let w = QuadIrrational::new(1, -1, 2, 5).unwrap(); // ≈ −0.618
        assert_eq!(w.floor(), -1);
        let w = QuadIrrational::new(0, 3, 1, 2).unwrap(); // ≈ 4.24
        assert_eq!(w.floor(), 4);
        let w = QuadIrrational::new(-7, 0, 2, 2).unwrap();
        assert_eq!((w.floor(), w.ceil()), (-4, -3));
    }

    #[test]
    fn unreduced_inputs() {
        let rational = QuadIrrational::new(5, 0, 2, 5).unwrap();
        assert!(matches!(minus_cf(&rational), Err(Error::NotReduced(_))));
        let big_conj = QuadIrrational::new(5, 1, 1, 5).unwrap();
        assert!(matches!(minus_cf(&big_conj), Err(Error::NotReduced(_))));
    }
}
