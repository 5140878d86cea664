//! Real quadratic fields Q(√D) of fundamental discriminant D > 1.
//!
//! Elements are written a + b·ω in the integral basis {1, ω} with
//! ω = (δ + √D)/2, where δ = 1 if D ≡ 1 (mod 4) and δ = 0 otherwise.
//! With c = (D − δ)/4 the minimal polynomial of ω is x² − δx − c.
//! The first real embedding sends √D to the positive root.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{ceil_div, floor_div, is_fundamental_discriminant, isqrt};
use crate::error::{Error, Result};

/// Cap on continued fraction steps in the fundamental unit search.
pub const UNIT_SEARCH_LIMIT: i64 = 1_000_000;

/// An element a + b·ω of the ring of integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntElement {
    pub a: i128,
    pub b: i128,
}

impl IntElement {
    pub const ZERO: IntElement = IntElement { a: 0, b: 0 };
    pub const ONE: IntElement = IntElement { a: 1, b: 0 };

    pub fn new(a: i128, b: i128) -> Self {
        IntElement { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn scale(&self, k: i128) -> Self {
        IntElement::new(self.a * k, self.b * k)
    }

    pub fn add(&self, o: &IntElement) -> Self {
        IntElement::new(self.a + o.a, self.b + o.b)
    }

    pub fn sub(&self, o: &IntElement) -> Self {
        IntElement::new(self.a - o.a, self.b - o.b)
    }

    pub fn neg(&self) -> Self {
        IntElement::new(-self.a, -self.b)
    }

    pub fn to_field(&self) -> FieldElement {
        FieldElement::from_ints(self.a, self.b)
    }
}

impl fmt::Display for IntElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ω", self.a, self.b)
    }
}

/// An element a + b·ω of the field with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    pub a: BigRational,
    pub b: BigRational,
}

impl FieldElement {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        FieldElement { a, b }
    }

    pub fn from_ints(a: i128, b: i128) -> Self {
        FieldElement::new(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
        )
    }

    pub fn from_rational(a: BigRational) -> Self {
        FieldElement::new(a, BigRational::zero())
    }

    pub fn zero() -> Self {
        FieldElement::from_ints(0, 0)
    }

    pub fn one() -> Self {
        FieldElement::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Integer coordinates, if both are integers that fit in i128.
    pub fn to_int(&self) -> Option<IntElement> {
        if !self.a.is_integer() || !self.b.is_integer() {
            return None;
        }
        Some(IntElement::new(
            self.a.to_integer().to_i128()?,
            self.b.to_integer().to_i128()?,
        ))
    }

    /// Least common denominator of the two coordinates.
    pub fn denominator(&self) -> BigInt {
        self.a.denom().lcm(self.b.denom())
    }

    pub fn add(&self, o: &FieldElement) -> Self {
        FieldElement::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &FieldElement) -> Self {
        FieldElement::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn neg(&self) -> Self {
        FieldElement::new(-&self.a, -&self.b)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        FieldElement::new(&self.a * k, &self.b * k)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ω", self.a, self.b)
    }
}

/// A real quadratic field together with its unit and class data.
#[derive(Clone, Debug)]
pub struct QuadraticField {
    disc: i64,
    delta: i128,
    c: i128,
    fund_unit: IntElement,
    unit_norm: i32,
    regulator: f64,
    class_number: u32,
    narrow_h1: bool,
}

impl QuadraticField {
    /// Builds the field of discriminant `disc`: finds the fundamental unit and
    /// computes the class number by enumerating ideal classes up to the
    /// Minkowski bound.
    pub fn new(disc: i64) -> Result<Self> {
        if disc <= 0 {
            return Err(Error::NotRealQuadratic(disc));
        }
        if !is_fundamental_discriminant(disc) {
            return Err(Error::NonFundamentalDiscriminant(disc));
        }
        let delta = if disc % 4 == 1 { 1 } else { 0 };
        let c = (disc as i128 - delta) / 4;
        let (fund_unit, unit_norm) = fundamental_unit(disc as i128, delta)?;
        let mut field = QuadraticField {
            disc,
            delta,
            c,
            fund_unit,
            unit_norm,
            regulator: 0.0,
            class_number: 0,
            narrow_h1: false,
        };
        field.regulator = field.embed_int(&fund_unit).0.ln();
        field.class_number = field.compute_class_number();
        field.narrow_h1 = field.class_number == 1 && unit_norm == -1;
        Ok(field)
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    /// δ in ω = (δ + √D)/2.
    pub fn delta(&self) -> i128 {
        self.delta
    }

    /// c = (D − δ)/4, so that ω² = δω + c.
    pub fn omega_sq_const(&self) -> i128 {
        self.c
    }

    pub fn sqrt_disc(&self) -> f64 {
        (self.disc as f64).sqrt()
    }

    pub fn omega(&self) -> FieldElement {
        FieldElement::from_ints(0, 1)
    }

    /// The two real embeddings of ω.
    pub fn omega_embeddings(&self) -> (f64, f64) {
        let s = self.sqrt_disc();
        let d = self.delta as f64;
        ((d + s) / 2.0, (d - s) / 2.0)
    }

    /// √D = 2ω − δ as an integral element.
    pub fn sqrt_d(&self) -> IntElement {
        IntElement::new(-self.delta, 2)
    }

    pub fn fund_unit(&self) -> FieldElement {
        self.fund_unit.to_field()
    }

    pub fn fund_unit_int(&self) -> IntElement {
        self.fund_unit
    }

    pub fn unit_norm(&self) -> i32 {
        self.unit_norm
    }

    /// log of the first embedding of the fundamental unit.
    pub fn regulator(&self) -> f64 {
        self.regulator
    }

    pub fn class_number(&self) -> u32 {
        self.class_number
    }

    pub fn narrow_h1(&self) -> bool {
        self.narrow_h1
    }

    /// Minkowski bound √D/2 for real quadratic fields.
    pub fn minkowski_bound(&self) -> f64 {
        self.sqrt_disc() / 2.0
    }

    // Integral arithmetic.

    pub fn mul_int(&self, x: &IntElement, y: &IntElement) -> IntElement {
        let bf = x.b * y.b;
        IntElement::new(
            x.a * y.a + bf * self.c,
            x.a * y.b + x.b * y.a + bf * self.delta,
        )
    }

    pub fn conj_int(&self, x: &IntElement) -> IntElement {
        IntElement::new(x.a + x.b * self.delta, -x.b)
    }

    pub fn norm_int(&self, x: &IntElement) -> i128 {
        x.a * x.a + x.a * x.b * self.delta - x.b * x.b * self.c
    }

    pub fn trace_int(&self, x: &IntElement) -> i128 {
        2 * x.a + x.b * self.delta
    }

    pub fn pow_int(&self, x: &IntElement, e: u32) -> IntElement {
        let mut acc = IntElement::ONE;
        for _ in 0..e {
            acc = self.mul_int(&acc, x);
        }
        acc
    }

    /// Inverse of a unit (norm ±1).
    pub fn unit_inverse(&self, u: &IntElement) -> IntElement {
        let n = self.norm_int(u);
        assert!(n == 1 || n == -1, "not a unit");
        self.conj_int(u).scale(n)
    }

    /// Both real embeddings. The smaller one is recomputed from the norm to
    /// avoid cancellation.
    pub fn embed_int(&self, x: &IntElement) -> (f64, f64) {
        let (w1, w2) = self.omega_embeddings();
        let (a, b) = (x.a as f64, x.b as f64);
        let (mut s1, mut s2) = (a + b * w1, a + b * w2);
        let n = self.norm_int(x) as f64;
        if n != 0.0 {
            if s1.abs() >= s2.abs() {
                s2 = n / s1;
            } else {
                s1 = n / s2;
            }
        }
        (s1, s2)
    }

    /// Exact signs of the two embeddings.
    pub fn signs_int(&self, x: &IntElement) -> (i32, i32) {
        let t = 2 * x.a + x.b * self.delta;
        let d = self.disc as i128;
        (sign_of_sum(t, x.b, d), sign_of_sum(t, -x.b, d))
    }

    pub fn is_totally_positive_int(&self, x: &IntElement) -> bool {
        self.signs_int(x) == (1, 1)
    }

    // Rational arithmetic.

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let bf = &x.b * &y.b;
        let c = BigRational::from_integer(self.c.into());
        let delta = BigRational::from_integer(self.delta.into());
        FieldElement::new(
            &x.a * &y.a + &bf * &c,
            &x.a * &y.b + &x.b * &y.a + &bf * &delta,
        )
    }

    pub fn conj(&self, x: &FieldElement) -> FieldElement {
        let delta = BigRational::from_integer(self.delta.into());
        FieldElement::new(&x.a + &x.b * &delta, -&x.b)
    }

    pub fn norm(&self, x: &FieldElement) -> BigRational {
        let c = BigRational::from_integer(self.c.into());
        let delta = BigRational::from_integer(self.delta.into());
        &x.a * &x.a + &x.a * &x.b * &delta - &x.b * &x.b * &c
    }

    pub fn trace(&self, x: &FieldElement) -> BigRational {
        let delta = BigRational::from_integer(self.delta.into());
        BigRational::from_integer(2.into()) * &x.a + &x.b * &delta
    }

    pub fn inv(&self, x: &FieldElement) -> Option<FieldElement> {
        let n = self.norm(x);
        if n.is_zero() {
            return None;
        }
        Some(self.conj(x).scale(&n.recip()))
    }

    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Option<FieldElement> {
        Some(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &FieldElement, e: i64) -> Option<FieldElement> {
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        let mut acc = FieldElement::one();
        for _ in 0..e.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Some(acc)
    }

    /// Both real embeddings of a rational-coordinate element.
    pub fn embed(&self, x: &FieldElement) -> (f64, f64) {
        let den = x.denominator();
        let scale = BigRational::from_integer(den.clone());
        let num = x.scale(&scale);
        let d = den.to_f64().unwrap_or(f64::INFINITY);
        match num.to_int() {
            Some(xi) => {
                let (s1, s2) = self.embed_int(&xi);
                (s1 / d, s2 / d)
            }
            None => {
                let (w1, w2) = self.omega_embeddings();
                let a = x.a.to_f64().unwrap_or(f64::NAN);
                let b = x.b.to_f64().unwrap_or(f64::NAN);
                (a + b * w1, a + b * w2)
            }
        }
    }

    /// Exact signs of both embeddings.
    pub fn signs(&self, x: &FieldElement) -> (i32, i32) {
        let den = BigRational::from_integer(x.denominator());
        let y = x.scale(&den);
        let two = BigInt::from(2);
        let t = &two * y.a.to_integer() + y.b.to_integer() * BigInt::from(self.delta);
        let b = y.b.to_integer();
        let d = BigInt::from(self.disc);
        (sign_of_sum_big(&t, &b, &d), sign_of_sum_big(&t, &(-&b), &d))
    }

    pub fn is_totally_positive(&self, x: &FieldElement) -> bool {
        self.signs(x) == (1, 1)
    }

    /// True iff every totally positive unit is a square. Decided from the
    /// fundamental unit: the totally positive units are generated by ε if
    /// ±ε is totally positive and by ε² otherwise.
    pub fn totally_positive_units_are_squares(&self) -> bool {
        let e = self.fund_unit;
        !(self.is_totally_positive_int(&e) || self.is_totally_positive_int(&e.neg()))
    }

    /// Generator > 1 of the group of totally positive units.
    pub fn totally_positive_unit_generator(&self) -> IntElement {
        let e = self.fund_unit;
        if self.is_totally_positive_int(&e) {
            e
        } else {
            self.mul_int(&e, &e)
        }
    }

    /// Numerators x = α·√D of the totally positive α in the inverse
    /// different with tr(α) ≤ `trace_bound`, ordered by (tr α, a).
    ///
    /// With x = a + bω one has tr(α) = b, and α ≫ 0 iff b > 0 and N(x) < 0.
    pub fn inverse_different_numerators(&self, trace_bound: i64) -> Vec<IntElement> {
        let mut out = Vec::new();
        let d = self.disc as i128;
        for b in 1..=(trace_bound.max(0) as i128) {
            // (2a + bδ)² < b²D
            let lim = b * b * d;
            let r = isqrt(lim);
            let r = if r * r == lim { r - 1 } else { r };
            let lo = ceil_div(-r - b * self.delta, 2);
            let hi = floor_div(r - b * self.delta, 2);
            for a in lo..=hi {
                out.push(IntElement::new(a, b));
            }
        }
        out
    }

    /// The totally positive elements of the inverse different with trace at
    /// most `trace_bound`, in increasing trace order with ties broken by the
    /// coordinates of α·√D.
    pub fn enumerate_inverse_different(&self, trace_bound: &BigRational) -> Vec<FieldElement> {
        let t = trace_bound
            .floor()
            .to_integer()
            .to_i64()
            .unwrap_or(i64::MAX);
        self.inverse_different_numerators(t)
            .iter()
            .map(|x| self.alpha_from_numerator(x))
            .collect()
    }

    /// α = x / √D.
    pub fn alpha_from_numerator(&self, x: &IntElement) -> FieldElement {
        let y = self.mul_int(x, &self.sqrt_d());
        let d = BigRational::from_integer(self.disc.into());
        y.to_field().scale(&d.recip())
    }

    /// x = α·√D, integral for α in the inverse different.
    pub fn numerator_of_alpha(&self, alpha: &FieldElement) -> Option<IntElement> {
        self.mul(alpha, &self.sqrt_d().to_field()).to_int()
    }
}

/// Sign of t + b·√d for d > 0 not a square.
fn sign_of_sum(t: i128, b: i128, d: i128) -> i32 {
    match (t.signum(), b.signum()) {
        (0, 0) => 0,
        (ts, 0) => ts as i32,
        (0, bs) => bs as i32,
        (1, 1) => 1,
        (-1, -1) => -1,
        (1, -1) => (t * t - b * b * d).signum() as i32,
        _ => (b * b * d - t * t).signum() as i32,
    }
}

fn sign_of_sum_big(t: &BigInt, b: &BigInt, d: &BigInt) -> i32 {
    let s = |x: &BigInt| {
        if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        }
    };
    match (s(t), s(b)) {
        (0, 0) => 0,
        (ts, 0) => ts,
        (0, bs) => bs,
        (1, 1) => 1,
        (-1, -1) => -1,
        (1, -1) => s(&(t * t - b * b * d)),
        _ => s(&(b * b * d - t * t)),
    }
}

/// Smallest unit ε = (t + y√D)/2 > 1, found by ascending search over y.
/// For a fixed y the norm −1 solution t² = y²D − 4 is the smaller one.
/// Fundamental unit from the regular continued fraction of ω: the first
/// convergent p/q with N(p − qω) = ±1 gives ε = p − qω' > 1.
fn fundamental_unit(d: i128, delta: i128) -> Result<(IntElement, i32)> {
    let c = (d - delta) / 4;
    let overflow = || Error::UnitSearchExhausted(UNIT_SEARCH_LIMIT);
    // x_k = (P + √D)/Q, starting from ω = (δ + √D)/2
    let (mut pp, mut qq) = (delta, 2i128);
    let sd = isqrt(d);
    let (mut p0, mut p1) = (0i128, 1i128);
    let (mut q0, mut q1) = (1i128, 0i128);
    for _ in 0..UNIT_SEARCH_LIMIT {
        let a = floor_div(pp + sd, qq);
        let p2 = a
            .checked_mul(p1)
            .and_then(|x| x.checked_add(p0))
            .ok_or_else(overflow)?;
        let q2 = a
            .checked_mul(q1)
            .and_then(|x| x.checked_add(q0))
            .ok_or_else(overflow)?;
        (p0, p1, q0, q1) = (p1, p2, q1, q2);
        // N(p − qω) = p² − δpq − cq²
        let norm = p1
            .checked_mul(p1)
            .and_then(|x| x.checked_sub(delta * p1.checked_mul(q1)?))
            .and_then(|x| x.checked_sub(c.checked_mul(q1)?.checked_mul(q1)?))
            .ok_or_else(overflow)?;
        if norm.abs() == 1 {
            return Ok((IntElement::new(p1 - q1 * delta, q1), norm as i32));
        }
        // x_{k+1} = 1/(x_k − a)
        pp = a * qq - pp;
        qq = (d - pp * pp) / qq;
    }
    Err(overflow())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn units_of_small_fields() {
        let f5 = QuadraticField::new(5).unwrap();
        assert_eq!(f5.fund_unit_int(), IntElement::new(0, 1));
        assert_eq!(f5.unit_norm(), -1);
        assert!(f5.narrow_h1());

        let f8 = QuadraticField::new(8).unwrap();
        assert_eq!(f8.fund_unit_int(), IntElement::new(1, 1));
        assert_eq!(f8.unit_norm(), -1);

        let f12 = QuadraticField::new(12).unwrap();
        assert_eq!(f12.fund_unit_int(), IntElement::new(2, 1));
        assert_eq!(f12.unit_norm(), 1);
        assert!(!f12.narrow_h1());
    }

    #[test]
    fn rejects_bad_discriminants() {
        assert_eq!(
            QuadraticField::new(10).unwrap_err().kind(),
            "NonFundamentalDiscriminant"
        );
        assert_eq!(
            QuadraticField::new(-4).unwrap_err().kind(),
            "NotRealQuadratic"
        );
        assert_eq!(
            QuadraticField::new(1).unwrap_err().kind(),
            "NonFundamentalDiscriminant"
        );
    }

    #[test]
    fn exact_signs_match_floats() {
        let f = QuadraticField::new(13).unwrap();
        for a in -20..20 {
            for b in -20..20 {
                let x = IntElement::new(a, b);
                if x.is_zero() {
                    continue;
                }
                let (s1, s2) = f.embed_int(&x);
                let (g1, g2) = f.signs_int(&x);
                assert_eq!(g1 as f64, s1.signum());
                assert_eq!(g2 as f64, s2.signum());
            }
        }
    }

    #[test]
    fn inverse_different_small() {
        let f = QuadraticField::new(5).unwrap();
        let xs = f.inverse_different_numerators(1);
        assert_eq!(xs, vec![IntElement::new(-1, 1), IntElement::new(0, 1)]);
        assert!(f.inverse_different_numerators(0).is_empty());
        for x in &xs {
            let alpha = f.alpha_from_numerator(x);
            assert_eq!(f.trace(&alpha), BigRational::one());
            assert!(f.is_totally_positive(&alpha));
        }
    }
}
