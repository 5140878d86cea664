//! Holomorphic parallel weight 2 Eisenstein series and real-analytic lattice
//! sums.
//!
//! The holomorphic series is
//! −ζ_F(−1)/4 + Σ_{α ∈ 𝔡⁻¹, α ≫ 0} σ₁(α𝔡)·e^{2πi(σ₁(α)z₁ + σ₂(α)z₂)}.
//! Elements α are handled through x = α·√D, so that α𝔡 = (x) and tr α is
//! the ω-coordinate of x.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::field::{FieldElement, IntElement, QuadraticField};
use crate::ideal::FractionalIdeal;
use crate::lvalues::{completed_xi, zeta_minus_one};

/// Minimum number of coefficients for the Hecke checks.
pub const MIN_HECKE_KEYS: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct FourierTerm {
    pub alpha: FieldElement,
    /// x = α·√D.
    pub numerator: IntElement,
    pub coefficient: u128,
}

#[derive(Clone, Debug)]
pub struct FourierExpansion {
    pub field: QuadraticField,
    pub constant: BigRational,
    pub terms: Vec<FourierTerm>,
    pub trace_bound: BigRational,
}

impl FourierExpansion {
    pub fn coefficient(&self, alpha: &FieldElement) -> Option<u128> {
        self.terms
            .iter()
            .find(|t| &t.alpha == alpha)
            .map(|t| t.coefficient)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Exact expansion up to the trace bound.
pub fn fourier_holomorphic(
    field: &QuadraticField,
    trace_bound: &BigRational,
) -> Result<FourierExpansion> {
    fourier_holomorphic_with(field, trace_bound, ExecMode::default())
}

pub fn fourier_holomorphic_with(
    field: &QuadraticField,
    trace_bound: &BigRational,
    mode: ExecMode,
) -> Result<FourierExpansion> {
    if !field.narrow_h1() {
        return Err(Error::NarrowClassNumberNotOne);
    }
    if *trace_bound < BigRational::from_integer(0.into()) {
        return Err(Error::InvalidArgument(
            "trace bound must be nonnegative".into(),
        ));
    }
    let t = trace_bound
        .floor()
        .to_integer()
        .to_i64()
        .unwrap_or(i64::MAX);
    let xs = field.inverse_different_numerators(t);
    let coeffs = exec::map(mode, &xs, |x| {
        field.principal_ideal_int(x).and_then(|i| field.sigma1(&i))
    });
    let terms = xs
        .iter()
        .zip(coeffs)
        .map(|(x, c)| {
            Ok(FourierTerm {
                alpha: field.alpha_from_numerator(x),
                numerator: *x,
                coefficient: c?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let constant = -zeta_minus_one(field) / BigRational::from_integer(4.into());
    Ok(FourierExpansion {
        field: field.clone(),
        constant,
        terms,
        trace_bound: trace_bound.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: &'static str,
    pub checked: usize,
    pub passed: bool,
    /// First offending key, if any.
    pub failure: Option<String>,
}

#[derive(Clone, Debug)]
pub struct HeckeReport {
    pub lines: Vec<CheckLine>,
}

impl HeckeReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }
}

struct Tally {
    name: &'static str,
    checked: usize,
    failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            checked: 0,
            failure: None,
        }
    }

    fn record(&mut self, ok: bool, key: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(key());
        }
    }

    fn finish(self) -> CheckLine {
        CheckLine {
            name: self.name,
            checked: self.checked,
            passed: self.failure.is_none(),
            failure: self.failure,
        }
    }
}

/// Checks the stored coefficients against σ₁, the unit ideal, agreement on
/// keys generating the same ideal, σ₁(𝔭) = 1 + N(𝔭), multiplicativity on
/// coprime keys, and σ₁(𝔭^{k+1}) = σ₁(𝔭)σ₁(𝔭^k) − N(𝔭)σ₁(𝔭^{k−1}).
pub fn hecke_checks(exp: &FourierExpansion) -> Result<HeckeReport> {
    if exp.len() < MIN_HECKE_KEYS {
        return Err(Error::InsufficientCoefficients {
            found: exp.len(),
            needed: MIN_HECKE_KEYS,
        });
    }
    let f = &exp.field;
    let mut sigma = Tally::new("sigma1");
    let mut unit = Tally::new("unit-ideal");
    let mut consistent = Tally::new("same-ideal");
    let mut prime = Tally::new("prime");
    let mut mult = Tally::new("coprime-multiplicativity");
    let mut recursion = Tally::new("prime-power-recursion");

    let mut by_ideal: HashMap<FractionalIdeal, (u128, String)> = HashMap::new();
    let mut order: Vec<FractionalIdeal> = Vec::new();
    let mut factors = HashMap::new();
    for t in &exp.terms {
        let key = || format!("alpha = {} (x = {})", t.alpha, t.numerator);
        let ideal = f.principal_ideal_int(&t.numerator)?;
        let fac = f.factor_ideal(&ideal)?;
        let s = f.sigma1(&ideal)?;
        sigma.record(s == t.coefficient, key);
        if ideal.is_unit() {
            unit.record(t.coefficient == 1, key);
        }
        if fac.len() == 1 && fac[0].exponent == 1 {
            let n = fac[0].ideal.norm_int().expect("integral") as u128;
            prime.record(t.coefficient == 1 + n, key);
        }
        match by_ideal.get(&ideal) {
            Some((c, _)) => consistent.record(*c == t.coefficient, key),
            None => {
                by_ideal.insert(ideal, (t.coefficient, key()));
                order.push(ideal);
                factors.insert(ideal, fac);
            }
        }
    }

    for (i, a) in order.iter().enumerate() {
        for b in &order[i + 1..] {
            let (na, nb) = (a.norm_int().unwrap(), b.norm_int().unwrap());
            if na == 1 || nb == 1 || gcd(na, nb) != 1 {
                continue;
            }
            let ab = f.ideal_mul(a, b);
            if let Some((cab, kab)) = by_ideal.get(&ab) {
                let (ca, cb) = (by_ideal[a].0, by_ideal[b].0);
                mult.record(*cab == ca * cb, || kab.clone());
            }
        }
    }

    for ideal in &order {
        let fac = &factors[ideal];
        if fac.len() != 1 || fac[0].exponent < 2 {
            continue;
        }
        let p = fac[0].ideal;
        let k = fac[0].exponent - 1;
        let np = p.norm_int().unwrap();
        let lookup = |e: u32| by_ideal.get(&f.ideal_pow(&p, e)).map(|(c, _)| *c as i128);
        if let (Some(c1), Some(ck), Some(ckm1)) = (lookup(1), lookup(k), lookup(k - 1)) {
            let (ckp1, key) = &by_ideal[ideal];
            recursion.record(*ckp1 as i128 == c1 * ck - np * ckm1, || key.clone());
        }
    }

    Ok(HeckeReport {
        lines: vec![
            sigma.finish(),
            unit.finish(),
            consistent.finish(),
            prime.finish(),
            mult.finish(),
            recursion.finish(),
        ],
    })
}

#[derive(Clone, Copy, Debug)]
pub struct Evaluation {
    pub value: Complex64,
    /// Bound on the omitted terms of trace above the expansion's bound.
    pub tail_bound: f64,
}

/// Sums the stored expansion at z = (z₁, z₂) in ℍ².
pub fn eval_holomorphic(exp: &FourierExpansion, z: [Complex64; 2]) -> Result<Evaluation> {
    if !(z[0].im > 0.0 && z[1].im > 0.0) {
        return Err(Error::InvalidArgument(
            "imaginary parts must be positive".into(),
        ));
    }
    let f = &exp.field;
    let sd = f.sqrt_disc();
    let mut value = Complex64::new(exp.constant.to_f64().unwrap_or(f64::NAN), 0.0);
    for t in &exp.terms {
        let (x1, x2) = f.embed_int(&t.numerator);
        let (a1, a2) = (x1 / sd, -x2 / sd);
        let phase = 2.0 * PI * (a1 * z[0].re + a2 * z[1].re);
        let decay = -2.0 * PI * (a1 * z[0].im + a2 * z[1].im);
        value += Complex64::from_polar(t.coefficient as f64 * decay.exp(), phase);
    }
    let t = exp
        .trace_bound
        .floor()
        .to_integer()
        .to_i64()
        .unwrap_or(i64::MAX);
    Ok(Evaluation {
        value,
        tail_bound: tail_bound(f.disc() as f64, t, z[0].im.min(z[1].im)),
    })
}

/// Σ_{b > T} (b√D + 1)·(D b²/4)²·e^{−2π·y·b}: at most b√D + 1 keys have
/// trace b, each coefficient is at most N(x)² ≤ (Db²/4)², and each term has
/// modulus at most e^{−2π·y·tr α}.
fn tail_bound(d: f64, t: i64, y: f64) -> f64 {
    let term =
        |b: f64| (b * d.sqrt() + 1.0) * (d * b * b / 4.0).powi(2) * (-2.0 * PI * y * b).exp();
    let mut total = 0.0;
    let mut b = (t.max(0) + 1) as f64;
    loop {
        let cur = term(b);
        let ratio = term(b + 1.0) / cur;
        if ratio < 0.5 || cur == 0.0 {
            // the ratio decreases in b, so the rest is geometric
            if cur == 0.0 || !cur.is_finite() {
                return if cur.is_finite() {
                    total
                } else {
                    f64::INFINITY
                };
            }
            return total + cur / (1.0 - ratio);
        }
        total += cur;
        b += 1.0;
        if b > 1e7 {
            return f64::INFINITY;
        }
    }
}

/// Embeddings (σ₁(c), σ₂(c), σ₁(d), σ₂(d)) of the primitive pairs.
#[derive(Clone, Debug)]
pub struct PairTable {
    pub pairs: Vec<(IntElement, IntElement)>,
    embeddings: Vec<[f64; 4]>,
}

impl PairTable {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Σ N(y)^s / |N(cz + d)|^{2s} over the table.
    pub fn sum(&self, s: f64, z: [Complex64; 2]) -> f64 {
        let ny = z[0].im * z[1].im;
        let mut total = 0.0;
        for e in &self.embeddings {
            let w1 = z[0] * e[0] + e[2];
            let w2 = z[1] * e[1] + e[3];
            total += (ny / (w1.norm_sqr() * w2.norm_sqr())).powf(s);
        }
        total
    }
}

/// Elements with both embeddings of absolute value at most `h`.
fn box_elements(field: &QuadraticField, h: f64) -> Vec<IntElement> {
    let (w1, w2) = field.omega_embeddings();
    let vmax = (2.0 * h / field.sqrt_disc()).floor() as i128;
    let mut out = Vec::new();
    for v in -vmax..=vmax {
        let vf = v as f64;
        let lo = (-h - vf * w1).max(-h - vf * w2).ceil() as i128;
        let hi = (h - vf * w1).min(h - vf * w2).floor() as i128;
        for u in lo..=hi {
            let x = IntElement::new(u, v);
            let (s1, s2) = field.embed_int(&x);
            if s1.abs() <= h && s2.abs() <= h {
                out.push(x);
            }
        }
    }
    out
}

/// The orbit representative condition for a nonzero x: σ₁(x) > 0 and
/// 1 ≤ |σ₁(x)/σ₂(x)| < ε², decided exactly. |σ₁| ≥ |σ₂| holds iff
/// (σ₁ − σ₂)(σ₁ + σ₂) = b√D·tr(x) ≥ 0.
pub fn is_normalized(field: &QuadraticField, x: &IntElement) -> bool {
    if field.signs_int(x).0 != 1 {
        return false;
    }
    if x.b * field.trace_int(x) < 0 {
        return false;
    }
    let y = field.mul_int(&field.unit_inverse(&field.fund_unit_int()), x);
    y.b * field.trace_int(&y) < 0
}

/// The ideal (c, d) is 𝒪: gcd of the 2×2 minors of {c, cω, d, dω} is 1.
pub fn is_primitive(field: &QuadraticField, c: &IntElement, d: &IntElement) -> bool {
    let omega = IntElement::new(0, 1);
    let v = [*c, field.mul_int(c, &omega), *d, field.mul_int(d, &omega)];
    let mut g = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            g = gcd(g, v[i].a * v[j].b - v[i].b * v[j].a);
            if g == 1 {
                return true;
            }
        }
    }
    g == 1
}

/// Primitive pairs (c, d), one per 𝒪*-orbit, with all four embeddings
/// bounded by `height_bound`. The representative has its first nonzero
/// entry normalized by [`is_normalized`].
pub fn primitive_pairs(field: &QuadraticField, height_bound: f64, mode: ExecMode) -> PairTable {
    let elems = box_elements(field, height_bound);
    let rows = exec::map(mode, &elems, |c| {
        let mut out = Vec::new();
        if c.is_zero() {
            if let Some(one) = elems.iter().find(|d| **d == IntElement::ONE) {
                out.push((*c, *one));
            }
            return out;
        }
        if !is_normalized(field, c) {
            return out;
        }
        for d in &elems {
            if is_primitive(field, c, d) {
                out.push((*c, *d));
            }
        }
        out
    });
    let pairs: Vec<(IntElement, IntElement)> = rows.into_iter().flatten().collect();
    let embeddings = pairs
        .iter()
        .map(|(c, d)| {
            let (c1, c2) = field.embed_int(c);
            let (d1, d2) = field.embed_int(d);
            [c1, c2, d1, d2]
        })
        .collect();
    PairTable { pairs, embeddings }
}

/// Truncated lattice sum Σ N(y)^s/|N(cz + d)|^{2s} over primitive pairs
/// modulo units, for s > 1.
pub fn lattice_eis_partial(
    field: &QuadraticField,
    s: f64,
    z: [Complex64; 2],
    height_bound: f64,
) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::NotInConvergenceRegion(s));
    }
    if !(z[0].im > 0.0 && z[1].im > 0.0) || !(height_bound > 0.0) {
        return Err(Error::InvalidArgument(
            "need Im z > 0 and a positive height bound".into(),
        ));
    }
    Ok(primitive_pairs(field, height_bound, ExecMode::default()).sum(s, z))
}

/// Average of the lattice sum over x in the fundamental parallelogram of 𝒪,
/// by the midpoint rule with `quad_points` nodes per axis.
pub fn constant_term_numeric(
    field: &QuadraticField,
    s: f64,
    y: [f64; 2],
    height_bound: f64,
    quad_points: usize,
) -> Result<f64> {
    let table = primitive_pairs(field, height_bound, ExecMode::default());
    constant_term_from_table(field, &table, s, y, quad_points, ExecMode::default())
}

pub fn constant_term_from_table(
    field: &QuadraticField,
    table: &PairTable,
    s: f64,
    y: [f64; 2],
    quad_points: usize,
    mode: ExecMode,
) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::NotInConvergenceRegion(s));
    }
    if !(y[0] > 0.0 && y[1] > 0.0) || quad_points == 0 {
        return Err(Error::InvalidArgument(
            "need y > 0 and at least one node".into(),
        ));
    }
    let (w1, w2) = field.omega_embeddings();
    let q = quad_points as f64;
    let values = exec::map_range(mode, quad_points * quad_points, |idx| {
        let t1 = ((idx / quad_points) as f64 + 0.5) / q;
        let t2 = ((idx % quad_points) as f64 + 0.5) / q;
        let x1 = t1 + t2 * w1;
        let x2 = t1 + t2 * w2;
        table.sum(s, [Complex64::new(x1, y[0]), Complex64::new(x2, y[1])])
    });
    Ok(values.into_iter().sum::<f64>() / (q * q))
}

/// φ(s) = ξ_F(2s − 1)/ξ_F(2s).
pub fn scattering_coefficient(field: &QuadraticField, s: f64) -> Result<f64> {
    Ok(completed_xi(field, 2.0 * s - 1.0)? / completed_xi(field, 2.0 * s)?)
}

/// N(y)^s + φ(s)·N(y)^{1−s}.
pub fn constant_term_law(field: &QuadraticField, s: f64, y: [f64; 2]) -> Result<f64> {
    let ny = y[0] * y[1];
    Ok(ny.powf(s) + scattering_coefficient(field, s)? * ny.powf(1.0 - s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_expansion_head() {
        let f = QuadraticField::new(5).unwrap();
        let e = fourier_holomorphic(&f, &BigRational::from_integer(1.into())).unwrap();
        assert_eq!(e.constant, BigRational::new((-1).into(), 120.into()));
        assert_eq!(
            e.terms.iter().map(|t| t.coefficient).collect::<Vec<_>>(),
            vec![1, 1]
        );
    }

    #[test]
    fn normalization_is_unique_on_orbits() {
        let f = QuadraticField::new(5).unwrap();
        let e = f.fund_unit_int();
        let einv = f.unit_inverse(&e);
        for a in -6..6 {
            for b in -6..6 {
                let x = IntElement::new(a, b);
                if x.is_zero() {
                    continue;
                }
                // walk the orbit ±ε^k x for |k| ≤ 8 and count representatives
                let mut count = 0;
                for sign in [1, -1] {
                    let mut y = x.scale(sign);
                    for _ in 0..8 {
                        y = f.mul_int(&y, &einv);
                    }
                    for _ in 0..17 {
                        if is_normalized(&f, &y) {
                            count += 1;
                        }
                        y = f.mul_int(&y, &e);
                    }
                }
                assert_eq!(count, 1, "x = {x}");
            }
        }
    }

    #[test]
    fn smallest_box_pairs() {
        let f = QuadraticField::new(5).unwrap();
        let table = primitive_pairs(&f, 1.0, ExecMode::Sequential);
        let one = IntElement::ONE;
        let mut got = table.pairs.clone();
        got.sort_by_key(|(c, d)| (c.a, c.b, d.a, d.b));
        let expected = vec![
            (IntElement::ZERO, one),
            (one, one.scale(-1)),
            (one, IntElement::ZERO),
            (one, one),
        ];
        assert_eq!(got, expected);
        let z = [Complex64::new(0.3, 2.0), Complex64::new(-0.1, 1.5)];
        let ny: f64 = 3.0;
        let direct: f64 = [1.0, -1.0, 0.0, 1.0]
            .iter()
            .zip([0.0, 1.0, 1.0, 1.0])
            .map(|(d, c)| {
                let n = (z[0] * c + d).norm_sqr() * (z[1] * c + d).norm_sqr();
                (ny / n).powf(1.5)
            })
            .sum();
        let v = lattice_eis_partial(&f, 1.5, z, 1.0).unwrap();
        assert!((v - direct).abs() < 1e-12);
        assert!(matches!(
            lattice_eis_partial(&f, 1.0, z, 2.0),
            Err(Error::NotInConvergenceRegion(_))
        ));
    }
}
