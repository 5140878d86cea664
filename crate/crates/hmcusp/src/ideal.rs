//! Fractional ideals in Hermite normal form, factorization and divisor sums.
//!
//! An ideal is stored as (Z·p + Z·(q + r·ω)) / den with r | p, r | q and
//! 0 ≤ q < p. Equality of ideals is equality of these tuples.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{ext_gcd, factorize, gcd, kronecker, primes_up_to};
use crate::error::{Error, Result};
use crate::field::{FieldElement, IntElement, QuadraticField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FractionalIdeal {
    den: i128,
    p: i128,
    q: i128,
    r: i128,
}

impl FractionalIdeal {
    /// The unit ideal 𝒪.
    pub fn unit() -> Self {
        FractionalIdeal {
            den: 1,
            p: 1,
            q: 0,
            r: 1,
        }
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    /// The triple (p, q, r).
    pub fn hnf(&self) -> (i128, i128, i128) {
        (self.p, self.q, self.r)
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// N(I) = p·r / den².
    pub fn norm(&self) -> BigRational {
        BigRational::new((self.p * self.r).into(), (self.den * self.den).into())
    }

    /// Norm of an integral ideal.
    pub fn norm_int(&self) -> Option<i128> {
        self.is_integral().then_some(self.p * self.r)
    }

    /// The Z-basis {p, q + rω} scaled by den.
    pub fn basis(&self) -> (IntElement, IntElement) {
        (IntElement::new(self.p, 0), IntElement::new(self.q, self.r))
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "[{}, {} + {}ω]", self.p, self.q, self.r)
        } else {
            write!(f, "[{}, {} + {}ω]/{}", self.p, self.q, self.r, self.den)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeKind {
    Split,
    Inert,
    Ramified,
}

impl PrimeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PrimeKind::Split => "split",
            PrimeKind::Inert => "inert",
            PrimeKind::Ramified => "ramified",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFactor {
    pub p: u64,
    pub kind: PrimeKind,
    pub ideal: FractionalIdeal,
    pub exponent: u32,
}

/// Hermite normal form of the Z-span of integer vectors (a, b), as (p, q, r)
/// with the lattice equal to Z·(p, 0) + Z·(q, r). Returns None if the span
/// is not of rank 2.
pub fn hnf2(vecs: &[IntElement]) -> Option<(i128, i128, i128)> {
    let mut w = IntElement::ZERO;
    let mut g: i128 = 0;
    for v in vecs {
        if v.b == 0 {
            g = gcd(g, v.a);
        } else if w.b == 0 {
            g = gcd(g, w.a);
            w = *v;
        } else {
            let (x, y, d) = ext_gcd(w.b, v.b);
            let nw = w.scale(x).add(&v.scale(y));
            let rest = w.scale(v.b / d).sub(&v.scale(w.b / d));
            debug_assert_eq!(rest.b, 0);
            g = gcd(g, rest.a);
            w = nw;
        }
    }
    if w.b == 0 || g == 0 {
        return None;
    }
    if w.b < 0 {
        w = w.neg();
    }
    Some((g, w.a.rem_euclid(g), w.b))
}

impl QuadraticField {
    /// The 𝒪-module generated by integral elements, divided by `den`.
    fn ideal_from_int_gens(&self, gens: &[IntElement], den: i128) -> Result<FractionalIdeal> {
        let omega = IntElement::new(0, 1);
        let mut vecs = Vec::with_capacity(2 * gens.len());
        for g in gens {
            vecs.push(*g);
            vecs.push(self.mul_int(g, &omega));
        }
        let (p, q, r) = hnf2(&vecs).ok_or(Error::ZeroIdeal)?;
        let mut ideal = FractionalIdeal { den, p, q, r };
        let g = gcd(gcd(gcd(den, p), q), r);
        if g > 1 {
            ideal = FractionalIdeal {
                den: den / g,
                p: p / g,
                q: q / g,
                r: r / g,
            };
        }
        Ok(ideal)
    }

    /// The fractional ideal generated by the given elements.
    pub fn ideal_from_generators(&self, gens: &[FieldElement]) -> Result<FractionalIdeal> {
        let den = gens.iter().fold(num_bigint::BigInt::from(1), |acc, g| {
            num_integer::Integer::lcm(&acc, &g.denominator())
        });
        let den_q = BigRational::from_integer(den.clone());
        let ints: Vec<IntElement> = gens
            .iter()
            .map(|g| {
                g.scale(&den_q)
                    .to_int()
                    .ok_or(Error::InvalidArgument("generator too large".into()))
            })
            .collect::<Result<_>>()?;
        let den = den
            .to_i128()
            .ok_or(Error::InvalidArgument("denominator too large".into()))?;
        self.ideal_from_int_gens(&ints, den)
    }

    pub fn principal_ideal(&self, x: &FieldElement) -> Result<FractionalIdeal> {
        self.ideal_from_generators(std::slice::from_ref(x))
    }

    pub fn principal_ideal_int(&self, x: &IntElement) -> Result<FractionalIdeal> {
        self.ideal_from_int_gens(std::slice::from_ref(x), 1)
    }

    pub fn ideal_mul(&self, i: &FractionalIdeal, j: &FractionalIdeal) -> FractionalIdeal {
        let (a1, a2) = i.basis();
        let (b1, b2) = j.basis();
        let gens = [
            self.mul_int(&a1, &b1),
            self.mul_int(&a1, &b2),
            self.mul_int(&a2, &b1),
            self.mul_int(&a2, &b2),
        ];
        let (p, q, r) = hnf2(&gens).expect("product of nonzero ideals is nonzero");
        let den = i.den * j.den;
        let g = gcd(gcd(gcd(den, p), q), r);
        FractionalIdeal {
            den: den / g,
            p: p / g,
            q: q / g,
            r: r / g,
        }
    }

    pub fn ideal_pow(&self, i: &FractionalIdeal, e: u32) -> FractionalIdeal {
        (0..e).fold(FractionalIdeal::unit(), |acc, _| self.ideal_mul(&acc, i))
    }

    pub fn ideal_conj(&self, i: &FractionalIdeal) -> FractionalIdeal {
        let (a1, a2) = i.basis();
        self.ideal_from_int_gens(&[self.conj_int(&a1), self.conj_int(&a2)], i.den)
            .expect("conjugate of a nonzero ideal is nonzero")
    }

    /// Membership of an integral element in an integral ideal.
    pub fn ideal_contains_int(&self, i: &FractionalIdeal, x: &IntElement) -> bool {
        debug_assert!(i.is_integral());
        if x.b % i.r != 0 {
            return false;
        }
        (x.a - i.q * (x.b / i.r)) % i.p == 0
    }

    /// I ⊆ J for integral ideals.
    pub fn ideal_is_subset(&self, i: &FractionalIdeal, j: &FractionalIdeal) -> bool {
        let (a1, a2) = i.basis();
        self.ideal_contains_int(j, &a1) && self.ideal_contains_int(j, &a2)
    }

    /// Prime ideals above the rational prime p with their splitting type.
    pub fn primes_above(&self, p: u64) -> Vec<(FractionalIdeal, PrimeKind)> {
        let pi = p as i128;
        match kronecker(self.disc(), p) {
            -1 => vec![(
                FractionalIdeal {
                    den: 1,
                    p: pi,
                    q: 0,
                    r: pi,
                },
                PrimeKind::Inert,
            )],
            k => {
                // roots of x² − δx − c mod p
                let (delta, c) = (self.delta(), self.omega_sq_const());
                let roots: Vec<i128> = (0..pi)
                    .filter(|t| (t * t - delta * t - c).rem_euclid(pi) == 0)
                    .collect();
                let kind = if k == 0 {
                    PrimeKind::Ramified
                } else {
                    PrimeKind::Split
                };
                let mut ideals: Vec<FractionalIdeal> = roots
                    .iter()
                    .map(|t| FractionalIdeal {
                        den: 1,
                        p: pi,
                        q: (-t).rem_euclid(pi),
                        r: 1,
                    })
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                ideals.sort();
                debug_assert_eq!(ideals.len(), if k == 0 { 1 } else { 2 });
                ideals.into_iter().map(|i| (i, kind)).collect()
            }
        }
    }

    /// Prime factorization of an integral ideal.
    pub fn factor_ideal(&self, i: &FractionalIdeal) -> Result<Vec<PrimeFactor>> {
        if !i.is_integral() {
            return Err(Error::NotIntegral);
        }
        let n = i.p * i.r;
        if n == 0 {
            return Err(Error::ZeroIdeal);
        }
        let mut out = Vec::new();
        for (p, _) in factorize(n as u128) {
            let p = p as u64;
            for (prime, kind) in self.primes_above(p) {
                let mut e = 0;
                let mut power = prime;
                while self.ideal_is_subset(i, &power) {
                    e += 1;
                    power = self.ideal_mul(&power, &prime);
                }
                if e > 0 {
                    out.push(PrimeFactor {
                        p,
                        kind,
                        ideal: prime,
                        exponent: e,
                    });
                }
            }
        }
        Ok(out)
    }

    /// σ₁(I) = Σ_{J | I} N(J), computed multiplicatively.
    pub fn sigma1(&self, i: &FractionalIdeal) -> Result<u128> {
        let factors = self.factor_ideal(i)?;
        Ok(factors
            .iter()
            .map(|f| {
                let np = f.ideal.norm_int().expect("prime ideals are integral") as u128;
                (np.pow(f.exponent + 1) - 1) / (np - 1)
            })
            .product())
    }

    /// A generator of the integral ideal `i` if it is principal.
    ///
    /// Some generator x has |σ₁(x)|, |σ₂(x)| ≤ √(N(I)·ε), since multiplying
    /// by ε scales |σ₁/σ₂| by ε²; the search scans that box in the Z-basis of I.
    pub fn principal_generator(&self, i: &FractionalIdeal) -> Option<IntElement> {
        assert!(i.is_integral(), "principal test needs an integral ideal");
        let n = i.p * i.r;
        let eps = self.embed_int(&self.fund_unit_int()).0;
        let bound = ((n as f64) * eps).sqrt() * (1.0 + 1e-9) + 1e-9;
        let (w1, w2) = self.omega_embeddings();
        let sd = self.sqrt_disc();
        // x = m·p + k·(q + rω): v = k·r, u = m·p + k·q.
        let kmax = (2.0 * bound / sd / i.r as f64).floor() as i128 + 1;
        for k in -kmax..=kmax {
            let v = k * i.r;
            let vf = v as f64;
            let lo = (-bound - vf * w1).max(-bound - vf * w2);
            let hi = (bound - vf * w1).min(bound - vf * w2);
            if lo > hi + 1.0 {
                continue;
            }
            let base = k * i.q;
            let mlo = ((lo - 1.0 - base as f64) / i.p as f64).floor() as i128;
            let mhi = ((hi + 1.0 - base as f64) / i.p as f64).ceil() as i128;
            for m in mlo..=mhi {
                let x = IntElement::new(m * i.p + base, v);
                if self.norm_int(&x).abs() == n {
                    return Some(x);
                }
            }
        }
        None
    }

    /// Whether the integral ideal `i` is principal.
    ///
    /// The primitive part [a, (b + √D)/2] gives the form (a, b, c) of
    /// discriminant D; the ideal is principal iff the cycle of reduced forms
    /// in its class contains one with |a| = 1.
    pub fn is_principal(&self, i: &FractionalIdeal) -> bool {
        assert!(i.is_integral(), "principal test needs an integral ideal");
        let d = self.disc() as i128;
        let a = i.p / i.r;
        let b = 2 * (i.q / i.r) + self.delta();
        let c = (b * b - d) / (4 * a);
        form_cycle_has_unit(a, b, c, d)
    }

    /// I ~ J in the class group, for integral ideals.
    pub fn ideals_equivalent(&self, i: &FractionalIdeal, j: &FractionalIdeal) -> bool {
        self.is_principal(&self.ideal_mul(i, &self.ideal_conj(j)))
    }

    /// Class number by closing the classes of the primes below the Minkowski
    /// bound under multiplication.
    pub(crate) fn compute_class_number(&self) -> u32 {
        let mut gens = Vec::new();
        for p in primes_up_to(self.minkowski_bound().floor() as u64) {
            for (ideal, _) in self.primes_above(p) {
                if !self.is_principal(&ideal) {
                    gens.push(ideal);
                }
            }
        }
        let mut reps = vec![FractionalIdeal::unit()];
        let mut idx = 0;
        while idx < reps.len() {
            let current = reps[idx];
            for g in &gens {
                let prod = self.ideal_mul(&current, g);
                if !reps.iter().any(|r| self.ideals_equivalent(&prod, r)) {
                    reps.push(prod);
                }
            }
            idx += 1;
        }
        reps.len() as u32
    }

    /// All integral ideals containing `i`, found by enumerating sublattices
    /// of 𝒪 that contain the HNF basis of I and are closed under ω. Slow;
    /// used to cross-check the multiplicative divisor sum.
    pub fn divisors_by_enumeration(&self, i: &FractionalIdeal) -> Vec<FractionalIdeal> {
        assert!(i.is_integral());
        let n = i.p * i.r;
        let (a1, a2) = i.basis();
        let omega = IntElement::new(0, 1);
        let mut out = Vec::new();
        for p in 1..=n {
            if n % p != 0 {
                continue;
            }
            for r in 1..=p {
                if p % r != 0 || n % (p * r) != 0 {
                    continue;
                }
                for q in (0..p).filter(|q| q % r == 0) {
                    let j = FractionalIdeal { den: 1, p, q, r };
                    let (b1, b2) = j.basis();
                    let closed = self.ideal_contains_int(&j, &self.mul_int(&b1, &omega))
                        && self.ideal_contains_int(&j, &self.mul_int(&b2, &omega));
                    if closed
                        && self.ideal_contains_int(&j, &a1)
                        && self.ideal_contains_int(&j, &a2)
                    {
                        out.push(j);
                    }
                }
            }
        }
        out
    }
}

impl FractionalIdeal {
    /// True if both the ideal and its norm are trivial.
    pub fn is_unit(&self) -> bool {
        *self == FractionalIdeal::unit()
    }

    pub fn norm_is_zero(&self) -> bool {
        self.norm().is_zero()
    }
}

/// √D − 2|a| < b < √D in absolute value form, decided exactly.
fn is_reduced_form(a: i128, b: i128, d: i128) -> bool {
    if b <= 0 || b * b >= d {
        return false;
    }
    // |√D − 2|a|| < b  ⇔  D + 4a² − b² < 4|a|√D
    let lhs = d + 4 * a * a - b * b;
    lhs < 0 || lhs * lhs < 16 * a * a * d
}

/// Walks ρ(a, b, c) = (c, b', ·) with b' ≡ −b (mod 2c) normalized, until the
/// reduced cycle closes.
fn form_cycle_has_unit(mut a: i128, mut b: i128, mut c: i128, d: i128) -> bool {
    let sd = crate::arith::isqrt(d);
    let mut first: Option<(i128, i128)> = None;
    for _ in 0..1_000_000 {
        if a.abs() == 1 {
            return true;
        }
        if is_reduced_form(a, b, d) {
            match first {
                Some(f) if f == (a, b) => return false,
                None => first = Some((a, b)),
                _ => {}
            }
        }
        let m = 2 * c.abs();
        let nb = if c.abs() < sd + 1 {
            sd - (sd + b).rem_euclid(m)
        } else {
            let r = (-b).rem_euclid(m);
            if r > c.abs() {
                r - m
            } else {
                r
            }
        };
        let nc = (nb * nb - d) / (4 * c);
        (a, b, c) = (c, nb, nc);
    }
    panic!("reduced cycle did not close")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_six_and_eleven_in_q_sqrt5() {
        let f = QuadraticField::new(5).unwrap();
        let six = f.principal_ideal_int(&IntElement::new(6, 0)).unwrap();
        let fac = f.factor_ideal(&six).unwrap();
        assert_eq!(fac.len(), 2);
        assert!(fac
            .iter()
            .all(|p| p.kind == PrimeKind::Inert && p.exponent == 1));
        assert_eq!(fac.iter().map(|p| p.p).collect::<Vec<_>>(), vec![2, 3]);

        let eleven = f.principal_ideal_int(&IntElement::new(11, 0)).unwrap();
        let fac = f.factor_ideal(&eleven).unwrap();
        assert_eq!(fac.len(), 2);
        assert!(fac
            .iter()
            .all(|p| p.kind == PrimeKind::Split && p.exponent == 1));
        assert!(f.factor_ideal(&FractionalIdeal::unit()).unwrap().is_empty());
    }

    #[test]
    fn sigma1_small() {
        let f = QuadraticField::new(5).unwrap();
        let two = f.principal_ideal_int(&IntElement::new(2, 0)).unwrap();
        assert_eq!(f.sigma1(&two).unwrap(), 5);
        assert_eq!(f.sigma1(&FractionalIdeal::unit()).unwrap(), 1);
    }

    #[test]
    fn class_numbers() {
        for (d, h) in [
            (5, 1),
            (8, 1),
            (12, 1),
            (13, 1),
            (40, 2),
            (60, 2),
            (65, 2),
            (316, 3),
            (229, 3),
        ] {
            assert_eq!(QuadraticField::new(d).unwrap().class_number(), h, "D = {d}");
        }
    }

    #[test]
    fn hnf_of_principal_ideal() {
        let f = QuadraticField::new(5).unwrap();
        let i = f.principal_ideal_int(&IntElement::new(3, 1)).unwrap();
        assert_eq!(i.norm_int(), Some(11));
        let fr = f
            .ideal_from_generators(&[
                FieldElement::from_ints(1, 0).scale(&BigRational::new(1.into(), 2.into()))
            ])
            .unwrap();
        assert_eq!(fr.den(), 2);
        assert_eq!(fr.hnf(), (1, 0, 1));
    }
}
