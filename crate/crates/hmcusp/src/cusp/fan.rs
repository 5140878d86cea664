//! The unit-periodic smooth fan in the totally positive cone.
//!
//! Rays B_0 = 1, B_1 = w, … are integral, totally positive and satisfy
//! B_{k−1} + B_{k+1} = b_k·B_k. Here w = ω + k₀ is the reduced seed with
//! 0 < w' < 1, and the b_k are read from its minus continued fraction in
//! reverse cyclic order. After one period B_n is the generator of the
//! totally positive units.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::field::{FieldElement, IntElement, QuadraticField};

use super::quadratic::{minus_cf, QuadIrrational};

/// Which unit the fan is made periodic under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum UnitChoice {
    /// ε², the action of the diagonal torus on the cone.
    #[default]
    Square,
    /// The generator of the totally positive units (ε or ε²).
    TotallyPositiveGenerator,
}

#[derive(Clone, Debug)]
pub struct CuspFan {
    pub field: QuadraticField,
    /// B_0, …, B_n with B_n = unit_action·B_0.
    pub rays: Vec<IntElement>,
    /// b_0, …, b_{n−1} with B_{k−1} + B_{k+1} = b_k·B_k.
    pub period: Vec<i64>,
    /// Minimal minus continued fraction period of the seed.
    pub seed_period: Vec<i64>,
    pub seed: QuadIrrational,
    pub unit_action: IntElement,
}

/// Outcome of the invariant checks on a fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanChecks {
    pub smooth: bool,
    pub recursion: bool,
    pub periodic: bool,
    pub entries: bool,
    pub positive: bool,
}

impl FanChecks {
    pub fn all(&self) -> bool {
        self.smooth && self.recursion && self.periodic && self.entries && self.positive
    }
}

/// The canonical seed ω + k with k = ⌊−ω'⌋ + 1.
pub fn canonical_seed(field: &QuadraticField) -> QuadIrrational {
    let d = field.disc() as i128;
    let delta = field.delta();
    let minus_conj = QuadIrrational::new(-delta, 1, 2, d).expect("D is not a square");
    let k = minus_conj.floor() + 1;
    QuadIrrational::new(2 * k + delta, 1, 2, d).expect("D is not a square")
}

pub fn build_cusp_fan(field: &QuadraticField) -> Result<CuspFan> {
    build_cusp_fan_with(field, UnitChoice::default())
}

pub fn build_cusp_fan_with(field: &QuadraticField, choice: UnitChoice) -> Result<CuspFan> {
    let seed = canonical_seed(field);
    let seed_period = minus_cf(&seed)?;
    let n = seed_period.len();
    let (p, _, _) = seed.parts();
    let k0 = (p - field.delta()) / 2;
    let step = |m: usize| seed_period[(n - m % n) % n];

    let target = match choice {
        UnitChoice::Square => {
            let e = field.fund_unit_int();
            field.mul_int(&e, &e)
        }
        UnitChoice::TotallyPositiveGenerator => field.totally_positive_unit_generator(),
    };
    let mut rays = vec![IntElement::ONE, IntElement::new(k0, 1)];
    let mut m = 1;
    loop {
        if m % n == 0 && rays[m] == target {
            break;
        }
        if m > 4 * n {
            return Err(Error::InvalidFan(format!(
                "period unit {} does not reach the requested unit {target}",
                rays[n]
            )));
        }
        let next = rays[m].scale(step(m) as i128).sub(&rays[m - 1]);
        rays.push(next);
        m += 1;
    }
    let period: Vec<i64> = (0..m).map(step).collect();
    let fan = CuspFan {
        field: field.clone(),
        rays,
        period,
        seed_period,
        seed,
        unit_action: target,
    };
    let checks = fan.checks();
    if !checks.all() {
        return Err(Error::InvalidFan(format!("{checks:?}")));
    }
    Ok(fan)
}

fn det(x: &IntElement, y: &IntElement) -> i128 {
    x.a * y.b - x.b * y.a
}

impl CuspFan {
    /// Number of ray orbits n.
    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// Ray k of the u-periodic extension, for any integer k.
    pub fn ray(&self, k: i64) -> FieldElement {
        let n = self.period_len() as i64;
        let (q, r) = (k.div_euclid(n), k.rem_euclid(n));
        let u = self.unit_action.to_field();
        let base = self.rays[r as usize].to_field();
        let power = self.field.pow(&u, q).expect("units are invertible");
        self.field.mul(&power, &base)
    }

    /// Checks smoothness, the recursion, periodicity, the entry bounds and
    /// total positivity.
    pub fn checks(&self) -> FanChecks {
        let f = &self.field;
        let n = self.period_len();
        let u = self.unit_action;
        let b1_shift = f.mul_int(&u, &self.rays[1]);
        let mut ext: Vec<IntElement> = self.rays.clone();
        ext.push(b1_shift);
        // B_{−1} = u⁻¹·B_{n−1} when u is a unit
        let before = if f.norm_int(&u).abs() == 1 {
            Some(f.mul_int(&f.unit_inverse(&u), &self.rays[n - 1]))
        } else {
            None
        };

        let smooth = (0..=n).all(|k| det(&ext[k], &ext[k + 1]).abs() == 1);
        let mut recursion = (1..=n)
            .all(|k| ext[k - 1].add(&ext[k + 1]) == ext[k].scale(self.period[k % n] as i128));
        if let Some(b) = before {
            recursion &= b.add(&ext[1]) == ext[0].scale(self.period[0] as i128);
        } else {
            recursion = false;
        }
        let periodic = self.rays[n] == f.mul_int(&u, &self.rays[0]);
        let entries = self.period.iter().all(|&b| b >= 2) && self.period.iter().any(|&b| b >= 3);
        let positive = self.rays.iter().all(|r| f.is_totally_positive_int(r));
        FanChecks {
            smooth,
            recursion,
            periodic,
            entries,
            positive,
        }
    }

    /// True iff no power u^m, m = 1, 2, maps a ray or a 2-cone of one
    /// period to itself.
    pub fn check_free_action(&self) -> bool {
        let f = &self.field;
        let n = self.period_len();
        let rays: Vec<FieldElement> = self.rays.iter().map(|r| r.to_field()).collect();
        let proportional = |x: &FieldElement, y: &FieldElement| {
            !x.is_zero() && !y.is_zero() && f.mul(x, &f.conj(y)).b.is_zero()
        };
        let u = self.unit_action.to_field();
        let mut w = FieldElement::one();
        for _ in 1..=2 {
            w = f.mul(&w, &u);
            for k in 0..n {
                let img = f.mul(&w, &rays[k]);
                if proportional(&img, &rays[k]) {
                    return false;
                }
                let img_next = f.mul(&w, &rays[k + 1]);
                let same = |a: &FieldElement, b: &FieldElement| {
                    (proportional(a, &rays[k]) && proportional(b, &rays[k + 1]))
                        || (proportional(a, &rays[k + 1]) && proportional(b, &rays[k]))
                };
                if same(&img, &img_next) {
                    return false;
                }
            }
        }
        true
    }

    /// Finds (m, k) with u^{−m}·x in the cone spanned by B_k and B_{k+1}.
    pub fn locate(&self, x: &FieldElement) -> Option<(i64, usize)> {
        let f = &self.field;
        if !f.is_totally_positive(x) {
            return None;
        }
        let (x1, x2) = f.embed(x);
        let (u1, u2) = f.embed_int(&self.unit_action);
        let step = (u1 / u2).ln();
        if !(step > 0.0) {
            return None;
        }
        let m0 = ((x1 / x2).ln() / step).floor() as i64;
        let u = self.unit_action.to_field();
        for m in [m0, m0 - 1, m0 + 1] {
            let y = f.mul(&f.pow(&u, -m)?, x);
            for k in 0..self.period_len() {
                if in_cone(&y, &self.rays[k], &self.rays[k + 1]) {
                    return Some((m, k));
                }
            }
        }
        None
    }

    /// Covering check on a list of totally positive directions.
    pub fn covers_all(&self, xs: &[FieldElement], mode: ExecMode) -> bool {
        exec::map(mode, xs, |x| self.locate(x).is_some())
            .into_iter()
            .all(|b| b)
    }
}

/// y = s·p + t·q with s, t ≥ 0, solved exactly (det(p, q) = ±1).
fn in_cone(y: &FieldElement, p: &IntElement, q: &IntElement) -> bool {
    let d = det(p, q);
    let (pa, pb) = (
        BigRational::from_integer(p.a.into()),
        BigRational::from_integer(p.b.into()),
    );
    let (qa, qb) = (
        BigRational::from_integer(q.a.into()),
        BigRational::from_integer(q.b.into()),
    );
    let dd = BigRational::from_integer(d.into());
    let s = (&y.a * &qb - &qa * &y.b) / &dd;
    let t = (&pa * &y.b - &pb * &y.a) / &dd;
    s >= BigRational::zero() && t >= BigRational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_fan() {
        let f = QuadraticField::new(5).unwrap();
        let fan = build_cusp_fan(&f).unwrap();
        assert_eq!(fan.period, vec![3]);
        assert_eq!(fan.unit_action, IntElement::new(1, 1));
        assert!(fan.check_free_action());
    }

    #[test]
    fn norm_plus_one_unit_repeats_period() {
        let f = QuadraticField::new(12).unwrap();
        let sq = build_cusp_fan(&f).unwrap();
        let gen = build_cusp_fan_with(&f, UnitChoice::TotallyPositiveGenerator).unwrap();
        assert_eq!(sq.period_len(), 2 * gen.period_len());
        assert_eq!(gen.unit_action, f.fund_unit_int());
    }

    #[test]
    fn trivial_unit_is_not_free() {
        let f = QuadraticField::new(5).unwrap();
        let mut fan = build_cusp_fan(&f).unwrap();
        fan.unit_action = IntElement::ONE;
        assert!(!fan.check_free_action());
    }
}
