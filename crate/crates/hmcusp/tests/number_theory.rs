use std::f64::consts::PI;

use hmcusp::arith::{is_fundamental_discriminant, kronecker};
use hmcusp::lvalues::*;
use hmcusp::{Error, IntElement, QuadraticField};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

const DISCS: [i64; 12] = [5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 40, 41];

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Kronecker symbol from Euler's criterion on odd primes and the mod-8 rule
/// at 2.
fn kronecker_oracle(d: i64, n: u64) -> i32 {
    let mut n = n;
    let mut out = 1;
    let mut p = 2u64;
    while n > 1 {
        if p * p > n {
            p = n;
        }
        while n.is_multiple_of(p) {
            n /= p;
            out *= prime_symbol(d, p);
        }
        p += 1;
    }
    out
}

fn prime_symbol(d: i64, p: u64) -> i32 {
    if p == 2 {
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let a = d.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let mut r = 1u64;
    let (mut b, mut e) = (a, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// ζ_F(−1) = B_{2,χ}/24 with B_{2,χ} = D·Σ_a χ(a)·B_2(a/D).
fn zeta_minus_one_oracle(d: i64) -> BigRational {
    let mut b2 = rat(0, 1);
    for a in 1..=d {
        let chi = kronecker_oracle(d, a as u64) as i64;
        if chi != 0 {
            let x = rat(a, d);
            b2 += rat(chi, 1) * (&x * &x - &x + rat(1, 6));
        }
    }
    b2 * rat(d, 24)
}

/// Class number from h·Reg = √D·L(1, χ)/2 with
/// L(1, χ) = −(1/√D)·Σ χ(a)·ln sin(πa/D).
fn class_number_oracle(f: &QuadraticField) -> u32 {
    let d = f.disc();
    let s: f64 = (1..d)
        .map(|a| kronecker_oracle(d, a as u64) as f64 * (PI * a as f64 / d as f64).sin().ln())
        .sum();
    let l1 = -s / (d as f64).sqrt();
    let h = (d as f64).sqrt() * l1 / (2.0 * f.regulator());
    assert!((h - h.round()).abs() < 1e-6, "D = {d}: h = {h}");
    h.round() as u32
}

#[test]
fn kronecker_agrees_with_euler_criterion() {
    for d in DISCS {
        for n in 1..200u64 {
            assert_eq!(kronecker(d, n), kronecker_oracle(d, n), "({d}/{n})");
        }
    }
}

#[test]
fn siegel_sum_matches_bernoulli_oracle() {
    for d in DISCS.into_iter().chain([56, 60, 65, 229, 316]) {
        let f = QuadraticField::new(d).unwrap();
        assert_eq!(zeta_minus_one(&f), zeta_minus_one_oracle(d), "D = {d}");
    }
}

#[test]
fn class_numbers_match_analytic_formula() {
    for d in DISCS.into_iter().chain([60, 65, 229, 316]) {
        let f = QuadraticField::new(d).unwrap();
        assert_eq!(f.class_number(), class_number_oracle(&f), "D = {d}");
    }
}

#[test]
fn fundamental_unit_is_minimal() {
    for d in DISCS {
        let f = QuadraticField::new(d).unwrap();
        let e = f.fund_unit_int();
        assert_eq!(f.norm_int(&e).abs(), 1);
        assert_eq!(f.norm_int(&e) as i32, f.unit_norm());
        let (e1, _) = f.embed_int(&e);
        assert!(e1 > 1.0);
        assert!((f.regulator() - e1.ln()).abs() < 1e-12);
        // no unit strictly between 1 and ε; u = (t + b√D)/2 with t, b > 0
        for b in 1..=e.b.max(1) * 2 {
            for sign in [-4, 4] {
                let t2 = (b * b) as i64 * d + sign;
                if t2 <= 0 {
                    continue;
                }
                let t = (t2 as f64).sqrt().round() as i64;
                if t * t == t2 {
                    let u = (t as f64 + b as f64 * (d as f64).sqrt()) / 2.0;
                    assert!(u >= e1 * (1.0 - 1e-12), "D = {d}: smaller unit {u}");
                }
            }
        }
    }
}

#[test]
fn functional_equation_route_matches_exact_value() {
    for d in [5, 8, 12, 13, 17, 24] {
        let f = QuadraticField::new(d).unwrap();
        let exact = zeta_minus_one(&f).to_f64().unwrap();
        let (num, err) = zeta_minus_one_numeric(&f).unwrap();
        assert!((num - exact).abs() < 1e-8, "D = {d}: {num} vs {exact}");
        assert!(err < 1e-8);
    }
}

#[test]
fn l_values_match_partial_sums() {
    // Σ χ(n)/n² with the tail bounded by D/N (χ sums to zero over a period)
    for d in [5, 8, 13] {
        let f = QuadraticField::new(d).unwrap();
        let n = 200_000u64;
        let partial: f64 = (1..=n)
            .map(|k| kronecker_oracle(d, k) as f64 / (k as f64).powi(2))
            .sum();
        let (l, _) = dirichlet_l(&f, 2.0, 64, hmcusp::exec::ExecMode::Sequential);
        assert!(
            (l - partial).abs() < 2.0 * d as f64 / (n as f64).powi(2),
            "D = {d}"
        );
    }
}

#[test]
fn residue_identity_holds_for_narrow_class_number_one() {
    for d in [5, 8, 13] {
        let f = QuadraticField::new(d).unwrap();
        let r = verify_residue_identity(&f, 1e-6).unwrap();
        assert!(r.passed, "D = {d}: {r:?}");
        assert!(
            (r.residue_ratio - residue_xi_ratio_closed_form(&f)).abs() < 1e-9 * r.residue_ratio
        );
    }
    let f = QuadraticField::new(12).unwrap();
    assert!(matches!(
        verify_residue_identity(&f, 1e-6),
        Err(Error::NarrowClassNumberNotOne)
    ));
}

#[test]
fn boundary_volume_matches_regulator_formula() {
    for d in [5, 8, 13, 12, 17] {
        let f = QuadraticField::new(d).unwrap();
        let v = volume_boundary(&f).unwrap();
        assert!((v - 2.0 * f.regulator() * (d as f64).sqrt()).abs() < 1e-9);
        let e = f.fund_unit_int();
        let inv_sq = f.unit_inverse(&f.mul_int(&e, &e));
        assert!((volume_boundary_with_generator(&f, &inv_sq).unwrap() - v).abs() < 1e-12);
        assert!(volume_boundary_with_generator(&f, &e).is_err());
    }
}

#[test]
fn residue_at_one_approaches_class_number_formula() {
    for d in [5, 40, 229] {
        let f = QuadraticField::new(d).unwrap();
        let near = class_number_residue_numeric(&f, 1.0 + 1e-6).unwrap();
        let expected = class_number_residue_closed_form(&f);
        assert!((near - expected).abs() < 1e-4 * expected, "D = {d}");
    }
}

#[test]
fn rejected_inputs() {
    assert!(matches!(
        QuadraticField::new(10),
        Err(Error::NonFundamentalDiscriminant(10))
    ));
    assert!(matches!(
        QuadraticField::new(-4),
        Err(Error::NotRealQuadratic(-4))
    ));
    let f = QuadraticField::new(5).unwrap();
    assert_eq!(zeta_numeric(&f, 1.0, 1e-8), Err(Error::PoleAtOne));
    assert!(matches!(completed_xi(&f, -0.5), Err(Error::OutOfRange(_))));
}

fn fundamental_discs() -> impl Strategy<Value = i64> {
    (5i64..400).prop_filter("fundamental", |&d| is_fundamental_discriminant(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn arithmetic_is_a_ring(d in fundamental_discs(),
                            a in -50i128..50, b in -50i128..50,
                            c in -50i128..50, e in -50i128..50) {
        let f = QuadraticField::new(d).unwrap();
        let (x, y) = (IntElement::new(a, b), IntElement::new(c, e));
        prop_assert_eq!(f.norm_int(&f.mul_int(&x, &y)), f.norm_int(&x) * f.norm_int(&y));
        prop_assert_eq!(f.trace_int(&x.add(&y)), f.trace_int(&x) + f.trace_int(&y));
        prop_assert_eq!(f.conj_int(&f.conj_int(&x)), x);
        let (x1, x2) = f.embed_int(&x);
        prop_assert!((x1 * x2 - f.norm_int(&x) as f64).abs() <= 1e-6 * (1.0 + x1.abs() * x2.abs()));
    }

    #[test]
    fn units_have_norm_one(d in fundamental_discs()) {
        let f = QuadraticField::new(d).unwrap();
        let e = f.fund_unit_int();
        prop_assert_eq!(f.mul_int(&e, &f.unit_inverse(&e)), IntElement::ONE);
        prop_assert_eq!(f.is_totally_positive_int(&f.mul_int(&e, &e)), true);
        prop_assert_eq!(f.narrow_h1(), f.class_number() == 1 && f.unit_norm() == -1);
    }

    #[test]
    fn siegel_sum_is_positive_and_matches(d in fundamental_discs()) {
        let f = QuadraticField::new(d).unwrap();
        let z = zeta_minus_one(&f);
        prop_assert!(z > rat(0, 1));
        prop_assert_eq!(z, zeta_minus_one_oracle(d));
    }
}
