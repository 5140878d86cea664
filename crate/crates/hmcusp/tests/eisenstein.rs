use hmcusp::eisenstein::*;
use hmcusp::exec::ExecMode;
use hmcusp::{Error, IntElement, QuadraticField};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Multiplication by ω on coordinates (u, v) of u + vω.
fn times_omega(f: &QuadraticField, (u, v): (i128, i128)) -> (i128, i128) {
    (v * f.omega_sq_const(), u + v * f.delta())
}

/// Membership in the lattice Z·(a, 0) + Z·(t, c).
fn in_lattice((a, t, c): (i128, i128, i128), (u, v): (i128, i128)) -> bool {
    v % c == 0 && (u - (v / c) * t) % a == 0
}

/// Σ N(𝔞) over ideals 𝔞 ⊇ (x), found by enumerating the sublattices of 𝒪
/// in Hermite normal form whose index divides N(x).
fn sigma1_oracle(f: &QuadraticField, x: &IntElement) -> u128 {
    let n = f.norm_int(x).unsigned_abs() as i128;
    let gens = [(x.a, x.b), times_omega(f, (x.a, x.b))];
    let mut total = 0u128;
    for a in 1..=n {
        for c in 1..=n / a {
            if n % (a * c) != 0 {
                continue;
            }
            for t in 0..a {
                let l = (a, t, c);
                let stable = [(a, 0), (t, c)]
                    .iter()
                    .all(|&g| in_lattice(l, times_omega(f, g)));
                if stable && gens.iter().all(|&g| in_lattice(l, g)) {
                    total += (a * c) as u128;
                }
            }
        }
    }
    total
}

#[test]
fn coefficients_are_divisor_sums() {
    for d in [5, 8, 13] {
        let f = QuadraticField::new(d).unwrap();
        let exp = fourier_holomorphic(&f, &rat(8, 1)).unwrap();
        assert!(exp.len() >= MIN_HECKE_KEYS);
        for t in &exp.terms {
            assert_eq!(
                t.coefficient,
                sigma1_oracle(&f, &t.numerator),
                "D = {d}, x = {}",
                t.numerator
            );
            assert!(f.is_totally_positive(&t.alpha));
            // α lies in the inverse different: α = x/√D
            let back = f.mul(&t.alpha, &f.sqrt_d().to_field());
            assert_eq!(back, t.numerator.to_field());
        }
    }
}

#[test]
fn constant_terms() {
    let constant = |d| {
        fourier_holomorphic(&QuadraticField::new(d).unwrap(), &rat(1, 1))
            .unwrap()
            .constant
    };
    // ζ_F(−1) = 1/30, 1/12, 1/6
    assert_eq!(constant(5), rat(-1, 120));
    assert_eq!(constant(8), rat(-1, 48));
    assert_eq!(constant(13), rat(-1, 24));
}

#[test]
fn hecke_relations_hold() {
    for d in [5, 8] {
        let f = QuadraticField::new(d).unwrap();
        let exp = fourier_holomorphic_with(&f, &rat(8, 1), ExecMode::Sequential).unwrap();
        let report = hecke_checks(&exp).unwrap();
        assert!(report.passed(), "D = {d}: {report:?}");
        let names: Vec<&str> = report.lines.iter().map(|l| l.name).collect();
        assert_eq!(
            names,
            [
                "sigma1",
                "unit-ideal",
                "same-ideal",
                "prime",
                "coprime-multiplicativity",
                "prime-power-recursion"
            ]
        );
        for line in &report.lines {
            assert!(
                line.checked > 0,
                "D = {d}: nothing checked for {}",
                line.name
            );
        }
    }
}

#[test]
fn expansion_preconditions() {
    let f = QuadraticField::new(12).unwrap();
    assert!(matches!(
        fourier_holomorphic(&f, &rat(4, 1)),
        Err(Error::NarrowClassNumberNotOne)
    ));
    let f = QuadraticField::new(5).unwrap();
    let small = fourier_holomorphic(&f, &rat(2, 1)).unwrap();
    assert!(matches!(
        hecke_checks(&small),
        Err(Error::InsufficientCoefficients { .. })
    ));
    assert!(fourier_holomorphic(&f, &rat(-1, 1)).is_err());
}

#[test]
fn sequential_and_parallel_expansions_agree() {
    let f = QuadraticField::new(13).unwrap();
    let a = fourier_holomorphic_with(&f, &rat(6, 1), ExecMode::Sequential).unwrap();
    let b = fourier_holomorphic_with(&f, &rat(6, 1), ExecMode::Parallel).unwrap();
    assert_eq!(a.terms, b.terms);
}

#[test]
fn evaluation_tail_bound_covers_the_truncation() {
    let f = QuadraticField::new(5).unwrap();
    let z = [Complex64::new(0.1, 0.5), Complex64::new(0.3, 0.7)];
    let full = eval_holomorphic(&fourier_holomorphic(&f, &rat(24, 1)).unwrap(), z).unwrap();
    for t in [4, 6, 8, 12] {
        let part = eval_holomorphic(&fourier_holomorphic(&f, &rat(t, 1)).unwrap(), z).unwrap();
        let gap = (part.value - full.value).norm();
        assert!(
            gap <= part.tail_bound + full.tail_bound,
            "T = {t}: {gap} > {}",
            part.tail_bound
        );
        assert!(part.tail_bound.is_finite());
    }
    let bad = [Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0)];
    assert!(eval_holomorphic(&fourier_holomorphic(&f, &rat(2, 1)).unwrap(), bad).is_err());
}

#[test]
fn lattice_sum_needs_convergence() {
    let f = QuadraticField::new(5).unwrap();
    let z = [Complex64::new(0.0, 1.0), Complex64::new(0.0, 1.0)];
    assert!(matches!(
        lattice_eis_partial(&f, 1.0, z, 4.0),
        Err(Error::NotInConvergenceRegion(_))
    ));
    let a = lattice_eis_partial(&f, 2.0, z, 8.0).unwrap();
    let b = lattice_eis_partial(&f, 2.0, z, 16.0).unwrap();
    // partial sums increase with the height bound and start from N(y)^s = 1
    assert!(1.0 < a && a <= b);
}

#[test]
fn pair_table_is_primitive_and_normalized() {
    let f = QuadraticField::new(8).unwrap();
    let table = primitive_pairs(&f, 6.0, ExecMode::Sequential);
    assert!(!table.is_empty());
    for (c, d) in &table.pairs {
        assert!(is_primitive(&f, c, d));
        let lead = if c.is_zero() { d } else { c };
        assert!(is_normalized(&f, lead));
    }
    let par = primitive_pairs(&f, 6.0, ExecMode::Parallel);
    assert_eq!(table.pairs, par.pairs);
}

#[test]
fn constant_term_approaches_the_law() {
    let f = QuadraticField::new(5).unwrap();
    let (s, y) = (1.5, [2.0, 2.0]);
    let law = constant_term_law(&f, s, y).unwrap();
    let coarse = constant_term_numeric(&f, s, y, 10.0, 8).unwrap();
    let fine = constant_term_numeric(&f, s, y, 24.0, 8).unwrap();
    // truncation drops positive terms only
    assert!(coarse < fine && fine < law);
    assert!(law - fine < 3e-2, "{fine} vs {law}");
    assert!(law - fine < 0.5 * (law - coarse));
}

#[test]
fn constant_term_is_dominated_by_the_leading_power() {
    let f = QuadraticField::new(5).unwrap();
    let s = 1.5;
    let y = [12.0, 12.0];
    let ny: f64 = y[0] * y[1];
    let num = constant_term_numeric(&f, s, y, 16.0, 8).unwrap();
    assert!((num / ny.powf(s) - 1.0).abs() < 1e-3);
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(128))]

    #[test]
    fn unit_orbits_have_one_normalized_member(a in -40i128..40, b in -40i128..40, d in proptest::sample::select(vec![5i64, 8, 13, 17])) {
        let x = IntElement::new(a, b);
        proptest::prop_assume!(!x.is_zero());
        let f = QuadraticField::new(d).unwrap();
        let e = f.fund_unit_int();
        let einv = f.unit_inverse(&e);
        // walk far enough that the orbit window contains a full period both ways
        let mut members = Vec::new();
        for sign in [1, -1] {
            let mut y = x.scale(sign);
            for _ in 0..12 {
                y = f.mul_int(&y, &einv);
            }
            for _ in 0..25 {
                members.push(y);
                y = f.mul_int(&y, &e);
            }
        }
        let count = members.iter().filter(|m| is_normalized(&f, m)).count();
        proptest::prop_assert_eq!(count, 1);
    }

    #[test]
    fn primitivity_is_unit_invariant(a in -20i128..20, b in -20i128..20, c in -20i128..20, e in -20i128..20) {
        let f = QuadraticField::new(5).unwrap();
        let (x, y) = (IntElement::new(a, b), IntElement::new(c, e));
        let u = f.fund_unit_int();
        proptest::prop_assert_eq!(is_primitive(&f, &x, &y), is_primitive(&f, &f.mul_int(&u, &x), &f.mul_int(&u, &y)));
    }
}
