use std::collections::BTreeMap;

use hmcusp::exec::ExecMode;
use hmcusp::gk::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn w(v: &[i64]) -> WeightVector {
    WeightVector::new(v.to_vec()).unwrap()
}

/// Per axis e_J = w̄^a·w^b with a = j/2 − s, b = −j/2 − s, stored as
/// (a, b) pairs of the form (c + k·s). Differentiation multiplies by the
/// exponent and shifts the exponents.
fn monomial_oracle(gen: Generator, j: &[i64]) -> (Vec<i64>, [BigRational; 2]) {
    let i = gen_axis(gen);
    // exponents of w̄ and w as constant parts; both carry −s
    let a = BigRational::new(j[i].into(), 2.into());
    let b = BigRational::new((-j[i]).into(), 2.into());
    let (factor, a2, b2) = match gen {
        // −w ∂/∂w̄
        Generator::L(_) => (-a.clone(), &a - q(1), &b + q(1)),
        // −w̄ ∂/∂w
        Generator::R(_) => (-b.clone(), &a + q(1), &b - q(1)),
    };
    let mut out = j.to_vec();
    out[i] = (a2 - b2).to_integer().try_into().unwrap();
    // the exponent's s-part is −s, so the factor's s-part is +s
    (out, [factor, q(1)])
}

fn gen_axis(gen: Generator) -> usize {
    match gen {
        Generator::L(i) | Generator::R(i) => i,
    }
}

fn spoly(c: &[BigRational; 2]) -> SPoly {
    Poly::linear(c[0].clone(), c[1].clone())
}

#[test]
fn principal_series_matches_monomial_calculus() {
    for d in 1..=3 {
        let entries: Vec<i64> = vec![-4, -2, 0, 2, 4];
        let mut j = vec![0i64; d];
        for code in 0..entries.len().pow(d as u32) {
            let mut c = code;
            for x in j.iter_mut() {
                *x = entries[c % entries.len()];
                c /= entries.len();
            }
            for i in 0..d {
                for gen in [Generator::L(i), Generator::R(i)] {
                    let (target, coeff) = monomial_oracle(gen, &j);
                    let expected = BTreeMap::from([(w(&target), spoly(&coeff))]);
                    assert_eq!(ps_act(gen, &w(&j)), expected, "{gen} on {j:?}");
                }
            }
        }
    }
}

#[test]
fn raising_then_lowering_scales_e0() {
    for d in 1..=3 {
        for i in 0..d {
            let up = ps_act(Generator::R(i), &WeightVector::zero(d));
            let (j1, c1) = up.into_iter().next().unwrap();
            let down = ps_act(Generator::L(i), &j1);
            let (j2, c2) = down.into_iter().next().unwrap();
            assert!(j2.is_zero());
            // s·(s − 1)
            assert_eq!(&c1 * &c2, &Poly::var() * &Poly::linear(q(-1), q(1)));
        }
    }
}

#[test]
fn residues_and_annihilation() {
    let a = eis_act(Generator::L(1), &w(&[2, 0])).unwrap();
    assert_eq!(a.regular, BTreeMap::from([(w(&[2, -2]), q(1))]));
    assert_eq!(a.residue, q(0));
    let a = eis_act(Generator::R(0), &w(&[-2, 0, 0])).unwrap();
    assert!(a.regular.is_empty());
    assert_eq!(a.residue, q(1));
    for d in 1..=3 {
        for i in 0..d {
            for gen in [Generator::L(i), Generator::R(i)] {
                let z = eis_act(gen, &WeightVector::zero(d)).unwrap();
                assert!(z.regular.is_empty() && z.residue == q(0));
            }
        }
    }
}

#[test]
fn d_squared_vanishes_through_degree_four() {
    for d in 2..=4 {
        let cx = GkComplex::new(d).unwrap();
        for key in cx.full_basis() {
            let dx = cx.d_key(key);
            assert!(cx.differential(&dx).is_zero(), "d = {d}, {key}");
            for k in dx.terms().keys() {
                assert_eq!(k.j.support() & k.eps, 0, "K-invariance broken at {k}");
                assert_eq!(k.degree(), key.degree() + 1);
            }
        }
    }
}

#[test]
fn d_squared_spot_checks_in_degrees_five_and_six() {
    for d in [5, 6] {
        let cx = GkComplex::new(d).unwrap();
        let basis = cx.full_basis();
        let step = basis.len() / 97;
        for key in basis.iter().step_by(step) {
            assert!(cx.differential(&cx.d_key(key)).is_zero(), "d = {d}, {key}");
        }
    }
}

#[test]
fn generic_differential_matches_closed_form() {
    for d in 2..=3 {
        let bad = check_generic_differential(d, ExecMode::Sequential).unwrap();
        assert!(bad.is_empty(), "d = {d}: {bad:?}");
    }
}

#[test]
fn conjugations_are_commuting_involutions() {
    for d in 2..=4 {
        let r = check_conjugations(d, ExecMode::default()).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn closed_forms_close() {
    for d in 2..=4 {
        let cx = GkComplex::new(d).unwrap();
        let all = (1u32 << d) - 1;
        for eps in 0..=all {
            assert!(cx.differential(&cx.omega_prime(eps)).is_zero());
        }
        assert!(cx.differential(&cx.e_prime(all)).is_zero());
    }
}

#[test]
fn defective_identity_through_degree_four() {
    for d in 2..=4 {
        let reports = verify_defective_all(d, ExecMode::default()).unwrap();
        assert_eq!(reports.len(), d * (d - 1) / 2);
        let cx = GkComplex::new(d).unwrap();
        for r in reports {
            assert!(r.explicit_matches, "d = {d}, ({}, {})", r.i, r.j);
            assert_eq!(cx.differential(&r.witness), r.residual);
        }
    }
}

#[test]
fn harder_identity_through_degree_five() {
    for d in 3..=5 {
        let reports = verify_harder_all(d, ExecMode::default()).unwrap();
        let subsets = (0u32..1 << d).filter(|s| s.count_ones() > 2).count();
        assert_eq!(reports.len(), subsets * d);
    }
    let r = verify_harder(4, 0b0111, 3).unwrap();
    assert_eq!(r.case, HarderCase::Excludes);
    assert!(r.lhs.is_zero());
    let r = verify_harder(3, 0b111, 0).unwrap();
    assert_eq!(r.case, HarderCase::Contains);
    assert!(!r.lhs.is_zero());
    assert!(verify_harder(3, 0b011, 0).is_err());
}

#[test]
fn census_in_low_degree() {
    let c = closedness_census(2, ExecMode::Sequential).unwrap();
    assert!(c.passed());
    let cx = GkComplex::new(2).unwrap();
    let top = cx
        .full_basis()
        .iter()
        .position(|k| *k == cx.key(&[2, 2], 0).unwrap())
        .unwrap();
    assert_eq!(c.classes[top].1, Closedness::Closed);
    let single = cx.key(&[2, 0], 0b10).unwrap();
    let pos = cx.full_basis().iter().position(|k| *k == single).unwrap();
    assert_eq!(c.classes[pos].1, Closedness::Residue);
    assert_eq!(c.cohomology.iter().sum::<usize>() % 2, 0);
    for d in 3..=4 {
        assert!(closedness_census(d, ExecMode::default()).unwrap().passed());
    }
}

#[test]
fn exactness_of_boundaries() {
    let cx = GkComplex::new(3).unwrap();
    assert!(cx.is_exact(&GkElement::zero(3)).unwrap().is_exact());
    let x = GkElement::from_key(cx.key(&[2, 0, -2], 0).unwrap());
    assert!(matches!(cx.is_exact(&x), Err(hmcusp::Error::NotClosed)));
    let dx = cx.differential(&x);
    let Exactness::Exact(p) = cx.is_exact(&dx).unwrap() else {
        panic!("boundary not exact")
    };
    assert_eq!(cx.differential(&p), dx);
}

fn arb_element(d: usize) -> impl Strategy<Value = GkElement> {
    let n = GkComplex::new(d).unwrap().full_basis().len();
    proptest::collection::vec((0..n, -3i64..=3, 0i64..=1), 1..6).prop_map(move |terms| {
        let cx = GkComplex::new(d).unwrap();
        let mut x = GkElement::zero(d);
        for (idx, c, r) in terms {
            let coeff = &RatFunc::from_int(c) * &(&RatFunc::one() + &RatFunc::var().scale(&q(r)));
            x.add_term(cx.full_basis()[idx].clone(), &coeff);
        }
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugations_are_involutions(x in arb_element(3), i in 0usize..3) {
        let cx = GkComplex::new(3).unwrap();
        prop_assert_eq!(cx.conj_c(i, &cx.conj_c(i, &x)), x.clone());
        prop_assert_eq!(cx.conj_bar(&cx.conj_bar(&x)), x);
    }

    #[test]
    fn differentials_of_random_elements_are_exact(x in arb_element(2)) {
        let cx = GkComplex::new(2).unwrap();
        // keep one homogeneous degree so that d(x) is homogeneous
        let Some(first) = x.terms().keys().next() else { return Ok(()) };
        let k = first.degree();
        let mut y = GkElement::zero(2);
        for (key, c) in x.terms() {
            if key.degree() == k {
                y.add_term(key.clone(), c);
            }
        }
        let dy = cx.differential(&y);
        prop_assert!(cx.differential(&dy).is_zero());
        let ex = cx.is_exact(&dy).unwrap();
        prop_assert!(ex.is_exact());
        if let Exactness::Exact(p) = ex {
            prop_assert_eq!(cx.differential(&p), dy);
        }
    }
}
