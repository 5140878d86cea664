use std::str::FromStr;

use hmcusp::cusp::{boundary_complex, build_cusp_fan, extract_circle, homology, link_homology};
use hmcusp::eisenstein::{
    constant_term_law, constant_term_numeric, eval_holomorphic, fourier_holomorphic, hecke_checks,
    scattering_coefficient,
};
use hmcusp::exec::ExecMode;
use hmcusp::gk::{
    check_conjugations, check_generic_differential, closedness_census, verify_defective_all,
    verify_harder_all, GkComplex,
};
use hmcusp::lvalues::{verify_residue_identity, zeta_minus_one, zeta_minus_one_numeric};
use hmcusp::{Error, FieldElement, QuadraticField, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::cache::{Cache, Entry};
use crate::cli::{Command, CuspCommand, EisCommand, GkCheck, GkCommand, VerifyCommand};
use crate::report::{Check, Report};

/// Largest degree for which the generic differential is compared against
/// the closed form.
const GENERIC_MAX_DEGREE: usize = 3;

pub fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Field(_) => "field",
        Command::Zeta { .. } => "zeta",
        Command::Cusp(CuspCommand::Resolve { .. }) => "cusp resolve",
        Command::Cusp(CuspCommand::Homology(_)) => "cusp homology",
        Command::Cusp(CuspCommand::Circle { .. }) => "cusp circle",
        Command::Eis(EisCommand::Fourier { .. }) => "eis fourier",
        Command::Eis(EisCommand::Eval { .. }) => "eis eval",
        Command::Eis(EisCommand::ConstantTerm { .. }) => "eis constant-term",
        Command::Gk(GkCommand::Verify { .. }) => "gk verify",
        Command::Verify(VerifyCommand::ResidueIdentity { .. }) => "verify residue-identity",
        Command::Verify(VerifyCommand::WeakPeriods { .. }) => "verify weak-periods",
    }
}

pub fn run(cmd: &Command, cache: &mut Cache) -> Result<Report> {
    let mut r = Report::new(command_name(cmd));
    match cmd {
        Command::Field(d) => field(&mut r, d.disc, cache)?,
        Command::Zeta { disc, tol } => zeta(&mut r, disc.disc, *tol, cache)?,
        Command::Cusp(CuspCommand::Resolve { disc, bound }) => {
            cusp_resolve(&mut r, disc.disc, *bound, cache)?
        }
        Command::Cusp(CuspCommand::Homology(d)) => cusp_homology(&mut r, d.disc)?,
        Command::Cusp(CuspCommand::Circle { disc, power }) => {
            cusp_circle(&mut r, disc.disc, *power)?
        }
        Command::Eis(EisCommand::Fourier { disc, trace_bound }) => {
            eis_fourier(&mut r, disc.disc, trace_bound)?
        }
        Command::Eis(EisCommand::Eval {
            disc,
            trace_bound,
            z,
        }) => eis_eval(&mut r, disc.disc, trace_bound, z)?,
        Command::Eis(EisCommand::ConstantTerm {
            disc,
            s,
            y,
            bound,
            tol,
        }) => eis_constant_term(&mut r, disc.disc, *s, *y, *bound, *tol)?,
        Command::Gk(GkCommand::Verify { degree, check }) => gk_verify(&mut r, *degree, *check)?,
        Command::Verify(VerifyCommand::ResidueIdentity { disc, tol }) => {
            residue_identity(&mut r, disc.disc, *tol)?
        }
        Command::Verify(VerifyCommand::WeakPeriods { disc, degree, tol }) => {
            weak_periods(&mut r, disc.disc, *degree, *tol)?
        }
    }
    Ok(r)
}

fn rational(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

fn element(x: &impl std::fmt::Display) -> Value {
    Value::String(x.to_string())
}

fn parse_trace_bound(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim())
        .map_err(|e| Error::InvalidArgument(format!("trace bound {s:?}: {e}")))
}

fn field(r: &mut Report, disc: i64, cache: &mut Cache) -> Result<()> {
    let f = QuadraticField::new(disc)?;
    let e = f.fund_unit_int();
    let hit = cache
        .get(disc)
        .is_some_and(|c| c.fund_unit.is_some() && c.class_number.is_some());
    let (unit, h) = match cache.get(disc) {
        Some(Entry {
            fund_unit: Some(u),
            class_number: Some(h),
            ..
        }) => (*u, *h),
        _ => {
            let u = [e.a as i64, e.b as i64];
            cache.update(
                disc,
                Entry {
                    fund_unit: Some(u),
                    class_number: Some(f.class_number()),
                    ..Entry::default()
                },
            );
            (u, f.class_number())
        }
    };
    r.set("disc", disc)
        .set("omega", format!("({} + √{disc})/2", f.delta()))
        .set("fund_unit", format!("{} + {}ω", unit[0], unit[1]))
        .set("fund_unit_norm", f.unit_norm())
        .set("regulator", f.regulator())
        .set("class_number", h)
        .set("narrow_class_number_one", f.narrow_h1())
        .set(
            "totally_positive_unit",
            element(&f.totally_positive_unit_generator()),
        )
        .set("cached", hit);
    Ok(())
}

fn cached_zeta(f: &QuadraticField, cache: &mut Cache) -> (BigRational, bool) {
    let disc = f.disc();
    if let Some(z) = cache.get(disc).and_then(|c| c.zeta_minus_one.as_deref()) {
        if let Ok(q) = BigRational::from_str(z) {
            return (q, true);
        }
    }
    let z = zeta_minus_one(f);
    cache.update(
        disc,
        Entry {
            zeta_minus_one: Some(z.to_string()),
            ..Entry::default()
        },
    );
    (z, false)
}

fn zeta(r: &mut Report, disc: i64, tol: f64, cache: &mut Cache) -> Result<()> {
    let f = QuadraticField::new(disc)?;
    let (exact, hit) = cached_zeta(&f, cache);
    let (num, err) = zeta_minus_one_numeric(&f)?;
    let diff = (num - exact.to_f64().unwrap_or(f64::NAN)).abs();
    r.set("disc", disc)
        .set("zeta_minus_one", rational(&exact))
        .set("zeta_minus_one_numeric", num)
        .set("error_estimate", err)
        .set("difference", diff)
        .set("cached", hit);
    r.check(
        Check::new("functional-equation", diff <= tol, 1)
            .with_detail(format!("|difference| = {diff:e}, tol {tol:e}")),
    );
    Ok(())
}

fn cusp_resolve(r: &mut Report, disc: i64, bound: i64, cache: &mut Cache) -> Result<()> {
    let f = QuadraticField::new(disc)?;
    let fan = build_cusp_fan(&f)?;
    cache.update(
        disc,
        Entry {
            period: Some(fan.period.clone()),
            ..Entry::default()
        },
    );
    let checks = fan.checks();
    let n = fan.period_len();
    let mut dirs = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            let x = FieldElement::from_ints(a as i128, b as i128);
            if f.is_totally_positive(&x) {
                dirs.push(x);
            }
        }
    }
    r.set("disc", disc)
        .set("period", fan.period.clone())
        .set("seed", element(&fan.seed))
        .set("seed_period", fan.seed_period.clone())
        .set("rays", fan.rays.iter().map(element).collect::<Vec<_>>())
        .set("unit_action", element(&fan.unit_action));
    r.check(Check::new("smooth", checks.smooth, n + 1))
        .check(Check::new("recursion", checks.recursion, n))
        .check(Check::new("periodic", checks.periodic, 1))
        .check(Check::new("entries", checks.entries, n))
        .check(Check::new("totally-positive", checks.positive, n + 1))
        .check(Check::new("free-action", fan.check_free_action(), 2 * n))
        .check(Check::new(
            "covering",
            fan.covers_all(&dirs, ExecMode::default()),
            dirs.len(),
        ));
    Ok(())
}

fn groups_json(groups: &[hmcusp::cusp::HomologyGroup]) -> Value {
    Value::Array(groups.iter().map(|g| json!({ "rank": g.rank, "torsion": g.torsion.iter().map(|t| *t as i64).collect::<Vec<_>>() })).collect())
}

fn cusp_homology(r: &mut Report, disc: i64) -> Result<()> {
    let f = QuadraticField::new(disc)?;
    let fan = build_cusp_fan(&f)?;
    let cx = boundary_complex(&fan);
    let h = homology(&cx);
    let n = fan.period_len();
    let betti: Vec<usize> = h.iter().map(|g| g.rank).collect();
    let link = link_homology(&f);
    r.set("disc", disc)
        .set("period_length", n)
        .set("cells", (0..3).map(|k| cx.count(k)).collect::<Vec<_>>())
        .set("boundary_homology", groups_json(&h))
        .set("betti", betti.clone())
        .set("link_homology", groups_json(&link.groups));
    r.check(Check::new(
        "boundary-squared-zero",
        cx.is_chain_complex(),
        cx.cells.len(),
    ))
    .check(Check::new("betti", betti == [1, 1, n], 3).with_detail(format!("expected (1, 1, {n})")))
    .check(Check::new(
        "link-ranks",
        link.ranks_match,
        link.groups.len(),
    ));
    Ok(())
}

fn cusp_circle(r: &mut Report, disc: i64, power: i64) -> Result<()> {
    let f = QuadraticField::new(disc)?;
    let fan = build_cusp_fan(&f)?;
    let u = f
        .pow(&fan.unit_action.to_field(), power)
        .ok_or(Error::NotAUnitPower)?;
    let c = extract_circle(&fan, &u)?;
    r.set("disc", disc)
        .set("unit", element(&u))
        .set("exponent", c.exponent)
        .set(
            "edges",
            c.edges
                .iter()
                .map(|&(e, o)| json!([e, o]))
                .collect::<Vec<_>>(),
        )
        .set(
            "class_free",
            c.class.free.iter().map(|&x| x as i64).collect::<Vec<_>>(),
        )
        .set(
            "class_torsion",
            c.class
                .torsion
                .iter()
                .map(|&(x, m)| json!([x as i64, m as i64]))
                .collect::<Vec<_>>(),
        );
    Ok(())
}

fn eis_fourier(r: &mut Report, disc: i64, trace_bound: &str) -> Result<()> {
    let f = QuadraticField::new(disc)?;
    let t = parse_trace_bound(trace_bound)?;
    let exp = fourier_holomorphic(&f, &t)?;
    let report = hecke_checks(&exp)?;
    let terms: Vec<Value> = exp
        .terms
        .iter()
        .map(|t| json!({ "alpha": t.alpha.to_string(), "numerator": t.numerator.to_string(), "coefficient": t.coefficient as u64 }))
        .collect();
    r.set("disc", disc)
        .set("trace_bound", rational(&t))
        .set("constant", rational(&exp.constant))
        .set("terms", terms);
    for line in report.lines {
        let mut c = Check::new(line.name, line.passed, line.checked);
        if let Some(fail) = line.failure {
            c = c.with_detail(fail);
        }
        r.check(c);
    }
    Ok(())
}

fn eis_eval(r: &mut Report, disc: i64, trace_bound: &str, z: &[f64; 4]) -> Result<()> {
    let f = QuadraticField::new(disc)?;
    let t = parse_trace_bound(trace_bound)?;
    let exp = fourier_holomorphic(&f, &t)?;
    let ev = eval_holomorphic(
        &exp,
        [Complex64::new(z[0], z[1]), Complex64::new(z[2], z[3])],
    )?;
    r.set("disc", disc)
        .set("trace_bound", rational(&t))
        .set("terms", exp.len())
        .set("value_re", ev.value.re)
        .set("value_im", ev.value.im)
        .set("tail_bound", ev.tail_bound);
    Ok(())
}

fn eis_constant_term(
    r: &mut Report,
    disc: i64,
    s: f64,
    y: [f64; 2],
    bound: f64,
    tol: f64,
) -> Result<()> {
    const QUAD_POINTS: usize = 8;
    let f = QuadraticField::new(disc)?;
    let law = constant_term_law(&f, s, y)?;
    let num = constant_term_numeric(&f, s, y, bound, QUAD_POINTS)?;
    let diff = (num - law).abs();
    r.set("disc", disc)
        .set("s", s)
        .set("y", y.to_vec())
        .set("height_bound", bound)
        .set("quad_points", QUAD_POINTS)
        .set("numeric", num)
        .set("law", law)
        .set("scattering", scattering_coefficient(&f, s)?)
        .set("difference", diff);
    r.check(
        Check::new("constant-term-law", diff <= tol, 1)
            .with_detail(format!("|difference| = {diff:e}, tol {tol:e}")),
    );
    Ok(())
}

/// Turns an identity failure into a failed check; other errors propagate.
fn identity<T>(res: Result<T>) -> Result<std::result::Result<T, String>> {
    match res {
        Ok(v) => Ok(Ok(v)),
        Err(Error::IdentityFails(msg)) => Ok(Err(msg)),
        Err(e) => Err(e),
    }
}

fn gk_verify(r: &mut Report, d: usize, check: GkCheck) -> Result<()> {
    let cx = GkComplex::new(d)?;
    let mode = ExecMode::default();
    let want = |c: GkCheck| check == c || check == GkCheck::All;
    r.set("degree", d).set("basis_size", cx.full_basis().len());
    if want(GkCheck::D2) {
        let bad: Vec<String> = cx
            .full_basis()
            .iter()
            .filter(|k| !cx.differential(&cx.d_key(k)).is_zero())
            .map(|k| k.to_string())
            .collect();
        let mut c = Check::new("d-squared", bad.is_empty(), cx.full_basis().len());
        if let Some(k) = bad.first() {
            c = c.with_detail(format!("d(d({k})) != 0"));
        }
        r.check(c);
        if d <= GENERIC_MAX_DEGREE {
            let bad = check_generic_differential(d, mode)?;
            let mut c = Check::new(
                "generic-differential",
                bad.is_empty(),
                cx.full_basis().len(),
            );
            if let Some(k) = bad.first() {
                c = c.with_detail(format!("mismatch at {k}"));
            }
            r.check(c);
        }
        let conj = check_conjugations(d, mode)?;
        r.check(Check::new(
            "conjugations",
            conj.passed(),
            cx.full_basis().len(),
        ));
    }
    if want(GkCheck::Defective) && d >= 2 {
        match identity(verify_defective_all(d, mode))? {
            Ok(reports) => {
                let explicit = reports.iter().all(|x| x.explicit_matches);
                r.check(Check::new("defective", true, reports.len()));
                r.check(Check::new(
                    "defective-explicit-witness",
                    explicit,
                    reports.len(),
                ));
            }
            Err(msg) => {
                r.check(Check::new("defective", false, 0).with_detail(msg));
            }
        }
    }
    if want(GkCheck::Harder) {
        match identity(verify_harder_all(d, mode))? {
            Ok(reports) => {
                r.check(Check::new("harder", true, reports.len()));
            }
            Err(msg) => {
                r.check(Check::new("harder", false, 0).with_detail(msg));
            }
        }
    }
    if want(GkCheck::Closed) && d >= 2 {
        let census = closedness_census(d, mode)?;
        r.set("closed", census.closed)
            .set("residue", census.residue)
            .set("regular", census.regular)
            .set("cohomology", census.cohomology.clone());
        r.check(Check::new(
            "closed-forms",
            census.e_prime_closed,
            1usize << d,
        ))
        .check(Check::new("singleton-residue", census.singleton_residue, d))
        .check(Check::new(
            "census-d-squared",
            census.dd_zero,
            census.classes.len(),
        ));
    }
    Ok(())
}

fn residue_identity(r: &mut Report, disc: i64, tol: f64) -> Result<()> {
    let f = QuadraticField::new(disc)?;
    let rep = verify_residue_identity(&f, tol)?;
    r.set("disc", disc)
        .set("residue_ratio", rep.residue_ratio)
        .set("volume_ratio", rep.volume_ratio)
        .set("volume_boundary", rep.volume_boundary)
        .set("volume_y", rep.volume_y)
        .set("relative_error", rep.relative_error)
        .set("tolerance", rep.tolerance);
    r.check(
        Check::new("residue-volume", rep.passed, 1).with_detail(format!(
            "relative error {:e}, tol {tol:e}",
            rep.relative_error
        )),
    );
    Ok(())
}

fn weak_periods(r: &mut Report, disc: i64, d: usize, tol: f64) -> Result<()> {
    let f = QuadraticField::new(disc)?;
    let rep = verify_residue_identity(&f, tol)?;
    let z = zeta_minus_one(&f);
    let constant = BigRational::from_integer(BigInt::from(1))
        / (BigRational::from_integer(BigInt::from(2)) * z.abs());
    r.set("disc", disc)
        .set("degree", d)
        .set("zeta_minus_one", rational(&z))
        .set("constant", rational(&constant))
        .set("residue_relative_error", rep.relative_error);
    r.check(Check::new("residue-volume", rep.passed, 1));
    match identity(verify_defective_all(d, ExecMode::default()))? {
        Ok(reports) => {
            if let Some(first) = reports.first() {
                r.set("residual", first.residual.to_string())
                    .set("witness", first.explicit_witness.to_string());
            }
            let explicit = reports.iter().all(|x| x.explicit_matches);
            r.check(Check::new("defective", !reports.is_empty(), reports.len()))
                .check(Check::new(
                    "defective-explicit-witness",
                    explicit,
                    reports.len(),
                ));
        }
        Err(msg) => {
            r.check(Check::new("defective", false, 0).with_detail(msg));
        }
    }
    Ok(())
}
