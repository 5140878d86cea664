//! Identity checks on the complex: the defective identity, the (c_i + 1)
//! identity, conjugation symmetries and the closedness census.

use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};

use super::{Exactness, GkBasisKey, GkComplex, GkElement, RatFunc, WeightVector, RHO};

#[derive(Clone, Debug)]
pub struct DefectiveReport {
    pub d: usize,
    pub i: usize,
    pub j: usize,
    /// E'_I − (−1)^d·Ē'_I − R·(ω'_{[d]−i} − ω'_{[d]−j}) for I = {i, j}.
    pub residual: GkElement,
    /// Primitive found by the linear solve.
    pub witness: GkElement,
    /// F_{2e_j} ⊗ η ∧ ω'_ε + F_{−2e_i} ⊗ η ∧ ω'_ε with ε = [d] − {i, j}.
    pub explicit_witness: GkElement,
    pub explicit_matches: bool,
}

/// Checks that E'_I − (−1)^d·Ē'_I − R·(ω'_{[d]−i} − ω'_{[d]−j}) is exact
/// for I = {i, j}, i < j.
pub fn verify_defective(d: usize, i: usize, j: usize) -> Result<DefectiveReport> {
    if d < 2 || i >= j || j >= d {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= i < j < d, d >= 2; got d={d}, i={i}, j={j}"
        )));
    }
    let cx = GkComplex::new(d)?;
    let all = (1u32 << d) - 1;
    let subset = 1 << i | 1 << j;
    let e = cx.e_prime(subset);
    let sign = RatFunc::from_int(if d.is_multiple_of(2) { 1 } else { -1 });
    let lhs = e.sub(&cx.conj_bar(&e).scale(&sign));
    let omegas = cx
        .omega_prime(all & !(1 << i))
        .sub(&cx.omega_prime(all & !(1 << j)));
    let residual = lhs.sub(&omegas.scale(&RatFunc::var()));

    let eps = all & !subset;
    let mut explicit_witness = GkElement::zero(d);
    explicit_witness.add_term(cx.key(&unit_weight(d, j, 2), eps)?, &RatFunc::one());
    explicit_witness.add_term(cx.key(&unit_weight(d, i, -2), eps)?, &RatFunc::one());
    let explicit_matches = cx.differential(&explicit_witness) == residual;

    match cx.is_exact(&residual) {
        Ok(Exactness::Exact(witness)) => Ok(DefectiveReport {
            d,
            i,
            j,
            residual,
            witness,
            explicit_witness,
            explicit_matches,
        }),
        Ok(Exactness::NotExact(_)) => Err(Error::IdentityFails(format!(
            "residual {residual} is not exact"
        ))),
        Err(Error::NotClosed) => Err(Error::IdentityFails(format!(
            "residual {residual} is not closed"
        ))),
        Err(e) => Err(e),
    }
}

fn unit_weight(d: usize, axis: usize, value: i64) -> Vec<i64> {
    let mut v = vec![0; d];
    v[axis] = value;
    v
}

pub fn verify_defective_all(d: usize, mode: ExecMode) -> Result<Vec<DefectiveReport>> {
    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .collect();
    exec::map(mode, &pairs, |&(i, j)| verify_defective(d, i, j))
        .into_iter()
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HarderCase {
    /// i ∈ I: (c_i + 1)E'_I = σ·d(E'-type primitive).
    Contains,
    /// i ∉ I: (c_i + 1)E'_I = 0.
    Excludes,
}

#[derive(Clone, Debug)]
pub struct HarderReport {
    pub d: usize,
    pub subset: u32,
    pub i: usize,
    pub case: HarderCase,
    pub lhs: GkElement,
    pub rhs: GkElement,
    /// σ·F_{φ(I−i)} ⊗ η ∧ ω'_{[d]−I}, with σ = (−1)^{#{k ∈ I : k < i}}.
    pub primitive: Option<GkElement>,
}

/// Checks (c_i + 1)·E'_I against d of the signed primitive for i ∈ I, and
/// against zero for i ∉ I. Requires |I| > 2.
pub fn verify_harder(d: usize, subset: u32, i: usize) -> Result<HarderReport> {
    let all = (1u32 << d.min(31)) - 1;
    if subset & !all != 0 || subset.count_ones() <= 2 || i >= d {
        return Err(Error::InvalidArgument(format!(
            "need |I| > 2 inside [d] and i < d; got d={d}, I={subset:#b}, i={i}"
        )));
    }
    let cx = GkComplex::new(d)?;
    let e = cx.e_prime(subset);
    let lhs = cx.conj_c(i, &e).add(&e);
    let (case, rhs, primitive) = if subset >> i & 1 == 1 {
        let before = (subset & ((1u32 << i) - 1)).count_ones();
        let sigma = RatFunc::from_int(if before.is_multiple_of(2) { 1 } else { -1 });
        let key = GkBasisKey::new(
            WeightVector::indicator(d, subset & !(1 << i)),
            all & !subset,
        )?;
        let p = GkElement::from_key(key).scale(&sigma);
        (HarderCase::Contains, cx.differential(&p), Some(p))
    } else {
        (HarderCase::Excludes, GkElement::zero(d), None)
    };
    if lhs != rhs {
        return Err(Error::IdentityFails(format!(
            "(c_{} + 1)E'_I = {lhs}, expected {rhs}",
            i + 1
        )));
    }
    Ok(HarderReport {
        d,
        subset,
        i,
        case,
        lhs,
        rhs,
        primitive,
    })
}

/// All (I, i) with |I| > 2.
pub fn verify_harder_all(d: usize, mode: ExecMode) -> Result<Vec<HarderReport>> {
    let cases: Vec<(u32, usize)> = (0u32..1 << d)
        .filter(|s| s.count_ones() > 2)
        .flat_map(|s| (0..d).map(move |i| (s, i)))
        .collect();
    exec::map(mode, &cases, |&(s, i)| verify_harder(d, s, i))
        .into_iter()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationReport {
    pub d: usize,
    pub involutions: bool,
    pub commute_each_other: bool,
    pub commute_with_d: bool,
}

impl ConjugationReport {
    pub fn passed(&self) -> bool {
        self.involutions && self.commute_each_other && self.commute_with_d
    }
}

/// Exhaustive check over the basis that c_1..c_d and bar are commuting
/// involutions commuting with d.
pub fn check_conjugations(d: usize, mode: ExecMode) -> Result<ConjugationReport> {
    let cx = GkComplex::new(d)?;
    let flags = exec::map(mode, cx.full_basis(), |key| {
        let x = GkElement::from_key(key.clone());
        let dx = cx.differential(&x);
        let bar = cx.conj_bar(&x);
        let mut inv = cx.conj_bar(&bar) == x;
        let mut comm = true;
        let mut with_d = cx.differential(&bar) == cx.conj_bar(&dx);
        for i in 0..d {
            let ci = cx.conj_c(i, &x);
            inv &= cx.conj_c(i, &ci) == x;
            comm &= cx.conj_bar(&ci) == cx.conj_c(i, &bar);
            for k in i + 1..d {
                comm &= cx.conj_c(k, &ci) == cx.conj_c(i, &cx.conj_c(k, &x));
            }
            with_d &= cx.differential(&ci) == cx.conj_c(i, &dx);
        }
        (inv, comm, with_d)
    });
    Ok(ConjugationReport {
        d,
        involutions: flags.iter().all(|f| f.0),
        commute_each_other: flags.iter().all(|f| f.1),
        commute_with_d: flags.iter().all(|f| f.2),
    })
}

/// Generators on which the differential built from the Lie action differs
/// from the closed form.
pub fn check_generic_differential(d: usize, mode: ExecMode) -> Result<Vec<GkBasisKey>> {
    let cx = GkComplex::new(d)?;
    let rows = exec::map(mode, cx.full_basis(), |key| {
        cx.d_key_generic(key)
            .map(|g| (g != cx.d_key(key)).then(|| key.clone()))
    });
    let mut out = Vec::new();
    for r in rows {
        if let Some(k) = r? {
            out.push(k);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closedness {
    Closed,
    /// d(x) ≠ 0 and involves R.
    Residue,
    /// d(x) ≠ 0 with rational coefficients only.
    Regular,
}

#[derive(Clone, Debug)]
pub struct CensusReport {
    pub d: usize,
    pub classes: Vec<(GkBasisKey, Closedness)>,
    pub closed: usize,
    pub residue: usize,
    pub regular: usize,
    /// d(E'_S) = 0 for every |S| ≥ 2.
    pub e_prime_closed: bool,
    /// d(E'_{{i}}) = −ρ·R·ω'_{[d]} for every i.
    pub singleton_residue: bool,
    /// d∘d = 0 on every generator.
    pub dd_zero: bool,
    /// dim H^k over ℚ(R), k = 0..=2d.
    pub cohomology: Vec<usize>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.e_prime_closed && self.singleton_residue && self.dd_zero
    }
}

pub fn closedness_census(d: usize, mode: ExecMode) -> Result<CensusReport> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "census needs d >= 2, got {d}"
        )));
    }
    let cx = GkComplex::new(d)?;
    let rows = exec::map(mode, cx.full_basis(), |key| {
        let dx = cx.d_key(key);
        let dd = cx.differential(&dx).is_zero();
        let class = if dx.is_zero() {
            Closedness::Closed
        } else if dx.involves_r() {
            Closedness::Residue
        } else {
            Closedness::Regular
        };
        (key.clone(), class, dd)
    });
    let dd_zero = rows.iter().all(|r| r.2);
    let classes: Vec<(GkBasisKey, Closedness)> = rows.into_iter().map(|(k, c, _)| (k, c)).collect();
    let count = |c: Closedness| classes.iter().filter(|(_, x)| *x == c).count();

    let all = (1u32 << d) - 1;
    let e_prime_closed = (0..=all)
        .filter(|s| s.count_ones() >= 2)
        .all(|s| cx.differential(&cx.e_prime(s)).is_zero());
    let top = cx
        .omega_prime(all)
        .scale(&(&RatFunc::var() * &RatFunc::from_int(-RHO)));
    let singleton_residue = (0..d).all(|i| cx.differential(&cx.e_prime(1 << i)) == top);

    Ok(CensusReport {
        d,
        closed: count(Closedness::Closed),
        residue: count(Closedness::Residue),
        regular: count(Closedness::Regular),
        classes,
        e_prime_closed,
        singleton_residue,
        dd_zero,
        cohomology: cx.cohomology_dims(mode),
    })
}
