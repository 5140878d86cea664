//! Dedekind zeta values of real quadratic fields and the residue/volume
//! comparison.
//!
//! Numerically ζ_F(s) = ζ(s)·L(s, χ_D) with
//! L(s, χ_D) = D^{−s} Σ_{a=1}^{D} χ_D(a)·ζ(s, a/D), and the Hurwitz zeta
//! function is evaluated by Euler–Maclaurin summation. The exact value
//! ζ_F(−1) comes from the divisor-sum formula
//! ζ_F(−1) = (1/60)·Σ_{b² < D, b ≡ D (mod 2)} σ((D − b²)/4).

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use statrs::function::gamma::gamma;

use crate::arith::{kronecker, sigma};
use crate::error::{Error, Result};
use crate::exec::{self, ExecMode};
use crate::field::QuadraticField;

/// B_{2j} / (2j)! for j = 1..=11.
const BERNOULLI_OVER_FACTORIAL: [f64; 11] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
];

/// Exact ζ_F(−1).
pub fn zeta_minus_one(field: &QuadraticField) -> BigRational {
    let d = field.disc() as i128;
    let mut total: u128 = 0;
    let mut b = d % 2;
    while b * b < d {
        let term = sigma(((d - b * b) / 4) as u128);
        total += if b == 0 { term } else { 2 * term };
        b += 2;
    }
    BigRational::new((total as i128).into(), 60.into())
}

/// Hurwitz zeta ζ(s, a) for a > 0 and s ≠ 1 by Euler–Maclaurin with `n`
/// direct terms. Returns the value and the magnitude of the first omitted
/// correction term.
pub fn hurwitz_zeta(s: f64, a: f64, n: usize) -> (f64, f64) {
    let mut sum = 0.0;
    for k in (0..n).rev() {
        sum += (k as f64 + a).powf(-s);
    }
    let x = n as f64 + a;
    sum += x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    let m = BERNOULLI_OVER_FACTORIAL.len() - 1;
    // rising factorial s(s+1)…(s+2j−2) times x^{−s−2j+1}
    let mut poch = s;
    let mut xp = x.powf(-s - 1.0);
    for (j, coeff) in BERNOULLI_OVER_FACTORIAL.iter().take(m).enumerate() {
        sum += coeff * poch * xp;
        let k = 2.0 * j as f64;
        poch *= (s + k + 1.0) * (s + k + 2.0);
        xp /= x * x;
    }
    let err = (BERNOULLI_OVER_FACTORIAL[m] * poch * xp).abs();
    (sum, err)
}

/// Riemann zeta ζ(s) with an error estimate.
pub fn riemann_zeta(s: f64) -> (f64, f64) {
    hurwitz_zeta(s, 1.0, 32)
}

/// L(s, χ_D) with an error estimate.
pub fn dirichlet_l(field: &QuadraticField, s: f64, n: usize, mode: ExecMode) -> (f64, f64) {
    let d = field.disc();
    let residues: Vec<(i64, i32)> = (1..=d)
        .map(|a| (a, kronecker(d, a as u64)))
        .filter(|&(_, chi)| chi != 0)
        .collect();
    let parts = exec::map(mode, &residues, |&(a, chi)| {
        let (v, e) = hurwitz_zeta(s, a as f64 / d as f64, n);
        (chi as f64 * v, e, v.abs())
    });
    let scale = (d as f64).powf(-s);
    let (mut value, mut err, mut mag) = (0.0, 0.0, 0.0);
    for (v, e, m) in parts {
        value += v;
        err += e;
        mag += m;
    }
    let rounding = 8.0 * f64::EPSILON * mag;
    (scale * value, scale * (err + rounding))
}

/// ζ_F(s) = ζ(s)·L(s, χ_D) for real s ≠ 1, with |value − ζ_F(s)| ≤ error.
pub fn zeta_numeric(field: &QuadraticField, s: f64, target_err: f64) -> Result<(f64, f64)> {
    zeta_numeric_with(field, s, target_err, ExecMode::default())
}

pub fn zeta_numeric_with(
    field: &QuadraticField,
    s: f64,
    target_err: f64,
    mode: ExecMode,
) -> Result<(f64, f64)> {
    if s == 1.0 {
        return Err(Error::PoleAtOne);
    }
    if !s.is_finite() || s <= -10.0 {
        return Err(Error::OutOfRange(s));
    }
    let mut n = 16;
    loop {
        let (z, ze) = hurwitz_zeta(s, 1.0, n);
        let (l, le) = dirichlet_l(field, s, n, mode);
        let value = z * l;
        let err = z.abs() * le + l.abs() * ze + ze * le + 4.0 * f64::EPSILON * value.abs();
        if err <= target_err {
            return Ok((value, err));
        }
        if n >= 4096 {
            return Err(Error::AccuracyNotReached {
                target: target_err,
                estimate: err,
            });
        }
        n *= 2;
    }
}

/// ξ_F(s) = D^{s/2}·(π^{−s/2} Γ(s/2))²·ζ_F(s) for s > 0, s ≠ 1.
pub fn completed_xi(field: &QuadraticField, s: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::PoleAtOne);
    }
    if !(s > 0.0) {
        return Err(Error::OutOfRange(s));
    }
    let (z, _) = zeta_numeric(field, s, 1e-13)?;
    let g = PI.powf(-s / 2.0) * gamma(s / 2.0);
    Ok((field.disc() as f64).powf(s / 2.0) * g * g * z)
}

/// ζ_F(−1) through the functional equation: ζ_F(−1) = D^{3/2}·ζ_F(2)/(4π⁴).
pub fn zeta_minus_one_numeric(field: &QuadraticField) -> Result<(f64, f64)> {
    let (z2, e2) = zeta_numeric(field, 2.0, 1e-14)?;
    let k = (field.disc() as f64).powf(1.5) / (4.0 * PI.powi(4));
    Ok((k * z2, k * e2))
}

/// Res_{s=1} ξ_F(2s−1)/ξ_F(2s) = Reg / ξ_F(2), computed with ξ_F(2) from
/// the numerical zeta value.
pub fn residue_xi_ratio(field: &QuadraticField) -> Result<f64> {
    if field.class_number() != 1 {
        return Err(Error::ClassNumberNotOne(field.class_number()));
    }
    Ok(field.regulator() / completed_xi(field, 2.0)?)
}

/// Closed form Reg·√D / (4·ζ_F(−1)·π²) of the residue ratio.
pub fn residue_xi_ratio_closed_form(field: &QuadraticField) -> f64 {
    let z = zeta_minus_one(field).to_f64().unwrap_or(f64::NAN);
    field.regulator() * field.sqrt_disc() / (4.0 * z * PI * PI)
}

/// vol(Y) = 2·|ζ_F(−1)|·(2π)².
pub fn volume_y(field: &QuadraticField) -> f64 {
    let z = zeta_minus_one(field).abs().to_f64().unwrap_or(f64::NAN);
    2.0 * z * (2.0 * PI).powi(2)
}

/// Closed form 2·Reg·√D of the boundary volume.
pub fn volume_boundary_closed_form(field: &QuadraticField) -> f64 {
    2.0 * field.regulator() * field.sqrt_disc()
}

/// Boundary volume computed directly as the covolume of 𝒪 under the two
/// embeddings times the covolume of the log-lattice of squares of units,
/// measured along the first log coordinate. Checked against 2·Reg·√D.
pub fn volume_boundary(field: &QuadraticField) -> Result<f64> {
    let e = field.fund_unit_int();
    volume_boundary_with_generator(field, &field.mul_int(&e, &e))
}

/// As [`volume_boundary`], with an explicit generator of the squares of
/// units (ε² or ε⁻²).
pub fn volume_boundary_with_generator(
    field: &QuadraticField,
    generator: &crate::field::IntElement,
) -> Result<f64> {
    let e = field.fund_unit_int();
    let sq = field.mul_int(&e, &e);
    if *generator != sq && *generator != field.unit_inverse(&sq) {
        return Err(Error::InvalidArgument("generator must be ε² or ε⁻²".into()));
    }
    let (w1, w2) = field.omega_embeddings();
    // rows: embeddings of 1 and ω
    let lattice = (1.0 * w2 - w1 * 1.0).abs();
    let log_lattice = field.embed_int(generator).0.abs().ln().abs();
    let direct = lattice * log_lattice;
    let closed = volume_boundary_closed_form(field);
    if (direct - closed).abs() > 1e-9 * closed.max(1.0) {
        return Err(Error::NormalizationMismatch { direct, closed });
    }
    Ok(direct)
}

/// (s − 1)·ζ_F(s), which tends to 2·h·Reg/√D as s → 1.
pub fn class_number_residue_numeric(field: &QuadraticField, s: f64) -> Result<f64> {
    // ζ_F grows like 1/(s − 1), so ask for relative accuracy
    let (z, _) = zeta_numeric(field, s, 1e-8 / (s - 1.0).abs())?;
    Ok((s - 1.0) * z)
}

pub fn class_number_residue_closed_form(field: &QuadraticField) -> f64 {
    2.0 * field.class_number() as f64 * field.regulator() / field.sqrt_disc()
}

/// Both sides of Res_{s=1} ξ_F(2s−1)/ξ_F(2s) = vol(∂X)/vol(X).
#[derive(Clone, Debug)]
pub struct ResidueReport {
    pub disc: i64,
    /// Reg/ξ_F(2) from the numerical zeta value.
    pub residue_ratio: f64,
    /// vol(∂X)/vol(X) from the exact ζ_F(−1) and the boundary covolume.
    pub volume_ratio: f64,
    pub volume_boundary: f64,
    pub volume_y: f64,
    pub relative_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Sign of ζ_F(−1); the volumes above are magnitudes.
    pub zeta_minus_one_sign: i32,
    /// Sign of ξ_F(2).
    pub xi_two_sign: i32,
}

pub fn verify_residue_identity(field: &QuadraticField, tol: f64) -> Result<ResidueReport> {
    if !field.narrow_h1() {
        return Err(Error::NarrowClassNumberNotOne);
    }
    let residue_ratio = residue_xi_ratio(field)?;
    let vb = volume_boundary(field)?;
    let vy = volume_y(field);
    let volume_ratio = vb / vy;
    let relative_error = ((residue_ratio - volume_ratio) / volume_ratio).abs();
    let z = zeta_minus_one(field);
    Ok(ResidueReport {
        disc: field.disc(),
        residue_ratio,
        volume_ratio,
        volume_boundary: vb,
        volume_y: vy,
        relative_error,
        tolerance: tol,
        passed: relative_error <= tol,
        zeta_minus_one_sign: if z.is_positive() {
            1
        } else if z.is_negative() {
            -1
        } else {
            0
        },
        xi_two_sign: completed_xi(field, 2.0)?.signum() as i32,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn siegel_values() {
        for (d, num, den) in [
            (5, 1, 30),
            (8, 1, 12),
            (12, 1, 6),
            (13, 1, 6),
            (17, 1, 3),
            (24, 1, 2),
        ] {
            let f = QuadraticField::new(d).unwrap();
            assert_eq!(
                zeta_minus_one(&f),
                BigRational::new(num.into(), den.into()),
                "D = {d}"
            );
        }
    }

    #[test]
    fn riemann_zeta_values() {
        let (z2, e) = riemann_zeta(2.0);
        assert!((z2 - PI * PI / 6.0).abs() < 1e-14 && e < 1e-14);
        let (zm1, _) = riemann_zeta(-1.0);
        assert!((zm1 + 1.0 / 12.0).abs() < 1e-14);
        let (zh, _) = riemann_zeta(0.5);
        assert!((zh + 1.4603545088095868).abs() < 1e-13);
    }

    #[test]
    fn pole_is_rejected() {
        let f = QuadraticField::new(5).unwrap();
        assert_eq!(zeta_numeric(&f, 1.0, 1e-10), Err(Error::PoleAtOne));
    }
}
