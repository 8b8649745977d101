//! Ground-state exponents built from d*_q = ζ_Q(2q), the λ → 0 limit of
//! ζ*_λ(2q), and their reflection symmetry about q = 1/4.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::zeta::{epstein_zeta_real, phi_q, QuadraticForm};

/// Tolerance for every Epstein evaluation made here.
pub const GROUND_TOL: f64 = 1e-14;
/// Below this distance from q = 1 the removable singularity is filled by
/// its limit.
pub const LIMIT_WINDOW: f64 = 1e-7;
const DERIVATIVE_STEP: f64 = 1e-3;

/// d*_q = ζ_Q(2q) through the analytic continuation.
pub fn d_star(form: &QuadraticForm, q: f64) -> Result<f64> {
    if !q.is_finite() {
        return domain(format!("q must be finite, got {q}"));
    }
    Ok(epstein_zeta_real(form, 2.0 * q, GROUND_TOL)?.re())
}

fn log_abs_d_star(form: &QuadraticForm, q: f64) -> Result<f64> {
    let d = d_star(form, q)?;
    if d == 0.0 {
        return domain(format!("ζ_Q vanishes at 2q = {}", 2.0 * q));
    }
    Ok(d.abs().ln())
}

/// ζ'_Q(2) from a five-point central stencil.
fn zeta_derivative_at_two(form: &QuadraticForm) -> Result<f64> {
    let h = DERIVATIVE_STEP;
    let f = |s: f64| epstein_zeta_real(form, s, GROUND_TOL).map(|z| z.re());
    Ok(
        (f(2.0 - 2.0 * h)? - 8.0 * f(2.0 - h)? + 8.0 * f(2.0 + h)? - f(2.0 + 2.0 * h)?)
            / (12.0 * h),
    )
}

/// D*_q = (log|d*_q| − q log d*_1)/(1 − q), with the q = 1 value
/// log ζ_Q(2) − 2ζ'_Q(2)/ζ_Q(2).
pub fn d_star_exponent(form: &QuadraticForm, q: f64) -> Result<f64> {
    if q == 0.5 {
        return Err(Error::Pole {
            at: 0.5,
            residue: None,
        });
    }
    let z2 = d_star(form, 1.0)?;
    if (q - 1.0).abs() < LIMIT_WINDOW {
        return Ok(z2.ln() - 2.0 * zeta_derivative_at_two(form)? / z2);
    }
    Ok((log_abs_d_star(form, q)? - q * z2.ln()) / (1.0 - q))
}

/// Both sides of the reflection relation
/// D*_{1/2−q} = ((1−q)/(1/2+q))·(D*_q + [log φ_Q(2q) + (2q − 1/2) log ζ_Q(2)]/(1 − q)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetryCheck {
    pub q: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

pub fn symmetry_check(form: &QuadraticForm, q: f64) -> Result<SymmetryCheck> {
    if !q.is_finite() {
        return domain(format!("q must be finite, got {q}"));
    }
    // 2q ∈ ℤ hits a pole of φ_Q(2q) or of D* at q or 1/2 − q
    if (2.0 * q).fract() == 0.0 {
        return Err(Error::Pole {
            at: q,
            residue: None,
        });
    }
    let phi = phi_q(form, Complex64::new(2.0 * q, 0.0))?.re;
    let z2 = d_star(form, 1.0)?;
    let lhs = d_star_exponent(form, 0.5 - q)?;
    let bracket = (phi.abs().ln() + (2.0 * q - 0.5) * z2.ln()) / (1.0 - q);
    let rhs = (1.0 - q) / (0.5 + q) * (d_star_exponent(form, q)? + bracket);
    Ok(SymmetryCheck {
        q,
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::zeta_star_shifted;

    // 4ζ(2)β(2) with β(2) Catalan's constant
    const SQUARE_AT_2: f64 = 4.0 * 1.644_934_066_848_226_4 * 0.915_965_594_177_219;

    #[test]
    fn d_star_values() {
        let sq = QuadraticForm::square();
        assert!((d_star(&sq, 1.0).unwrap() - SQUARE_AT_2).abs() < 1e-12);
        assert_eq!(d_star(&sq, 0.0).unwrap(), -1.0);
        assert!(matches!(d_star(&sq, 0.5), Err(Error::Pole { .. })));
    }

    #[test]
    fn exponent_limit_at_one() {
        for a in [1.0, 1.3] {
            let form = QuadraticForm::new(a).unwrap();
            let filled = d_star_exponent(&form, 1.0).unwrap();
            let left = d_star_exponent(&form, 1.0 - 1e-4).unwrap();
            let right = d_star_exponent(&form, 1.0 + 1e-4).unwrap();
            assert!((0.5 * (left + right) - filled).abs() < 1e-6, "a = {a}");
            assert!((left - filled).abs() < 1e-3 && (right - filled).abs() < 1e-3);
        }
    }

    #[test]
    fn exponent_is_smooth_above_the_pole() {
        // finite everywhere, and steps shrink in proportion to the spacing
        let form = QuadraticForm::square();
        let d = |q: f64| d_star_exponent(&form, q).unwrap();
        for i in 0..=48 {
            let q = 0.6 + 2.4 * i as f64 / 48.0;
            let h = 1e-3;
            let (full, half) = (d(q + h) - d(q), d(q + 0.5 * h) - d(q));
            assert!(full.is_finite() && half.is_finite());
            let ratio = full / half;
            assert!((1.9..2.1).contains(&ratio), "q = {q}: {ratio}");
        }
    }

    #[test]
    fn reflection_relation_holds() {
        for a in [1.0, 1.3] {
            let form = QuadraticForm::new(a).unwrap();
            for q in [0.05, 0.1, 0.2, 0.25, 0.35, 0.45] {
                let c = symmetry_check(&form, q).unwrap();
                assert!(c.residual < 1e-8, "a = {a}, q = {q}: {c:?}");
            }
        }
        assert!(matches!(
            symmetry_check(&QuadraticForm::square(), 0.5),
            Err(Error::Pole { .. })
        ));
        assert!(matches!(
            symmetry_check(&QuadraticForm::square(), 1.0),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn zeta_star_approaches_d_star() {
        let form = QuadraticForm::new(1.3).unwrap();
        let target = d_star(&form, 1.2).unwrap();
        let gaps: Vec<f64> = [1e-1, 1e-2, 1e-3]
            .iter()
            .map(|&l| (zeta_star_shifted(&form, l, 2.4, 1e-12).unwrap().re() - target).abs())
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
    }
}
