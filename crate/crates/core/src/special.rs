//! Gamma-type special functions on the complex plane.
//!
//! `gamma` and `rgamma` use the g = 7, n = 9 Lanczos approximation with the
//! reflection formula left of Re z = 1/2 (relative accuracy ~1e-15).
//! `scaled_upper_gamma` evaluates x^(-s) Γ(s, x), the building block of the
//! theta-function splitting of lattice zeta functions.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 200_000;

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r == r.round() {
        return 0.0;
    }
    // r in [-1, 1]
    if r.abs() <= 0.5 {
        (PI * r).sin()
    } else {
        (PI * (r.signum() - r)).sin()
    }
}

/// cos(πx) with exact zeros at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

fn sin_pi_c(z: Complex64) -> Complex64 {
    let (y, s, c) = (PI * z.im, sin_pi(z.re), cos_pi(z.re));
    Complex64::new(s * y.cosh(), c * y.sinh())
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// ln Γ(z) for Re z ≥ 1/2 (principal branch of the Lanczos form).
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Γ(z). Returns an error at the poles z = 0, -1, -2, ...
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole {
            at: z.re,
            residue: None,
        });
    }
    if z.re < 0.5 {
        Ok(PI / (sin_pi_c(z) * ln_gamma_right(1.0 - z).exp()))
    } else {
        Ok(ln_gamma_right(z).exp())
    }
}

/// 1/Γ(z), entire; exactly zero at the non-positive integers.
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    if z.re < 0.5 {
        sin_pi_c(z) * ln_gamma_right(1.0 - z).exp() / PI
    } else {
        (-ln_gamma_right(z)).exp()
    }
}

pub fn gamma_real(x: f64) -> Result<f64> {
    gamma(Complex64::new(x, 0.0)).map(|g| g.re)
}

/// x^(-s) Γ(s, x) for real x > 0 and complex s.
///
/// Uses the power series of the lower function when x < Re s + 1 and
/// Re s > 1 (no cancellation there), and the Legendre continued fraction
/// otherwise.
pub fn scaled_upper_gamma(s: Complex64, x: f64) -> Result<Complex64> {
    if x <= 0.0 {
        return Err(Error::Domain(format!(
            "incomplete gamma needs x > 0, got {x}"
        )));
    }
    if s.re > 1.0 && x < s.re + 1.0 {
        let lower = scaled_lower_series(s, x)?;
        let full = gamma(s)? * (-s * x.ln()).exp();
        Ok(full - lower)
    } else {
        continued_fraction(s, x)
    }
}

/// x^(-s) γ(s, x) = e^(-x) Σ x^n / (s (s+1) ... (s+n)).
fn scaled_lower_series(s: Complex64, x: f64) -> Result<Complex64> {
    let mut term = 1.0 / s;
    let mut sum = term;
    for n in 1..MAX_ITER {
        term *= x / (s + n as f64);
        sum += term;
        if term.norm() < EPS * sum.norm() {
            return Ok(sum * (-x).exp());
        }
    }
    Err(Error::Internal(format!(
        "incomplete gamma series did not converge (s = {s}, x = {x})"
    )))
}

fn continued_fraction(a: Complex64, x: f64) -> Result<Complex64> {
    let tiny = Complex64::new(TINY, 0.0);
    let mut b = x + 1.0 - a;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = if b.norm() < TINY { tiny } else { b }.inv();
    let mut h = d;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        let an = -fi * (fi - a);
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = tiny;
        }
        c = b + an / c;
        if c.norm() < TINY {
            c = tiny;
        }
        d = d.inv();
        let del = d * c;
        h *= del;
        if (del - 1.0).norm() < EPS {
            return Ok(h * (-x).exp());
        }
    }
    Err(Error::Internal(format!(
        "incomplete gamma continued fraction did not converge (s = {a}, x = {x})"
    )))
}

/// Upper bound on |x^(-s) Γ(s, x)| valid for x > max(Re s - 1, 0).
pub fn scaled_upper_gamma_bound(sigma: f64, x: f64) -> f64 {
    let c = (sigma - 1.0).max(0.0);
    if x <= c {
        return f64::INFINITY;
    }
    (-x).exp() / (x - c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn gamma_at_integers_and_half() {
        let mut fact = 1.0;
        for n in 1..20 {
            let g = gamma(c(n as f64)).unwrap().re;
            assert!((g - fact).abs() <= 1e-13 * fact, "n = {n}: {g} vs {fact}");
            fact *= n as f64;
        }
        assert!((gamma(c(0.5)).unwrap().re - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(c(-0.5)).unwrap().re + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn poles_and_reciprocal() {
        assert!(gamma(c(0.0)).is_err());
        assert!(gamma(c(-3.0)).is_err());
        assert_eq!(rgamma(c(-3.0)), c(0.0));
        let z = Complex64::new(0.3, 1.7);
        let prod = gamma(z).unwrap() * rgamma(z);
        assert!((prod - 1.0).norm() < 1e-14);
    }

    #[test]
    fn reflection_identity_complex() {
        let z = Complex64::new(0.25, -2.5);
        let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap();
        let rhs = PI / sin_pi_c(z);
        assert!((lhs - rhs).norm() < 1e-13 * rhs.norm());
    }

    #[test]
    fn incomplete_gamma_closed_forms() {
        // Γ(1, x) = e^-x, so x^-1 Γ(1, x) = e^-x / x
        for &x in &[0.3, 1.0, 2.5, 10.0] {
            let g = scaled_upper_gamma(c(1.0), x).unwrap().re;
            assert!((g - (-x).exp() / x).abs() < 1e-15 * (-x).exp().max(1e-300) * 10.0);
        }
        // Γ(2, x) = (x + 1) e^-x
        for &x in &[0.5, 2.0, 3.5, 8.0] {
            let g = scaled_upper_gamma(c(2.0), x).unwrap().re;
            let want = (x + 1.0) * (-x).exp() / (x * x);
            assert!((g - want).abs() < 1e-14 * want, "x = {x}");
        }
        // Γ(1/2, x) = sqrt(pi) erfc(sqrt x); check at x where erfc is known
        // through the series branch for a larger order: Γ(5, x) = 24 e^-x Σ x^k/k!
        for &x in &[0.7, 3.0, 5.5, 12.0] {
            let g = scaled_upper_gamma(c(5.0), x).unwrap().re;
            let poly = 1.0 + x + x * x / 2.0 + x.powi(3) / 6.0 + x.powi(4) / 24.0;
            let want = 24.0 * (-x).exp() * poly / x.powi(5);
            assert!((g - want).abs() < 1e-13 * want, "x = {x}: {g} vs {want}");
        }
    }

    #[test]
    fn incomplete_gamma_negative_order_recurrence() {
        // Γ(a+1, x) = a Γ(a, x) + x^a e^-x
        for &(a, x) in &[(-0.5, 1.2), (-2.3, 3.0), (-4.0, 2.0), (0.0, 1.0)] {
            let lhs = scaled_upper_gamma(c(a + 1.0), x).unwrap().re * x.powf(a + 1.0);
            let rhs =
                a * scaled_upper_gamma(c(a), x).unwrap().re * x.powf(a) + x.powf(a) * (-x).exp();
            assert!((lhs - rhs).abs() < 1e-13 * lhs.abs().max(1e-300), "a = {a}");
        }
    }

    #[test]
    fn bound_dominates() {
        for &(s, x) in &[(0.3, 2.0), (2.7, 4.0), (-3.0, 1.5), (6.0, 12.0)] {
            let g = scaled_upper_gamma(c(s), x).unwrap().norm();
            assert!(g <= scaled_upper_gamma_bound(s, x));
        }
    }
}
