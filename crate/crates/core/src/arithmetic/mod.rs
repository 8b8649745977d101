//! Sums of two squares: r₂(n), shell enumeration, annulus counts, and the
//! statistical diagnostics of the arithmetic Laplace spectrum.

mod factor;
pub mod sieve;

use std::f64::consts::PI;

pub use factor::{factorize, is_prime};
pub use sieve::{disk_count, R2Table, ShellStream};

use crate::error::{domain, Error, Result};

/// Upper limit on `x` for routines that materialise every shell below `x`.
pub const MAX_SHELL_BOUND: f64 = 1e8;
/// Upper limit on the number of integers a streaming count may visit.
pub const MAX_STREAM_SPAN: f64 = 2e10;

/// An integer n together with its representation count r₂(n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeShell {
    pub n: u64,
    pub r2: u64,
}

impl From<(u64, u64)> for LatticeShell {
    fn from((n, r2): (u64, u64)) -> Self {
        Self { n, r2 }
    }
}

/// Lattice points with ||ξ|² − λ| ≤ width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusCount {
    pub lambda: f64,
    pub width: f64,
    pub count: u64,
}

/// r₂(n) = #{(x, y) ∈ Z² : x² + y² = n}, from the factorisation of n via
/// r₂(n) = 4 Σ_{d | n} χ₄(d).
pub fn r2(n: u64) -> Result<u64> {
    if n == 0 {
        return Ok(1);
    }
    let mut count = 4;
    for (p, e) in factorize(n)? {
        match p % 4 {
            1 => count *= e as u64 + 1,
            3 if e % 2 == 1 => return Ok(0),
            _ => {}
        }
    }
    Ok(count)
}

/// |Σ_{n ≤ u} r₂(n) − πu| ≤ π√2·√u + π/2 for every u ≥ 0.
///
/// Unit squares centred at the lattice points inside the disk of radius √u
/// are disjoint and lie in the disk of radius √u + √2/2, and they cover the
/// disk of radius √u − √2/2.
pub fn gauss_error_bound(u: f64) -> f64 {
    PI * std::f64::consts::SQRT_2 * u.max(0.0).sqrt() + PI / 2.0
}

fn check_span(lo: u64, hi: u64) -> Result<()> {
    let span = hi.saturating_sub(lo) as f64 + 1.0;
    if span > MAX_STREAM_SPAN {
        return Err(Error::Capacity {
            what: "integer span",
            requested: span,
            limit: MAX_STREAM_SPAN,
        });
    }
    Ok(())
}

/// All shells with 0 ≤ n ≤ x and r₂(n) > 0, ascending.
pub fn shells_up_to(x: f64) -> Result<Vec<LatticeShell>> {
    if !(x >= 0.0) {
        return domain(format!("shells_up_to needs x >= 0, got {x}"));
    }
    if x > MAX_SHELL_BOUND {
        return Err(Error::Capacity {
            what: "shell list bound",
            requested: x,
            limit: MAX_SHELL_BOUND,
        });
    }
    Ok(ShellStream::new(0, x.floor() as u64)
        .map(LatticeShell::from)
        .collect())
}

/// Σ r₂(n) over the integers n ∈ [λ − width, λ + width] (lower edge clamped
/// at 0).
pub fn annulus_count(lambda: f64, width: f64) -> Result<AnnulusCount> {
    if !(width > 0.0) || !width.is_finite() {
        return domain(format!("annulus width must be positive, got {width}"));
    }
    if !lambda.is_finite() {
        return domain(format!("annulus centre must be finite, got {lambda}"));
    }
    let upper = (lambda + width).floor();
    let lower = (lambda - width).ceil().max(0.0);
    let count = if upper < lower {
        0
    } else {
        let (lo, hi) = (lower as u64, upper as u64);
        check_span(lo, hi)?;
        ShellStream::new(lo, hi).map(|(_, r)| r).sum()
    };
    Ok(AnnulusCount {
        lambda,
        width,
        count,
    })
}

/// B(x) = #{1 ≤ n ≤ x : r₂(n) > 0}.
pub fn representable_count(x: f64) -> Result<u64> {
    if !(x >= 1.0) {
        return Ok(0);
    }
    let hi = x.floor() as u64;
    check_span(1, hi)?;
    Ok(ShellStream::new(1, hi).count() as u64)
}

/// B(x)·√(log x)/x. Landau's theorem says this tends to a constant.
pub fn landau_ratio(x: f64) -> Result<f64> {
    if !(x >= 10.0) {
        return domain(format!("landau_ratio needs x >= 10, got {x}"));
    }
    let b = representable_count(x)? as f64;
    Ok(b * x.ln().sqrt() / x)
}

/// Empirical distribution of log r₂(n) / log log n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalOrderSummary {
    pub count: usize,
    pub median: f64,
    pub lower_quartile: f64,
    pub upper_quartile: f64,
    pub min: f64,
    pub max: f64,
}

impl NormalOrderSummary {
    pub fn from_values(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty(
                "no representable integers in the window".into(),
            ));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self {
            count: values.len(),
            median: quantile(&values, 0.5),
            lower_quartile: quantile(&values, 0.25),
            upper_quartile: quantile(&values, 0.75),
            min: values[0],
            max: values[values.len() - 1],
        })
    }
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let (i, frac) = (h.floor() as usize, h - h.floor());
    match sorted.get(i + 1) {
        Some(&next) => sorted[i] + frac * (next - sorted[i]),
        None => sorted[i],
    }
}

/// Distribution of log r₂(n)/log log n over representable n ∈ [n_low, n_high].
pub fn normal_order_exponent(n_low: u64, n_high: u64) -> Result<NormalOrderSummary> {
    if n_low < 3 {
        return domain(format!(
            "normal_order_exponent needs n_low >= 3 (log log n > 0), got {n_low}"
        ));
    }
    if n_high < n_low {
        return domain(format!("empty window [{n_low}, {n_high}]"));
    }
    check_span(n_low, n_high)?;
    let values = ShellStream::new(n_low, n_high)
        .map(|(n, r)| (r as f64).ln() / (n as f64).ln().ln())
        .collect();
    NormalOrderSummary::from_values(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r2_examples() {
        assert_eq!(r2(0).unwrap(), 1);
        assert_eq!(r2(1).unwrap(), 4);
        assert_eq!(r2(3).unwrap(), 0);
        assert_eq!(r2(25).unwrap(), 12);
        assert_eq!(r2(9).unwrap(), 4);
        assert_eq!(r2(65).unwrap(), 16);
    }

    #[test]
    fn r2_large_inputs() {
        // 2^62 = (2^31)^2 + 0^2, only the four axis points
        assert_eq!(r2(1 << 62).unwrap(), 4);
        // 5^26 has 27 * 4 representations
        assert_eq!(r2(5u64.pow(26)).unwrap(), 108);
        // p ≡ 3 mod 4 to an odd power
        assert_eq!(r2(3 * 1_000_000_007u64 * 1_000_000_007).unwrap(), 0);
    }

    #[test]
    fn shells_small() {
        let s: Vec<(u64, u64)> = shells_up_to(5.0)
            .unwrap()
            .iter()
            .map(|s| (s.n, s.r2))
            .collect();
        assert_eq!(s, vec![(0, 1), (1, 4), (2, 4), (4, 4), (5, 8)]);
        assert_eq!(
            shells_up_to(0.5).unwrap(),
            vec![LatticeShell { n: 0, r2: 1 }]
        );
        let ten: Vec<u64> = shells_up_to(10.0).unwrap().iter().map(|s| s.n).collect();
        assert!(ten.contains(&9) && ten.contains(&10));
        assert!(!ten.contains(&3) && !ten.contains(&6) && !ten.contains(&7));
        assert!(shells_up_to(-1.0).is_err());
        assert!(matches!(shells_up_to(1e12), Err(Error::Capacity { .. })));
    }

    #[test]
    fn annulus_examples() {
        assert_eq!(annulus_count(5.5, 0.4).unwrap().count, 0);
        assert_eq!(annulus_count(5.5, 0.5).unwrap().count, 8);
        assert_eq!(annulus_count(2.0, 1.0).unwrap().count, 8);
        // lower edge clamped at zero
        assert_eq!(annulus_count(0.5, 1.0).unwrap().count, 5);
        assert!(annulus_count(1.0, 0.0).is_err());
    }

    #[test]
    fn landau_small_window() {
        // representable n <= 10: 1, 2, 4, 5, 8, 9, 10
        assert_eq!(representable_count(10.0).unwrap(), 7);
        let want = 7.0 * 10f64.ln().sqrt() / 10.0;
        assert!((landau_ratio(10.0).unwrap() - want).abs() < 1e-15);
        assert!(landau_ratio(5.0).is_err());
    }

    #[test]
    fn normal_order_single_shell() {
        let s = normal_order_exponent(5, 5).unwrap();
        assert_eq!(s.count, 1);
        assert!((s.median - 8f64.ln() / 5f64.ln().ln()).abs() < 1e-15);
        assert!(matches!(normal_order_exponent(6, 7), Err(Error::Empty(_))));
    }

    #[test]
    fn quantiles() {
        let s = NormalOrderSummary::from_values(vec![4.0, 1.0, 3.0, 2.0, 5.0]).unwrap();
        assert_eq!(
            (s.lower_quartile, s.median, s.upper_quartile),
            (2.0, 3.0, 4.0)
        );
        let perm = NormalOrderSummary::from_values(vec![5.0, 3.0, 1.0, 4.0, 2.0]).unwrap();
        assert_eq!(s, perm);
    }
}
