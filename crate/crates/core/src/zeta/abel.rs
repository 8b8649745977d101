//! Tails of lattice shell sums by Abel summation against the Gauss circle
//! law.
//!
//! For a lattice of covolume 1 let A(u) count the points with Q(ξ) ≤ u and
//! write A(u) = πu + E(u). If |E(u)| ≤ α√u + β, then for f(u) = |u − λ|^(-s)
//!
//!   Σ_{Q > b} f(Q) = π∫_b^∞ f − E(b) f(b) − ∫_b^∞ E f',
//!   Σ_{Q < b} f(Q) = π∫_0^b f + E(b) f(b) − ∫_0^b E f',
//!
//! and the last integrals are bounded in closed form. `b` must not be a
//! value of Q; half-integers are used for the integer lattice.

use std::f64::consts::PI;

/// |E(u)| ≤ alpha·√u + beta.
#[derive(Debug, Clone, Copy)]
pub(crate) struct GaussBound {
    pub alpha: f64,
    pub beta: f64,
}

impl GaussBound {
    /// Z² under x² + y²; see [`crate::arithmetic::gauss_error_bound`].
    pub const SQUARE: GaussBound = GaussBound {
        alpha: PI * std::f64::consts::SQRT_2,
        beta: PI / 2.0,
    };

    /// Lattice with fundamental cell of diameter `diameter` and covolume 1;
    /// `extra` absorbs points removed from the count (e.g. the origin).
    pub fn for_cell(diameter: f64, extra: f64) -> Self {
        Self {
            alpha: PI * diameter,
            beta: PI * diameter * diameter / 4.0 + extra,
        }
    }

    fn at(&self, u: f64) -> f64 {
        self.alpha * u.max(0.0).sqrt() + self.beta
    }
}

/// Estimate and error bound of a tail sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Tail {
    pub estimate: f64,
    pub error: f64,
}

/// Σ_{Q > b} (Q − λ)^(-s) for b > λ, given the exact count A(b).
pub(crate) fn right_tail(lambda: f64, s: f64, b: f64, count_at_b: f64, gb: GaussBound) -> Tail {
    let t = b - lambda;
    debug_assert!(t > 0.0 && s > 1.0);
    let ft = t.powf(-s);
    let e_b = count_at_b - PI * b;
    let estimate = PI * t * ft / (s - 1.0) - e_b * ft;
    let error = gb.at(lambda) * ft + gb.alpha * s * t.sqrt() * ft / (s - 0.5);
    Tail { estimate, error }
}

/// Σ_{0 ≤ Q < b} (λ − Q)^(-s) for 0 < b < λ, given the exact count A(b).
pub(crate) fn left_tail(lambda: f64, s: f64, b: f64, count_at_b: f64, gb: GaussBound) -> Tail {
    let d = lambda - b;
    debug_assert!(d > 0.0 && b > 0.0);
    let fd = d.powf(-s);
    let main = PI * (d * fd - lambda.powf(1.0 - s)) / (s - 1.0);
    let e_b = count_at_b - PI * b;
    Tail {
        estimate: main + e_b * fd,
        error: gb.at(b) * fd,
    }
}

/// Worst-case tail error when the exact window is [λ − K, λ + K]
/// (both edges at distance ≥ K − 1/2 from λ).
pub(crate) fn window_error(lambda: f64, s: f64, half_width: f64, gb: GaussBound) -> f64 {
    let t = half_width - 0.5;
    let ft = t.powf(-s);
    let right = gb.at(lambda) * ft + gb.alpha * s * t.sqrt() * ft / (s - 0.5);
    let left = if lambda > half_width {
        gb.at(lambda) * ft
    } else {
        0.0
    };
    right + left
}

/// Smallest power-of-two multiple of 8 with `window_error ≤ tol`, or `None`
/// once it exceeds `max_half_width`.
pub(crate) fn half_width_for(
    lambda: f64,
    s: f64,
    tol: f64,
    gb: GaussBound,
    max_half_width: f64,
) -> Option<f64> {
    let mut k = 8.0;
    while k <= max_half_width {
        if window_error(lambda, s, k, gb) <= tol {
            return Some(k);
        }
        k *= 2.0;
    }
    None
}
