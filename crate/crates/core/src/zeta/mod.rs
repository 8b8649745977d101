//! Zeta-type lattice sums with certified truncation errors.

mod abel;
mod epstein;
mod shifted;

use num_complex::Complex64;

pub use epstein::{
    epstein_direct, epstein_zeta, epstein_zeta_real, phi_q, rq_values, zeta_star_shifted,
    QuadraticForm, GROUPING_RTOL, MAX_ABS_S,
};
pub use shifted::{check_regular, shifted_zeta, MIN_EXPONENT, SINGULAR_MARGIN};

pub(crate) use abel::{right_tail as abel_right_tail, GaussBound};
pub(crate) use shifted::{exact_window, required_half_width, window_sums};

/// A zeta value with a bound on its truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub value: Complex64,
    /// |value − true value| ≤ tail_bound, up to floating-point rounding.
    pub tail_bound: f64,
    /// Integers or lattice points summed explicitly.
    pub terms_used: u64,
}

impl ZetaValue {
    pub fn re(&self) -> f64 {
        self.value.re
    }

    /// [value − bound, value + bound] on the real axis.
    pub fn interval(&self) -> (f64, f64) {
        (
            self.value.re - self.tail_bound,
            self.value.re + self.tail_bound,
        )
    }
}
