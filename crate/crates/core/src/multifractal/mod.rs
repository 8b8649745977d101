//! Multifractal analysis of the spectral measure: moments, entropies,
//! fractal exponents and their ground-state counterparts.

mod exponents;
mod ground;
mod measure;

pub use exponents::{
    dq_estimate, dq_estimates, log_moments, n_lambda_strong, n_lambda_weak, theoretical_dq,
    theoretical_range, ExponentEstimate, Normalization, MIN_WINDOW_MEMBERS, WINDOW_TAIL_TOL,
};
pub use ground::{
    d_star, d_star_exponent, symmetry_check, SymmetryCheck, GROUND_TOL, LIMIT_WINDOW,
};
pub use measure::{
    moment_sum, moment_via_zeta, renyi_entropy, shannon_entropy, spectral_measure, Atom, Certified,
    SpectralMeasure, MAX_MEASURE_HALF_WIDTH,
};
