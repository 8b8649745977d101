//! Multifractal analysis of the arithmetic Šeba billiard: the square flat
//! torus with a point scatterer.
//!
//! * [`arithmetic`]: r₂(n), shells of the Laplace spectrum, annulus counts.
//! * [`spectral`]: the perturbed ("new") eigenvalues and their distances to
//!   the Laplace spectrum.
//! * [`zeta`]: shifted zeta ζ_λ(s), Epstein zeta ζ_Q(s), and friends.
//! * [`multifractal`]: spectral measures, moment sums, Rényi entropies and
//!   fractal exponents.

// `!(x > y)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arithmetic;
pub mod error;
pub mod multifractal;
pub mod special;
pub mod spectral;
pub mod summation;
pub mod zeta;

pub use error::{Error, Result};
