//! New eigenvalues of the point-scatterer perturbation of the square torus.
//!
//! The new eigenvalues are the roots of the regularised resolvent trace
//!
//!   F(λ) = Σ_n r₂(n) [1/(n − λ) − n/(n² + 1)] = c,
//!
//! where c is the self-adjoint extension parameter. F' = Σ r₂(n)/(n − λ)² > 0
//! and F runs from −∞ to +∞ across every gap of the Laplace spectrum, so
//! there is exactly one root per gap.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arithmetic::{disk_count, shells_up_to, LatticeShell, ShellStream};
use crate::error::{domain, Error, Result};
use crate::summation::NeumaierSum;
use crate::zeta::GaussBound;

/// Largest upper window edge accepted by [`solve_secular`].
pub const MAX_SECULAR_WINDOW: f64 = 1e5;
/// Bisection stops once the bracket is this fraction of the gap.
pub const BISECTION_RTOL: f64 = 1e-12;
const NEWTON_STEPS: usize = 3;
const FAR_MOMENTS: usize = 64;
const GAP_TERMS: usize = 14;
/// Shells within this many half-gaps of the gap centre are summed exactly.
const GAP_REACH: f64 = 16.0;

/// Distinct Laplace eigenvalues n ≤ x with multiplicities r₂(n).
pub fn laplace_spectrum(x: f64) -> Result<Vec<LatticeShell>> {
    if !(x >= 1.0) {
        return domain(format!("laplace_spectrum needs x >= 1, got {x}"));
    }
    shells_up_to(x)
}

/// How a sequence of new eigenvalues was produced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CouplingRegime {
    /// Roots of F(λ) = coupling.
    Secular { coupling: f64 },
    /// Distances prescribed as (log m)^alpha.
    Synthetic { alpha: f64, seed: u64 },
}

impl CouplingRegime {
    pub fn alpha(&self) -> Option<f64> {
        match *self {
            CouplingRegime::Synthetic { alpha, .. } => Some(alpha),
            CouplingRegime::Secular { .. } => None,
        }
    }
}

/// A new eigenvalue inside the Laplace gap (lower, upper).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewEigenvalue {
    pub lambda: f64,
    pub lower: u64,
    pub upper: u64,
    /// The gap endpoint closest to `lambda` (the lower one on ties).
    pub nearest_laplace: u64,
    /// |lambda − nearest_laplace|.
    pub delta: f64,
}

impl NewEigenvalue {
    pub fn in_gap(lambda: f64, lower: u64, upper: u64) -> Self {
        let (dl, du) = (lambda - lower as f64, upper as f64 - lambda);
        let (nearest_laplace, delta) = if du < dl { (upper, du) } else { (lower, dl) };
        Self {
            lambda,
            lower,
            upper,
            nearest_laplace,
            delta,
        }
    }

    pub fn gap(&self) -> u64 {
        self.upper - self.lower
    }
}

/// Ordered new eigenvalues with the regime that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct NewEigenvalueSequence {
    pub regime: CouplingRegime,
    pub eigenvalues: Vec<NewEigenvalue>,
}

impl NewEigenvalueSequence {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Members with lo ≤ λ ≤ hi.
    pub fn in_window(&self, lo: f64, hi: f64) -> impl Iterator<Item = &NewEigenvalue> + '_ {
        self.eigenvalues
            .iter()
            .filter(move |e| e.lambda >= lo && e.lambda <= hi)
    }
}

/// F(λ) split into an explicit sum over n ≤ M and a power series in λ/M
/// for the far shells n > M, valid for 0 ≤ λ ≤ M/2.
#[derive(Debug, Clone)]
pub struct SecularFunction {
    near: Vec<(f64, f64)>,
    /// Σ_{n≤M} r₂(n) n/(n²+1)
    near_regularizer: f64,
    split: f64,
    far_constant: f64,
    /// Σ_{n>M} r₂(n)(M/n)^(j+2) for j = 0, 1, ...
    far_moments: Vec<f64>,
    truncation_error: f64,
}

impl SecularFunction {
    /// Evaluator valid on [0, lambda_max].
    pub fn new(lambda_max: f64) -> Result<Self> {
        if !(lambda_max >= 0.0) || lambda_max > MAX_SECULAR_WINDOW {
            return domain(format!(
                "secular function range must lie in [0, {MAX_SECULAR_WINDOW}], got {lambda_max}"
            ));
        }
        let split = (2.0 * lambda_max).max(64.0).floor();
        let m = split as u64;
        let cutoff = (8 * m).max(1 << 20);
        let near: Vec<(f64, f64)> = ShellStream::new(0, m)
            .map(|(n, r)| (n as f64, r as f64))
            .collect();

        let mut constant = NeumaierSum::new();
        let mut moments = vec![NeumaierSum::new(); FAR_MOMENTS];
        let mut count = disk_count(split);
        for (n, r) in ShellStream::new(m + 1, cutoff) {
            count += r;
            let (nf, rf) = (n as f64, r as f64);
            constant.add(rf / (nf * (nf * nf + 1.0)));
            let x = split / nf;
            let mut p = rf * x * x;
            for acc in moments.iter_mut() {
                acc.add(p);
                p *= x;
                if p < 1e-300 {
                    break;
                }
            }
        }

        // shells beyond the cutoff through Abel tails of Σ u^(-j)
        let gb = GaussBound::SQUARE;
        let b = cutoff as f64 + 0.5;
        let mut error = 0.0;
        let tail3 = crate::zeta::abel_right_tail(0.0, 3.0, b, count as f64, gb);
        constant.add(tail3.estimate);
        // 1/(u(u²+1)) differs from u^-3 by at most u^-5
        error += tail3.error + 2.0 * std::f64::consts::PI * b.powi(-3);
        let mut far_moments = Vec::with_capacity(FAR_MOMENTS);
        for (j, acc) in moments.into_iter().enumerate() {
            let power = j as f64 + 2.0;
            let mut value = acc.value();
            if power <= 12.0 {
                let t = crate::zeta::abel_right_tail(0.0, power, b, count as f64, gb);
                let scale = split.powf(power);
                value += t.estimate * scale;
                error += t.error * scale / split * 0.5f64.powf(power - 1.0);
            } else {
                // ≤ 2π M (M/b)^(power−1)/(power−1), weighted by (λ/M)^(j+1)/M
                error += 2.0 * std::f64::consts::PI * (split / b).powf(power - 1.0) / (power - 1.0);
            }
            far_moments.push(value);
        }
        // series truncation: remaining moments are at most 2πM/(j+1) ≤ 2πM
        error += 2.0 * std::f64::consts::PI * 0.5f64.powi(FAR_MOMENTS as i32);

        let near_regularizer = near
            .iter()
            .map(|&(n, r)| r * n / (n * n + 1.0))
            .collect::<NeumaierSum>()
            .value();
        Ok(Self {
            near,
            near_regularizer,
            split,
            far_constant: constant.value(),
            far_moments,
            truncation_error: error,
        })
    }

    /// Bound on |F − computed F| on the valid range.
    pub fn truncation_error(&self) -> f64 {
        self.truncation_error
    }

    fn far_value(&self, lambda: f64) -> f64 {
        let x = lambda / self.split;
        let mut acc = NeumaierSum::new();
        acc.add(self.far_constant);
        let mut p = x / self.split;
        for &mj in &self.far_moments {
            acc.add(p * mj);
            p *= x;
            if p == 0.0 {
                break;
            }
        }
        acc.value()
    }

    fn far_derivative(&self, lambda: f64) -> f64 {
        let x = lambda / self.split;
        let mut acc = NeumaierSum::new();
        let mut p = 1.0 / (self.split * self.split);
        for (j, &mj) in self.far_moments.iter().enumerate() {
            acc.add((j + 1) as f64 * p * mj);
            p *= x;
            if p == 0.0 {
                break;
            }
        }
        acc.value()
    }

    /// F(λ) summed term by term over n ≤ M.
    pub fn value(&self, lambda: f64) -> f64 {
        let mut acc = NeumaierSum::new();
        for &(n, r) in &self.near {
            acc.add(r / (n - lambda));
        }
        acc.add(-self.near_regularizer);
        acc.add(self.far_value(lambda));
        acc.value()
    }

    pub fn derivative(&self, lambda: f64) -> f64 {
        let mut acc = NeumaierSum::new();
        for &(n, r) in &self.near {
            acc.add(r / ((n - lambda) * (n - lambda)));
        }
        acc.add(self.far_derivative(lambda));
        acc.value()
    }

    /// Evaluator specialised to the gap (lower, upper): nearby shells are
    /// summed exactly, the rest through a Taylor series about the midpoint.
    pub fn gap_expansion(&self, lower: u64, upper: u64) -> GapExpansion<'_> {
        let center = 0.5 * (lower as f64 + upper as f64);
        let reach = GAP_REACH * (0.5 * (upper - lower) as f64).max(2.0);
        let a = self.near.partition_point(|&(n, _)| n < center - reach);
        let b = self.near.partition_point(|&(n, _)| n <= center + reach);
        // the leading coefficient cancels heavily between the two sides
        let mut leading = NeumaierSum::new();
        let mut coeffs = vec![0.0; GAP_TERMS];
        for &(n, r) in self.near[..a].iter().chain(&self.near[b..]) {
            let inv = 1.0 / (n - center);
            let mut p = r * inv;
            leading.add(p);
            for c in coeffs.iter_mut().skip(1) {
                p *= inv;
                *c += p;
            }
        }
        coeffs[0] = leading.value();
        GapExpansion {
            owner: self,
            local: &self.near[a..b],
            center,
            coeffs,
        }
    }

    /// The unique root of F(λ) = coupling in the open gap (lower, upper).
    pub fn root_in_gap(&self, lower: u64, upper: u64, coupling: f64) -> Result<f64> {
        let g = self.gap_expansion(lower, upper);
        let (mut lo, mut hi) = (lower as f64, upper as f64);
        let width = BISECTION_RTOL * (hi - lo);
        while hi - lo > width {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let f = g.value(mid) - coupling;
            if !f.is_finite() {
                return Err(Error::Internal(format!(
                    "secular function not finite at {mid}"
                )));
            }
            if f < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut x = 0.5 * (lo + hi);
        for _ in 0..NEWTON_STEPS {
            let step = (g.value(x) - coupling) / g.derivative(x);
            let next = x - step;
            if !(next > lo && next < hi) {
                break;
            }
            x = next;
        }
        if !(x > lower as f64 && x < upper as f64) {
            return Err(Error::Internal(format!(
                "root escaped the gap ({lower}, {upper})"
            )));
        }
        Ok(x)
    }
}

/// [`SecularFunction`] restricted to one gap.
#[derive(Debug, Clone)]
pub struct GapExpansion<'a> {
    owner: &'a SecularFunction,
    local: &'a [(f64, f64)],
    center: f64,
    coeffs: Vec<f64>,
}

impl GapExpansion<'_> {
    pub fn value(&self, lambda: f64) -> f64 {
        let mut acc = NeumaierSum::new();
        for &(n, r) in self.local {
            acc.add(r / (n - lambda));
        }
        let t = lambda - self.center;
        let mut p = 1.0;
        for &c in &self.coeffs {
            acc.add(c * p);
            p *= t;
        }
        acc.add(-self.owner.near_regularizer);
        acc.add(self.owner.far_value(lambda));
        acc.value()
    }

    pub fn derivative(&self, lambda: f64) -> f64 {
        let mut acc = NeumaierSum::new();
        for &(n, r) in self.local {
            acc.add(r / ((n - lambda) * (n - lambda)));
        }
        let t = lambda - self.center;
        let mut p = 1.0;
        for (k, &c) in self.coeffs.iter().enumerate().skip(1) {
            acc.add(k as f64 * c * p);
            p *= t;
        }
        acc.add(self.owner.far_derivative(lambda));
        acc.value()
    }
}

/// New eigenvalues in every gap between consecutive distinct Laplace
/// eigenvalues inside [x0, x1], for extension parameter `coupling`.
pub fn solve_secular(x0: f64, x1: f64, coupling: f64) -> Result<NewEigenvalueSequence> {
    if !(x0 >= 0.0 && x0 <= x1) {
        return domain(format!(
            "secular window must satisfy 0 <= x0 <= x1, got [{x0}, {x1}]"
        ));
    }
    if x1 > MAX_SECULAR_WINDOW {
        return domain(format!(
            "secular window upper edge must be <= {MAX_SECULAR_WINDOW}, got {x1}"
        ));
    }
    if !coupling.is_finite() {
        return domain(format!("coupling must be finite, got {coupling}"));
    }
    let regime = CouplingRegime::Secular { coupling };
    let shells: Vec<u64> = ShellStream::new(x0.ceil() as u64, x1.floor() as u64)
        .map(|(n, _)| n)
        .collect();
    if shells.len() < 2 {
        return Ok(NewEigenvalueSequence {
            regime,
            eigenvalues: Vec::new(),
        });
    }
    let f = SecularFunction::new(x1)?;
    let eigenvalues = shells
        .par_windows(2)
        .map(|w| {
            f.root_in_gap(w[0], w[1], coupling)
                .map(|x| NewEigenvalue::in_gap(x, w[0], w[1]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NewEigenvalueSequence {
        regime,
        eigenvalues,
    })
}

/// Synthetic strong-coupling sequence: in each gap (m, m') with
/// 2 ≤ m < m' ≤ x_max, λ = m + min(u·(log m)^alpha, (m' − m)/2) with
/// u ~ U[1/2, 3/2] drawn from a ChaCha8 stream seeded by `seed`.
pub fn synthesize_sequence(alpha: f64, x_max: f64, seed: u64) -> Result<NewEigenvalueSequence> {
    if !(alpha > -0.5 && alpha <= 0.5) {
        return domain(format!("alpha must lie in (-1/2, 1/2], got {alpha}"));
    }
    if !(x_max >= 100.0) {
        return domain(format!(
            "synthesize_sequence needs x_max >= 100, got {x_max}"
        ));
    }
    let shells: Vec<u64> = shells_up_to(x_max)?
        .into_iter()
        .map(|s| s.n)
        .filter(|&n| n >= 2)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eigenvalues = shells
        .windows(2)
        .map(|w| {
            let (m, next) = (w[0], w[1]);
            let u: f64 = rng.random_range(0.5..1.5);
            let half_gap = 0.5 * (next - m) as f64;
            let offset = (u * (m as f64).ln().powf(alpha)).min(half_gap);
            NewEigenvalue::in_gap(m as f64 + offset, m, next)
        })
        .collect();
    Ok(NewEigenvalueSequence {
        regime: CouplingRegime::Synthetic { alpha, seed },
        eigenvalues,
    })
}

/// ⟨Δ⟩_x: mean of Δ_k over the members with λ_k ≤ x.
pub fn mean_distance(seq: &NewEigenvalueSequence, x: f64) -> Result<f64> {
    let (sum, count) = seq.eigenvalues.iter().filter(|e| e.lambda <= x).fold(
        (NeumaierSum::new(), 0usize),
        |(mut s, c), e| {
            s.add(e.delta);
            (s, c + 1)
        },
    );
    if count == 0 {
        return Err(Error::Empty(format!("no new eigenvalues below {x}")));
    }
    Ok(sum.value() / count as f64)
}

/// Mean of Δ_k over the members with lo ≤ λ_k ≤ hi.
pub fn mean_distance_in(seq: &NewEigenvalueSequence, lo: f64, hi: f64) -> Result<f64> {
    let deltas: Vec<f64> = seq.in_window(lo, hi).map(|e| e.delta).collect();
    if deltas.is_empty() {
        return Err(Error::Empty(format!("no new eigenvalues in [{lo}, {hi}]")));
    }
    Ok(crate::summation::sum(&deltas) / deltas.len() as f64)
}
