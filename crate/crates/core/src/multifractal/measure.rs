//! The spectral measure μ_λ and its moments and entropies.

use crate::arithmetic::ShellStream;
use crate::error::{domain, Error, Result};
use crate::summation::NeumaierSum;
use crate::zeta::{check_regular, exact_window, shifted_zeta, window_sums};

/// Largest exact window half-width used for a measure.
pub const MAX_MEASURE_HALF_WIDTH: f64 = 1e7;
const NORMALIZATION_SLACK: f64 = 1e-12;

/// A value with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certified {
    pub value: f64,
    pub error: f64,
}

impl Certified {
    fn from_interval(lo: f64, hi: f64) -> Self {
        Self {
            value: 0.5 * (lo + hi),
            error: 0.5 * (hi - lo),
        }
    }

    /// Whether two certified values can describe the same number.
    pub fn overlaps(&self, other: &Certified) -> bool {
        (self.value - other.value).abs() <= self.error + other.error
    }
}

/// One shell of the measure: `points` lattice points sharing `mass` equally.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub n: u64,
    pub points: u64,
    pub mass: f64,
}

impl Atom {
    pub fn point_mass(&self) -> f64 {
        self.mass / self.points as f64
    }
}

/// μ_λ(ξ) = (|ξ|² − λ)^(-2) / ζ_λ(2), aggregated over shells |ξ|² = n.
///
/// Stored masses use an upper bound Z⁺ on the normaliser, so they are lower
/// bounds on the true masses; `tail_mass_bound` covers the shells outside
/// the window and Σ mass + tail_mass_bound = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralMeasure {
    lambda: f64,
    atoms: Vec<Atom>,
    tail_mass_bound: f64,
    /// Z⁺/Z⁻ for the normaliser bracket.
    spread: f64,
}

impl SpectralMeasure {
    /// A measure from explicit atoms, e.g. for testing entropies.
    pub fn from_atoms(lambda: f64, atoms: Vec<Atom>, tail_mass_bound: f64) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Empty("measure without atoms".into()));
        }
        if let Some(a) = atoms.iter().find(|a| !(a.mass > 0.0) || a.points == 0) {
            return domain(format!(
                "atom at n = {} needs positive mass and points",
                a.n
            ));
        }
        if !(tail_mass_bound >= 0.0) {
            return domain(format!(
                "tail mass bound must be non-negative, got {tail_mass_bound}"
            ));
        }
        let total: NeumaierSum = atoms.iter().map(|a| a.mass).collect();
        let total = total.value() + tail_mass_bound;
        if (total - 1.0).abs() > NORMALIZATION_SLACK {
            return domain(format!("atom masses plus tail bound sum to {total}, not 1"));
        }
        Ok(Self {
            lambda,
            atoms,
            tail_mass_bound,
            spread: 1.0,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn tail_mass_bound(&self) -> f64 {
        self.tail_mass_bound
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms
            .iter()
            .map(|a| a.mass)
            .collect::<NeumaierSum>()
            .value()
    }

    /// Number of lattice points carrying mass.
    pub fn point_count(&self) -> u64 {
        self.atoms.iter().map(|a| a.points).sum()
    }

    pub fn mass_of(&self, n: u64) -> Option<f64> {
        self.atoms
            .binary_search_by_key(&n, |a| a.n)
            .ok()
            .map(|i| self.atoms[i].mass)
    }
}

/// μ_λ with every shell within an exact window around λ, the window chosen so
/// that the neglected mass is at most `tol`.
pub fn spectral_measure(lambda: f64, tol: f64) -> Result<SpectralMeasure> {
    check_regular(lambda)?;
    if !(tol > 0.0 && tol < 1.0) {
        return domain(format!("measure tolerance must lie in (0, 1), got {tol}"));
    }
    let mut half_width: f64 = 8.0;
    loop {
        let (lo, hi) = exact_window(lambda, half_width);
        let shells: Vec<(u64, u64)> = ShellStream::new(lo, hi).collect();
        let sums = window_sums(lambda, &[2.0], lo, hi, shells.iter().copied());
        let tail = sums.tails[0];
        let neglected = (tail.estimate + tail.error).max(0.0);
        let z_up = sums.partial[0] + neglected;
        let z_lo = sums.partial[0] + (tail.estimate - tail.error).max(0.0);
        let tail_mass_bound = neglected / z_up;
        if tail_mass_bound <= tol {
            let atoms = shells
                .into_iter()
                .map(|(n, r)| {
                    let d = n as f64 - lambda;
                    Atom {
                        n,
                        points: r,
                        mass: r as f64 / (d * d) / z_up,
                    }
                })
                .collect();
            return Ok(SpectralMeasure {
                lambda,
                atoms,
                tail_mass_bound,
                spread: z_up / z_lo,
            });
        }
        if half_width >= MAX_MEASURE_HALF_WIDTH {
            return Err(Error::Capacity {
                what: "spectral measure half-width",
                requested: half_width * tail_mass_bound / tol,
                limit: MAX_MEASURE_HALF_WIDTH,
            });
        }
        // the neglected mass falls off like 1/K
        half_width = (half_width * 2.0)
            .max(1.1 * half_width * tail_mass_bound / tol)
            .min(MAX_MEASURE_HALF_WIDTH);
    }
}

fn check_order(q: f64) -> Result<()> {
    if !(q > 1.0) || !q.is_finite() {
        return domain(format!(
            "moment order must exceed 1, got {q}; use shannon_entropy for the q -> 1 limit"
        ));
    }
    Ok(())
}

/// M_q = Σ_ξ μ(ξ)^q over lattice points, with a certified error covering the
/// normaliser bracket and the neglected shells.
pub fn moment_sum(mu: &SpectralMeasure, q: f64) -> Result<Certified> {
    check_order(q)?;
    let lower: NeumaierSum = mu
        .atoms
        .iter()
        .map(|a| a.points as f64 * a.point_mass().powf(q))
        .collect();
    let lower = lower.value();
    // neglected points each carry at most tail_mass_bound
    let upper = lower * mu.spread.powf(q) + mu.tail_mass_bound.powf(q);
    Ok(Certified::from_interval(lower, upper))
}

/// M_q = ζ_λ(2q)/ζ_λ(2)^q with interval propagation of both tail bounds.
pub fn moment_via_zeta(lambda: f64, q: f64, tol: f64) -> Result<Certified> {
    check_order(q)?;
    let z2 = shifted_zeta(lambda, 2.0, tol)?;
    let zq = shifted_zeta(lambda, 2.0 * q, tol)?;
    let (a, ea) = (zq.re(), zq.tail_bound);
    let (b, eb) = (z2.re(), z2.tail_bound);
    if eb >= b {
        return domain(format!(
            "tolerance {tol} too coarse to bound ζ_λ(2) away from zero"
        ));
    }
    Ok(Certified::from_interval(
        (a - ea).max(0.0) / (b + eb).powf(q),
        (a + ea) / (b - eb).powf(q),
    ))
}

/// H_q = log(M_q)/(1 − q), natural logarithm.
pub fn renyi_entropy(mu: &SpectralMeasure, q: f64) -> Result<f64> {
    Ok(moment_sum(mu, q)?.value.ln() / (1.0 - q))
}

/// H₁ = −Σ_ξ μ(ξ) log μ(ξ) over the stored lattice points.
pub fn shannon_entropy(mu: &SpectralMeasure) -> f64 {
    mu.atoms
        .iter()
        .map(|a| -a.mass * a.point_mass().ln())
        .collect::<NeumaierSum>()
        .value()
}
