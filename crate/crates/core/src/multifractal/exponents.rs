//! Fractal exponents D_q = H_q / log N_λ along sequences of new eigenvalues.

use std::f64::consts::LN_2;

use rayon::prelude::*;

use crate::arithmetic::{r2, R2Table};
use crate::error::{domain, Error, Result};
use crate::spectral::{NewEigenvalue, NewEigenvalueSequence};
use crate::summation::{sum, NeumaierSum};
use crate::zeta::{check_regular, exact_window, required_half_width, window_sums};

/// Fewest sequence members accepted in an averaging window.
pub const MIN_WINDOW_MEMBERS: usize = 10;
/// Absolute tail tolerance on each ζ_λ(s) behind a windowed entropy.
pub const WINDOW_TAIL_TOL: f64 = 1e-4;

/// Choice of log N_λ in D_q = H_q / log N_λ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Mean of log (log m)^(log 2 / 2) over the nearest shells m.
    NormalOrder,
    /// log of the annulus lattice count averaged over the window.
    AnnulusAverage,
    /// Mean of log r₂(m) over the nearest shells m.
    NearestShell,
}

/// H_q, log N_λ and D_q = H_q / log N_λ for one order q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentEstimate {
    pub q: f64,
    pub h_q: f64,
    pub log_n: f64,
    pub d_q: f64,
}

impl ExponentEstimate {
    pub fn new(q: f64, h_q: f64, log_n: f64) -> Self {
        Self {
            q,
            h_q,
            log_n,
            d_q: h_q / log_n,
        }
    }
}

/// N_λ = (log m)^(log 2 / 2), the normal order of r₂ at m.
pub fn n_lambda_weak(m: u64) -> Result<f64> {
    if m < 3 {
        return domain(format!("n_lambda_weak needs m >= 3, got {m}"));
    }
    if r2(m)? == 0 {
        return domain(format!("{m} is not a sum of two squares"));
    }
    Ok((m as f64).ln().powf(0.5 * LN_2))
}

fn members(seq: &NewEigenvalueSequence, lo: f64, hi: f64) -> Result<Vec<NewEigenvalue>> {
    if !(lo <= hi) {
        return domain(format!("window must satisfy lo <= hi, got [{lo}, {hi}]"));
    }
    let inside: Vec<NewEigenvalue> = seq.in_window(lo, hi).copied().collect();
    if inside.len() < MIN_WINDOW_MEMBERS {
        return Err(Error::Empty(format!(
            "window [{lo}, {hi}] holds {} new eigenvalues, at least {MIN_WINDOW_MEMBERS} needed",
            inside.len()
        )));
    }
    Ok(inside)
}

fn covering_table(inside: &[NewEigenvalue], reach: f64) -> Result<R2Table> {
    let first = inside.first().map_or(0.0, |e| e.lambda);
    let last = inside.last().map_or(0.0, |e| e.lambda);
    R2Table::new(
        (first - reach).floor().max(0.0) as u64,
        (last + reach).ceil() as u64,
    )
}

/// Spectral average over the window of Σ_{|n − λ| ≤ ⟨Δ⟩} r₂(n), with ⟨Δ⟩
/// the mean distance of the members to their nearest Laplace eigenvalue.
pub fn n_lambda_strong(seq: &NewEigenvalueSequence, lo: f64, hi: f64) -> Result<f64> {
    let inside = members(seq, lo, hi)?;
    n_lambda_strong_of(&inside)
}

fn n_lambda_strong_of(inside: &[NewEigenvalue]) -> Result<f64> {
    let width = sum(&inside.iter().map(|e| e.delta).collect::<Vec<_>>()) / inside.len() as f64;
    let table = covering_table(inside, width + 1.0)?;
    let counts: Vec<f64> = inside
        .iter()
        .map(|e| {
            let a = (e.lambda - width).ceil().max(0.0) as u64;
            let b = (e.lambda + width).floor().max(0.0) as u64;
            table.shells_between(a, b).map(|(_, r)| r).sum::<u64>() as f64
        })
        .collect();
    Ok(sum(&counts) / counts.len() as f64)
}

/// log M_q(μ_λ) = log ζ_λ(2q) − q log ζ_λ(2) for each q, from shells in
/// `table` around λ and Abel tails outside.
pub fn log_moments(lambda: f64, qs: &[f64], table: &R2Table) -> Result<Vec<f64>> {
    check_regular(lambda)?;
    let k = required_half_width(lambda, 2.0, WINDOW_TAIL_TOL)?;
    let (lo, hi) = exact_window(lambda, k);
    if lo < table.start() || !table.contains(hi) {
        return Err(Error::Internal(format!(
            "table does not cover [{lo}, {hi}]"
        )));
    }
    let exponents: Vec<f64> = std::iter::once(2.0)
        .chain(qs.iter().map(|q| 2.0 * q))
        .collect();
    let sums = window_sums(lambda, &exponents, lo, hi, table.shells_between(lo, hi));
    let log_z2 = sums.value(0).ln();
    Ok(qs
        .iter()
        .enumerate()
        .map(|(i, &q)| sums.value(i + 1).ln() - q * log_z2)
        .collect())
}

/// D_q for each q in `qs` (ascending output), averaging H_q over the new
/// eigenvalues in [lo, hi].
pub fn dq_estimates(
    seq: &NewEigenvalueSequence,
    qs: &[f64],
    lo: f64,
    hi: f64,
    normalization: Normalization,
) -> Result<Vec<ExponentEstimate>> {
    if let Some(&q) = qs.iter().find(|&&q| !(q > 1.0) || !q.is_finite()) {
        return domain(format!("fractal exponents need q > 1, got {q}"));
    }
    let mut qs = qs.to_vec();
    qs.sort_by(f64::total_cmp);
    let inside = members(seq, lo, hi)?;
    let reach = inside
        .iter()
        .map(|e| required_half_width(e.lambda, 2.0, WINDOW_TAIL_TOL))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let table = covering_table(&inside, reach + 1.0)?;
    let per_member = inside
        .par_iter()
        .map(|e| log_moments(e.lambda, &qs, &table))
        .collect::<Result<Vec<_>>>()?;

    let log_n = match normalization {
        Normalization::AnnulusAverage => n_lambda_strong_of(&inside)?.ln(),
        Normalization::NormalOrder => {
            let logs = inside
                .iter()
                .map(|e| n_lambda_weak(e.nearest_laplace).map(f64::ln))
                .collect::<Result<Vec<_>>>()?;
            sum(&logs) / logs.len() as f64
        }
        Normalization::NearestShell => {
            let logs: Vec<f64> = inside
                .iter()
                .map(|e| (table.r2(e.nearest_laplace) as f64).ln())
                .collect();
            sum(&logs) / logs.len() as f64
        }
    };
    if !(log_n > 0.0) {
        return domain(format!(
            "scaling denominator log N = {log_n} is not positive"
        ));
    }
    Ok(qs
        .iter()
        .enumerate()
        .map(|(i, &q)| {
            let h: NeumaierSum = per_member.iter().map(|m| m[i] / (1.0 - q)).collect();
            ExponentEstimate::new(q, h.value() / inside.len() as f64, log_n)
        })
        .collect())
}

/// D_q for a single order q.
pub fn dq_estimate(
    seq: &NewEigenvalueSequence,
    q: f64,
    lo: f64,
    hi: f64,
    normalization: Normalization,
) -> Result<ExponentEstimate> {
    Ok(dq_estimates(seq, &[q], lo, hi, normalization)?[0])
}

/// Admissible q-range (lower exclusive, upper inclusive) of the strong
/// coupling law at coupling exponent alpha.
pub fn theoretical_range(alpha: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.25 && alpha < 0.5) {
        return Err(Error::Range {
            name: "alpha",
            value: alpha,
            lo: 0.25,
            hi: 0.5,
        });
    }
    let width = 2.0 - 4.0 * alpha;
    Ok(((1.0 - LN_2) / width, 1.0 / width))
}

/// D_q = (1/(2α))(1 − 1/(2q)) log 2 on its admissible q-range.
pub fn theoretical_dq(alpha: f64, q: f64) -> Result<f64> {
    let (lo, hi) = theoretical_range(alpha)?;
    if !(q > lo && q <= hi) {
        return Err(Error::Range {
            name: "q",
            value: q,
            lo,
            hi,
        });
    }
    Ok((1.0 - 0.5 / q) * LN_2 / (2.0 * alpha))
}
