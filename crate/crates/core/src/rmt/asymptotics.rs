//! Large-`q` behaviour: the Stirling-type approximation of `Z_d(2n+dq; q)`
//! and the Gaussian limit of `sqrt(q) P`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::moments::{exact_trace_moment, mc_trace_moment};
use super::montecarlo::{McConfig, MomentEstimate};
use crate::decimal;
use crate::enumeration::{factorial, z_ground, GroundStateQuery};
use crate::error::{Error, Result};

/// Largest `2n + dq` for which the gaussian-limit report also computes the
/// exact moment.
pub const EXACT_STEP_BUDGET: usize = 160;

/// Natural log of `(2 pi)^{(1-d)/2} (prod_{i<d} i!) d^{3n+dq+1/2} q^{n+(1-d^2)/2}`.
pub fn ln_asymptotic_rhs(d: usize, n: usize, q: usize) -> Result<f64> {
    if d == 0 || q == 0 {
        return Err(Error::Parameter(format!(
            "need d >= 1 and q >= 1, got d={d} q={q}"
        )));
    }
    let (df, nf, qf) = (d as f64, n as f64, q as f64);
    let ln_superfactorial: f64 = (1..d).map(ln_factorial).sum();
    Ok((1.0 - df) / 2.0 * (2.0 * std::f64::consts::PI).ln()
        + ln_superfactorial
        + (3.0 * nf + df * qf + 0.5) * df.ln()
        + (nf + (1.0 - df * df) / 2.0) * qf.ln())
}

/// The right-hand side itself; `inf` once it leaves the `f64` range.
pub fn asymptotic_rhs(d: usize, n: usize, q: usize) -> Result<f64> {
    Ok(ln_asymptotic_rhs(d, n, q)?.exp())
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

fn ln_bigint(x: &BigInt) -> f64 {
    if !x.is_positive() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticRatioReport {
    pub d: usize,
    pub n: usize,
    pub q: usize,
    #[serde(with = "decimal")]
    pub exact: BigInt,
    pub rhs: f64,
    pub ln_rhs: f64,
    /// `Z / rhs`, the formula taken verbatim.
    pub raw_ratio: f64,
    /// `n! Z / rhs`.
    pub adjusted_ratio: f64,
}

/// Compares `Z_d(2n+dq; q)` with [`asymptotic_rhs`].
pub fn asymptotic_ratio_report(d: usize, n: usize, q: usize) -> Result<AsymptoticRatioReport> {
    let ln_rhs = ln_asymptotic_rhs(d, n, q)?;
    let exact = z_ground(&GroundStateQuery {
        d,
        steps: 2 * n + d * q,
        q,
    });
    let ln_raw = ln_bigint(&exact) - ln_rhs;
    let ln_adjusted = ln_raw + ln_bigint(&factorial(n)).max(0.0);
    Ok(AsymptoticRatioReport {
        d,
        n,
        q,
        exact,
        rhs: ln_rhs.exp(),
        ln_rhs,
        raw_ratio: ln_raw.exp(),
        adjusted_ratio: ln_adjusted.exp(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussianLimitRow {
    pub q: usize,
    /// `q^n E|Tr P|^{2n}` by Monte Carlo.
    pub scaled_estimate: f64,
    pub scaled_stderr: f64,
    /// `q^n E|Tr P|^{2n} - d^n n!`.
    pub deviation: f64,
    /// `q^n E|Tr P|^{2n}` from the exact moment, when within budget.
    pub exact_scaled: Option<f64>,
    pub estimate: MomentEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussianLimitReport {
    pub d: usize,
    pub n: usize,
    /// `d^n n!`, the `2n`-th absolute moment of a complex Gaussian of variance `d`.
    pub target: f64,
    pub rows: Vec<GaussianLimitRow>,
    /// Each `|deviation|` is at most the previous one plus four combined
    /// standard errors.
    pub shrinking: bool,
}

/// `q^n E|Tr P|^{2n}` along `q_list`, against the Gaussian limit `d^n n!`.
pub fn gaussian_limit_report(
    d: usize,
    n: usize,
    q_list: &[usize],
    cfg: &McConfig,
) -> Result<GaussianLimitReport> {
    let target = (d as f64).powi(n as i32) * factorial(n).to_f64().unwrap_or(f64::INFINITY);
    let mut rows = Vec::with_capacity(q_list.len());
    for &q in q_list {
        let scale = (q as f64).powi(n as i32);
        let estimate = mc_trace_moment(d, q, n, cfg)?;
        let exact_scaled = if 2 * n + d * q <= EXACT_STEP_BUDGET {
            let m = exact_trace_moment(d, q, n)?;
            Some(m.to_f64().unwrap_or(f64::NAN) * scale)
        } else {
            None
        };
        let scaled_estimate = estimate.real() * scale;
        rows.push(GaussianLimitRow {
            q,
            scaled_estimate,
            scaled_stderr: estimate.real_error() * scale,
            deviation: scaled_estimate - target,
            exact_scaled,
            estimate,
        });
    }
    let shrinking = rows.windows(2).all(|w| {
        let slack = 4.0 * w[0].scaled_stderr.hypot(w[1].scaled_stderr);
        w[1].deviation.abs() <= w[0].deviation.abs() + slack
    });
    Ok(GaussianLimitReport {
        d,
        n,
        target,
        rows,
        shrinking,
    })
}

/// `q E|Tr P|^2 = q / (q + 1)` for `d = 1`, in closed form.
pub fn one_walker_scaled_second_moment(q: usize) -> f64 {
    q as f64 / (q as f64 + 1.0)
}
