//! Neretin's density of `CUE^(q)` on the ball of contractions.

use std::f64::consts::PI;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::matrix::{sample_haar_unitary, truncate, ComplexSquareMatrix, RngStream};
use super::montecarlo::{McConfig, BLOCK_SIZE};
use crate::error::{Error, Result};
use crate::series::hook_product;

/// `H_{d x q} / (pi^{d^2} H_{d x (q-d)})`.
pub fn neretin_normalization(d: usize, q: usize) -> Result<f64> {
    if q < d {
        return Err(Error::Parameter(format!(
            "the density exists only for q >= d, got d={d} q={q}"
        )));
    }
    let ratio = num_rational::BigRational::new(hook_product(d, q).value, hook_product(d, q - d).value);
    let ratio = ratio
        .to_f64()
        .ok_or_else(|| Error::Parameter("hook ratio overflows f64".into()))?;
    Ok(ratio / PI.powi((d * d) as i32))
}

/// `H_{d x q} / (pi^{d^2} H_{d x (q-d)}) det(I - P* P)^{q-d}` for `||P|| <= 1`.
pub fn neretin_density(d: usize, q: usize, p: &ComplexSquareMatrix) -> Result<f64> {
    if p.dim() != d {
        return Err(Error::Dimension(format!(
            "expected a {d}x{d} matrix, got {0}x{0}",
            p.dim()
        )));
    }
    let c = neretin_normalization(d, q)?;
    if p.operator_norm() > 1.0 + 1e-12 {
        return Err(Error::Parameter("matrix is not a contraction".into()));
    }
    let gram = p.as_matrix().adjoint() * p.as_matrix();
    let defect = nalgebra::DMatrix::identity(d, d) - gram;
    // I - P*P is Hermitian, so the determinant is real up to rounding
    let det = defect.determinant().re.max(0.0);
    Ok(c * det.powi((q - d) as i32))
}

/// `F(r) = int_0^r 2 pi s rho(s) ds` for a radial density `rho` on the unit
/// disc, tabulated on `intervals` trapezoid panels and interpolated linearly.
pub fn radial_cdf_from_density<F: Fn(f64) -> f64>(rho: F, intervals: usize) -> impl Fn(f64) -> f64 {
    let h = 1.0 / intervals as f64;
    let integrand = |s: f64| 2.0 * PI * s * rho(s);
    let mut table = Vec::with_capacity(intervals + 1);
    table.push(0.0);
    let mut acc = 0.0;
    let mut prev = integrand(0.0);
    for k in 1..=intervals {
        let cur = integrand(k as f64 * h);
        acc += 0.5 * h * (prev + cur);
        table.push(acc);
        prev = cur;
    }
    move |r: f64| {
        let x = r.clamp(0.0, 1.0) / h;
        let k = (x.floor() as usize).min(intervals - 1);
        let t = x - k as f64;
        table[k] * (1.0 - t) + table[k + 1] * t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeretinKsReport {
    pub q: usize,
    pub ks_distance: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Kolmogorov-Smirnov distance between `|P|` for `P = CUE^(q)` samples with
/// `d = 1` and the radial law integrated from [`neretin_density`].
pub fn neretin_ks_check(q: usize, cfg: &McConfig) -> Result<NeretinKsReport> {
    if q == 0 {
        return Err(Error::Parameter("q must be at least 1 for d = 1".into()));
    }
    cfg.require_samples(100)?;
    let mut radii = Vec::with_capacity(cfg.samples);
    for b in 0..cfg.stream_count() {
        let mut rng = RngStream::new(cfg.seed, b as u64).rng();
        let len = BLOCK_SIZE.min(cfg.samples - b * BLOCK_SIZE);
        for _ in 0..len {
            let u = sample_haar_unitary(1 + q, &mut rng);
            radii.push(truncate(&u, 1)?.as_matrix()[(0, 0)].norm());
        }
    }
    radii.sort_by(f64::total_cmp);

    let c = neretin_normalization(1, q)?;
    let cdf = radial_cdf_from_density(|s| c * (1.0 - s * s).max(0.0).powi(q as i32 - 1), 20_000);
    let n = radii.len() as f64;
    let mut ks = 0.0f64;
    for (i, &r) in radii.iter().enumerate() {
        let f = cdf(r);
        ks = ks.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs());
    }
    Ok(NeretinKsReport {
        q,
        ks_distance: ks,
        samples: cfg.samples,
        seed: cfg.seed,
    })
}
