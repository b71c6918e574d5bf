//! Trace moments and exponential-trace integrals over `CUE^(q)` and `U(d)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::matrix::{sample_haar_unitary, truncate};
use super::montecarlo::{run_monte_carlo, McConfig, MomentEstimate};
use crate::enumeration::{z_ground, GroundStateQuery};
use crate::error::{Error, Result};
use crate::series::{hook_product, Factorials};

const MIN_SAMPLES: usize = 100;

fn check_d(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::Parameter("d must be at least 1".into()));
    }
    Ok(())
}

/// `E |Tr P|^{2n}` over `CUE^(q)`, exactly:
/// `H_{d x q} n! n! Z_d(2n + dq; q) / (2n + dq)!`.
pub fn exact_trace_moment(d: usize, q: usize, n: usize) -> Result<BigRational> {
    check_d(d)?;
    let steps = 2 * n + d * q;
    let facts = Factorials::up_to(steps);
    let z = z_ground(&GroundStateQuery { d, steps, q });
    let h = hook_product(d, q).value;
    let num: BigInt = h * facts.get(n) * facts.get(n) * z;
    Ok(BigRational::new(num, facts.get(steps).clone()))
}

/// Monte Carlo `E |Tr P|^{2n}` with `P` the `d x d` truncation of a Haar
/// unitary of size `d + q`.
pub fn mc_trace_moment(d: usize, q: usize, n: usize, cfg: &McConfig) -> Result<MomentEstimate> {
    check_d(d)?;
    cfg.require_samples(MIN_SAMPLES)?;
    if n == 0 {
        return Ok(MomentEstimate::exact(1.0, cfg));
    }
    run_monte_carlo(cfg, false, |rng| {
        let u = sample_haar_unitary(d + q, rng);
        let p = truncate(&u, d)?;
        Ok(Complex64::new(p.trace().norm_sqr().powi(n as i32), 0.0))
    })
}

/// Monte Carlo `E[e^{x Tr(U + U*)} det(U*)^q]` over Haar `U(d)`; complex mean.
pub fn mc_unitary_side(d: usize, q: usize, x: f64, cfg: &McConfig) -> Result<MomentEstimate> {
    check_d(d)?;
    cfg.require_samples(MIN_SAMPLES)?;
    run_monte_carlo(cfg, true, |rng| {
        let u = sample_haar_unitary(d, rng);
        let weight = (2.0 * x * u.trace().re).exp();
        Ok(u.determinant().conj().powi(q as i32) * weight)
    })
}

/// `(x^{dq} / H_{d x q}) E[e^{x Tr(P + P*)}]` over `CUE^(q)`.
pub fn mc_truncation_side(d: usize, q: usize, x: f64, cfg: &McConfig) -> Result<MomentEstimate> {
    check_d(d)?;
    cfg.require_samples(MIN_SAMPLES)?;
    let h = hook_product(d, q)
        .value
        .to_f64()
        .ok_or_else(|| Error::Parameter("hook product overflows f64".into()))?;
    let prefactor = x.powi((d * q) as i32) / h;
    if prefactor == 0.0 {
        return Ok(MomentEstimate::exact(0.0, cfg));
    }
    let est = run_monte_carlo(cfg, false, |rng| {
        let u = sample_haar_unitary(d + q, rng);
        let p = truncate(&u, d)?;
        Ok(Complex64::new((2.0 * x * p.trace().re).exp(), 0.0))
    })?;
    Ok(est.scaled(prefactor))
}

/// Both sides of `G_d(x; q)` from independent samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoSidedAgreement {
    pub d: usize,
    pub q: usize,
    pub x: f64,
    pub truncation: MomentEstimate,
    pub unitary: MomentEstimate,
    /// `|truncation - Re unitary| / sqrt(se_t^2 + se_re^2)`.
    pub z_score: f64,
    /// `|Im unitary| / se_im`.
    pub imag_z_score: f64,
    pub agree: bool,
}

/// Runs both sides with disjoint seeds (`seed` and `seed + 1`) and compares
/// them at `k` combined standard errors.
pub fn two_sided_agreement(
    d: usize,
    q: usize,
    x: f64,
    cfg: &McConfig,
    k: f64,
) -> Result<TwoSidedAgreement> {
    let truncation = mc_truncation_side(d, q, x, cfg)?;
    let unitary_cfg = McConfig {
        seed: cfg.seed.wrapping_add(1),
        ..*cfg
    };
    let unitary = mc_unitary_side(d, q, x, &unitary_cfg)?;
    let combined = truncation.real_error().hypot(unitary.real_error());
    let diff = (truncation.real() - unitary.real()).abs();
    let z_score = ratio_or_zero(diff, combined);
    let imag_z_score = ratio_or_zero(unitary.complex().im.abs(), unitary.imag_error());
    Ok(TwoSidedAgreement {
        d,
        q,
        x,
        truncation,
        unitary,
        z_score,
        imag_z_score,
        agree: z_score <= k && imag_z_score <= k,
    })
}

fn ratio_or_zero(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else if den == 0.0 {
        f64::INFINITY
    } else {
        num / den
    }
}
