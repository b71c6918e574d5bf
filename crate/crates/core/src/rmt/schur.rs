//! Schur polynomials evaluated on spectra, and the Hall scalar product.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::sample_haar_unitary;
use super::montecarlo::{run_monte_carlo, McConfig, MomentEstimate};
use crate::error::{Error, Result};
use crate::lattice::YoungDiagram;

const DEGENERATE: f64 = 1e-12;
const JITTER: f64 = 1e-9;
const JITTER_SEED: u64 = 0x5eed_5c40;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchurValue {
    pub value: Complex64,
    /// Set when the spectrum was nudged off a near-degenerate point.
    pub perturbed: bool,
}

fn alternant(x: &[Complex64], exponents: &[usize]) -> Complex64 {
    let d = x.len();
    DMatrix::from_fn(d, d, |i, j| x[i].powu(exponents[j] as u32)).determinant()
}

/// `s_y(x_1..x_d) = det(x_i^{y_j + d - j}) / det(x_i^{d - j})`.
pub fn schur_eval(y: &YoungDiagram, eigenvalues: &[Complex64]) -> Result<SchurValue> {
    let d = eigenvalues.len();
    if y.len() > d {
        return Err(Error::TooManyRows { rows: y.len(), d });
    }
    if y.is_empty() {
        return Ok(SchurValue {
            value: Complex64::new(1.0, 0.0),
            perturbed: false,
        });
    }
    let top: Vec<usize> = (0..d).map(|j| y.row(j) as usize + d - 1 - j).collect();
    let bottom: Vec<usize> = (0..d).map(|j| d - 1 - j).collect();

    let mut x = eigenvalues.to_vec();
    let mut den = alternant(&x, &bottom);
    let mut perturbed = false;
    if den.norm() < DEGENERATE {
        let mut rng = ChaCha8Rng::seed_from_u64(JITTER_SEED);
        for z in x.iter_mut() {
            let (dr, di): (f64, f64) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            *z += Complex64::new(dr, di) * (JITTER / std::f64::consts::SQRT_2);
        }
        den = alternant(&x, &bottom);
        perturbed = true;
        if den.norm() < DEGENERATE {
            return Err(Error::DegenerateSpectrum(den.norm()));
        }
    }
    Ok(SchurValue {
        value: alternant(&x, &top) / den,
        perturbed,
    })
}

/// Monte Carlo `<s_lambda | s_mu> = E[s_lambda(spec U) s_mu(spec U*)]` over Haar `U(d)`.
pub fn hall_product_mc(
    lambda: &YoungDiagram,
    mu: &YoungDiagram,
    d: usize,
    cfg: &McConfig,
) -> Result<MomentEstimate> {
    if d == 0 {
        return Err(Error::Parameter("d must be at least 1".into()));
    }
    for y in [lambda, mu] {
        if y.len() > d {
            return Err(Error::TooManyRows { rows: y.len(), d });
        }
    }
    if lambda.is_empty() && mu.is_empty() {
        return Ok(MomentEstimate::exact(1.0, cfg));
    }
    cfg.require_samples(100)?;
    run_monte_carlo(cfg, true, |rng| {
        let ev = sample_haar_unitary(d, rng).eigenvalues()?;
        let conj: Vec<Complex64> = ev.iter().map(|z| z.conj()).collect();
        Ok(schur_eval(lambda, &ev)?.value * schur_eval(mu, &conj)?.value)
    })
}
