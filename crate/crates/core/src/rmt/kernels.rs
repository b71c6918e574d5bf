//! Correlation kernels for the eigenvalues of truncated unitaries and their
//! Ginibre limit.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

fn binomial_f64(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Sommers-Zyczkowski kernel of `CUE^(q)` eigenvalues on the unit disc:
/// `(q/pi) (1-|z|^2)^{(q-1)/2} (1-|w|^2)^{(q-1)/2} sum_{j<d} C(q+j, j) (z conj(w))^j`.
pub fn sz_kernel(d: usize, q: usize, z: Complex64, w: Complex64) -> Result<Complex64> {
    if q == 0 {
        return Err(Error::Parameter("the kernel needs q >= 1".into()));
    }
    if z.norm() > 1.0 || w.norm() > 1.0 {
        return Err(Error::Parameter(format!(
            "kernel arguments must lie in the closed unit disc, got {z} and {w}"
        )));
    }
    let exponent = (q as f64 - 1.0) / 2.0;
    let weight = (1.0 - z.norm_sqr()).powf(exponent) * (1.0 - w.norm_sqr()).powf(exponent);
    let zw = z * w.conj();
    let mut power = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..d {
        sum += power * binomial_f64(q + j, j);
        power *= zw;
    }
    Ok(sum * (q as f64 / PI) * weight)
}

fn ginibre_with(d: usize, z: Complex64, w: Complex64, exponent_scale: f64) -> Complex64 {
    let zw = z * w.conj();
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..d {
        sum += term;
        term *= zw / (j + 1) as f64;
    }
    sum * ((-(z.norm_sqr() + w.norm_sqr()) * exponent_scale).exp() / PI)
}

/// Ginibre kernel `(1/pi) e^{-(|z|^2+|w|^2)/2} sum_{j<d} (z conj(w))^j / j!`.
///
/// This is the limit of `q^{-1} SZ(z/sqrt(q), w/sqrt(q))`; its diagonal is
/// the familiar `(1/pi) e^{-|z|^2} sum |z|^{2j}/j!` eigenvalue density.
pub fn ginibre_kernel(d: usize, z: Complex64, w: Complex64) -> Complex64 {
    ginibre_with(d, z, w, 0.5)
}

/// The same kernel with the Gaussian factor `e^{-(|z|^2+|w|^2)}`, i.e.
/// without the halving. Kept so reports can show it is not the limit.
pub fn ginibre_kernel_as_printed(d: usize, z: Complex64, w: Complex64) -> Complex64 {
    ginibre_with(d, z, w, 1.0)
}

/// Polar grid: radii `radius * k / rings` for `k = 0..=rings`, `spokes` angles each.
pub fn default_kernel_grid(radius: f64, rings: usize, spokes: usize) -> Vec<Complex64> {
    let mut pts = vec![Complex64::new(0.0, 0.0)];
    for k in 1..=rings {
        let r = radius * k as f64 / rings as f64;
        for s in 0..spokes {
            pts.push(Complex64::from_polar(r, 2.0 * PI * s as f64 / spokes as f64));
        }
    }
    pts
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelConvergenceRow {
    pub q: usize,
    /// `sup |q^{-1} SZ(z/sqrt q, w/sqrt q) - Gin(z, w)|` over grid pairs.
    pub sup_error: f64,
    /// Same supremum against [`ginibre_kernel_as_printed`].
    pub sup_error_as_printed: f64,
    pub pairs: usize,
    pub excluded_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelConvergenceReport {
    pub d: usize,
    pub rows: Vec<KernelConvergenceRow>,
    /// `q^{-1} SZ(0, 0) = Gin(0, 0) = 1/pi` for every `q`.
    pub origin_exact: bool,
    pub strictly_decreasing: bool,
}

/// Sup-grid distance between the rescaled SZ kernel and the Ginibre kernel,
/// for each `q` in `q_list`. Points with `|z| > sqrt(q)` are outside the
/// rescaled disc and are skipped.
pub fn kernel_convergence_report(
    d: usize,
    q_list: &[usize],
    grid: &[Complex64],
) -> Result<KernelConvergenceReport> {
    if d == 0 {
        return Err(Error::Parameter("d must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(q_list.len());
    let mut origin_exact = true;
    let zero = Complex64::new(0.0, 0.0);
    for &q in q_list {
        let root = (q as f64).sqrt();
        let inside: Vec<_> = grid.iter().copied().filter(|z| z.norm() <= root).collect();
        let mut sup = 0.0f64;
        let mut sup_printed = 0.0f64;
        for &z in &inside {
            for &w in &inside {
                let sz = sz_kernel(d, q, z / root, w / root)? / q as f64;
                sup = sup.max((sz - ginibre_kernel(d, z, w)).norm());
                sup_printed = sup_printed.max((sz - ginibre_kernel_as_printed(d, z, w)).norm());
            }
        }
        let at_origin = sz_kernel(d, q, zero, zero)? / q as f64;
        origin_exact &= at_origin == Complex64::new(1.0 / PI, 0.0)
            && ginibre_kernel(d, zero, zero) == Complex64::new(1.0 / PI, 0.0);
        rows.push(KernelConvergenceRow {
            q,
            sup_error: sup,
            sup_error_as_printed: sup_printed,
            pairs: inside.len() * inside.len(),
            excluded_points: grid.len() - inside.len(),
        });
    }
    let strictly_decreasing = rows.windows(2).all(|w| w[1].sup_error < w[0].sup_error);
    Ok(KernelConvergenceReport {
        d,
        rows,
        origin_exact,
        strictly_decreasing,
    })
}

/// `int_{|z|<=1} SZ(z, z) dA`, which is the expected number of eigenvalues `d`.
pub fn sz_disc_integral(d: usize, q: usize) -> Result<f64> {
    // radial composite Simpson on r in [0, 1]
    const INTERVALS: usize = 4000;
    let h = 1.0 / INTERVALS as f64;
    let mut acc = 0.0;
    for k in 0..=INTERVALS {
        let r = k as f64 * h;
        let z = Complex64::new(r, 0.0);
        let f = 2.0 * PI * r * sz_kernel(d, q, z, z)?.re;
        let weight = if k == 0 || k == INTERVALS {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += weight * f;
    }
    Ok(acc * h / 3.0)
}
