//! Seeded, block-parallel Monte Carlo.
//!
//! Samples are cut into fixed blocks of [`BLOCK_SIZE`]; block `b` draws from
//! [`RngStream`] `(seed, b)`. Blocks are reduced in block order with Chan's
//! pairwise update, so the estimate depends only on `(seed, samples)` and
//! never on the worker count or scheduling.

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::matrix::RngStream;
use crate::error::{Error, Result};

pub const BLOCK_SIZE: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct McConfig {
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
}

impl McConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self {
            samples,
            seed,
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn stream_count(&self) -> usize {
        self.samples.div_ceil(BLOCK_SIZE)
    }

    pub(crate) fn require_samples(&self, min: usize) -> Result<()> {
        if self.samples < min {
            return Err(Error::Parameter(format!(
                "at least {min} samples required, got {}",
                self.samples
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mean {
    Real(f64),
    Complex(Complex64),
}

/// Sample mean with its standard error `sd / sqrt(samples)`.
///
/// For complex means `standard_error` is the error of the complex mean
/// (`sqrt(se_re^2 + se_im^2)`) and `component_errors` holds both parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub mean: Mean,
    pub standard_error: f64,
    pub component_errors: Option<[f64; 2]>,
    pub samples: usize,
    pub seed: u64,
    pub stream_count: usize,
}

impl MomentEstimate {
    /// A deterministic value that needed no sampling.
    pub fn exact(value: f64, cfg: &McConfig) -> Self {
        Self {
            mean: Mean::Real(value),
            standard_error: 0.0,
            component_errors: None,
            samples: cfg.samples,
            seed: cfg.seed,
            stream_count: 0,
        }
    }

    pub fn real(&self) -> f64 {
        match self.mean {
            Mean::Real(x) => x,
            Mean::Complex(z) => z.re,
        }
    }

    pub fn complex(&self) -> Complex64 {
        match self.mean {
            Mean::Real(x) => Complex64::new(x, 0.0),
            Mean::Complex(z) => z,
        }
    }

    /// Standard error of the real part.
    pub fn real_error(&self) -> f64 {
        self.component_errors
            .map(|[re, _]| re)
            .unwrap_or(self.standard_error)
    }

    /// Standard error of the imaginary part; zero for real estimates.
    pub fn imag_error(&self) -> f64 {
        self.component_errors.map(|[_, im]| im).unwrap_or(0.0)
    }

    /// Multiplies mean and error by a non-negative constant.
    pub fn scaled(mut self, c: f64) -> Self {
        self.mean = match self.mean {
            Mean::Real(x) => Mean::Real(x * c),
            Mean::Complex(z) => Mean::Complex(z * c),
        };
        self.standard_error *= c.abs();
        self.component_errors = self.component_errors.map(|[a, b]| [a * c.abs(), b * c.abs()]);
        self
    }

    /// `|mean - target| <= k * standard_error` on the real part.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.real() - target).abs() <= k * self.real_error()
    }

    fn as_real(mut self) -> Self {
        self.mean = Mean::Real(self.real());
        self.standard_error = self.real_error();
        self.component_errors = None;
        self
    }
}

impl Serialize for MomentEstimate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        match self.mean {
            Mean::Real(x) => m.serialize_entry("mean", &x)?,
            Mean::Complex(z) => m.serialize_entry("mean", &[z.re, z.im])?,
        }
        m.serialize_entry("stderr", &self.standard_error)?;
        if let Some(parts) = &self.component_errors {
            m.serialize_entry("stderr_components", parts)?;
        }
        m.serialize_entry("samples", &self.samples)?;
        m.serialize_entry("seed", &self.seed)?;
        m.serialize_entry("stream_count", &self.stream_count)?;
        m.end()
    }
}

// Running mean and sum of squared deviations, per component.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: f64,
    mean: [f64; 2],
    m2: [f64; 2],
}

impl Moments {
    fn push(&mut self, z: Complex64) {
        self.n += 1.0;
        for (k, x) in [z.re, z.im].into_iter().enumerate() {
            let delta = x - self.mean[k];
            self.mean[k] += delta / self.n;
            self.m2[k] += delta * (x - self.mean[k]);
        }
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0.0 {
            return other;
        }
        if other.n == 0.0 {
            return self;
        }
        let n = self.n + other.n;
        let mut out = Moments {
            n,
            ..Default::default()
        };
        for k in 0..2 {
            let delta = other.mean[k] - self.mean[k];
            out.mean[k] = self.mean[k] + delta * other.n / n;
            out.m2[k] = self.m2[k] + other.m2[k] + delta * delta * self.n * other.n / n;
        }
        out
    }

    fn stderr(&self, k: usize) -> f64 {
        if self.n < 2.0 {
            return f64::NAN;
        }
        (self.m2[k] / (self.n - 1.0) / self.n).sqrt()
    }
}

/// Averages `sample(rng)` over `cfg.samples` draws.
///
/// `complex` selects whether the estimate reports a complex mean; otherwise
/// the imaginary parts of the samples are ignored.
pub fn run_monte_carlo<F>(cfg: &McConfig, complex: bool, sample: F) -> Result<MomentEstimate>
where
    F: Fn(&mut ChaCha8Rng) -> Result<Complex64> + Sync,
{
    if cfg.samples < 2 {
        return Err(Error::Parameter("Monte Carlo needs at least 2 samples".into()));
    }
    let blocks = cfg.stream_count();
    let run_block = |b: usize| -> Result<Moments> {
        let mut rng = RngStream::new(cfg.seed, b as u64).rng();
        let len = BLOCK_SIZE.min(cfg.samples - b * BLOCK_SIZE);
        let mut acc = Moments::default();
        for _ in 0..len {
            acc.push(sample(&mut rng)?);
        }
        Ok(acc)
    };
    let partials: Vec<Result<Moments>> = if cfg.workers <= 1 {
        (0..blocks).map(run_block).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::Parameter(format!("cannot start worker pool: {e}")))?;
        pool.install(|| (0..blocks).into_par_iter().map(run_block).collect())
    };
    let mut total = Moments::default();
    for p in partials {
        total = total.merge(p?);
    }
    let re_err = total.stderr(0);
    let im_err = total.stderr(1);
    let est = MomentEstimate {
        mean: Mean::Complex(Complex64::new(total.mean[0], total.mean[1])),
        standard_error: re_err.hypot(im_err),
        component_errors: Some([re_err, im_err]),
        samples: cfg.samples,
        seed: cfg.seed,
        stream_count: blocks,
    };
    Ok(if complex { est } else { est.as_real() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn uniform_mean_and_error() {
        let cfg = McConfig::new(50_000, 1);
        let est = run_monte_carlo(&cfg, false, |rng| {
            Ok(Complex64::new(rng.random::<f64>(), 0.0))
        })
        .unwrap();
        // Var U[0,1] = 1/12
        let expected_se = (1.0f64 / 12.0 / 50_000.0).sqrt();
        assert!((est.standard_error / expected_se - 1.0).abs() < 0.05);
        assert!(est.within(0.5, 4.0));
        assert_eq!(est.stream_count, 13);
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let f = |rng: &mut ChaCha8Rng| Ok(Complex64::new(rng.random::<f64>(), rng.random::<f64>()));
        let one = run_monte_carlo(&McConfig::new(20_000, 9), true, f).unwrap();
        let four = run_monte_carlo(&McConfig::new(20_000, 9).with_workers(4), true, f).unwrap();
        assert_eq!(one, four);
        let other_seed = run_monte_carlo(&McConfig::new(20_000, 10), true, f).unwrap();
        assert_ne!(one, other_seed);
    }

    #[test]
    fn merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 / 7.0).collect();
        let mut whole = Moments::default();
        xs.iter().for_each(|&x| whole.push(Complex64::new(x, -x)));
        let (a, b) = xs.split_at(377);
        let mut left = Moments::default();
        let mut right = Moments::default();
        a.iter().for_each(|&x| left.push(Complex64::new(x, -x)));
        b.iter().for_each(|&x| right.push(Complex64::new(x, -x)));
        let merged = left.merge(right);
        assert!((merged.mean[0] - whole.mean[0]).abs() < 1e-12);
        assert!((merged.m2[1] - whole.m2[1]).abs() < 1e-8 * whole.m2[1]);
    }

    #[test]
    fn json_shape() {
        let cfg = McConfig::new(100, 7);
        let est = run_monte_carlo(&cfg, true, |_| Ok(Complex64::new(1.0, 2.0))).unwrap();
        let v = serde_json::to_value(est).unwrap();
        assert_eq!(v["mean"][0], 1.0);
        assert_eq!(v["mean"][1], 2.0);
        assert_eq!(v["stderr"], 0.0);
        assert_eq!(v["seed"], 7);
        assert_eq!(v["stream_count"], 1);
    }

    #[test]
    fn too_few_samples() {
        assert!(run_monte_carlo(&McConfig::new(1, 0), false, |_| Ok(Complex64::new(0.0, 0.0))).is_err());
    }
}
