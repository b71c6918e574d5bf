//! The random-matrix side: Haar unitaries, their truncations, and
//! Monte Carlo estimates of the matrix integrals that the exact modules
//! evaluate combinatorially.
//!
//! Everything here is double precision. Exact targets are produced by
//! [`crate::series`] and [`crate::enumeration`] and only converted to
//! floating point at comparison time.

mod asymptotics;
mod density;
mod kernels;
mod matrix;
mod moments;
mod montecarlo;
mod schur;

pub use asymptotics::{
    asymptotic_ratio_report, asymptotic_rhs, gaussian_limit_report, ln_asymptotic_rhs,
    one_walker_scaled_second_moment, AsymptoticRatioReport, GaussianLimitReport, GaussianLimitRow,
    EXACT_STEP_BUDGET,
};
pub use density::{
    neretin_density, neretin_ks_check, neretin_normalization, radial_cdf_from_density,
    NeretinKsReport,
};
pub use kernels::{
    default_kernel_grid, ginibre_kernel, ginibre_kernel_as_printed, kernel_convergence_report,
    sz_disc_integral, sz_kernel, KernelConvergenceReport, KernelConvergenceRow,
};
pub use matrix::{sample_haar_unitary, truncate, ComplexSquareMatrix, RngStream};
pub use moments::{
    exact_trace_moment, mc_trace_moment, mc_truncation_side, mc_unitary_side,
    two_sided_agreement, TwoSidedAgreement,
};
pub use montecarlo::{run_monte_carlo, McConfig, Mean, MomentEstimate, BLOCK_SIZE};
pub use schur::{hall_product_mc, schur_eval, SchurValue};
