//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vicious_core::enumeration::{
    binomial, factorial, forrester_check, rsk_chain_check, u_count, z_ground, GroundStateQuery,
};
use vicious_core::lattice::{rank, Configuration, WeylLattice};
use vicious_core::operators::{apply_word, commutator_residual, StateVector, Step, StepWord};
use vicious_core::rmt::{
    asymptotic_ratio_report, default_kernel_grid, exact_trace_moment, ginibre_kernel,
    kernel_convergence_report, mc_trace_moment, neretin_ks_check, sz_disc_integral, sz_kernel,
    two_sided_agreement, McConfig,
};
use vicious_core::series::{
    determinantal_report, gd_from_counts, gessel_report, ground_offsets, toeplitz_bessel_det,
    toeplitz_report, Factorials,
};

type Verdict = (bool, String);
type Criterion = (&'static str, fn() -> Verdict);

// Counts walks by recursion over single-walker moves; independent of the lattice code.
fn dfs(pos: &mut Vec<i64>, steps: usize, target: &[i64]) -> u64 {
    if steps == 0 {
        return u64::from(pos.as_slice() == target);
    }
    let mut total = 0;
    for i in 0..pos.len() {
        for delta in [-1, 1] {
            pos[i] += delta;
            if pos.windows(2).all(|w| w[0] > w[1]) {
                total += dfs(pos, steps - 1, target);
            }
            pos[i] -= delta;
        }
    }
    total
}

fn ground(d: usize, shift: i64) -> Vec<i64> {
    (1..=d as i64).rev().map(|p| p + shift).collect()
}

fn random_configuration(rng: &mut ChaCha8Rng, d: usize, lo: i64, hi: i64) -> Configuration {
    let mut sites: Vec<i64> = (lo..=hi).collect();
    sites.shuffle(rng);
    let mut parts = sites[..d].to_vec();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Configuration::new(parts).unwrap()
}

fn toeplitz_exactness() -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    for d in 1..=3 {
        for q in 0..=2 {
            let r = toeplitz_report(d, q, 14).unwrap();
            for (n, row) in r.rows.iter().enumerate() {
                let z = z_ground(&GroundStateQuery { d, steps: n, q });
                if !row.equal || row.determinant != z.to_string() {
                    return (false, format!("d={d} q={q} N={n}: det {} vs Z {z}", row.determinant));
                }
                if n <= 10 {
                    let oracle = dfs(&mut ground(d, 0), n, &ground(d, q as i64));
                    if z != BigInt::from(oracle) {
                        return (false, format!("d={d} q={q} N={n}: Z {z} vs walk oracle {oracle}"));
                    }
                }
                checked += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    (secs < 60.0, format!("{checked} coefficients equal, {secs:.2}s"))
}

fn generating_function_consistency() -> Verdict {
    for d in 1..=3 {
        for q in 0..=2 {
            let counts = gd_from_counts(d, q, 12);
            let det = toeplitz_bessel_det(&ground_offsets(d, q as i64), 12).unwrap();
            if counts != det {
                return (false, format!("d={d} q={q} differ"));
            }
        }
    }
    (true, "9 series equal to order 12".into())
}

fn forrester_relation() -> Verdict {
    for d in 1..=3 {
        for n in 0..=7 {
            let r = forrester_check(d, n).unwrap();
            if !r.holds || r.z_even != binomial(2 * n, n) * u_count(d, n).unwrap() {
                return (false, format!("d={d} n={n}: {r:?}"));
            }
        }
    }
    (true, "d in 1..=3, n <= 7, odd lengths vanish".into())
}

fn gessel_identity() -> Verdict {
    for d in 1..=4 {
        let r = gessel_report(d, 14).unwrap();
        let facts = Factorials::up_to(7);
        for n in 0..=7 {
            let c = r.determinant.coefficient(2 * n)
                * BigRational::from_integer(facts.get(n) * facts.get(n));
            let u = u_count(d, n).unwrap();
            if c != BigRational::from_integer(u.clone()) {
                return (false, format!("d={d} n={n}: {c} vs u = {u}"));
            }
        }
        if !r.holds {
            return (false, format!("report for d={d} does not hold"));
        }
    }
    (true, "d in 1..=4, n <= 7".into())
}

fn commutation() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let d = rng.random_range(1..=4);
        let c = random_configuration(&mut rng, d, -10, 10);
        let lattice = WeylLattice { d };
        if !commutator_residual(&lattice, &StateVector::unit(c.clone())).is_zero() {
            return (false, format!("residual non-zero at {c}"));
        }
    }
    for _ in 0..200 {
        let d = rng.random_range(1..=4);
        let c = random_configuration(&mut rng, d, -10, 10);
        let len = rng.random_range(0..=10);
        let letters: Vec<Step> = (0..len)
            .map(|_| if rng.random_bool(0.5) { Step::Lower } else { Step::Raise })
            .collect();
        let mut shuffled = letters.clone();
        shuffled.shuffle(&mut rng);
        let lattice = WeylLattice { d };
        let v = StateVector::unit(c);
        let (a, b) = (StepWord::new(letters), StepWord::new(shuffled));
        if apply_word(&lattice, &a, &v) != apply_word(&lattice, &b, &v) {
            return (false, format!("{a} and {b} differ"));
        }
    }
    (true, "1000 residuals zero, 200 reorderings invariant".into())
}

fn determinantal() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut done = 0;
    let mut max_gap = 0;
    while done < 20 {
        let d = rng.random_range(1..=3);
        let mu = random_configuration(&mut rng, d, -4, 4);
        let lambda = random_configuration(&mut rng, d, -4, 4);
        let gap = rank(&lambda) - rank(&mu);
        if !(0..=4).contains(&gap) {
            continue;
        }
        let order = rng.random_range(gap as usize..=10);
        let r = determinantal_report(&mu, &lambda, order).unwrap();
        if !(r.holds && r.families_agree) {
            return (false, format!("mu={mu} lambda={lambda} order={order}"));
        }
        max_gap = max_gap.max(gap);
        done += 1;
    }
    (true, format!("20 pairs, both word families, max rank gap {max_gap}"))
}

fn rsk_chain() -> Verdict {
    for d in 1..=3 {
        for n in 0..=5 {
            for q in 0..=3 {
                let r = rsk_chain_check(d, n, q).unwrap();
                let z = z_ground(&GroundStateQuery { d, steps: 2 * n + d * q, q });
                if !r.holds || &r.refined * binomial(2 * n + d * q, n) != z {
                    return (false, format!("d={d} n={n} q={q}"));
                }
            }
        }
    }
    (true, "d <= 3, n <= 5, q <= 3".into())
}

fn moment_identity() -> Verdict {
    let start = Instant::now();
    if exact_trace_moment(1, 1, 1).unwrap() != BigRational::new(1.into(), 2.into()) {
        return (false, "exact_trace_moment(1,1,1) != 1/2".into());
    }
    let mut parts = Vec::new();
    let mut ok = true;
    for (i, (d, q, n)) in [(1, 1, 1), (2, 2, 2), (2, 0, 3)].into_iter().enumerate() {
        let exact = exact_trace_moment(d, q, n).unwrap();
        let cfg = McConfig::new(200_000, 800 + i as u64);
        let est = mc_trace_moment(d, q, n, &cfg).unwrap();
        let z = (est.real() - exact.to_f64().unwrap()) / est.real_error();
        ok &= z.abs() <= 4.0;
        parts.push(format!("({d},{q},{n}) exact {exact} z={z:+.2}"));
    }
    let secs = start.elapsed().as_secs_f64();
    (ok && secs < 120.0, format!("{}; {secs:.1}s", parts.join(", ")))
}

fn two_sided() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for (i, (d, q)) in [(1, 1), (2, 1), (2, 2)].into_iter().enumerate() {
        let cfg = McConfig::new(100_000, 900 + 2 * i as u64);
        let r = two_sided_agreement(d, q, 0.3, &cfg, 4.0).unwrap();
        ok &= r.agree;
        parts.push(format!("({d},{q}) z={:.2} imag z={:.2}", r.z_score, r.imag_z_score));
    }
    (ok, parts.join(", "))
}

fn gaussian_limit() -> Verdict {
    let dev = |q: usize, seed: u64| {
        let est = mc_trace_moment(2, q, 1, &McConfig::new(100_000, seed)).unwrap();
        (q as f64 * est.real() - 2.0).abs()
    };
    let (small, large) = (dev(4, 1000), dev(64, 1001));
    let mut worst: f64 = 0.0;
    for q in [1, 2, 5, 10, 100, 1000] {
        let exact = exact_trace_moment(1, q, 1).unwrap().to_f64().unwrap() * q as f64;
        worst = worst.max((exact - q as f64 / (q as f64 + 1.0)).abs());
    }
    (
        large < small && large < 0.15 && worst < 1e-12,
        format!("|q m - 2|: q=4 {small:.4}, q=64 {large:.4}; d=1 closed form error {worst:.1e}"),
    )
}

fn kernel_convergence() -> Verdict {
    let grid = default_kernel_grid(1.0, 5, 8);
    let mut parts = Vec::new();
    let mut ok = true;
    let zero = num_complex::Complex64::new(0.0, 0.0);
    for d in 1..=2 {
        let r = kernel_convergence_report(d, &[16, 64, 256], &grid).unwrap();
        ok &= r.strictly_decreasing && r.origin_exact;
        ok &= ginibre_kernel(d, zero, zero).re == 1.0 / std::f64::consts::PI;
        ok &= sz_kernel(d, 16, zero, zero).unwrap().re / 16.0 == 1.0 / std::f64::consts::PI;
        let errs: Vec<String> = r.rows.iter().map(|row| format!("{:.2e}", row.sup_error)).collect();
        let mut worst: f64 = 0.0;
        for q in [1, 2, 16, 64, 256] {
            worst = worst.max((sz_disc_integral(d, q).unwrap() - d as f64).abs());
        }
        ok &= worst < 1e-3;
        parts.push(format!("d={d} sup errors [{}], disc integral error {worst:.1e}", errs.join(", ")));
    }
    (ok, parts.join("; "))
}

fn neretin() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for q in [1, 3] {
        let r = neretin_ks_check(q, &McConfig::new(100_000, 1200 + q as u64)).unwrap();
        ok &= r.ks_distance < 0.01;
        parts.push(format!("q={q} KS {:.4}", r.ks_distance));
    }
    (ok, parts.join(", "))
}

fn asymptotics() -> Verdict {
    let mut parts = Vec::new();
    let mut ok = true;
    for n in 0..=3 {
        let r = asymptotic_ratio_report(1, n, 200).unwrap();
        let oracle = binomial(2 * n + 200, n);
        ok &= r.exact == oracle;
        ok &= (r.adjusted_ratio - 1.0).abs() <= 0.05;
        let by_hand = (factorial(n) * &oracle).to_f64().unwrap() / 200f64.powi(n as i32);
        ok &= (by_hand - r.adjusted_ratio).abs() < 1e-9;
        parts.push(format!("n={n} raw {:.5} adjusted {:.5}", r.raw_ratio, r.adjusted_ratio));
    }
    (ok, parts.join(", "))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("Toeplitz determinant equals ground-state walk counts", toeplitz_exactness),
        ("walk-count series equals Toeplitz series", generating_function_consistency),
        ("Forrester relation", forrester_relation),
        ("Gessel identity", gessel_identity),
        ("lowering and raising commute on W_d", commutation),
        ("determinantal refined-walk series", determinantal),
        ("RSK chain", rsk_chain),
        ("trace moment identity", moment_identity),
        ("Wei-Wettig two-sided agreement", two_sided),
        ("Gaussian limit", gaussian_limit),
        ("kernel convergence", kernel_convergence),
        ("Neretin density", neretin),
        ("asymptotic formula with n! adjustment", asymptotics),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (pass, detail) = match panic::catch_unwind(AssertUnwindSafe(check)) {
            Ok(v) => v,
            Err(_) => (false, "panicked".to_string()),
        };
        if !pass {
            failed += 1;
        }
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {name}: {detail}", i + 1);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
