//! Exact walk counts on `W_d` and the permutation statistics they match.
//!
//! [`z_count`] is the transfer-matrix count: `N` applications of `R + L`
//! to a unit vector over a sparse frontier. [`walk_oracle`] counts the same
//! walks by exhaustive depth-first search and shares nothing with it beyond
//! the neighbour functions. [`u_count`] enumerates `S(n)` directly so it
//! stays independent of every determinant in [`crate::series`].

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::decimal;
use crate::error::{Error, Result};
use crate::lattice::{
    down_neighbors, rank, up_neighbors, Configuration, YoungDiagram, YoungLattice,
};
use crate::operators::{apply_lower, apply_raise, refined_count, StateVector, StepWord};

/// Largest walk length the depth-first oracle accepts.
pub const WALK_ORACLE_MAX_STEPS: usize = 12;
/// Largest `n` for which `S(n)` is enumerated.
pub const U_COUNT_MAX_N: usize = 9;

/// `Z_d(N; mu, lambda)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkCountQuery {
    pub steps: usize,
    pub from: Configuration,
    pub to: Configuration,
}

impl WalkCountQuery {
    pub fn new(steps: usize, from: Configuration, to: Configuration) -> Result<Self> {
        if from.dim() != to.dim() {
            return Err(Error::Dimension(format!(
                "endpoints {from} and {to} have different numbers of walkers"
            )));
        }
        Ok(Self { steps, from, to })
    }

    pub fn d(&self) -> usize {
        self.from.dim()
    }
}

/// `Z_d(N; q)`: ground state `rho` to `rho + (q, ..., q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroundStateQuery {
    pub d: usize,
    pub steps: usize,
    pub q: usize,
}

impl GroundStateQuery {
    pub fn walk_query(&self) -> WalkCountQuery {
        WalkCountQuery {
            steps: self.steps,
            from: Configuration::ground_state(self.d),
            to: Configuration::shifted_ground_state(self.d, self.q as i64),
        }
    }
}

/// Number of `N`-step walks `mu -> lambda` on `W_d`.
pub fn z_count(query: &WalkCountQuery) -> BigInt {
    let gap = (rank(&query.to) - rank(&query.from)).unsigned_abs() as usize;
    if gap > query.steps || (query.steps - gap) % 2 == 1 {
        return BigInt::zero();
    }
    z_count_sequence(&query.from, &query.to, query.steps)
        .pop()
        .unwrap_or_default()
}

/// `[Z_d(0; mu, lambda), ..., Z_d(max_steps; mu, lambda)]` from one frontier sweep.
pub fn z_count_sequence(
    from: &Configuration,
    to: &Configuration,
    max_steps: usize,
) -> Vec<BigInt> {
    let target_rank = rank(to);
    let lattice = crate::lattice::WeylLattice { d: from.dim() };
    let mut frontier = StateVector::unit(from.clone());
    let mut counts = Vec::with_capacity(max_steps + 1);
    counts.push(frontier.coefficient(to));
    for t in 0..max_steps {
        let up = apply_raise(&lattice, &frontier);
        frontier = up.add(&apply_lower(&lattice, &frontier));
        let remaining = (max_steps - t - 1) as i64;
        // Keep only vertices that can still reach the target in time.
        frontier.retain(|v| {
            (rank(v) - target_rank).abs() <= remaining
                && v.parts()
                    .iter()
                    .zip(to.parts())
                    .map(|(a, b)| (a - b).abs())
                    .sum::<i64>()
                    <= remaining
        });
        counts.push(frontier.coefficient(to));
    }
    counts
}

/// `Z_d(N; q)`. Zero unless `N = 2n + dq`.
pub fn z_ground(query: &GroundStateQuery) -> BigInt {
    z_count(&query.walk_query())
}

/// Exhaustive depth-first enumeration of all walks, for `N <= 12`.
pub fn walk_oracle(query: &WalkCountQuery) -> Result<BigInt> {
    if query.steps > WALK_ORACLE_MAX_STEPS {
        return Err(Error::OverBudget {
            what: "walk length",
            value: query.steps as u64,
            bound: WALK_ORACLE_MAX_STEPS as u64,
        });
    }
    fn dfs(at: &Configuration, left: usize, to: &Configuration) -> u64 {
        if left == 0 {
            return u64::from(at == to);
        }
        up_neighbors(at)
            .iter()
            .chain(down_neighbors(at).iter())
            .map(|next| dfs(next, left - 1, to))
            .sum()
    }
    Ok(BigInt::from(dfs(&query.from, query.steps, &query.to)))
}

fn check_permutation(perm: &[u32]) -> Result<()> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &p in perm {
        let i = p as usize;
        if i == 0 || i > n || seen[i - 1] {
            return Err(Error::NotAPermutation {
                seq: perm.to_vec(),
                len: n,
            });
        }
        seen[i - 1] = true;
    }
    Ok(())
}

/// Length of the longest increasing subsequence of a permutation of `1..=n`.
pub fn lis_length(perm: &[u32]) -> Result<usize> {
    check_permutation(perm)?;
    Ok(patience_piles(perm))
}

// pile tops are increasing, so each card goes on the leftmost pile with a larger top
fn patience_piles(seq: &[u32]) -> usize {
    let mut tops: Vec<u32> = Vec::new();
    for &x in seq {
        let i = tops.partition_point(|&t| t < x);
        if i == tops.len() {
            tops.push(x);
        } else {
            tops[i] = x;
        }
    }
    tops.len()
}

/// `u_d(n)`: permutations of `S(n)` with no increasing subsequence longer than `d`.
pub fn u_count(d: usize, n: usize) -> Result<BigInt> {
    if n > U_COUNT_MAX_N {
        return Err(Error::OverBudget {
            what: "permutation size",
            value: n as u64,
            bound: U_COUNT_MAX_N as u64,
        });
    }
    let count = (1..=n as u32)
        .permutations(n)
        .filter(|p| patience_piles(p) <= d)
        .count();
    Ok(BigInt::from(count))
}

/// `f^lambda` by the hook-length formula.
pub fn syt_count(y: &YoungDiagram) -> BigInt {
    let mut hooks = BigInt::one();
    for i in 0..y.len() {
        for j in 0..y.row(i) {
            hooks *= y.hook(i, j);
        }
    }
    factorial(y.size() as usize) / hooks
}

/// `C(n, k)` from Pascal's recurrence.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            let left = row[j - 1].clone();
            row[j] += left;
        }
    }
    row.swap_remove(k)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForresterReport {
    pub d: usize,
    pub n: usize,
    /// `Z_d(2n; 0)`
    #[serde(with = "decimal")]
    pub z_even: BigInt,
    /// `C(2n, n)`
    #[serde(with = "decimal")]
    pub binomial: BigInt,
    /// `u_d(n)`
    #[serde(with = "decimal")]
    pub u: BigInt,
    /// `C(2n, n) u_d(n)`
    #[serde(with = "decimal")]
    pub rhs: BigInt,
    /// `Z_d(2n + 1; 0)`, which must vanish.
    #[serde(with = "decimal")]
    pub z_odd: BigInt,
    pub holds: bool,
}

/// `Z_d(2n; 0) = C(2n, n) u_d(n)` and `Z_d(2n + 1; 0) = 0`.
pub fn forrester_check(d: usize, n: usize) -> Result<ForresterReport> {
    let u = u_count(d, n)?;
    let z_even = z_ground(&GroundStateQuery { d, steps: 2 * n, q: 0 });
    let z_odd = z_ground(&GroundStateQuery {
        d,
        steps: 2 * n + 1,
        q: 0,
    });
    let binomial = binomial(2 * n, n);
    let rhs = &binomial * &u;
    let holds = z_even == rhs && z_odd.is_zero();
    Ok(ForresterReport {
        d,
        n,
        z_even,
        binomial,
        u,
        rhs,
        z_odd,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RskChainReport {
    pub d: usize,
    pub n: usize,
    pub q: usize,
    /// `Z_{Y_d}(L^n R^{n+dq}; empty, d x q)`
    #[serde(with = "decimal")]
    pub refined: BigInt,
    /// `C(2n + dq, n)`
    #[serde(with = "decimal")]
    pub binomial: BigInt,
    #[serde(with = "decimal")]
    pub lhs: BigInt,
    /// `Z_d(2n + dq; q)`
    #[serde(with = "decimal")]
    pub z_ground: BigInt,
    /// For `q = 0`: `Z_{Y_d}(L^n R^n; empty, empty)` and `u_d(n)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oscillating: Option<OscillatingCheck>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OscillatingCheck {
    #[serde(with = "decimal")]
    pub refined: BigInt,
    #[serde(with = "decimal")]
    pub u: BigInt,
}

/// Checks `Z_{Y_d}(L^n R^{n+dq}; empty, d x q) C(2n+dq, n) = Z_d(2n+dq; q)`.
pub fn rsk_chain_check(d: usize, n: usize, q: usize) -> Result<RskChainReport> {
    if d == 0 {
        return Err(Error::Parameter("d must be at least 1".into()));
    }
    let young = YoungLattice { d };
    let rect = YoungDiagram::rectangle(d, q as u32);
    let word = StepWord::down_after_up(n, n + d * q);
    let refined = refined_count(&young, &word, &YoungDiagram::empty(), &rect)?;
    let steps = 2 * n + d * q;
    let binomial = binomial(steps, n);
    let lhs = &refined * &binomial;
    let z = z_ground(&GroundStateQuery { d, steps, q });
    let oscillating = if q == 0 {
        Some(OscillatingCheck {
            refined: refined.clone(),
            u: u_count(d, n)?,
        })
    } else {
        None
    };
    let holds = lhs == z && oscillating.as_ref().is_none_or(|o| o.refined == o.u);
    Ok(RskChainReport {
        d,
        n,
        q,
        refined,
        binomial,
        lhs,
        z_ground: z,
        oscillating,
        holds,
    })
}
