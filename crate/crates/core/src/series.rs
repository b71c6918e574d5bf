//! Truncated power series with exact rational coefficients, and the
//! generating-function identities built from them.
//!
//! A [`RationalSeries`] carries its truncation order explicitly; every
//! binary operation truncates to the smaller of the two orders. Nothing in
//! this module touches floating point.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::decimal::{self, Rational};
use crate::enumeration::{self, u_count, z_count_sequence};
use crate::error::{Error, Result};
use crate::lattice::{rank, Configuration, WeylLattice};
use crate::operators::{refined_count, Step, StepWord};

/// `sum_{k <= order} c_k x^k`, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    order: usize,
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Builds a series from leading coefficients, padding with zeros up to
    /// `order` and dropping anything past it.
    pub fn from_coefficients(order: usize, coeffs: impl IntoIterator<Item = BigRational>) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    /// `c x^k`, or the zero series if `k > order`.
    pub fn monomial(order: usize, k: usize, c: BigRational) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `[x^k]`, zero past the truncation order.
    pub fn coefficient(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `k! [x^k]` for every `k`: the exponential-generating-function view.
    pub fn egf_coefficients(&self, facts: &Factorials) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * BigRational::from_integer(facts.get(k).clone()))
            .collect()
    }
}

impl Add for &RationalSeries {
    type Output = RationalSeries;
    fn add(self, rhs: &RationalSeries) -> RationalSeries {
        let order = self.order.min(rhs.order);
        RationalSeries {
            order,
            coeffs: (0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &RationalSeries {
    type Output = RationalSeries;
    fn sub(self, rhs: &RationalSeries) -> RationalSeries {
        let order = self.order.min(rhs.order);
        RationalSeries {
            order,
            coeffs: (0..=order).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul for &RationalSeries {
    type Output = RationalSeries;
    fn mul(self, rhs: &RationalSeries) -> RationalSeries {
        let order = self.order.min(rhs.order);
        let mut out = RationalSeries::zero(order);
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl Neg for &RationalSeries {
    type Output = RationalSeries;
    fn neg(self) -> RationalSeries {
        RationalSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Serialize for RationalSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RationalSeries", 2)?;
        st.serialize_field("order", &self.order)?;
        let coeffs: Vec<_> = self.coeffs.iter().map(Rational).collect();
        st.serialize_field("coefficients", &coeffs)?;
        st.end()
    }
}

/// `0!, 1!, ..., n!` as big integers.
#[derive(Debug, Clone)]
pub struct Factorials {
    table: Vec<BigInt>,
}

impl Factorials {
    pub fn up_to(n: usize) -> Self {
        let mut table = Vec::with_capacity(n + 1);
        table.push(BigInt::one());
        for k in 1..=n {
            let next = &table[k - 1] * k;
            table.push(next);
        }
        Self { table }
    }

    /// Panics if `k` is past the cached range.
    pub fn get(&self, k: usize) -> &BigInt {
        &self.table[k]
    }

    pub fn max(&self) -> usize {
        self.table.len() - 1
    }
}

/// `I_k(2x) = sum_n x^{2n+|k|} / (n! (n+|k|)!)`, truncated at `order`.
pub fn bessel_series(k: i64, order: usize) -> RationalSeries {
    let facts = Factorials::up_to(order);
    bessel_with(k, order, &facts)
}

fn bessel_with(k: i64, order: usize, facts: &Factorials) -> RationalSeries {
    let k = k.unsigned_abs() as usize;
    let mut s = RationalSeries::zero(order);
    let mut n = 0;
    while 2 * n + k <= order {
        s.coeffs[2 * n + k] =
            BigRational::new(BigInt::one(), facts.get(n) * facts.get(n + k));
        n += 1;
    }
    s
}

/// Determinant of a square matrix of series, by Laplace expansion along
/// rows with memoised minors (indexed by the set of columns still free).
pub fn series_determinant(entries: &[Vec<RationalSeries>]) -> Result<RationalSeries> {
    let d = entries.len();
    if d == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    if entries.iter().any(|row| row.len() != d) {
        return Err(Error::Dimension("matrix of series must be square".into()));
    }
    if d > 16 {
        return Err(Error::OverBudget {
            what: "determinant size",
            value: d as u64,
            bound: 16,
        });
    }
    let order = entries
        .iter()
        .flatten()
        .map(RationalSeries::order)
        .min()
        .unwrap_or(0);
    let mut memo: HashMap<u32, RationalSeries> = HashMap::new();
    Ok(minor(entries, 0, (1u32 << d) - 1, order, &mut memo))
}

// Determinant of rows `row..d` against the columns in `free`.
fn minor(
    m: &[Vec<RationalSeries>],
    row: usize,
    free: u32,
    order: usize,
    memo: &mut HashMap<u32, RationalSeries>,
) -> RationalSeries {
    if row == m.len() {
        return RationalSeries::one(order);
    }
    if let Some(hit) = memo.get(&free) {
        return hit.clone();
    }
    let mut acc = RationalSeries::zero(order);
    let mut sign_positive = true;
    for col in 0..m.len() {
        if free & (1 << col) == 0 {
            continue;
        }
        let entry = &m[row][col];
        if entry.coeffs.iter().any(|c| !c.is_zero()) {
            let sub = minor(m, row + 1, free & !(1 << col), order, memo);
            let term = entry * &sub;
            acc = if sign_positive { &acc + &term } else { &acc - &term };
        }
        sign_positive = !sign_positive;
    }
    memo.insert(free, acc.clone());
    acc
}

/// `det(I_{offsets[i][j]}(2x))`, exact to `order`.
pub fn toeplitz_bessel_det(offsets: &[Vec<i64>], order: usize) -> Result<RationalSeries> {
    let facts = Factorials::up_to(order);
    let mut cache: HashMap<u64, RationalSeries> = HashMap::new();
    let entries: Vec<Vec<RationalSeries>> = offsets
        .iter()
        .map(|row| {
            row.iter()
                .map(|&k| {
                    cache
                        .entry(k.unsigned_abs())
                        .or_insert_with(|| bessel_with(k, order, &facts))
                        .clone()
                })
                .collect()
        })
        .collect();
    series_determinant(&entries)
}

/// `[[q + j - i]]`, the matrix of Bessel orders for `G_d(x; q)`.
pub fn ground_offsets(d: usize, q: i64) -> Vec<Vec<i64>> {
    (0..d as i64)
        .map(|i| (0..d as i64).map(|j| q + j - i).collect())
        .collect()
}

/// `[[lambda_i - mu_j]]`.
pub fn walk_offsets(mu: &Configuration, lambda: &Configuration) -> Vec<Vec<i64>> {
    lambda
        .parts()
        .iter()
        .map(|l| mu.parts().iter().map(|m| l - m).collect())
        .collect()
}

/// Hook-length product of the `d x q` rectangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HookProduct {
    pub d: usize,
    pub q: usize,
    #[serde(with = "decimal")]
    pub value: BigInt,
}

/// `H_{d x q} = prod_{i<d} (q+i)!/i!`.
pub fn hook_product(d: usize, q: usize) -> HookProduct {
    let facts = Factorials::up_to(q + d);
    let value = (0..d).fold(BigInt::one(), |acc, i| {
        acc * facts.get(q + i) / facts.get(i)
    });
    HookProduct { d, q, value }
}

/// `sum_{N <= order} Z_d(N; q) x^N / N!`.
pub fn gd_from_counts(d: usize, q: usize, order: usize) -> RationalSeries {
    let counts = z_count_sequence(
        &Configuration::ground_state(d),
        &Configuration::shifted_ground_state(d, q as i64),
        order,
    );
    let facts = Factorials::up_to(order);
    RationalSeries::from_coefficients(
        order,
        counts
            .into_iter()
            .enumerate()
            .map(|(n, z)| BigRational::new(z, facts.get(n).clone())),
    )
}

/// One coefficient compared across both sides of an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientRow {
    pub power: usize,
    /// Combinatorial side, scaled to an integer count.
    pub count: String,
    /// Determinant side under the same scaling.
    pub determinant: String,
    pub equal: bool,
}

impl CoefficientRow {
    fn new(power: usize, count: &BigRational, det: &BigRational) -> Self {
        Self {
            power,
            count: count.to_string(),
            determinant: det.to_string(),
            equal: count == det,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToeplitzReport {
    pub d: usize,
    pub q: usize,
    pub order: usize,
    /// `N`, `Z_d(N; q)`, `N! [x^N] det(I_{q+j-i}(2x))`.
    pub rows: Vec<CoefficientRow>,
    pub counts: RationalSeries,
    pub determinant: RationalSeries,
    pub holds: bool,
}

/// `G_d(x; q)` from walk counts against `det(I_{q+j-i}(2x))`.
pub fn toeplitz_report(d: usize, q: usize, order: usize) -> Result<ToeplitzReport> {
    if d == 0 {
        return Err(Error::Parameter("d must be at least 1".into()));
    }
    let counts = gd_from_counts(d, q, order);
    let determinant = toeplitz_bessel_det(&ground_offsets(d, q as i64), order)?;
    let facts = Factorials::up_to(order);
    let lhs = counts.egf_coefficients(&facts);
    let rhs = determinant.egf_coefficients(&facts);
    let rows: Vec<_> = (0..=order)
        .map(|n| CoefficientRow::new(n, &lhs[n], &rhs[n]))
        .collect();
    let holds = counts == determinant;
    Ok(ToeplitzReport {
        d,
        q,
        order,
        rows,
        counts,
        determinant,
        holds,
    })
}

/// Refined counts for one word family `W_0, W_1, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordFamilyCounts {
    /// The word used at the largest `n`, e.g. `LLRRR`.
    pub example_word: String,
    #[serde(serialize_with = "decimal::serialize_vec")]
    pub counts: Vec<BigInt>,
    pub series: RationalSeries,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeterminantalReport {
    pub mu: Configuration,
    pub lambda: Configuration,
    pub rank_gap: usize,
    pub order: usize,
    pub families: Vec<WordFamilyCounts>,
    pub determinant: RationalSeries,
    pub families_agree: bool,
    pub holds: bool,
}

/// `L^n R^{n+gap}`.
pub fn family_down_after_up(n: usize, gap: usize) -> StepWord {
    StepWord::down_after_up(n, n + gap)
}

/// `(LR)^n R^{gap}`.
pub fn family_alternating(n: usize, gap: usize) -> StepWord {
    let lr = StepWord::new(vec![Step::Lower, Step::Raise]);
    (0..n)
        .fold(StepWord::empty(), |w, _| w.then_after(&lr))
        .then_after(&StepWord::power(Step::Raise, gap))
}

/// `sum_n Z_d(W_n; mu, lambda) x^{2n+gap}/(n!(n+gap)!)` against
/// `det(I_{lambda_i - mu_j}(2x))`, for two word families.
pub fn determinantal_report(
    mu: &Configuration,
    lambda: &Configuration,
    order: usize,
) -> Result<DeterminantalReport> {
    if mu.dim() != lambda.dim() {
        return Err(Error::Dimension(format!(
            "{mu} and {lambda} have different numbers of walkers"
        )));
    }
    let gap = rank(lambda) - rank(mu);
    if gap < 0 {
        return Err(Error::Parameter(format!(
            "rank({mu}) = {} exceeds rank({lambda}) = {}",
            rank(mu),
            rank(lambda)
        )));
    }
    let gap = gap as usize;
    let lattice = WeylLattice { d: mu.dim() };
    let facts = Factorials::up_to(order + gap);
    let families: [fn(usize, usize) -> StepWord; 2] = [family_down_after_up, family_alternating];
    let mut reports = Vec::new();
    for family in families {
        let mut series = RationalSeries::zero(order);
        let mut counts = Vec::new();
        let mut example = StepWord::empty();
        let mut n = 0;
        while 2 * n + gap <= order {
            let word = family(n, gap);
            let count = refined_count(&lattice, &word, mu, lambda)?;
            series.coeffs[2 * n + gap] =
                BigRational::new(count.clone(), facts.get(n) * facts.get(n + gap));
            counts.push(count);
            example = word;
            n += 1;
        }
        reports.push(WordFamilyCounts {
            example_word: example.to_string(),
            counts,
            series,
        });
    }
    let determinant = toeplitz_bessel_det(&walk_offsets(mu, lambda), order)?;
    let families_agree = reports.windows(2).all(|w| w[0].counts == w[1].counts);
    let holds = families_agree && reports.iter().all(|r| r.series == determinant);
    Ok(DeterminantalReport {
        mu: mu.clone(),
        lambda: lambda.clone(),
        rank_gap: gap,
        order,
        families: reports,
        determinant,
        families_agree,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GesselReport {
    pub d: usize,
    pub order: usize,
    /// `2n`, `u_d(n)`, `n! n! [x^{2n}] det(I_{i-j}(2x))`; odd powers compare `0`.
    pub rows: Vec<CoefficientRow>,
    pub determinant: RationalSeries,
    pub holds: bool,
}

/// `sum_n u_d(n) x^{2n}/(n!)^2 = det(I_{i-j}(2x))`.
pub fn gessel_report(d: usize, order: usize) -> Result<GesselReport> {
    if d == 0 {
        return Err(Error::Parameter("d must be at least 1".into()));
    }
    let max_n = order / 2;
    if max_n > enumeration::U_COUNT_MAX_N {
        return Err(Error::OverBudget {
            what: "order / 2",
            value: max_n as u64,
            bound: enumeration::U_COUNT_MAX_N as u64,
        });
    }
    let offsets: Vec<Vec<i64>> = (0..d as i64)
        .map(|i| (0..d as i64).map(|j| i - j).collect())
        .collect();
    let determinant = toeplitz_bessel_det(&offsets, order)?;
    let facts = Factorials::up_to(order);
    let mut rows = Vec::with_capacity(order + 1);
    for power in 0..=order {
        let c = determinant.coefficient(power);
        let row = if power % 2 == 0 {
            let n = power / 2;
            let u = BigRational::from_integer(u_count(d, n)?);
            let nn = BigRational::from_integer(facts.get(n) * facts.get(n));
            CoefficientRow::new(power, &u, &(c * nn))
        } else {
            CoefficientRow::new(power, &BigRational::zero(), &c)
        };
        rows.push(row);
    }
    let holds = rows.iter().all(|r| r.equal);
    Ok(GesselReport {
        d,
        order,
        rows,
        determinant,
        holds,
    })
}
