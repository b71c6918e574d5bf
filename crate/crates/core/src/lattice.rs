//! Configuration spaces of the random-turns model as graded graphs.
//!
//! Two graphs live here:
//!
//! * the Weyl lattice `W_d` of strictly decreasing integer vectors, whose
//!   edges join vertices at unit Euclidean distance, and
//! * the Young graph `Y_d` of partitions with at most `d` rows, ordered by
//!   single-cell addition.
//!
//! Both are graded: every edge changes the rank by exactly one. The map
//! [`young_embed`] sends `Y_d` into `W_d` by padding with zeros and adding
//! the ground state `rho = (d, d-1, ..., 1)`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A vertex of `W_d`: walker positions listed right to left.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    parts: Vec<i64>,
}

impl Configuration {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidConfiguration {
                parts,
                reason: "a configuration needs at least one walker",
            });
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidConfiguration {
                parts,
                reason: "positions must be strictly decreasing",
            });
        }
        Ok(Self { parts })
    }

    /// The ground state `rho = (d, d-1, ..., 1)`.
    pub fn ground_state(d: usize) -> Self {
        assert!(d >= 1, "ground state needs d >= 1");
        Self {
            parts: (1..=d as i64).rev().collect(),
        }
    }

    /// `rho + (shift, ..., shift)`, the ground state translated `shift` sites.
    pub fn shifted_ground_state(d: usize, shift: i64) -> Self {
        let mut c = Self::ground_state(d);
        c.parts.iter_mut().for_each(|p| *p += shift);
        c
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn dim(&self) -> usize {
        self.parts.len()
    }

    pub fn rank(&self) -> i64 {
        rank(self)
    }

    /// `self - rho`: a weakly decreasing vector with the same rank.
    pub fn minus_rho(&self) -> Vec<i64> {
        let d = self.dim() as i64;
        self.parts
            .iter()
            .enumerate()
            .map(|(i, p)| p - (d - i as i64))
            .collect()
    }

    /// Inverse of [`Configuration::minus_rho`].
    pub fn from_shifted(weak: &[i64]) -> Result<Self> {
        let d = weak.len() as i64;
        Self::new(
            weak.iter()
                .enumerate()
                .map(|(i, p)| p + (d - i as i64))
                .collect(),
        )
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.parts)
    }
}

impl Serialize for Configuration {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<i64>::deserialize(d)?;
        Configuration::new(parts).map_err(serde::de::Error::custom)
    }
}

/// A partition, stored without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl YoungDiagram {
    pub fn new(mut rows: Vec<u32>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidDiagram {
                rows,
                reason: "row lengths must be weakly decreasing",
            });
        }
        Ok(Self { rows })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The `d x q` rectangle: `d` rows of length `q`.
    pub fn rectangle(d: usize, q: u32) -> Self {
        if q == 0 {
            return Self::empty();
        }
        Self { rows: vec![q; d] }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of cells, which is the rank in the Young graph.
    pub fn size(&self) -> u64 {
        self.rows.iter().map(|&r| u64::from(r)).sum()
    }

    /// Row `i` (zero-based), with zero past the last row.
    pub fn row(&self, i: usize) -> u32 {
        self.rows.get(i).copied().unwrap_or(0)
    }

    /// Row-wise sum with the `d x q` rectangle, i.e. `lambda + d x q`.
    pub fn concat_rectangle(&self, d: usize, q: u32) -> Result<Self> {
        if self.len() > d {
            return Err(Error::TooManyRows {
                rows: self.len(),
                d,
            });
        }
        Self::new((0..d).map(|i| self.row(i) + q).collect())
    }

    /// Length of the hook of cell `(i, j)`, zero-based.
    pub fn hook(&self, i: usize, j: u32) -> u32 {
        let arm = self.row(i) - j - 1;
        let leg = self.rows[i + 1..].iter().filter(|&&r| r > j).count() as u32;
        arm + leg + 1
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return f.write_str("()");
        }
        write_tuple(f, &self.rows)
    }
}

impl Serialize for YoungDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for YoungDiagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<u32>::deserialize(d)?;
        YoungDiagram::new(rows).map_err(serde::de::Error::custom)
    }
}

fn write_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

/// `sum(parts) - d(d+1)/2`; the ground state has rank zero.
pub fn rank(c: &Configuration) -> i64 {
    let d = c.dim() as i64;
    c.parts.iter().sum::<i64>() - d * (d + 1) / 2
}

/// All `c + e_i` that stay strictly decreasing, sorted.
pub fn up_neighbors(c: &Configuration) -> Vec<Configuration> {
    let p = &c.parts;
    let mut out: Vec<_> = (0..p.len())
        .filter(|&i| i == 0 || p[i - 1] > p[i] + 1)
        .map(|i| {
            let mut parts = p.clone();
            parts[i] += 1;
            Configuration { parts }
        })
        .collect();
    out.sort();
    out
}

/// All `c - e_j` that stay strictly decreasing, sorted.
pub fn down_neighbors(c: &Configuration) -> Vec<Configuration> {
    let p = &c.parts;
    let n = p.len();
    let mut out: Vec<_> = (0..n)
        .filter(|&j| j + 1 == n || p[j] - 1 > p[j + 1])
        .map(|j| {
            let mut parts = p.clone();
            parts[j] -= 1;
            Configuration { parts }
        })
        .collect();
    out.sort();
    out
}

/// Diagrams obtained by adding one cell without exceeding `d` rows, sorted.
pub fn young_up_neighbors(y: &YoungDiagram, d: usize) -> Vec<YoungDiagram> {
    let n = y.len();
    let mut out = Vec::new();
    for i in 0..=n.min(d) {
        if i == d {
            break;
        }
        if i == 0 || y.row(i - 1) > y.row(i) {
            let mut rows = y.rows.clone();
            if i == n {
                rows.push(1);
            } else {
                rows[i] += 1;
            }
            out.push(YoungDiagram { rows });
        }
    }
    out.sort();
    out
}

/// Diagrams obtained by removing one corner cell, sorted.
pub fn young_down_neighbors(y: &YoungDiagram) -> Vec<YoungDiagram> {
    let n = y.len();
    let mut out: Vec<_> = (0..n)
        .filter(|&i| i + 1 == n || y.rows[i] > y.rows[i + 1])
        .map(|i| {
            let mut rows = y.rows.clone();
            rows[i] -= 1;
            if rows[i] == 0 {
                rows.pop();
            }
            YoungDiagram { rows }
        })
        .collect();
    out.sort();
    out
}

/// Pads `y` with zeros to length `d` and adds `rho`.
pub fn young_embed(y: &YoungDiagram, d: usize) -> Result<Configuration> {
    if y.len() > d {
        return Err(Error::TooManyRows { rows: y.len(), d });
    }
    let weak: Vec<i64> = (0..d).map(|i| i64::from(y.row(i))).collect();
    Configuration::from_shifted(&weak)
}

/// A graded graph whose vertices can be stepped up and down.
///
/// The operator algebra in [`crate::operators`] is written against this
/// trait so the same word application drives both `W_d` and `Y_d`.
pub trait GradedGraph {
    type Vertex: Clone + Ord + fmt::Debug;

    fn rank(&self, v: &Self::Vertex) -> i64;
    fn up(&self, v: &Self::Vertex) -> Vec<Self::Vertex>;
    fn down(&self, v: &Self::Vertex) -> Vec<Self::Vertex>;
    /// Whether `v` is a vertex of this graph instance.
    fn contains(&self, v: &Self::Vertex) -> bool;
}

/// `W_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeylLattice {
    pub d: usize,
}

impl GradedGraph for WeylLattice {
    type Vertex = Configuration;

    fn rank(&self, v: &Configuration) -> i64 {
        rank(v)
    }
    fn up(&self, v: &Configuration) -> Vec<Configuration> {
        up_neighbors(v)
    }
    fn down(&self, v: &Configuration) -> Vec<Configuration> {
        down_neighbors(v)
    }
    fn contains(&self, v: &Configuration) -> bool {
        v.dim() == self.d
    }
}

/// `Y_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct YoungLattice {
    pub d: usize,
}

impl GradedGraph for YoungLattice {
    type Vertex = YoungDiagram;

    fn rank(&self, v: &YoungDiagram) -> i64 {
        v.size() as i64
    }
    fn up(&self, v: &YoungDiagram) -> Vec<YoungDiagram> {
        young_up_neighbors(v, self.d)
    }
    fn down(&self, v: &YoungDiagram) -> Vec<YoungDiagram> {
        young_down_neighbors(v)
    }
    fn contains(&self, v: &YoungDiagram) -> bool {
        v.len() <= self.d
    }
}
