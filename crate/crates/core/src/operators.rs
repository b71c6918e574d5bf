//! Raising and lowering operators on the free module over a graded graph.
//!
//! `R(u) = sum of up-neighbours`, `L(u) = sum of down-neighbours`, extended
//! linearly. Coefficients are arbitrary-precision integers since every
//! quantity these operators produce is a walk count.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Configuration, GradedGraph, WeylLattice};

/// A finitely supported integer combination of vertices.
///
/// Zero coefficients are never stored, so equality of state vectors is
/// equality of the underlying linear combinations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateVector<V: Ord> {
    entries: BTreeMap<V, BigInt>,
}

impl<V: Ord + Clone> StateVector<V> {
    pub fn zero() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    pub fn unit(v: V) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(v, BigInt::one());
        Self { entries }
    }

    pub fn from_terms<I: IntoIterator<Item = (V, BigInt)>>(terms: I) -> Self {
        let mut s = Self::zero();
        for (v, c) in terms {
            s.add_term(v, c);
        }
        s
    }

    pub fn add_term(&mut self, v: V, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(v) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `[v]` functional.
    pub fn coefficient(&self, v: &V) -> BigInt {
        self.entries.get(v).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&V, &BigInt)> {
        self.entries.iter()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, c) in &other.entries {
            out.add_term(v.clone(), -c.clone());
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, c) in &other.entries {
            out.add_term(v.clone(), c.clone());
        }
        out
    }

    /// Drops every term whose vertex fails `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(&V) -> bool) {
        self.entries.retain(|v, _| keep(v));
    }
}

impl<V: Ord + Clone> Default for StateVector<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: Ord + fmt::Display> fmt::Display for StateVector<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0");
        }
        for (i, (v, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{c}*{v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    /// `L`, a down step.
    Lower,
    /// `R`, an up step.
    Raise,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::Lower => 'L',
            Step::Raise => 'R',
        }
    }
}

/// A word over `{L, R}` in operator-composition order.
///
/// Letters are stored as written: the leftmost letter is applied last. The
/// word `LR` means "raise, then lower".
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct StepWord {
    letters: Vec<Step>,
}

impl StepWord {
    pub fn new(letters: Vec<Step>) -> Self {
        Self { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `letter^n`.
    pub fn power(letter: Step, n: usize) -> Self {
        Self {
            letters: vec![letter; n],
        }
    }

    /// `L^{b_k} R^{a_k} ... L^{b_1} R^{a_1}` from blocks `[(a_1, b_1), ..., (a_k, b_k)]`.
    pub fn from_blocks(blocks: &[(usize, usize)]) -> Self {
        let mut letters = Vec::new();
        for &(a, b) in blocks.iter().rev() {
            letters.extend(std::iter::repeat_n(Step::Lower, b));
            letters.extend(std::iter::repeat_n(Step::Raise, a));
        }
        Self { letters }
    }

    /// `L^n R^m`: `m` up steps followed by `n` down steps.
    pub fn down_after_up(n: usize, m: usize) -> Self {
        Self::from_blocks(&[(m, n)])
    }

    /// Word `self * other`: `other` acts first.
    pub fn then_after(&self, other: &StepWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }

    pub fn letters(&self) -> &[Step] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn deg_lower(&self) -> usize {
        self.letters.iter().filter(|&&s| s == Step::Lower).count()
    }

    pub fn deg_raise(&self) -> usize {
        self.letters.iter().filter(|&&s| s == Step::Raise).count()
    }
}

impl fmt::Display for StepWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters
            .iter()
            .try_for_each(|s| write!(f, "{}", s.letter()))
    }
}

impl FromStr for StepWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'L' | 'l' => Ok(Step::Lower),
                'R' | 'r' => Ok(Step::Raise),
                other => Err(Error::BadWord {
                    word: s.to_string(),
                    letter: other,
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { letters })
    }
}

fn apply_step<G: GradedGraph>(
    graph: &G,
    step: Step,
    v: &StateVector<G::Vertex>,
) -> StateVector<G::Vertex> {
    let mut out = StateVector::zero();
    for (u, c) in v.iter() {
        let nbrs = match step {
            Step::Raise => graph.up(u),
            Step::Lower => graph.down(u),
        };
        for w in nbrs {
            out.add_term(w, c.clone());
        }
    }
    out
}

pub fn apply_raise<G: GradedGraph>(graph: &G, v: &StateVector<G::Vertex>) -> StateVector<G::Vertex> {
    apply_step(graph, Step::Raise, v)
}

pub fn apply_lower<G: GradedGraph>(graph: &G, v: &StateVector<G::Vertex>) -> StateVector<G::Vertex> {
    apply_step(graph, Step::Lower, v)
}

/// Applies `w` right to left: the rightmost letter acts first.
pub fn apply_word<G: GradedGraph>(
    graph: &G,
    w: &StepWord,
    v: &StateVector<G::Vertex>,
) -> StateVector<G::Vertex> {
    w.letters()
        .iter()
        .rev()
        .fold(v.clone(), |acc, &s| apply_step(graph, s, &acc))
}

/// Number of walks `from -> to` whose up/down signature is `w`.
pub fn refined_count<G: GradedGraph>(
    graph: &G,
    w: &StepWord,
    from: &G::Vertex,
    to: &G::Vertex,
) -> Result<BigInt> {
    for v in [from, to] {
        if !graph.contains(v) {
            return Err(Error::ForeignVertex(format!("{v:?}")));
        }
    }
    let delta = w.deg_raise() as i64 - w.deg_lower() as i64;
    if graph.rank(to) - graph.rank(from) != delta {
        return Ok(BigInt::zero());
    }
    let mut state = StateVector::unit(from.clone());
    for &s in w.letters().iter().rev() {
        state = apply_step(graph, s, &state);
        if state.is_zero() {
            break;
        }
    }
    Ok(state.coefficient(to))
}

/// `LR(v) - RL(v)` on `W_d`.
pub fn commutator_residual(
    lattice: &WeylLattice,
    v: &StateVector<Configuration>,
) -> StateVector<Configuration> {
    let lr = apply_lower(lattice, &apply_raise(lattice, v));
    let rl = apply_raise(lattice, &apply_lower(lattice, v));
    lr.sub(&rl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{YoungDiagram, YoungLattice};

    fn c(p: &[i64]) -> Configuration {
        Configuration::new(p.to_vec()).unwrap()
    }
    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    const W2: WeylLattice = WeylLattice { d: 2 };

    #[test]
    fn raise_examples() {
        let v = apply_raise(&W2, &StateVector::unit(c(&[2, 1])));
        assert_eq!(v, StateVector::unit(c(&[3, 1])));
        let v = apply_raise(&W2, &StateVector::unit(c(&[3, 1])));
        assert_eq!(
            v,
            StateVector::from_terms([(c(&[4, 1]), big(1)), (c(&[3, 2]), big(1))])
        );
        assert!(apply_raise(&W2, &StateVector::zero()).is_zero());
    }

    #[test]
    fn lower_examples() {
        let v = apply_lower(&W2, &StateVector::unit(c(&[2, 1])));
        assert_eq!(v, StateVector::unit(c(&[2, 0])));
        let start = StateVector::from_terms([(c(&[4, 1]), big(1)), (c(&[3, 2]), big(1))]);
        let v = apply_lower(&W2, &start);
        assert_eq!(
            v,
            StateVector::from_terms([(c(&[3, 1]), big(2)), (c(&[4, 0]), big(1))])
        );
        let y = YoungLattice { d: 2 };
        assert!(apply_lower(&y, &StateVector::unit(YoungDiagram::empty())).is_zero());
    }

    #[test]
    fn word_order_is_right_to_left() {
        let lr: StepWord = "LR".parse().unwrap();
        let rl: StepWord = "RL".parse().unwrap();
        let expect = StateVector::from_terms([(c(&[2, 1]), big(1)), (c(&[3, 0]), big(1))]);
        assert_eq!(apply_word(&W2, &lr, &StateVector::unit(c(&[2, 1]))), expect);
        assert_eq!(apply_word(&W2, &rl, &StateVector::unit(c(&[2, 1]))), expect);
        let unit = StateVector::unit(c(&[2, 1]));
        assert_eq!(apply_word(&W2, &StepWord::empty(), &unit), unit);

        // On Y_2 the order matters: LR at the empty diagram returns to it, RL kills it.
        let y = YoungLattice { d: 2 };
        let e = StateVector::unit(YoungDiagram::empty());
        assert_eq!(apply_word(&y, &lr, &e), e);
        assert!(apply_word(&y, &rl, &e).is_zero());
    }

    #[test]
    fn refined_count_examples() {
        let rho = Configuration::ground_state(2);
        assert_eq!(
            refined_count(&W2, &StepWord::down_after_up(1, 1), &rho, &rho).unwrap(),
            big(1)
        );
        assert_eq!(
            refined_count(&W2, &StepWord::down_after_up(2, 2), &rho, &rho).unwrap(),
            big(2)
        );
        let y = YoungLattice { d: 2 };
        assert_eq!(
            refined_count(
                &y,
                &StepWord::power(Step::Raise, 2),
                &YoungDiagram::empty(),
                &YoungDiagram::rectangle(2, 1)
            )
            .unwrap(),
            big(1)
        );
        // degree bookkeeping
        assert_eq!(
            refined_count(&W2, &StepWord::power(Step::Raise, 3), &rho, &rho).unwrap(),
            big(0)
        );
        assert!(refined_count(&W2, &StepWord::empty(), &c(&[3, 2, 1]), &rho).is_err());
    }

    #[test]
    fn commutator_examples() {
        assert!(commutator_residual(&W2, &StateVector::unit(c(&[2, 1]))).is_zero());
        let w3 = WeylLattice { d: 3 };
        assert!(commutator_residual(&w3, &StateVector::unit(c(&[5, 2, 1]))).is_zero());
        assert!(commutator_residual(&W2, &StateVector::zero()).is_zero());
    }

    #[test]
    fn diagonal_coefficient_counts_distinct_shifted_entries() {
        // rho: mu - rho = (0,0) has one distinct entry
        let rho = Configuration::ground_state(2);
        let lr = apply_word(&W2, &"LR".parse().unwrap(), &StateVector::unit(rho.clone()));
        assert_eq!(lr.coefficient(&rho), big(1));
        // (5,2,1) - rho = (2,0,0): two distinct entries
        let w3 = WeylLattice { d: 3 };
        let mu = c(&[5, 2, 1]);
        let lr = apply_word(&w3, &"LR".parse().unwrap(), &StateVector::unit(mu.clone()));
        assert_eq!(lr.coefficient(&mu), big(2));
    }

    #[test]
    fn word_parsing() {
        let w: StepWord = "LLRR".parse().unwrap();
        assert_eq!(w, StepWord::down_after_up(2, 2));
        assert_eq!(w.to_string(), "LLRR");
        assert_eq!(StepWord::from_blocks(&[(1, 2), (3, 0)]).to_string(), "RRRLLR");
        assert!("LXR".parse::<StepWord>().is_err());
    }

    #[test]
    fn add_term_cancels_to_zero() {
        let mut s = StateVector::unit(c(&[2, 1]));
        s.add_term(c(&[2, 1]), big(-1));
        assert!(s.is_zero());
    }
}
