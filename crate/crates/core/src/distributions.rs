//! Finite-support strategies and their convolution.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::game::Interval;
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// A probability distribution on `[0, budget]` with finitely many atoms.
///
/// Atom locations are strictly increasing, weights are positive and sum to
/// exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicStrategy {
    budget: Rational,
    atoms: Vec<(Rational, Rational)>,
}

impl AtomicStrategy {
    /// Validates the atoms as given (sorted, no duplicates).
    pub fn new(budget: Rational, atoms: Vec<(Rational, Rational)>) -> Result<Self> {
        let invalid = |msg: &str| Err(Error::InvalidStrategy(msg.into()));
        if budget.is_negative() {
            return invalid("budget must be >= 0");
        }
        if atoms.is_empty() {
            return invalid("at least one atom is required (weights sum to 1)");
        }
        let mut total = Rational::zero();
        for (i, (x, w)) in atoms.iter().enumerate() {
            if x.is_negative() || *x > budget {
                return Err(Error::InvalidStrategy(format!(
                    "atom location {x} outside [0, {budget}] (0 <= location <= budget)"
                )));
            }
            if i > 0 && atoms[i - 1].0 >= *x {
                return invalid("locations must be strictly increasing");
            }
            if !w.is_positive() {
                return Err(Error::InvalidStrategy(format!(
                    "atom weight {w} at {x} is not positive (weights > 0)"
                )));
            }
            total += w;
        }
        if !total.is_one() {
            return Err(Error::InvalidStrategy(format!(
                "weights sum to {total}, expected 1 (invariant: weights sum to 1)"
            )));
        }
        Ok(Self { budget, atoms })
    }

    /// Sorts, merges coinciding locations and drops zero weights before
    /// validating.
    pub fn from_unsorted(
        budget: Rational,
        atoms: impl IntoIterator<Item = (Rational, Rational)>,
    ) -> Result<Self> {
        let mut merged: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (x, w) in atoms {
            *merged.entry(x).or_insert_with(Rational::zero) += w;
        }
        let atoms = merged.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        Self::new(budget, atoms)
    }

    /// All mass at `x`.
    pub fn dirac(budget: Rational, x: Rational) -> Result<Self> {
        Self::new(budget, vec![(x, Rational::one())])
    }

    pub fn budget(&self) -> &Rational {
        &self.budget
    }

    pub fn atoms(&self) -> &[(Rational, Rational)] {
        &self.atoms
    }

    pub fn locations(&self) -> impl Iterator<Item = &Rational> {
        self.atoms.iter().map(|(x, _)| x)
    }

    pub fn mass_in(&self, interval: &Interval) -> Rational {
        self.atoms
            .iter()
            .filter(|(x, _)| interval.contains(x))
            .map(|(_, w)| w)
            .sum()
    }

    pub fn mass_at(&self, x: &Rational) -> Rational {
        match self.atoms.binary_search_by(|(a, _)| a.cmp(x)) {
            Ok(i) => self.atoms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Same distribution with a different support bound.
    pub fn with_budget(&self, budget: Rational) -> Result<Self> {
        Self::new(budget, self.atoms.clone())
    }

    /// Embeds the strategy into the integer game, if every atom sits on an
    /// integer and the budget is integral.
    pub fn to_int_strategy(&self) -> Option<IntStrategy> {
        let budget = rational::to_u64(&self.budget)?;
        let mut probs = vec![Rational::zero(); budget as usize + 1];
        for (x, w) in &self.atoms {
            probs[rational::to_u64(x)? as usize] = w.clone();
        }
        Some(IntStrategy { probs })
    }
}

/// `F(x)`: mass of atoms at locations `<= x`.
pub fn cdf(f: &AtomicStrategy, x: &Rational) -> Rational {
    let n = f.atoms.partition_point(|(a, _)| a <= x);
    f.atoms[..n].iter().map(|(_, w)| w).sum()
}

/// `F(x-)`: mass of atoms at locations `< x`.
pub fn cdf_left(f: &AtomicStrategy, x: &Rational) -> Rational {
    let n = f.atoms.partition_point(|(a, _)| a < x);
    f.atoms[..n].iter().map(|(_, w)| w).sum()
}

/// Distribution of the sum of independent draws from `f1` and `f2`.
pub fn convolve(f1: &AtomicStrategy, f2: &AtomicStrategy) -> AtomicStrategy {
    let mut merged: BTreeMap<Rational, Rational> = BTreeMap::new();
    for (x1, w1) in &f1.atoms {
        for (x2, w2) in &f2.atoms {
            *merged.entry(x1 + x2).or_insert_with(Rational::zero) += w1 * w2;
        }
    }
    AtomicStrategy {
        budget: &f1.budget + &f2.budget,
        atoms: merged.into_iter().collect(),
    }
}

/// Probability vector over the integer allocations `{0, .., budget}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntStrategy {
    probs: Vec<Rational>,
}

impl IntStrategy {
    /// `probs[k]` is the probability of allocating `k`; the budget is
    /// `probs.len() - 1`.
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidStrategy("probability vector is empty".into()));
        }
        if probs.iter().any(Signed::is_negative) {
            return Err(Error::InvalidStrategy("probabilities must be >= 0".into()));
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidStrategy(format!(
                "probabilities sum to {total}; they must sum to 1"
            )));
        }
        Ok(Self { probs })
    }

    pub fn dirac(budget: u64, k: u64) -> Self {
        assert!(k <= budget, "allocation {k} exceeds budget {budget}");
        let mut probs = vec![Rational::zero(); budget as usize + 1];
        probs[k as usize] = Rational::one();
        Self { probs }
    }

    pub fn uniform(budget: u64) -> Self {
        let p = Rational::new(1.into(), (budget + 1).into());
        Self {
            probs: vec![p; budget as usize + 1],
        }
    }

    pub fn budget(&self) -> u64 {
        self.probs.len() as u64 - 1
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn into_probs(self) -> Vec<Rational> {
        self.probs
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, _)| k)
    }

    pub fn to_atomic(&self) -> AtomicStrategy {
        let atoms = self
            .probs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(k, p)| (rational::uint(k as u64), p.clone()))
            .collect();
        AtomicStrategy {
            budget: rational::uint(self.budget()),
            atoms,
        }
    }
}

/// Discrete convolution; the result has budget `p.budget() + q.budget()`.
pub fn convolve_int(p: &IntStrategy, q: &IntStrategy) -> IntStrategy {
    let mut out = vec![Rational::zero(); p.probs.len() + q.probs.len() - 1];
    for (i, a) in p.probs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.probs.iter().enumerate() {
            if !b.is_zero() {
                out[i + j] += a * b;
            }
        }
    }
    IntStrategy { probs: out }
}
