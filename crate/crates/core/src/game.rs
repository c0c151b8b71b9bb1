//! Game configuration and the partition data derived from the budgets.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Budgets and battlefield values of a two-battlefield game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameConfig {
    b: Rational,
    e: Rational,
    v1: Rational,
    v2: Rational,
}

impl GameConfig {
    /// Unit battlefield values.
    pub fn new(b: Rational, e: Rational) -> Result<Self> {
        Self::with_values(b, e, rational::one(), rational::one())
    }

    pub fn with_values(b: Rational, e: Rational, v1: Rational, v2: Rational) -> Result<Self> {
        if !b.is_positive() {
            return Err(Error::InvalidConfig("team budget B must be > 0"));
        }
        if !e.is_positive() {
            return Err(Error::InvalidConfig("enemy budget E must be > 0"));
        }
        if v1.is_negative() || v2.is_negative() {
            return Err(Error::InvalidConfig("battlefield values must be >= 0"));
        }
        Ok(Self { b, e, v1, v2 })
    }

    /// Shorthand for integer budgets with unit values.
    pub fn from_ints(b: i64, e: i64) -> Result<Self> {
        Self::new(rational::int(b), rational::int(e))
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn e(&self) -> &Rational {
        &self.e
    }

    pub fn v1(&self) -> &Rational {
        &self.v1
    }

    pub fn v2(&self) -> &Rational {
        &self.v2
    }

    pub fn has_unit_values(&self) -> bool {
        self.v1.is_one() && self.v2.is_one()
    }
}

/// Interval of the real line with explicit endpoint closedness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Self {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    /// `(lo, hi]`
    pub fn left_open(lo: Rational, hi: Rational) -> Self {
        Self {
            lo,
            hi,
            lo_closed: false,
            hi_closed: true,
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed {
            *x >= self.lo
        } else {
            *x > self.lo
        };
        let below = if self.hi_closed {
            *x <= self.hi
        } else {
            *x < self.hi
        };
        above && below
    }

    pub fn closure(&self) -> Self {
        Self::closed(self.lo.clone(), self.hi.clone())
    }

    pub fn len(&self) -> Rational {
        &self.hi - &self.lo
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// Partition index `m`, budget difference `d = E - B`, remainder
/// `r_B = B - (m-1)d`, and the intervals `I_1 .. I_m`.
///
/// The stored intervals follow the printed definition: `I_1 = [0, r_B]`,
/// `I_j = ((j-1)d, (j-1)d + r_B]` for `j >= 2`. See
/// [`crate::security::Reading`] for how the checkers use them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInfo {
    pub b: Rational,
    pub e: Rational,
    pub m: u64,
    pub d: Rational,
    pub r_b: Rational,
    pub intervals: Vec<Interval>,
}

impl PartitionInfo {
    /// `r_B = d`, i.e. `B/E = m/(m+1)` exactly.
    pub fn is_boundary(&self) -> bool {
        self.r_b == self.d
    }

    /// Left endpoint `(j-1)d` of `I_j` (1-based `j`).
    pub fn interval_lo(&self, j: u64) -> Rational {
        &self.d * rational::uint(j - 1)
    }

    pub fn closed_intervals(&self) -> Vec<Interval> {
        self.intervals.iter().map(Interval::closure).collect()
    }
}

/// Partition data for `B < E`.
///
/// `m` is the unique integer with `(m-1)/m < B/E <= m/(m+1)`, equivalently
/// `(m-1)d < B <= md`, so `m = ceil(B/d)`.
pub fn partition_of(cfg: &GameConfig) -> Result<PartitionInfo> {
    let (b, e) = (cfg.b(), cfg.e());
    if b >= e {
        return Err(Error::BudgetOrder {
            b: b.clone(),
            e: e.clone(),
        });
    }
    let d = e - b;
    let m = rational::to_u64(&(b / &d).ceil())
        .ok_or(Error::InvalidConfig("partition index does not fit in u64"))?;
    debug_assert!(m >= 1);
    let r_b = b - &d * rational::uint(m - 1);
    debug_assert!(r_b.is_positive() && r_b <= d);

    let mut intervals = Vec::with_capacity(m as usize);
    intervals.push(Interval::closed(Rational::zero(), r_b.clone()));
    for j in 2..=m {
        let lo = &d * rational::uint(j - 1);
        let hi = &lo + &r_b;
        intervals.push(Interval::left_open(lo, hi));
    }
    Ok(PartitionInfo {
        b: b.clone(),
        e: e.clone(),
        m,
        d,
        r_b,
        intervals,
    })
}
