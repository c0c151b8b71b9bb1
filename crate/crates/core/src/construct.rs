//! Constructive strategies: the equal-mass comb, its factorization into two
//! sub-player combs, and a seeded sampler of product profiles whose
//! convolution satisfies SS-1 for divisions between the first two bands.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::distributions::{convolve, AtomicStrategy};
use crate::game::PartitionInfo;
use crate::rational::{self, Rational};
use crate::rng::SeededRng;
use crate::security::{check_ss1, Reading};
use crate::{Error, Result};

/// Mass `1/m` at each of `0, d, .., (m-1)d`.
pub fn comb_centralized(pi: &PartitionInfo) -> AtomicStrategy {
    let w = Rational::new(1.into(), pi.m.into());
    let atoms = (0..pi.m)
        .map(|j| (&pi.d * rational::uint(j), w.clone()))
        .collect();
    AtomicStrategy::new(pi.b.clone(), atoms).expect("comb atoms lie in [0, (m-1)d] within [0, B]")
}

/// Divisions `B1` in `[(k1-1)d, (k1-1)d + r_B]` for a factor `k1` of `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Band {
    pub k1: u64,
    pub lo: Rational,
    pub hi: Rational,
    /// `min(hi, b_half)`: the part of the band inside `[0, b_half]`.
    pub usable_hi: Rational,
}

impl Band {
    pub fn is_clipped(&self) -> bool {
        self.usable_hi < self.hi
    }

    pub fn contains(&self, b1: &Rational) -> bool {
        *b1 >= self.lo && *b1 <= self.usable_hi
    }
}

fn factors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1;
    while k * k <= m {
        if m.is_multiple_of(k) {
            small.push(k);
            if k * k != m {
                large.push(m / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// One band per factor `k1` of `m` that reaches into `[0, b_half]`, sorted
/// by `lo`. Bands crossing `b_half` are clipped (see [`Band::usable_hi`]).
pub fn bands(pi: &PartitionInfo, b_half: &Rational) -> Vec<Band> {
    factors(pi.m)
        .into_iter()
        .map(|k1| {
            let lo = pi.interval_lo(k1);
            let hi = &lo + &pi.r_b;
            let usable_hi = rational::min(&hi, b_half);
            Band {
                k1,
                lo,
                hi,
                usable_hi,
            }
        })
        .filter(|band| band.lo <= *b_half)
        .collect()
}

/// The band containing `b1`, if any (bands are disjoint when `r_B < d`).
pub fn band_containing(pi: &PartitionInfo, b1: &Rational) -> Option<Band> {
    bands(pi, &(&pi.b / rational::int(2)))
        .into_iter()
        .find(|band| band.contains(b1))
}

/// Sub-player combs whose convolution is [`comb_centralized`]:
/// `F1` has `k1` atoms spaced `d`, `F2` has `m/k1` atoms spaced `k1·d`.
pub fn comb_distributed(
    pi: &PartitionInfo,
    k1: u64,
    b1: &Rational,
) -> Result<(AtomicStrategy, AtomicStrategy)> {
    if k1 == 0 || !pi.m.is_multiple_of(k1) {
        return Err(Error::NotAFactor { k1, m: pi.m });
    }
    let k2 = pi.m / k1;
    let lo = pi.interval_lo(k1);
    let hi = &lo + &pi.r_b;
    if *b1 < lo || *b1 > hi {
        return Err(Error::InfeasibleDivision {
            k1,
            b1: b1.clone(),
            lo,
            hi,
        });
    }
    let w1 = Rational::new(1.into(), k1.into());
    let w2 = Rational::new(1.into(), k2.into());
    let spacing2 = &pi.d * rational::uint(k1);
    let f1 = AtomicStrategy::new(
        b1.clone(),
        (0..k1)
            .map(|j| (&pi.d * rational::uint(j), w1.clone()))
            .collect(),
    )?;
    let f2 = AtomicStrategy::new(
        &pi.b - b1,
        (0..k2)
            .map(|j| (&spacing2 * rational::uint(j), w2.clone()))
            .collect(),
    )?;
    Ok((f1, f2))
}

/// A cluster of 1-3 atoms spanning `[start, start + width]` (width 0 for a
/// single atom) carrying `mass`.
fn cluster(
    rng: &mut SeededRng,
    start: Rational,
    width: &Rational,
    atoms: usize,
    mass: &Rational,
) -> Vec<(Rational, Rational)> {
    let end = &start + width;
    let mut locations = Vec::with_capacity(atoms);
    locations.push(start.clone());
    if atoms == 3 {
        locations.push(rng.interior_point(&start, &end));
    }
    if atoms >= 2 {
        locations.push(end);
    }
    locations
        .into_iter()
        .zip(rng.split_mass(mass, atoms))
        .collect()
}

/// Random atom count and a matching width drawn from `(0, max_width)`.
fn cluster_shape(rng: &mut SeededRng, max_width: &Rational) -> (usize, Rational) {
    let atoms = rng.int_in(1, 3) as usize;
    let width = if atoms == 1 {
        Rational::zero()
    } else {
        rng.interior_point(&Rational::zero(), max_width)
    };
    (atoms, width)
}

/// Seeded product profile `(F1, F2)` for even `m` and `B1` in `(d - r_B, d)`.
///
/// `F1` puts mass 1/2 on a cluster starting at 0 and 1/2 on a cluster ending
/// at `B1`. `F2` puts mass `2/m` on clusters `Q_i = [q_i, q_i + c_i]` with
/// `q_i` in `((2i-1)d - B1 + a_2, (2i-2)d + r_B - a_1 - c_i)`, so that
/// `P_1 + Q_i` lands in `I_{2i-1}` and `P_2 + Q_i` in `I_{2i}`. Cluster
/// widths are at most a quarter of the slack `B1 + r_B - d`. The
/// convolution satisfies SS-1 under both readings.
pub fn sample_ss1_profile(
    pi: &PartitionInfo,
    b1: &Rational,
    seed: u64,
) -> Result<(AtomicStrategy, AtomicStrategy)> {
    if !pi.m.is_multiple_of(2) {
        return Err(Error::InfeasibleGap(format!("m = {} must be even", pi.m)));
    }
    if pi.is_boundary() {
        return Err(Error::BoundaryCase);
    }
    let gap_lo = &pi.d - &pi.r_b;
    if *b1 <= gap_lo || *b1 >= pi.d {
        return Err(Error::InfeasibleGap(format!(
            "B1 = {b1} must lie in ({gap_lo}, {})",
            pi.d
        )));
    }
    let slack = b1 + &pi.r_b - &pi.d;
    debug_assert!(slack.is_positive());
    let quarter = &slack / rational::int(4);
    let mut rng = SeededRng::new(seed, 0);
    let half = rational::half();

    let (n1, a1) = cluster_shape(&mut rng, &quarter);
    let (n2, a2) = cluster_shape(&mut rng, &quarter);
    let mut f1_atoms = cluster(&mut rng, Rational::zero(), &a1, n1, &half);
    f1_atoms.extend(cluster(&mut rng, b1 - &a2, &a2, n2, &half));

    let clusters = pi.m / 2;
    let mass = Rational::new(2.into(), pi.m.into());
    let mut f2_atoms = Vec::new();
    for i in 1..=clusters {
        let (n, width) = cluster_shape(&mut rng, &quarter);
        let lo = &pi.d * rational::uint(2 * i - 1) - b1 + &a2;
        let hi = &pi.d * rational::uint(2 * i - 2) + &pi.r_b - &a1 - &width;
        if lo >= hi {
            return Err(Error::Internal(format!("empty placement window for Q_{i}")));
        }
        let start = rng.interior_point(&lo, &hi);
        f2_atoms.extend(cluster(&mut rng, start, &width, n, &mass));
    }

    let f1 = AtomicStrategy::from_unsorted(b1.clone(), f1_atoms)?;
    let f2 = AtomicStrategy::from_unsorted(&pi.b - b1, f2_atoms)?;
    let ss1 = check_ss1(pi, &convolve(&f1, &f2), Reading::Closed)?;
    if !ss1.ok {
        return Err(Error::Internal(format!(
            "sampled profile misses SS-1: {:?}",
            ss1.masses
        )));
    }
    Ok((f1, f2))
}
