//! The integer version of the game: exact centralized LP, exact best-response
//! slices, the multistart alternating lower-bound solver for the distributed
//! value, and a brute-force grid oracle for tiny instances.
//!
//! With one sub-player's strategy fixed, the team payoff is linear in the
//! other's, so each best response is an exact matrix-game LP. Alternating
//! them never decreases the exact value, and the value of any profile is a
//! certified lower bound on the distributed security value.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::construct::{band_containing, comb_distributed};
use crate::distributions::{convolve_int, IntStrategy};
use crate::game::{partition_of, GameConfig};
use crate::lp::solve_matrix_game_scaled;
use crate::rational::{self, Rational};
use crate::rng::SeededRng;
use crate::{Error, Result};

/// `entries[t][e] = W(t, e) + W(B - t, E - e)` for integer allocations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PayoffMatrix {
    b: u64,
    e: u64,
    /// Twice the payoff, so every entry is an integer in `0..=4`.
    doubled: Vec<Vec<u8>>,
}

fn doubled_share(x: u64, y: u64) -> u8 {
    match x.cmp(&y) {
        core::cmp::Ordering::Greater => 2,
        core::cmp::Ordering::Equal => 1,
        core::cmp::Ordering::Less => 0,
    }
}

impl PayoffMatrix {
    pub fn new(b: u64, e: u64) -> Self {
        let doubled = (0..=b)
            .map(|t| {
                (0..=e)
                    .map(|x| doubled_share(t, x) + doubled_share(b - t, e - x))
                    .collect()
            })
            .collect();
        Self { b, e, doubled }
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn entry(&self, t: u64, e: u64) -> Rational {
        Rational::new(self.doubled[t as usize][e as usize].into(), 2.into())
    }

    /// Expected payoff per enemy allocation of a team strategy over `0..=B`.
    fn payoff_row(&self, team: &IntStrategy) -> Vec<Rational> {
        let (scaled, denom) = common_denominator(team.probs());
        let denom = denom * BigInt::from(2);
        (0..=self.e as usize)
            .map(|x| {
                let sum: BigInt = scaled
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| !n.is_zero())
                    .map(|(t, n)| n * BigInt::from(self.doubled[t][x]))
                    .sum();
                Rational::new(sum, denom.clone())
            })
            .collect()
    }

    /// Payoff matrix of the slice where `fixed` is one sub-player's strategy
    /// and rows are the other sub-player's allocations `0..=free_budget`,
    /// as integer numerators over a common denominator.
    fn slice(&self, fixed: &IntStrategy, free_budget: u64) -> (Vec<Vec<BigInt>>, BigInt) {
        let (scaled, denom) = common_denominator(fixed.probs());
        let support: Vec<(usize, &BigInt)> = scaled
            .iter()
            .enumerate()
            .filter(|(_, n)| !n.is_zero())
            .collect();
        let rows = (0..=free_budget as usize)
            .map(|k| {
                (0..=self.e as usize)
                    .map(|x| {
                        support
                            .iter()
                            .map(|&(j, n)| n * BigInt::from(self.doubled[j + k][x]))
                            .sum()
                    })
                    .collect()
            })
            .collect();
        (rows, denom * BigInt::from(2))
    }
}

/// Numerators over the least common denominator.
fn common_denominator(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let denom = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled = values
        .iter()
        .map(|v| v.numer() * (&denom / v.denom()))
        .collect();
    (scaled, denom)
}

/// Which sub-player a best response is computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    One,
    Two,
}

/// Exact security value of the centralized integer game and an optimal
/// team strategy.
pub fn centralized_value_int(b: u64, e: u64) -> Result<(Rational, IntStrategy)> {
    let pm = PayoffMatrix::new(b, e);
    best_response_lp(&pm, &IntStrategy::dirac(0, 0), Side::Two, b)
}

/// Exact optimum of the slice where the sub-player opposite `side` plays
/// `fixed` and the `side` sub-player has budget `free_budget`.
///
/// The convolution is symmetric, so `side` only labels the result.
pub fn best_response_lp(
    pm: &PayoffMatrix,
    fixed: &IntStrategy,
    side: Side,
    free_budget: u64,
) -> Result<(Rational, IntStrategy)> {
    let _ = side;
    if fixed.budget() + free_budget != pm.b {
        return Err(Error::DimensionMismatch(format!(
            "fixed budget {} + free budget {free_budget} != B = {}",
            fixed.budget(),
            pm.b
        )));
    }
    let (rows, denom) = pm.slice(fixed, free_budget);
    let sol = solve_matrix_game_scaled(&rows, &denom)?;
    Ok((sol.value, IntStrategy::new(sol.row_strategy)?))
}

/// `min_e sum_t (F1 * F2)_t entries[t][e]`, exactly.
pub fn eval_value_int(pm: &PayoffMatrix, f1: &IntStrategy, f2: &IntStrategy) -> Result<Rational> {
    if f1.budget() + f2.budget() != pm.b {
        return Err(Error::DimensionMismatch(format!(
            "budgets {} + {} != B = {}",
            f1.budget(),
            f2.budget(),
            pm.b
        )));
    }
    let team = convolve_int(f1, f2);
    Ok(pm
        .payoff_row(&team)
        .into_iter()
        .min()
        .expect("E + 1 >= 1 columns"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Random starts, in addition to the fixed warm starts.
    pub starts: u64,
    pub seed: u64,
    /// Stop a start once a full round improves the value by at most `tol`.
    pub tol: Rational,
    /// Best-response LPs per start.
    pub max_iterations: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            starts: 64,
            seed: 0,
            tol: Rational::zero(),
            max_iterations: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartKind {
    /// `F1 = δ(0)`, `F2` the centralized optimum folded onto `0..=B2`.
    CentralizedSplit,
    /// The comb factorization, when `B1` lies in a band.
    Comb,
    Uniform,
    Random,
}

/// Result of one start of the alternating scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StartOutcome {
    pub index: usize,
    pub kind: StartKind,
    pub value: Rational,
    pub f1: IntStrategy,
    pub f2: IntStrategy,
    pub iterations: u64,
    /// Exact value after initialization and after every best response.
    pub trace: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    /// Exact value of `(f1, f2)`; a lower bound on the distributed value.
    pub lower_bound: Rational,
    pub f1: IntStrategy,
    pub f2: IntStrategy,
    pub starts_used: u64,
    /// Best-response LPs over all starts.
    pub iterations: u64,
    pub seed: u64,
    pub best_start: usize,
    pub best_kind: StartKind,
}

/// A prepared distributed instance whose starts can be run independently
/// (and concurrently) and then reduced with [`DistributedProblem::reduce`].
#[derive(Debug, Clone)]
pub struct DistributedProblem {
    pm: PayoffMatrix,
    b1: u64,
    b2: u64,
    centralized: (Rational, IntStrategy),
    warm: Vec<(StartKind, IntStrategy, IntStrategy)>,
}

impl DistributedProblem {
    pub fn new(b: u64, e: u64, b1: u64) -> Result<Self> {
        if 2 * b1 > b {
            return Err(Error::BadDivision { b1, b });
        }
        let b2 = b - b1;
        let pm = PayoffMatrix::new(b, e);
        let centralized = best_response_lp(&pm, &IntStrategy::dirac(0, 0), Side::Two, b)?;

        let mut warm = Vec::new();
        let mut folded = centralized.1.probs()[..=b2 as usize].to_vec();
        let tail: Rational = centralized.1.probs()[b2 as usize + 1..].iter().sum();
        folded[b2 as usize] += tail;
        warm.push((
            StartKind::CentralizedSplit,
            IntStrategy::dirac(b1, 0),
            IntStrategy::new(folded)?,
        ));
        if let Some((_, f1, f2)) = integer_comb(b, e, b1)? {
            warm.push((StartKind::Comb, f1, f2));
        }
        warm.push((
            StartKind::Uniform,
            IntStrategy::uniform(b1),
            IntStrategy::uniform(b2),
        ));
        Ok(Self {
            pm,
            b1,
            b2,
            centralized,
            warm,
        })
    }

    pub fn payoff(&self) -> &PayoffMatrix {
        &self.pm
    }

    pub fn centralized(&self) -> &(Rational, IntStrategy) {
        &self.centralized
    }

    pub fn start_count(&self, cfg: &SolverConfig) -> usize {
        self.warm.len() + cfg.starts as usize
    }

    /// Exact best response, snapped to the coarsest grid on which it still
    /// improves on `current` (or matches it when the exact response does).
    /// Without snapping, denominators compound from round to round. `None`
    /// means even the finest grid loses the improvement, which is then below
    /// the snapping resolution; the start counts as converged. The returned
    /// value is always the exact value of the returned profile.
    fn respond(
        &self,
        fixed: &IntStrategy,
        side: Side,
        current: Option<&Rational>,
    ) -> Result<Option<(Rational, IntStrategy)>> {
        let free = match side {
            Side::One => self.b1,
            Side::Two => self.b2,
        };
        let (v, best) = best_response_lp(&self.pm, fixed, side, free)?;
        for grid in SNAP_GRIDS {
            let snapped = snap(&best, grid);
            if snapped == best {
                return Ok(Some((v, best)));
            }
            let sv = eval_value_int(&self.pm, fixed, &snapped)?;
            let accept = match current {
                None => true,
                Some(c) if v > *c => sv > *c,
                Some(c) => sv >= *c,
            };
            if accept {
                return Ok(Some((sv, snapped)));
            }
        }
        Ok(None)
    }

    /// Runs start `index`: warm starts first, then seeded random ones.
    pub fn run_start(&self, index: usize, cfg: &SolverConfig) -> Result<StartOutcome> {
        let mut iterations = 0;
        let mut trace = Vec::new();
        let (kind, mut f1, mut f2, mut value) = match self.warm.get(index) {
            Some((kind, f1, f2)) => {
                let v = eval_value_int(&self.pm, f1, f2)?;
                (*kind, f1.clone(), f2.clone(), v)
            }
            None => {
                let mut rng = SeededRng::new(cfg.seed, index as u64);
                let f1 = IntStrategy::new(rng.simplex_point(self.b1 as usize + 1))?;
                let (v, f2) = self
                    .respond(&f1, Side::Two, None)?
                    .expect("no value to improve on");
                iterations += 1;
                (StartKind::Random, f1, f2, v)
            }
        };
        trace.push(value.clone());

        'rounds: loop {
            let before = value.clone();
            for side in [Side::One, Side::Two] {
                if iterations >= cfg.max_iterations {
                    break 'rounds;
                }
                let fixed = match side {
                    Side::One => &f2,
                    Side::Two => &f1,
                };
                let response = self.respond(fixed, side, Some(&value))?;
                iterations += 1;
                let Some((v, best)) = response else {
                    break 'rounds;
                };
                if v < value {
                    return Err(Error::Internal(format!(
                        "best response decreased the value from {value} to {v}"
                    )));
                }
                match side {
                    Side::One => f1 = best,
                    Side::Two => f2 = best,
                }
                value = v;
                trace.push(value.clone());
            }
            if &value - &before <= cfg.tol {
                break;
            }
        }
        Ok(StartOutcome {
            index,
            kind,
            value,
            f1,
            f2,
            iterations,
            trace,
        })
    }

    /// Best start by value, ties to the lowest index; re-verifies the
    /// winning profile exactly.
    pub fn reduce(
        &self,
        outcomes: impl IntoIterator<Item = StartOutcome>,
        cfg: &SolverConfig,
    ) -> Result<SolveResult> {
        let mut best: Option<StartOutcome> = None;
        let mut iterations = 0;
        let mut starts_used = 0;
        for o in outcomes {
            iterations += o.iterations;
            starts_used += 1;
            let better = match &best {
                None => true,
                Some(b) => o.value > b.value || (o.value == b.value && o.index < b.index),
            };
            if better {
                best = Some(o);
            }
        }
        let best = best.ok_or_else(|| Error::Internal("no starts were run".into()))?;
        let check = eval_value_int(&self.pm, &best.f1, &best.f2)?;
        if check != best.value {
            return Err(Error::Internal(format!(
                "profile value {check} differs from tracked value {}",
                best.value
            )));
        }
        if best.value > self.centralized.0 {
            return Err(Error::Internal(format!(
                "distributed value {} exceeds the centralized value {}",
                best.value, self.centralized.0
            )));
        }
        Ok(SolveResult {
            lower_bound: best.value,
            f1: best.f1,
            f2: best.f2,
            starts_used,
            iterations,
            seed: cfg.seed,
            best_start: best.index,
            best_kind: best.kind,
        })
    }
}

const SNAP_GRIDS: [u64; 3] = [10_000, 1_000_000, 100_000_000];

/// Largest-remainder rounding of `p` to multiples of `1 / grid`; atoms with
/// zero probability stay at zero.
fn snap(p: &IntStrategy, grid: u64) -> IntStrategy {
    let g = BigInt::from(grid);
    let mut units = Vec::with_capacity(p.probs().len());
    let mut fracs = Vec::new();
    for (i, q) in p.probs().iter().enumerate() {
        let scaled = q * Rational::from_integer(g.clone());
        let floor = scaled.floor();
        let frac = &scaled - &floor;
        if !frac.is_zero() {
            fracs.push((frac, i));
        }
        units.push(floor.to_integer());
    }
    let total: BigInt = units.iter().sum();
    let missing = usize::try_from(&g - total).expect("floors lose less than one unit per atom");
    fracs.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for (_, i) in fracs.into_iter().take(missing) {
        units[i] += 1;
    }
    let probs = units
        .into_iter()
        .map(|u| Rational::new(u, g.clone()))
        .collect();
    IntStrategy::new(probs).expect("rounding preserves total mass")
}

/// The comb factorization as integer strategies, with its factor `k1`, when
/// `B1` lies in a band of the continuous game with the same budgets.
pub fn integer_comb(b: u64, e: u64, b1: u64) -> Result<Option<(u64, IntStrategy, IntStrategy)>> {
    if b >= e || b == 0 {
        return Ok(None);
    }
    let cfg = GameConfig::from_ints(b as i64, e as i64)?;
    let pi = partition_of(&cfg)?;
    let b1r = rational::uint(b1);
    let Some(band) = band_containing(&pi, &b1r) else {
        return Ok(None);
    };
    let (f1, f2) = comb_distributed(&pi, band.k1, &b1r)?;
    match (f1.to_int_strategy(), f2.to_int_strategy()) {
        (Some(f1), Some(f2)) => Ok(Some((band.k1, f1, f2))),
        _ => Err(Error::Internal(
            "integer budgets give integer comb atoms".into(),
        )),
    }
}

/// Multistart alternating best responses; returns the best profile found,
/// whose exact value is a lower bound on the integer game's distributed
/// security value.
pub fn solve_distributed(b: u64, e: u64, b1: u64, cfg: &SolverConfig) -> Result<SolveResult> {
    let problem = DistributedProblem::new(b, e, b1)?;
    let outcomes = (0..problem.start_count(cfg))
        .map(|i| problem.run_start(i, cfg))
        .collect::<Result<Vec<_>>>()?;
    problem.reduce(outcomes, cfg)
}

/// Grid oracle: enumerates `F1` on `{k / resolution}` over the simplex of
/// `0..=B1` and solves each `F2` slice exactly. A valid lower bound, within
/// `2 (B1 + 1) / resolution` of the optimum.
pub fn oracle_grid(b: u64, e: u64, b1: u64, resolution: u64) -> Result<Rational> {
    if b1 > 3 {
        return Err(Error::TooLarge(b1));
    }
    if b1 > b || resolution == 0 {
        return Err(Error::DimensionMismatch(format!(
            "need B1 <= B and resolution > 0 (B1 = {b1}, B = {b}, resolution = {resolution})"
        )));
    }
    let pm = PayoffMatrix::new(b, e);
    let b2 = b - b1;
    let denom = BigInt::from(resolution);
    let mut best: Option<Rational> = None;
    let mut parts = vec![0u64; b1 as usize + 1];
    let mut visit = |parts: &[u64]| -> Result<()> {
        let probs = parts
            .iter()
            .map(|&k| Rational::new(k.into(), denom.clone()))
            .collect();
        let (v, _) = best_response_lp(&pm, &IntStrategy::new(probs)?, Side::Two, b2)?;
        if best.as_ref().is_none_or(|bv| v > *bv) {
            best = Some(v);
        }
        Ok(())
    };
    compositions(resolution, 0, &mut parts, &mut visit)?;
    Ok(best.expect("at least one grid point"))
}

/// All ways to write `remaining` as an ordered sum over `parts[pos..]`.
fn compositions(
    remaining: u64,
    pos: usize,
    parts: &mut [u64],
    visit: &mut impl FnMut(&[u64]) -> Result<()>,
) -> Result<()> {
    if pos + 1 == parts.len() {
        parts[pos] = remaining;
        return visit(parts);
    }
    for k in 0..=remaining {
        parts[pos] = k;
        compositions(remaining - k, pos + 1, parts, visit)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn probs(v: &[(i64, i64)]) -> IntStrategy {
        IntStrategy::new(v.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    #[test]
    fn payoff_entries() {
        let pm = PayoffMatrix::new(36, 50);
        assert_eq!(pm.entry(0, 0), rat(1, 2));
        assert_eq!(pm.entry(36, 0), int(1));
        let allowed = [int(0), rat(1, 2), int(1), rat(3, 2), int(2)];
        for t in 0..=36 {
            for e in 0..=50 {
                assert!(allowed.contains(&pm.entry(t, e)));
            }
        }
    }

    #[test]
    fn centralized_small_cases() {
        assert_eq!(centralized_value_int(0, 1).unwrap().0, rat(1, 2));
        assert_eq!(centralized_value_int(4, 4).unwrap().0, int(1));
        let (v, p) = centralized_value_int(36, 50).unwrap();
        assert!(v >= rat(2, 3));
        let pm = PayoffMatrix::new(36, 50);
        assert_eq!(
            eval_value_int(&pm, &IntStrategy::dirac(0, 0), &p).unwrap(),
            v
        );
    }

    #[test]
    fn eval_examples() {
        let pm = PayoffMatrix::new(2, 2);
        let d = IntStrategy::dirac(1, 0);
        assert_eq!(eval_value_int(&pm, &d, &d).unwrap(), int(1));
        let pm3 = PayoffMatrix::new(2, 3);
        assert_eq!(eval_value_int(&pm3, &d, &d).unwrap(), rat(1, 2));
        assert!(eval_value_int(&pm, &d, &IntStrategy::dirac(2, 0)).is_err());
    }

    #[test]
    fn best_response_reduces_to_centralized() {
        let pm = PayoffMatrix::new(10, 13);
        let (v, _) = best_response_lp(&pm, &IntStrategy::dirac(0, 0), Side::One, 10).unwrap();
        assert_eq!(v, centralized_value_int(10, 13).unwrap().0);
    }

    #[test]
    fn best_response_slice_vertex_enumeration() {
        // 3-variable slice: optimum over the simplex is attained at a vertex
        // of {q : q·G[., e] >= z}; check against a fine exhaustive grid of q,
        // which includes every vertex with denominator dividing 60
        let pm = PayoffMatrix::new(4, 6);
        let fixed = IntStrategy::uniform(2);
        let (v, q) = best_response_lp(&pm, &fixed, Side::One, 2).unwrap();
        assert_eq!(eval_value_int(&pm, &q, &fixed).unwrap(), v);
        let mut grid_best = int(-1);
        for a in 0..=60i64 {
            for b in 0..=60 - a {
                let cand = probs(&[(a, 60), (b, 60), (60 - a - b, 60)]);
                let val = eval_value_int(&pm, &cand, &fixed).unwrap();
                if val > grid_best {
                    grid_best = val;
                }
            }
        }
        assert_eq!(v, grid_best);
    }

    #[test]
    fn bad_division() {
        assert!(matches!(
            solve_distributed(10, 12, 6, &SolverConfig::default()),
            Err(Error::BadDivision { .. })
        ));
        assert!(matches!(
            oracle_grid(10, 12, 4, 10),
            Err(Error::TooLarge(4))
        ));
    }

    #[test]
    fn zero_division_is_centralized() {
        let cfg = SolverConfig {
            starts: 4,
            ..SolverConfig::default()
        };
        let r = solve_distributed(12, 17, 0, &cfg).unwrap();
        assert_eq!(r.lower_bound, centralized_value_int(12, 17).unwrap().0);
    }

    #[test]
    fn traces_are_monotone_and_consistent() {
        let cfg = SolverConfig {
            starts: 6,
            seed: 3,
            ..SolverConfig::default()
        };
        let problem = DistributedProblem::new(10, 13, 3).unwrap();
        let mut outcomes = Vec::new();
        for i in 0..problem.start_count(&cfg) {
            let o = problem.run_start(i, &cfg).unwrap();
            assert!(o.trace.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(
                eval_value_int(problem.payoff(), &o.f1, &o.f2).unwrap(),
                o.value
            );
            outcomes.push(o);
        }
        let r = problem.reduce(outcomes.clone(), &cfg).unwrap();
        assert!(r.lower_bound <= problem.centralized().0);
        assert_eq!(r, problem.reduce(outcomes.into_iter().rev(), &cfg).unwrap());
        assert_eq!(r, solve_distributed(10, 13, 3, &cfg).unwrap());
    }

    #[test]
    fn oracle_zero_division() {
        assert_eq!(
            oracle_grid(4, 6, 0, 5).unwrap(),
            centralized_value_int(4, 6).unwrap().0
        );
    }
}
