//! Worst-case value of a finite-support team strategy against a continuous
//! enemy, and the mass-placement conditions that characterize centralized
//! security strategies.
//!
//! Against an enemy allocation `e`, an atom at `x` loses battlefield 1 when
//! `x < e` and battlefield 2 when `x > e - d`. The team payoff is therefore
//! piecewise constant in `e` with breakpoints at the atoms and at the atoms
//! shifted by `d`, so the infimum over `[0, E]` is a minimum over finitely
//! many candidates.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::analytic::{centralized_value, win_share};
use crate::distributions::{cdf, AtomicStrategy};
use crate::game::{partition_of, GameConfig, Interval, PartitionInfo};
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Where the enemy attains the minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A breakpoint allocation.
    Point(Rational),
    /// Any allocation in the open interval `(lo, hi)`.
    Open(Rational, Rational),
}

impl Witness {
    /// One concrete enemy allocation.
    pub fn representative(&self) -> Rational {
        match self {
            Witness::Point(e) => e.clone(),
            Witness::Open(lo, hi) => (lo + hi) / rational::int(2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueReport {
    pub value: Rational,
    pub witness: Witness,
    /// The payoff is piecewise constant with finitely many pieces on the
    /// closed interval `[0, E]`, so the infimum is always attained.
    pub attained: bool,
}

/// Expected team payoff of `f` against the enemy allocation `e`.
pub fn team_payoff(cfg: &GameConfig, f: &AtomicStrategy, e: &Rational) -> Rational {
    let (b, big_e) = (cfg.b(), cfg.e());
    let remaining = big_e - e;
    f.atoms()
        .iter()
        .map(|(x, w)| w * (win_share(x, e) + win_share(&(b - x), &remaining)))
        .sum()
}

fn check_inputs(cfg: &GameConfig, f: &AtomicStrategy) -> Result<()> {
    if !cfg.has_unit_values() {
        return Err(Error::UnsupportedValues {
            v1: cfg.v1().clone(),
            v2: cfg.v2().clone(),
        });
    }
    if cfg.b() >= cfg.e() {
        return Err(Error::BudgetOrder {
            b: cfg.b().clone(),
            e: cfg.e().clone(),
        });
    }
    if f.budget() != cfg.b() {
        return Err(Error::BudgetMismatch {
            expected: cfg.b().clone(),
            got: f.budget().clone(),
        });
    }
    Ok(())
}

/// `min_{e in [0, E]} U_B(F, e)`, evaluated exactly with tie shares.
pub fn value_of(cfg: &GameConfig, f: &AtomicStrategy) -> Result<ValueReport> {
    check_inputs(cfg, f)?;
    let big_e = cfg.e();
    let d = big_e - cfg.b();
    let zero = Rational::zero();

    let mut points: Vec<Rational> = Vec::with_capacity(2 * f.atoms().len() + 2);
    points.push(zero.clone());
    points.push(big_e.clone());
    for x in f.locations() {
        points.push(x.clone());
        points.push(x + &d);
    }
    points.retain(|p| *p >= zero && p <= big_e);
    points.sort();
    points.dedup();

    let mut best: Option<(Rational, Witness)> = None;
    let mut consider = |value: Rational, witness: Witness| {
        if best.as_ref().is_none_or(|(v, _)| value < *v) {
            best = Some((value, witness));
        }
    };
    for (i, p) in points.iter().enumerate() {
        consider(team_payoff(cfg, f, p), Witness::Point(p.clone()));
        if let Some(next) = points.get(i + 1) {
            let mid = (p + next) / rational::int(2);
            consider(
                team_payoff(cfg, f, &mid),
                Witness::Open(p.clone(), next.clone()),
            );
        }
    }
    let (value, witness) = best.expect("[0, E] always yields candidates");
    Ok(ValueReport {
        value,
        witness,
        attained: true,
    })
}

/// Enemy payoff `F(x) - F(x - d) + 1` written through the CDF.
///
/// Equals `2 - U_B(F, x)` only where neither `x` nor `x - d` carries an
/// atom; at atoms the tie shares are ignored.
pub fn enemy_payoff_cdf_form(f: &AtomicStrategy, x: &Rational, d: &Rational) -> Rational {
    cdf(f, x) - cdf(f, &(x - d)) + Rational::one()
}

/// How the interval conditions treat endpoints.
///
/// `Closed` uses the closures `[(j-1)d, (j-1)d + r_B]` and the window
/// `[0, x - d]` on the right side of SS-2. This is the reading under which
/// equal-mass combs spaced `d` apart pass, and under which the two conditions
/// are equivalent to `value_of == 1 - 1/m` for finite-support strategies.
///
/// `Strict` takes the intervals and the window `[0, x - d)` exactly as
/// printed (left-open `I_j` for `j >= 2`). Combs fail it because their atoms
/// sit on the open endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Reading {
    #[default]
    Closed,
    Strict,
}

impl Reading {
    pub fn intervals(self, pi: &PartitionInfo) -> Vec<Interval> {
        match self {
            Reading::Closed => pi.closed_intervals(),
            Reading::Strict => pi.intervals.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ss1Result {
    pub ok: bool,
    /// Mass of `I_1 .. I_m`.
    pub masses: Vec<Rational>,
    /// Mass outside every `I_j`.
    pub outside: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ss2Violation {
    /// 1-based; the pair compared is `I_{j+1}` against `I_j`.
    pub j: u64,
    pub x: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ss2Result {
    pub ok: bool,
    pub violation: Option<Ss2Violation>,
}

fn check_partition(pi: &PartitionInfo, f: &AtomicStrategy) -> Result<()> {
    if pi.is_boundary() {
        return Err(Error::BoundaryCase);
    }
    if *f.budget() != pi.b {
        return Err(Error::BudgetMismatch {
            expected: pi.b.clone(),
            got: f.budget().clone(),
        });
    }
    Ok(())
}

/// Every `I_j` must carry mass exactly `1/m`.
pub fn check_ss1(pi: &PartitionInfo, f: &AtomicStrategy, reading: Reading) -> Result<Ss1Result> {
    check_partition(pi, f)?;
    let target = Rational::new(1.into(), pi.m.into());
    let masses: Vec<Rational> = reading.intervals(pi).iter().map(|i| f.mass_in(i)).collect();
    let inside: Rational = masses.iter().sum();
    let ok = masses.iter().all(|w| *w == target);
    Ok(Ss1Result {
        ok,
        masses,
        outside: Rational::one() - inside,
    })
}

/// Mass of atoms in `interval` at locations `<= y` (or `< y`).
fn mass_upto(f: &AtomicStrategy, interval: &Interval, y: &Rational, inclusive: bool) -> Rational {
    f.atoms()
        .iter()
        .filter(|(x, _)| interval.contains(x) && if inclusive { x <= y } else { x < y })
        .map(|(_, w)| w)
        .sum()
}

/// For `j in [m-1]` and `x in I_{j+1}`:
/// `mass(I_{j+1} ∩ [0, x]) <= mass(I_j ∩ [0, x - d])` (closed reading) or
/// with `[0, x - d)` (strict reading).
///
/// The left side only jumps at atoms and the right side is nondecreasing in
/// `x`, so checking at the atom locations inside `I_{j+1}` is enough.
pub fn check_ss2(pi: &PartitionInfo, f: &AtomicStrategy, reading: Reading) -> Result<Ss2Result> {
    check_partition(pi, f)?;
    let intervals = reading.intervals(pi);
    let closed_rhs = reading == Reading::Closed;
    for (j, pair) in intervals.windows(2).enumerate() {
        let (lower, upper) = (&pair[0], &pair[1]);
        for x in f.locations().filter(|x| upper.contains(x)) {
            let lhs = mass_upto(f, upper, x, true);
            let rhs = mass_upto(f, lower, &(x - &pi.d), closed_rhs);
            if lhs > rhs {
                let violation = Ss2Violation {
                    j: j as u64 + 1,
                    x: x.clone(),
                    lhs,
                    rhs,
                };
                return Ok(Ss2Result {
                    ok: false,
                    violation: Some(violation),
                });
            }
        }
    }
    Ok(Ss2Result {
        ok: true,
        violation: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SsCheckReport {
    pub ss1_ok: bool,
    pub ss1_masses: Vec<Rational>,
    pub outside_mass: Rational,
    pub ss2_ok: bool,
    pub ss2_violation: Option<Ss2Violation>,
    pub value: ValueReport,
    pub centralized_value: Rational,
    /// `(ss1_ok && ss2_ok) == (value == centralized_value)`.
    pub agrees: bool,
}

impl SsCheckReport {
    pub fn is_security_strategy(&self) -> bool {
        self.ss1_ok && self.ss2_ok
    }
}

/// Runs both conditions and cross-checks them against [`value_of`].
pub fn is_security_strategy(
    cfg: &GameConfig,
    f: &AtomicStrategy,
    reading: Reading,
) -> Result<SsCheckReport> {
    let pi = partition_of(cfg)?;
    let ss1 = check_ss1(&pi, f, reading)?;
    let ss2 = check_ss2(&pi, f, reading)?;
    let value = value_of(cfg, f)?;
    let centralized = centralized_value(cfg)?;
    let agrees = (ss1.ok && ss2.ok) == (value.value == centralized);
    Ok(SsCheckReport {
        ss1_ok: ss1.ok,
        ss1_masses: ss1.masses,
        outside_mass: ss1.outside,
        ss2_ok: ss2.ok,
        ss2_violation: ss2.violation,
        value,
        centralized_value: centralized,
        agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::convolve;
    use crate::rational::{int, rat};
    use alloc::vec;
    use proptest::prelude::*;

    fn cfg(b: i64, e: i64) -> GameConfig {
        GameConfig::from_ints(b, e).unwrap()
    }

    fn comb(budget: i64, spacing: i64, count: i64) -> AtomicStrategy {
        AtomicStrategy::new(
            int(budget),
            (0..count)
                .map(|j| (int(j * spacing), rat(1, count)))
                .collect(),
        )
        .unwrap()
    }

    fn dirac(budget: i64, x: i64) -> AtomicStrategy {
        AtomicStrategy::dirac(int(budget), int(x)).unwrap()
    }

    /// Brute-force value over a fine rational grid of enemy allocations,
    /// including every breakpoint. Independent of the breakpoint logic.
    fn grid_value(c: &GameConfig, f: &AtomicStrategy, steps: i64) -> Rational {
        let e = c.e().clone();
        (0..=steps)
            .map(|k| &e * rat(k, steps))
            .map(|x| team_payoff(c, f, &x))
            .min()
            .unwrap()
    }

    #[test]
    fn value_examples() {
        let r = value_of(&cfg(36, 50), &dirac(36, 18)).unwrap();
        assert_eq!(r.value, int(0));
        let e = r.witness.representative();
        assert!(e > int(18) && e < int(32), "witness {e}");
        assert!(r.attained);

        assert_eq!(
            value_of(&cfg(36, 50), &comb(36, 14, 3)).unwrap().value,
            rat(2, 3)
        );
        assert_eq!(
            value_of(&cfg(42, 50), &comb(42, 8, 6)).unwrap().value,
            rat(5, 6)
        );
    }

    #[test]
    fn value_matches_grid_on_examples() {
        // grid step 50/4000 hits every integer and half-integer breakpoint
        for (c, f) in [
            (cfg(36, 50), dirac(36, 18)),
            (cfg(36, 50), comb(36, 14, 3)),
            (cfg(42, 50), comb(42, 8, 6)),
        ] {
            assert_eq!(value_of(&c, &f).unwrap().value, grid_value(&c, &f, 4000));
        }
    }

    #[test]
    fn value_input_errors() {
        assert!(matches!(
            value_of(&cfg(50, 50), &dirac(50, 1)),
            Err(Error::BudgetOrder { .. })
        ));
        assert!(matches!(
            value_of(&cfg(36, 50), &dirac(30, 1)),
            Err(Error::BudgetMismatch { .. })
        ));
    }

    #[test]
    fn cdf_form_examples() {
        let c = comb(36, 14, 3);
        assert_eq!(enemy_payoff_cdf_form(&c, &int(7), &int(14)), rat(4, 3));
        assert_eq!(enemy_payoff_cdf_form(&c, &int(-3), &int(14)), int(1));
        assert_eq!(
            enemy_payoff_cdf_form(&dirac(36, 0), &int(5), &int(14)),
            int(2)
        );
    }

    #[test]
    fn ss1_examples() {
        let pi = partition_of(&cfg(36, 50)).unwrap();
        let r = check_ss1(&pi, &comb(36, 14, 3), Reading::Closed).unwrap();
        assert!(r.ok);
        assert_eq!(r.masses, vec![rat(1, 3); 3]);
        assert_eq!(r.outside, int(0));

        let r = check_ss1(&pi, &dirac(36, 18), Reading::Closed).unwrap();
        assert!(!r.ok);
        assert_eq!(r.masses, vec![int(0), int(1), int(0)]);

        let two =
            AtomicStrategy::new(int(36), vec![(int(0), rat(1, 2)), (int(14), rat(1, 2))]).unwrap();
        let r = check_ss1(&pi, &two, Reading::Closed).unwrap();
        assert!(!r.ok);
        assert_eq!(r.masses[2], int(0));
    }

    #[test]
    fn strict_reading_rejects_combs() {
        let pi = partition_of(&cfg(36, 50)).unwrap();
        let f = comb(36, 14, 3);
        let r = check_ss1(&pi, &f, Reading::Strict).unwrap();
        assert!(!r.ok);
        assert_eq!(r.masses, vec![rat(1, 3), int(0), int(0)]);
        let v = check_ss2(&pi, &f, Reading::Strict).unwrap();
        assert!(v.ok, "no atom lies inside the left-open I_2, I_3");
        let closed = check_ss2(&pi, &f, Reading::Closed).unwrap();
        assert!(closed.ok);
    }

    #[test]
    fn ss2_examples() {
        let pi = partition_of(&cfg(36, 50)).unwrap();
        assert!(
            check_ss2(&pi, &comb(36, 14, 3), Reading::Closed)
                .unwrap()
                .ok
        );

        // (42, 50) with F1 = {0, 7} and F2 with clusters at 8.5-ish spacing:
        // SS-1 holds, SS-2 fails in the gap
        let pi = partition_of(&cfg(42, 50)).unwrap();
        let f1 =
            AtomicStrategy::new(int(7), vec![(int(0), rat(1, 2)), (int(7), rat(1, 2))]).unwrap();
        let f2 = AtomicStrategy::new(
            int(35),
            [rat(3, 2), rat(35, 2), rat(67, 2)]
                .into_iter()
                .map(|q| (q, rat(1, 3)))
                .collect(),
        )
        .unwrap();
        let fb = convolve(&f1, &f2);
        assert!(check_ss1(&pi, &fb, Reading::Closed).unwrap().ok);
        let r = check_ss2(&pi, &fb, Reading::Closed).unwrap();
        assert!(!r.ok);
        let v = r.violation.unwrap();
        assert!(v.lhs > v.rhs);

        // m = 1: nothing to compare
        let pi = partition_of(&cfg(1, 3)).unwrap();
        assert_eq!(pi.m, 1);
        assert!(check_ss2(&pi, &dirac(1, 0), Reading::Closed).unwrap().ok);
        assert!(check_ss1(&pi, &dirac(1, 0), Reading::Closed).unwrap().ok);
    }

    #[test]
    fn boundary_case_rejected() {
        let pi = partition_of(&cfg(1, 2)).unwrap();
        assert!(matches!(
            check_ss1(&pi, &dirac(1, 0), Reading::Closed),
            Err(Error::BoundaryCase)
        ));
        assert!(matches!(
            check_ss2(&pi, &dirac(1, 0), Reading::Closed),
            Err(Error::BoundaryCase)
        ));
    }

    #[test]
    fn combined_report() {
        let r = is_security_strategy(&cfg(36, 50), &comb(36, 14, 3), Reading::Closed).unwrap();
        assert!(r.ss1_ok && r.ss2_ok && r.agrees);
        assert_eq!(r.value.value, rat(2, 3));

        let r = is_security_strategy(&cfg(36, 50), &dirac(36, 18), Reading::Closed).unwrap();
        assert!(!r.ss1_ok && r.agrees);
        assert_eq!(r.value.value, int(0));

        let r = is_security_strategy(&cfg(42, 50), &comb(42, 8, 6), Reading::Closed).unwrap();
        assert!(r.is_security_strategy() && r.agrees);
        assert_eq!(r.value.value, rat(5, 6));

        // the strict reading disagrees with the value on combs
        let r = is_security_strategy(&cfg(42, 50), &comb(42, 8, 6), Reading::Strict).unwrap();
        assert!(!r.is_security_strategy() && !r.agrees);
    }

    fn arb_strategy(budget: i64) -> impl Strategy<Value = AtomicStrategy> {
        prop::collection::vec((0..=budget * 4, 1i64..10), 1..8).prop_map(move |raw| {
            let total: i64 = raw.iter().map(|(_, w)| w).sum();
            AtomicStrategy::from_unsorted(
                int(budget),
                raw.into_iter().map(|(k, w)| (rat(k, 4), rat(w, total))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn value_never_exceeds_centralized(f in arb_strategy(42)) {
            let c = cfg(42, 50);
            prop_assert!(value_of(&c, &f).unwrap().value <= rat(5, 6));
        }

        #[test]
        fn value_matches_grid(f in arb_strategy(36)) {
            // atoms on quarter-integers, d = 14: breakpoints on the 1/4 grid,
            // open pieces represented by 1/8 points
            let c = cfg(36, 50);
            prop_assert_eq!(value_of(&c, &f).unwrap().value, grid_value(&c, &f, 400));
        }

        #[test]
        fn cdf_form_agrees_off_breakpoints(f in arb_strategy(42), k in 0i64..400) {
            // enemy allocations at odd multiples of 1/8 avoid the 1/4 grid
            let c = cfg(42, 50);
            let x = rat(2 * k + 1, 16);
            prop_assume!(x <= int(50));
            let enemy = enemy_payoff_cdf_form(&f, &x, &int(8));
            prop_assert_eq!(enemy, int(2) - team_payoff(&c, &f, &x));
        }

        #[test]
        fn conditions_match_value_near_combs(
            spread in prop::collection::vec(prop::collection::vec((0i64..=8, 1i64..5), 1..4), 6)
        ) {
            // comb atoms at 8j smeared over the closure [8j, 8j + 2] in quarter
            // steps, each cluster keeping mass 1/6
            let atoms = spread.iter().enumerate().flat_map(|(j, cluster)| {
                let total: i64 = cluster.iter().map(|(_, w)| w).sum();
                cluster.iter().map(move |&(k, w)| (rat(32 * j as i64 + k, 4), rat(w, 6 * total)))
            });
            let f = AtomicStrategy::from_unsorted(int(42), atoms).unwrap();
            let r = is_security_strategy(&cfg(42, 50), &f, Reading::Closed).unwrap();
            prop_assert!(r.ss1_ok);
            prop_assert!(r.agrees, "ss2 {:?} value {}", r.ss2_violation, r.value.value);
        }

        #[test]
        fn conditions_match_value(f in arb_strategy(42)) {
            let r = is_security_strategy(&cfg(42, 50), &f, Reading::Closed).unwrap();
            prop_assert!(r.agrees);
        }
    }
}
