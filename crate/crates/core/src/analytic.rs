//! Pure-strategy payoffs and the closed-form centralized security value.

use num_traits::{One, Signed, Zero};

use crate::game::GameConfig;
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Share of a battlefield won with `x` against `y`: 1, 1/2 on a tie, 0.
pub fn win_share(x: &Rational, y: &Rational) -> Rational {
    match x.cmp(y) {
        core::cmp::Ordering::Greater => Rational::one(),
        core::cmp::Ordering::Equal => rational::half(),
        core::cmp::Ordering::Less => Rational::zero(),
    }
}

fn check_range(value: &Rational, budget: &Rational) -> Result<()> {
    if value.is_negative() || value > budget {
        return Err(Error::OutOfRange {
            value: value.clone(),
            budget: budget.clone(),
        });
    }
    Ok(())
}

/// Team payoff when the team sends `b` and the enemy `e` to battlefield 1.
pub fn payoff_pure(cfg: &GameConfig, b: &Rational, e: &Rational) -> Result<Rational> {
    check_range(b, cfg.b())?;
    check_range(e, cfg.e())?;
    Ok(cfg.v1() * win_share(b, e) + cfg.v2() * win_share(&(cfg.b() - b), &(cfg.e() - e)))
}

/// Enemy payoff; the game is constant-sum with total `v1 + v2`.
pub fn enemy_payoff_pure(cfg: &GameConfig, e: &Rational, b: &Rational) -> Result<Rational> {
    Ok(cfg.v1() + cfg.v2() - payoff_pure(cfg, b, e)?)
}

/// Centralized security value for unit battlefield values.
///
/// `1 - 1/m` for `B/E` in partition `m` (`B < E`), `1` at `B = E`, and
/// `1 + 1/m` for `B/E` in `((m+1)/m, m/(m-1)]` when `B > E`.
pub fn centralized_value(cfg: &GameConfig) -> Result<Rational> {
    if !cfg.has_unit_values() {
        return Err(Error::UnsupportedValues {
            v1: cfg.v1().clone(),
            v2: cfg.v2().clone(),
        });
    }
    let (b, e) = (cfg.b(), cfg.e());
    let one = Rational::one();
    Ok(match b.cmp(e) {
        core::cmp::Ordering::Less => {
            let m = (b / (e - b)).ceil();
            one - m.recip()
        }
        core::cmp::Ordering::Equal => one,
        core::cmp::Ordering::Greater => {
            // 1/m < B/E - 1 <= 1/(m-1)  <=>  m = floor(E / (B - E)) + 1
            let m = (e / (b - e)).floor() + &one;
            one + m.recip()
        }
    })
}
