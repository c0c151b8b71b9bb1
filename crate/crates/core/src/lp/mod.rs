//! Exact linear programming.
//!
//! [`lp_solve`] is a dense two-phase tableau simplex over exact rationals
//! with Bland's pivot rule, so it always terminates and never rounds.
//! [`solve_matrix_game`] specializes to zero-sum matrix games: it takes a
//! candidate optimal basis from a floating-point simplex, recomputes that
//! basis in integer arithmetic and certifies primal and dual feasibility.
//! When certification fails, an exact fraction-free simplex on the packing
//! form starts from the same basis. Either way the result is exact.

mod float;
mod matrix_game;
mod packing;
mod simplex;

pub use matrix_game::{solve_matrix_game, solve_matrix_game_scaled, GamePath, MatrixGameSolution};
pub use simplex::lp_solve;

use alloc::vec::Vec;

use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// Bounds of one variable; `None` means unbounded on that side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarBound {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl VarBound {
    pub fn nonnegative() -> Self {
        Self {
            lower: Some(Rational::from_integer(0.into())),
            upper: None,
        }
    }

    pub fn free() -> Self {
        Self {
            lower: None,
            upper: None,
        }
    }

    pub fn between(lower: Rational, upper: Rational) -> Self {
        Self {
            lower: Some(lower),
            upper: Some(upper),
        }
    }
}

impl Default for VarBound {
    fn default() -> Self {
        Self::nonnegative()
    }
}

/// `maximize objective·x` subject to `rows[i]·x (relations[i]) rhs[i]` and
/// the per-variable bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: Vec<Rational>,
    pub rows: Vec<Vec<Rational>>,
    pub relations: Vec<Relation>,
    pub rhs: Vec<Rational>,
    pub bounds: Vec<VarBound>,
}

impl LpProblem {
    /// All variables nonnegative.
    pub fn new(
        objective: Vec<Rational>,
        rows: Vec<Vec<Rational>>,
        relations: Vec<Relation>,
        rhs: Vec<Rational>,
    ) -> Self {
        let bounds = alloc::vec![VarBound::nonnegative(); objective.len()];
        Self {
            objective,
            rows,
            relations,
            rhs,
            bounds,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal point; empty unless `status == Optimal`.
    pub x: Vec<Rational>,
    /// Optimal objective; zero unless `status == Optimal`.
    pub objective: Rational,
    pub pivots: usize,
}
