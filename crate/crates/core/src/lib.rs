//! Exact solver and verifier for the two-battlefield team Colonel Blotto game.
//!
//! A team with budget `B` plays against an enemy with budget `E` over two
//! battlefields. The team budget may be split between two independent
//! sub-players (`B1` and `B - B1`), whose mixed strategies combine by
//! convolution. This crate computes:
//!
//! - the partition data and closed-form centralized security value,
//! - the exact worst-case value of finite-support team strategies against a
//!   continuous enemy, together with the mass-placement conditions that
//!   characterize centralized security strategies,
//! - comb constructions for distributed security strategies and a seeded
//!   sampler of product profiles for the in-between divisions,
//! - an exact-rational LP core and a multistart alternating-LP lower-bound
//!   solver for the integer version of the distributed game.
//!
//! Everything is computed with exact rationals. The crate is `no_std` and
//! only needs `alloc`.

#![no_std]
// Errors carry exact rationals for diagnostics and only travel on cold paths.
#![allow(clippy::result_large_err)]

extern crate alloc;

pub mod analytic;
pub mod construct;
pub mod distributions;
mod error;
pub mod game;
pub mod int_solver;
pub mod lp;
pub mod rational;
pub mod rng;
pub mod security;

pub use analytic::{centralized_value, payoff_pure, win_share};
pub use construct::{bands, comb_centralized, comb_distributed, sample_ss1_profile, Band};
pub use distributions::{cdf, cdf_left, convolve, convolve_int, AtomicStrategy, IntStrategy};
pub use error::Error;
pub use game::{partition_of, GameConfig, Interval, PartitionInfo};
pub use int_solver::{
    best_response_lp, centralized_value_int, eval_value_int, integer_comb, oracle_grid,
    solve_distributed, DistributedProblem, PayoffMatrix, Side, SolveResult, SolverConfig,
    StartKind, StartOutcome,
};
pub use lp::{lp_solve, LpProblem, LpSolution, LpStatus, Relation, VarBound};
pub use rational::Rational;
pub use security::{
    check_ss1, check_ss2, enemy_payoff_cdf_form, is_security_strategy, value_of, Reading,
    SsCheckReport, ValueReport, Witness,
};

pub type Result<T, E = Error> = core::result::Result<T, E>;
