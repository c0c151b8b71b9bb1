//! The non-sweep subcommands as plain functions returning serializable
//! reports. All rationals are emitted as "p/q" strings.

use blotto_core::{
    bands, centralized_value, centralized_value_int, comb_distributed, convolve,
    is_security_strategy, partition_of, rational, value_of, AtomicStrategy, GameConfig, Rational,
    Reading, Witness,
};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::strategy::StrategyFile;

fn s(r: &Rational) -> String {
    r.to_string()
}

#[derive(Debug, Serialize)]
pub struct Ss2ViolationReport {
    pub j: u64,
    pub x: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub reading: &'static str,
    pub ss1_ok: bool,
    pub ss1_masses: Vec<String>,
    pub outside_mass: String,
    pub ss2_ok: bool,
    pub ss2_violation: Option<Ss2ViolationReport>,
    pub value: String,
    /// An enemy allocation attaining the value, or a point of the open
    /// piece where it is attained.
    pub witness: String,
    pub centralized_value: String,
    pub is_security_strategy: bool,
    pub conditions_agree_with_value: bool,
}

pub fn verify(
    b: Rational,
    e: Rational,
    f: &AtomicStrategy,
    reading: Reading,
) -> Result<VerifyReport> {
    let cfg = GameConfig::new(b, e)?;
    let report = is_security_strategy(&cfg, f, reading)?;
    let witness = match &report.value.witness {
        Witness::Point(x) => s(x),
        Witness::Open(lo, hi) => format!("({lo}, {hi})"),
    };
    Ok(VerifyReport {
        reading: reading_name(reading),
        ss1_ok: report.ss1_ok,
        ss1_masses: report.ss1_masses.iter().map(s).collect(),
        outside_mass: s(&report.outside_mass),
        ss2_ok: report.ss2_ok,
        ss2_violation: report.ss2_violation.as_ref().map(|v| Ss2ViolationReport {
            j: v.j,
            x: s(&v.x),
            lhs: s(&v.lhs),
            rhs: s(&v.rhs),
        }),
        value: s(&report.value.value),
        witness,
        centralized_value: s(&report.centralized_value),
        is_security_strategy: report.is_security_strategy(),
        conditions_agree_with_value: report.agrees,
    })
}

pub fn reading_name(reading: Reading) -> &'static str {
    match reading {
        Reading::Closed => "closed",
        Reading::Strict => "strict",
    }
}

#[derive(Debug, Serialize)]
pub struct CentralizedReport {
    pub b: String,
    pub e: String,
    /// Closed form for the continuous game.
    pub formula: String,
    /// Exact LP value of the integer game; only for integer budgets.
    pub lp: Option<String>,
}

pub fn centralized(b: Rational, e: Rational) -> Result<CentralizedReport> {
    let cfg = GameConfig::new(b.clone(), e.clone())?;
    let formula = centralized_value(&cfg)?;
    let lp = match (rational::to_u64(&b), rational::to_u64(&e)) {
        (Some(bi), Some(ei)) => Some(s(&centralized_value_int(bi, ei)?.0)),
        _ => None,
    };
    Ok(CentralizedReport {
        b: s(&b),
        e: s(&e),
        formula: s(&formula),
        lp,
    })
}

#[derive(Debug, Serialize)]
pub struct BandEntry {
    pub k1: u64,
    pub lo: String,
    pub hi: String,
    /// `min(hi, B/2)`; divisions are only considered up to `B/2`.
    pub usable_hi: String,
}

#[derive(Debug, Serialize)]
pub struct BandsReport {
    pub m: u64,
    pub d: String,
    pub r_b: String,
    pub bands: Vec<BandEntry>,
}

pub fn bands_report(b: Rational, e: Rational) -> Result<BandsReport> {
    let cfg = GameConfig::new(b.clone(), e)?;
    let pi = partition_of(&cfg)?;
    let half = b / Rational::from_integer(2.into());
    let bands = bands(&pi, &half)
        .into_iter()
        .map(|band| BandEntry {
            k1: band.k1,
            lo: s(&band.lo),
            hi: s(&band.hi),
            usable_hi: s(&band.usable_hi),
        })
        .collect();
    Ok(BandsReport {
        m: pi.m,
        d: s(&pi.d),
        r_b: s(&pi.r_b),
        bands,
    })
}

#[derive(Debug, Serialize)]
pub struct ConstructReport {
    pub k1: u64,
    pub b1: String,
    pub f1: StrategyFile,
    pub f2: StrategyFile,
    /// Worst-case value of the convolved team strategy.
    pub value: String,
    pub centralized_value: String,
}

/// The report together with the two sub-player strategies.
pub fn construct(
    b: Rational,
    e: Rational,
    k1: u64,
    b1: Rational,
) -> Result<(ConstructReport, AtomicStrategy, AtomicStrategy)> {
    let cfg = GameConfig::new(b.clone(), e)?;
    let pi = partition_of(&cfg)?;
    if b1 > b.clone() / Rational::from_integer(2.into()) {
        return Err(CliError::Usage(format!(
            "--b1 {b1} exceeds B/2 for B = {b}"
        )));
    }
    let (f1, f2) = comb_distributed(&pi, k1, &b1)?;
    let value = value_of(&cfg, &convolve(&f1, &f2))?.value;
    let report = ConstructReport {
        k1,
        b1: s(&b1),
        f1: StrategyFile::from(&f1),
        f2: StrategyFile::from(&f2),
        value: s(&value),
        centralized_value: s(&centralized_value(&cfg)?),
    };
    Ok((report, f1, f2))
}
