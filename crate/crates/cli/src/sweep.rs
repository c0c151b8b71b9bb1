//! Sweeps of the integer game over divisions `B1 = 0..=b1_max`, and their
//! CSV form.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use blotto_core::{
    eval_value_int, integer_comb, rational, DistributedProblem, Rational, SolveResult, SolverConfig,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const CSV_HEADER: [&str; 6] = [
    "b1",
    "lower_bound",
    "centralized",
    "in_band",
    "band_k1",
    "comb_value",
];

/// One division of a sweep. `lower_bound` is the best exact profile value
/// found, a lower bound on the distributed security value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRecord {
    pub b1: u64,
    pub lower_bound: Rational,
    pub centralized: Rational,
    pub in_band: bool,
    pub band_k1: Option<u64>,
    pub comb_value: Option<Rational>,
}

impl SweepRecord {
    pub fn check(&self) -> Result<()> {
        let fail = |msg: String| Err(CliError::Invariant(format!("b1 = {}: {msg}", self.b1)));
        if self.lower_bound > self.centralized {
            return fail(format!(
                "lower bound {} exceeds the centralized value {}",
                self.lower_bound, self.centralized
            ));
        }
        match (self.in_band, self.band_k1, &self.comb_value) {
            (true, Some(_), Some(comb)) if self.lower_bound < *comb => fail(format!(
                "lower bound {} is below the comb value {comb}",
                self.lower_bound
            )),
            (true, Some(_), Some(_)) | (false, None, None) => Ok(()),
            _ => fail("band columns are inconsistent with in_band".into()),
        }
    }
}

/// Solves one division and checks the result against its certificates.
pub fn sweep_row(
    b: u64,
    e: u64,
    b1: u64,
    cfg: &SolverConfig,
) -> Result<(SweepRecord, SolveResult)> {
    let problem = DistributedProblem::new(b, e, b1)?;
    let outcomes = (0..problem.start_count(cfg))
        .map(|i| problem.run_start(i, cfg))
        .collect::<blotto_core::Result<Vec<_>>>()?;
    let solved = problem.reduce(outcomes, cfg)?;
    let centralized = problem.centralized().0.clone();

    let recomputed = eval_value_int(problem.payoff(), &solved.f1, &solved.f2)?;
    if recomputed != solved.lower_bound {
        return Err(CliError::Invariant(format!(
            "b1 = {b1}: profile value {recomputed} differs from reported {}",
            solved.lower_bound
        )));
    }
    if b1 == 0 && solved.lower_bound != centralized {
        return Err(CliError::Invariant(format!(
            "b1 = 0: lower bound {} differs from the centralized value {centralized}",
            solved.lower_bound
        )));
    }

    let (band_k1, comb_value) = match integer_comb(b, e, b1)? {
        Some((k1, f1, f2)) => (Some(k1), Some(eval_value_int(problem.payoff(), &f1, &f2)?)),
        None => (None, None),
    };
    let record = SweepRecord {
        b1,
        lower_bound: solved.lower_bound.clone(),
        centralized,
        in_band: band_k1.is_some(),
        band_k1,
        comb_value,
    };
    record.check()?;
    Ok((record, solved))
}

/// Rows are independent and computed in parallel; the output is in `b1`
/// order regardless of scheduling.
pub fn sweep(b: u64, e: u64, b1_max: u64, cfg: &SolverConfig) -> Result<Vec<SweepRecord>> {
    Ok(sweep_detailed(b, e, b1_max, cfg)?
        .into_iter()
        .map(|(record, _)| record)
        .collect())
}

/// [`sweep`] keeping each row's solver result.
pub fn sweep_detailed(
    b: u64,
    e: u64,
    b1_max: u64,
    cfg: &SolverConfig,
) -> Result<Vec<(SweepRecord, SolveResult)>> {
    if 2 * b1_max > b {
        return Err(CliError::Usage(format!(
            "--b1-max {b1_max} exceeds B/2 for B = {b}"
        )));
    }
    (0..=b1_max)
        .into_par_iter()
        .map(|b1| sweep_row(b, e, b1, cfg))
        .collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    b1: u64,
    lower_bound: String,
    centralized: String,
    in_band: bool,
    band_k1: Option<u64>,
    comb_value: Option<String>,
}

/// Writes the header and one row per record, refusing records that break
/// their invariants.
pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        r.check()?;
        w.serialize(CsvRow {
            b1: r.b1,
            lower_bound: r.lower_bound.to_string(),
            centralized: r.centralized.to_string(),
            in_band: r.in_band,
            band_k1: r.band_k1,
            comb_value: r.comb_value.as_ref().map(ToString::to_string),
        })?;
    }
    if records.is_empty() {
        w.write_record(CSV_HEADER)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRecord>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(CliError::Parse {
            context: "csv header".into(),
            message: format!(
                "expected {}, got {}",
                CSV_HEADER.join(","),
                header.join(",")
            ),
        });
    }
    let cell = |s: &str, line: u64| {
        rational::parse(s).ok_or_else(|| CliError::Parse {
            context: format!("csv line {line}"),
            message: format!("{s:?} is not an exact rational"),
        })
    };
    let mut records = Vec::new();
    for row in rdr.deserialize() {
        let row: CsvRow = row?;
        let line = records.len() as u64 + 2;
        records.push(SweepRecord {
            b1: row.b1,
            lower_bound: cell(&row.lower_bound, line)?,
            centralized: cell(&row.centralized, line)?,
            in_band: row.in_band,
            band_k1: row.band_k1,
            comb_value: row
                .comb_value
                .as_deref()
                .map(|s| cell(s, line))
                .transpose()?,
        });
    }
    Ok(records)
}

pub fn write_csv_file(path: &Path, records: &[SweepRecord]) -> Result<()> {
    let write_err = |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(write_err)?;
    write_csv(records, file).map_err(|e| match e {
        CliError::Csv(c) => write_err(std::io::Error::other(c)),
        other => other,
    })
}
