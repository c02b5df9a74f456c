//! Closed-form step counts for the three algorithms, the enhancement band
//! and the benchmark table/CSV.
//!
//! One step is one proposal. The analytic columns are worst-case envelopes:
//!
//! * baseline: `n^2`
//! * sequential deletion: `(n-1)^2 * n`
//! * divide-and-conquer deletion: `((n-1)^2 - 2(n-1) + ceil(log2 n)) * n`
//!
//! Empirical columns come from real runs on planted worst-case instances and
//! are reported next to the formulas, never compared to them.

use std::fmt;

use crate::error::{Error, Result};
use crate::generate::{planted_worst_case, rng_from_seed};
use crate::gsa::{gsa_solve, Orientation};
use crate::modgsa::{mod_gsa, Engine};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Band {
    Low,
    Intermediate,
    High,
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Band::Low => "LOW",
            Band::Intermediate => "INTERMEDIATE",
            Band::High => "HIGH",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchMode {
    Analytic,
    Empirical,
    Both,
}

impl BenchMode {
    pub fn wants_empirical(self) -> bool {
        !matches!(self, BenchMode::Analytic)
    }
}

pub fn ceil_log2(n: u64) -> u64 {
    assert!(n >= 1, "log2 of zero");
    u64::from(64 - (n - 1).leading_zeros()) * u64::from(n > 1)
}

pub fn steps_gsa(n: u64) -> u64 {
    n * n
}

pub fn steps_mod_gsa(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InstanceTooSmall { n: n as usize, min: 2 });
    }
    Ok((n - 1) * (n - 1) * n)
}

pub fn steps_mod_pgsa(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InstanceTooSmall { n: n as usize, min: 2 });
    }
    let k = n - 1;
    // k^2 + ceil(log2 n) >= 2k for every n >= 2
    Ok((k * k + ceil_log2(n) - 2 * k) * n)
}

pub fn enhancement_band(n: u64) -> Result<Band> {
    match n {
        0..=2 => Err(Error::InvalidRange(format!(
            "enhancement band is defined for n >= 3, got {n}"
        ))),
        3..=5 => Ok(Band::Low),
        6..=10 => Ok(Band::Intermediate),
        _ => Ok(Band::High),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmpiricalSteps {
    /// Proposals of one men-proposing run.
    pub gsa: u64,
    /// Proposals summed over all deletion trials, sequential engine.
    pub mod_gsa: u64,
    /// Same with the divide-and-conquer engine.
    pub mod_pgsa: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchRow {
    pub n: u64,
    pub gsa_steps: u64,
    pub mod_gsa_steps: u64,
    pub mod_pgsa_steps: u64,
    pub band: Band,
    pub empirical: Option<EmpiricalSteps>,
}

impl BenchRow {
    pub fn analytic(n: u64) -> Result<Self> {
        Ok(Self {
            n,
            gsa_steps: steps_gsa(n),
            mod_gsa_steps: steps_mod_gsa(n)?,
            mod_pgsa_steps: steps_mod_pgsa(n)?,
            band: enhancement_band(n)?,
            empirical: None,
        })
    }
}

/// Rows for `n_min..=n_max`. Empirical columns, when requested, are measured
/// on a planted worst-case instance drawn with `seed + n`.
pub fn bench_table(n_min: u64, n_max: u64, mode: BenchMode, seed: u64) -> Result<Vec<BenchRow>> {
    if n_min < 3 || n_min > n_max {
        return Err(Error::InvalidRange(format!(
            "need 3 <= n_min <= n_max, got {n_min}..={n_max}"
        )));
    }
    (n_min..=n_max)
        .map(|n| {
            let mut row = BenchRow::analytic(n)?;
            if mode.wants_empirical() {
                row.empirical = Some(measure(n, seed)?);
            }
            Ok(row)
        })
        .collect()
}

fn measure(n: u64, seed: u64) -> Result<EmpiricalSteps> {
    let inst = planted_worst_case(n as usize, &mut rng_from_seed(seed.wrapping_add(n)))?;
    let (_, gsa) = gsa_solve(&inst, Orientation::MenPropose);
    let seq = mod_gsa(&inst, Engine::Sequential)?;
    let par = mod_gsa(&inst, Engine::Parallel)?;
    Ok(EmpiricalSteps {
        gsa: gsa.proposals,
        mod_gsa: seq.trial_proposals().proposals,
        mod_pgsa: par.trial_proposals().proposals,
    })
}

pub const CSV_HEADER: &str = "n,gsa_steps,mod_gsa_steps,mod_pgsa_steps,band";
pub const CSV_EMPIRICAL_HEADER: &str = ",gsa_empirical,mod_gsa_empirical,mod_pgsa_empirical";

pub fn to_csv(rows: &[BenchRow], mode: BenchMode) -> String {
    let mut out = String::from(CSV_HEADER);
    if mode.wants_empirical() {
        out.push_str(CSV_EMPIRICAL_HEADER);
    }
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}",
            r.n, r.gsa_steps, r.mod_gsa_steps, r.mod_pgsa_steps, r.band
        ));
        if mode.wants_empirical() {
            let e = r.empirical.expect("empirical mode rows carry measurements");
            out.push_str(&format!(",{},{},{}", e.gsa, e.mod_gsa, e.mod_pgsa));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_ceiling() {
        let expected = [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4), (16, 4), (17, 5)];
        for (n, l) in expected {
            assert_eq!(ceil_log2(n), l, "n = {n}");
        }
    }

    #[test]
    fn formula_examples() {
        assert_eq!(steps_mod_gsa(4).unwrap(), 36);
        assert_eq!(steps_mod_gsa(16).unwrap(), 3600);
        assert_eq!(steps_mod_gsa(2).unwrap(), 2);
        assert_eq!(steps_mod_pgsa(4).unwrap(), 20);
        assert_eq!(steps_mod_pgsa(10).unwrap(), 670);
        assert_eq!(steps_mod_pgsa(15).unwrap(), 2580);
        assert_eq!(steps_mod_pgsa(2).unwrap(), 0);
        assert!(steps_mod_gsa(1).is_err());
        assert!(steps_mod_pgsa(0).is_err());
    }

    #[test]
    fn bands() {
        assert_eq!(enhancement_band(5).unwrap(), Band::Low);
        assert_eq!(enhancement_band(9).unwrap(), Band::Intermediate);
        assert_eq!(enhancement_band(12).unwrap(), Band::High);
        assert_eq!(enhancement_band(6).unwrap(), Band::Intermediate);
        assert_eq!(enhancement_band(11).unwrap(), Band::High);
        assert!(enhancement_band(2).is_err());
    }

    #[test]
    fn single_row_csv() {
        let rows = bench_table(3, 3, BenchMode::Analytic, 0).unwrap();
        assert_eq!(to_csv(&rows, BenchMode::Analytic), format!("{CSV_HEADER}\n3,9,12,6,LOW\n"));
    }

    #[test]
    fn invalid_ranges() {
        assert!(bench_table(5, 4, BenchMode::Analytic, 0).is_err());
        assert!(bench_table(2, 4, BenchMode::Analytic, 0).is_err());
    }

    #[test]
    fn empirical_columns() {
        let rows = bench_table(4, 4, BenchMode::Empirical, 0).unwrap();
        let e = rows[0].empirical.unwrap();
        assert!(e.gsa <= 16);
        let csv = to_csv(&rows, BenchMode::Both);
        assert!(csv.starts_with(
            "n,gsa_steps,mod_gsa_steps,mod_pgsa_steps,band,gsa_empirical,mod_gsa_empirical,mod_pgsa_empirical\n4,16,36,20,LOW,"
        ));
        assert!(!csv.contains(",\n"));
    }
}
