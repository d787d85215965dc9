//! Range scans over primes producing per-prime records, exact aggregate
//! statistics, and exploratory datasets.
//!
//! Scans fan out over fixed-size chunks of primes; each per-prime computation
//! is pure and chunks are merged back in ascending-p order, so the records
//! (timing aside) are byte-identical for any worker count or chunk size.

use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::model::{Prime, Solution, SolutionRow, SolutionType};
use crate::oracle;
use crate::reduction;
use crate::structure;
use crate::SEARCH_LIMIT;

/// Search strategy used for a scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "oracle")]
    Oracle,
    #[serde(rename = "two-var")]
    TwoVar,
    #[serde(rename = "one-var")]
    OneVar,
    #[serde(rename = "hybrid")]
    Hybrid,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Oracle => "oracle",
            Strategy::TwoVar => "two-var",
            Strategy::OneVar => "one-var",
            Strategy::Hybrid => "hybrid",
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "oracle" => Ok(Strategy::Oracle),
            "two-var" => Ok(Strategy::TwoVar),
            "one-var" => Ok(Strategy::OneVar),
            "hybrid" => Ok(Strategy::Hybrid),
            other => Err(Error::UnknownStrategy {
                name: other.to_string(),
            }),
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One solution inside a survey record: the triple, its type, and whether
/// x = ⌈yp/(4y-p)⌉ holds for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionEntry {
    pub x: u64,
    pub y: u64,
    pub z: u128,
    #[serde(rename = "type")]
    pub solution_type: SolutionType,
    pub eq5: bool,
}

impl SolutionEntry {
    fn from_solution(s: &Solution) -> Result<SolutionEntry> {
        Ok(SolutionEntry {
            x: s.x(),
            y: s.y(),
            z: s.z(),
            solution_type: structure::classify(s)?,
            eq5: structure::eq5_holds(s),
        })
    }
}

/// Per-prime scan result. `solutions` is kept in the canonical
/// (x asc, y asc) order; `first_y` is the y of the first solution in the
/// strategy's own emission order (ascending scanned y for the one-variable
/// search, canonical order otherwise).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub p: u64,
    pub strategy: Strategy,
    pub solutions: Vec<SolutionEntry>,
    pub first_y: Option<u64>,
    pub elapsed_ns: u64,
}

/// Annotate a solution with its classification and eq5 status, in the fixed
/// serialization field order p,x,y,z,type,eq5.
pub fn solution_row(s: &Solution) -> Result<SolutionRow> {
    Ok(SolutionRow {
        p: s.p(),
        x: s.x(),
        y: s.y(),
        z: s.z(),
        solution_type: structure::classify(s)?,
        eq5: structure::eq5_holds(s),
    })
}

/// Exact rational count; den = 0 is the defined-empty sentinel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    /// Decimal rendering to four places, round half up; None when undefined.
    pub fn decimal4(&self) -> Option<String> {
        if self.den == 0 {
            return None;
        }
        let scaled = (self.num as u128 * 10_000 + self.den as u128 / 2) / self.den as u128;
        Some(format!("{}.{:04}", scaled / 10_000, scaled % 10_000))
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Exact aggregate over a set of survey records.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aggregate {
    pub primes_scanned: u64,
    pub solutions_total: u64,
    pub type1: u64,
    pub type2: u64,
    pub eq5_satisfied: u64,
    pub eq5_rate: Ratio,
    pub failures: Vec<u64>,
}

/// Default number of primes per parallel chunk. Tuning only; never affects
/// output bytes.
pub const DEFAULT_CHUNK_SIZE: usize = 1024;

fn record_for(p: Prime, strategy: Strategy, enumerate_all: bool) -> Result<SurveyRecord> {
    let start = Instant::now();
    // The native emission order of each strategy, before canonical sorting.
    let solutions: Vec<Solution> = match strategy {
        Strategy::Oracle => {
            if enumerate_all {
                oracle::enumerate_all(p)?
            } else {
                oracle::first_solution(p)?.into_iter().collect()
            }
        }
        Strategy::TwoVar => {
            if enumerate_all {
                reduction::search_two_var(p)?
            } else {
                reduction::search_two_var_first(p)?.into_iter().collect()
            }
        }
        Strategy::OneVar => reduction::search_one_var(p, !enumerate_all)?,
        Strategy::Hybrid => {
            if enumerate_all {
                // Hybrid is a first-solution strategy; asked for everything it
                // degrades to the exhaustive two-variable scan.
                reduction::search_two_var(p)?
            } else {
                match reduction::hybrid_search(p) {
                    Ok(s) => vec![s],
                    Err(Error::NoSolutionFound { .. }) => Vec::new(),
                    Err(e) => return Err(e),
                }
            }
        }
    };
    let first_y = solutions.first().map(|s| s.y());
    let mut entries = solutions
        .iter()
        .map(SolutionEntry::from_solution)
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by_key(|e| (e.x, e.y));
    let elapsed_ns = start.elapsed().as_nanos().min(u64::MAX as u128) as u64;
    Ok(SurveyRecord {
        p: p.get(),
        strategy,
        solutions: entries,
        first_y,
        elapsed_ns,
    })
}

/// Scan every prime in [lo, hi] with the given strategy, one record per
/// prime in ascending order. With `enumerate_all` false only the first
/// solution per prime is recorded.
pub fn scan(
    lo: u64,
    hi: u64,
    strategy: Strategy,
    enumerate_all: bool,
) -> Result<Vec<SurveyRecord>> {
    scan_chunked(lo, hi, strategy, enumerate_all, DEFAULT_CHUNK_SIZE)
}

/// [`scan`] with an explicit chunk size for the parallel fan-out.
pub fn scan_chunked(
    lo: u64,
    hi: u64,
    strategy: Strategy,
    enumerate_all: bool,
    chunk_size: usize,
) -> Result<Vec<SurveyRecord>> {
    if lo > hi {
        return Err(Error::Precondition {
            what: format!("invalid range: {lo} > {hi}"),
        });
    }
    if hi >= SEARCH_LIMIT {
        return Err(Error::MagnitudeExceeded {
            value: hi,
            limit: SEARCH_LIMIT,
        });
    }
    let chunk_size = chunk_size.max(1);
    let primes = arith::primes_in(lo, hi);
    let chunks: Vec<Vec<SurveyRecord>> = primes
        .par_chunks(chunk_size)
        .map(|chunk| {
            chunk
                .iter()
                .map(|&p| {
                    let p = Prime::new(p).expect("sieve yields primes");
                    record_for(p, strategy, enumerate_all)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Exact counts and the pooled eq5 rate over a set of records.
///
/// Rates are meaningful for full-enumeration scans; for first-solution scans
/// they describe only the recorded solutions, which the caller should flag.
pub fn aggregate(records: &[SurveyRecord]) -> Aggregate {
    let mut solutions_total = 0u64;
    let mut type1 = 0u64;
    let mut type2 = 0u64;
    let mut eq5_satisfied = 0u64;
    let mut failures = Vec::new();
    for r in records {
        if r.solutions.is_empty() {
            failures.push(r.p);
        }
        for s in &r.solutions {
            solutions_total += 1;
            match s.solution_type {
                SolutionType::TypeI => type1 += 1,
                SolutionType::TypeII => type2 += 1,
            }
            if s.eq5 {
                eq5_satisfied += 1;
            }
        }
    }
    Aggregate {
        primes_scanned: records.len() as u64,
        solutions_total,
        type1,
        type2,
        eq5_satisfied,
        eq5_rate: Ratio {
            num: eq5_satisfied,
            den: solutions_total,
        },
        failures,
    }
}

/// One row of the Type I scatter dataset: a prime, the y of one of its
/// Type I solutions, and p mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Figure2Row {
    pub p: u64,
    pub y: u64,
    pub mod4: u8,
}

impl Figure2Row {
    pub const CSV_HEADER: &'static str = "p,y,mod4";

    pub fn csv_row(&self) -> String {
        format!("{},{},{}", self.p, self.y, self.mod4)
    }
}

/// One row per Type I solution per prime in [lo, hi], ascending (p, y).
pub fn figure2_dataset(lo: u64, hi: u64) -> Result<Vec<Figure2Row>> {
    let mut rows = Vec::new();
    for p in arith::primes_in(lo, hi) {
        let prime = Prime::new(p).expect("sieve yields primes");
        let mut ys: Vec<u64> = reduction::search_two_var(prime)?
            .iter()
            .filter(|s| structure::classify(s) == Ok(SolutionType::TypeI))
            .map(|s| s.y())
            .collect();
        ys.sort_unstable();
        rows.extend(ys.into_iter().map(|y| Figure2Row {
            p,
            y,
            mod4: (p % 4) as u8,
        }));
    }
    Ok(rows)
}

/// For each prime in range, the oracle solutions with x = ⌈p/2⌉ — an
/// empirical probe of which solution shapes occur at the corollary's upper
/// x boundary. Oracle-backed, so the oracle cap applies.
pub fn special_x_survey(lo: u64, hi: u64) -> Result<Vec<(u64, Vec<Solution>)>> {
    if hi > oracle::DEFAULT_ORACLE_CAP {
        return Err(Error::MagnitudeExceeded {
            value: hi,
            limit: oracle::DEFAULT_ORACLE_CAP,
        });
    }
    let mut out = Vec::new();
    for p in arith::primes_in(lo, hi) {
        let prime = Prime::new(p).expect("sieve yields primes");
        let at_half = oracle::enumerate_all(prime)?
            .into_iter()
            .filter(|s| s.x() == p.div_ceil(2))
            .collect();
        out.push((p, at_half));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategy_round_trip() {
        for (token, strategy) in [
            ("oracle", Strategy::Oracle),
            ("two-var", Strategy::TwoVar),
            ("one-var", Strategy::OneVar),
            ("hybrid", Strategy::Hybrid),
        ] {
            assert_eq!(Strategy::from_str(token).unwrap(), strategy);
            assert_eq!(strategy.to_string(), token);
        }
        assert!(matches!(
            Strategy::from_str("bogus"),
            Err(Error::UnknownStrategy { .. })
        ));
    }

    #[test]
    fn oracle_scan_counts_for_first_primes() {
        let records = scan(2, 10, Strategy::Oracle, true).unwrap();
        let counts: Vec<(u64, usize)> = records.iter().map(|r| (r.p, r.solutions.len())).collect();
        // p=7 has seven solutions: (2,15,210), (2,16,112), (2,18,63),
        // (2,21,42), (2,28,28), (3,6,14), (4,4,14); confirmed by the naive
        // triple scan in the oracle tests.
        assert_eq!(counts, vec![(2, 1), (3, 3), (5, 2), (7, 7)]);
    }

    #[test]
    fn empty_range_scan() {
        assert!(scan(14, 16, Strategy::Oracle, true).unwrap().is_empty());
    }

    #[test]
    fn hybrid_scan_below_100() {
        let records = scan(2, 100, Strategy::Hybrid, false).unwrap();
        assert_eq!(records.len(), 25);
        assert!(records.iter().all(|r| r.solutions.len() == 1));
        assert!(aggregate(&records).failures.is_empty());
    }

    #[test]
    fn scan_rejects_bad_input() {
        assert!(matches!(
            scan(10, 2, Strategy::Oracle, true),
            Err(Error::Precondition { .. })
        ));
        assert!(matches!(
            scan(2, SEARCH_LIMIT, Strategy::Oracle, true),
            Err(Error::MagnitudeExceeded { .. })
        ));
    }

    #[test]
    fn aggregate_examples() {
        let records = scan(5, 5, Strategy::Oracle, true).unwrap();
        let agg = aggregate(&records);
        assert_eq!(agg.primes_scanned, 1);
        assert_eq!(agg.solutions_total, 2);
        assert_eq!(agg.type1, 1);
        assert_eq!(agg.type2, 1);
        assert_eq!(agg.eq5_satisfied, 2);
        assert_eq!(agg.eq5_rate, Ratio { num: 2, den: 2 });
        assert_eq!(agg.eq5_rate.decimal4().unwrap(), "1.0000");
        assert!(agg.failures.is_empty());

        let empty = aggregate(&[]);
        assert_eq!(empty.solutions_total, 0);
        assert_eq!(empty.eq5_rate, Ratio { num: 0, den: 0 });
        assert_eq!(empty.eq5_rate.decimal4(), None);

        let records = scan(2, 10, Strategy::Oracle, true).unwrap();
        let agg = aggregate(&records);
        assert_eq!(agg.type1 + agg.type2, agg.solutions_total);
    }

    #[test]
    fn chunk_size_does_not_change_records() {
        let a = scan_chunked(2, 200, Strategy::Hybrid, false, 1).unwrap();
        let b = scan_chunked(2, 200, Strategy::Hybrid, false, 7).unwrap();
        let c = scan_chunked(2, 200, Strategy::Hybrid, false, 1024).unwrap();
        let strip = |v: &[SurveyRecord]| -> Vec<SurveyRecord> {
            v.iter()
                .map(|r| SurveyRecord {
                    elapsed_ns: 0,
                    ..r.clone()
                })
                .collect()
        };
        assert_eq!(strip(&a), strip(&b));
        assert_eq!(strip(&a), strip(&c));
    }

    #[test]
    fn figure2_examples() {
        let rows = figure2_dataset(7, 7).unwrap();
        assert!(rows.contains(&Figure2Row {
            p: 7,
            y: 4,
            mod4: 3
        }));
        assert_eq!(
            figure2_dataset(5, 5).unwrap(),
            vec![Figure2Row {
                p: 5,
                y: 4,
                mod4: 1
            }]
        );
        assert!(figure2_dataset(4, 4).unwrap().is_empty());
    }

    #[test]
    fn figure2_rows_sorted_and_residues_valid() {
        let rows = figure2_dataset(2, 200).unwrap();
        assert!(rows.windows(2).all(|w| (w[0].p, w[0].y) < (w[1].p, w[1].y)));
        assert!(rows.iter().all(|r| r.mod4 == 1 || r.mod4 == 3));
    }

    #[test]
    fn special_x_survey_examples() {
        let rows = special_x_survey(7, 7).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].0, 7);
        assert_eq!(
            rows[0].1.iter().map(|s| s.triple()).collect::<Vec<_>>(),
            vec![(4, 4, 14)]
        );

        let rows = special_x_survey(5, 5).unwrap();
        assert!(rows[0].1.is_empty());

        let rows = special_x_survey(3, 3).unwrap();
        assert_eq!(
            rows[0].1.iter().map(|s| s.triple()).collect::<Vec<_>>(),
            vec![(2, 2, 3)]
        );

        assert!(matches!(
            special_x_survey(2, oracle::DEFAULT_ORACLE_CAP + 1),
            Err(Error::MagnitudeExceeded { .. })
        ));
    }

    #[test]
    fn record_serialization_schema() {
        let records = scan(5, 5, Strategy::Oracle, true).unwrap();
        let mut record = records[0].clone();
        record.elapsed_ns = 42;
        let json = serde_json::to_string(&record).unwrap();
        assert_eq!(
            json,
            r#"{"p":5,"strategy":"oracle","solutions":[{"x":2,"y":4,"z":20,"type":"I","eq5":true},{"x":2,"y":5,"z":10,"type":"II","eq5":true}],"first_y":4,"elapsed_ns":42}"#
        );
        let back: SurveyRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, record);
    }

    #[test]
    fn one_var_record_native_first_y() {
        // p=3 one-var emits (2,2,3) first (scanned y=2); the record stores
        // solutions canonically sorted but keeps the native first y.
        let records = scan(3, 3, Strategy::OneVar, true).unwrap();
        let r = &records[0];
        assert_eq!(r.first_y, Some(2));
        let triples: Vec<(u64, u64, u128)> = r.solutions.iter().map(|s| (s.x, s.y, s.z)).collect();
        assert_eq!(triples, vec![(1, 4, 12), (1, 6, 6), (2, 2, 3)]);
    }
}
