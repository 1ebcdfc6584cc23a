//! Multi-threaded census over sequence indices or seeded samples.
//!
//! Work is cut into fixed-size chunks of the index (or draw) range. Workers pull chunks
//! from a shared counter and keep private tallies that are summed at the end, so the
//! result does not depend on the number of workers or on scheduling.
//!
//! Draw `i` of a sampled census is the 64-bit output of ChaCha8 at word position `2i`
//! for the query's seed, mapped onto the class by [`SequenceClass::member`].

use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};
use std::thread;
use std::time::Instant;

use lcforge_core::census::{tally_range, tally_words};
use lcforge_core::counting::{expected_count, kavuluru_table1};
use lcforge_core::{CensusMode, CensusQuery, SequenceClass};
use num_bigint::BigUint;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{CensusReport, Interval, Mode, Row, Totals, Verdict};
use crate::Result;

const CHUNK: u64 = 1 << 10;

/// Number of workers to use when the caller has no preference.
pub fn default_jobs() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}

fn sharded<F>(jobs: usize, total: u64, slots: usize, work: F) -> Vec<u64>
where
    F: Fn(Range<u64>) -> Vec<u64> + Sync,
{
    let chunks = total.div_ceil(CHUNK);
    let workers = (jobs.max(1) as u64).min(chunks.max(1)) as usize;
    let next = AtomicU64::new(0);
    let merge = |mut acc: Vec<u64>, part: Vec<u64>| {
        for (a, p) in acc.iter_mut().zip(part) {
            *a += p;
        }
        acc
    };
    let run = || {
        let mut acc = vec![0u64; slots];
        loop {
            let chunk = next.fetch_add(1, Ordering::Relaxed);
            if chunk >= chunks {
                return acc;
            }
            let start = chunk * CHUNK;
            acc = merge(acc, work(start..(start + CHUNK).min(total)));
        }
    };
    if workers == 1 {
        return run();
    }
    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers).map(|_| scope.spawn(run)).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .fold(vec![0u64; slots], merge)
    })
}

/// Per-`L` counts of `L_k` for the query: slot `L` for `0 <= L <= 2^n`.
pub fn tally(query: &CensusQuery, jobs: usize) -> Result<Vec<u64>> {
    let search = query.search()?;
    let slots = (1usize << query.n) + 1;
    let class = query.class;
    Ok(match query.mode {
        CensusMode::Exhaustive => {
            let total = 1u64 << (1u64 << query.n);
            sharded(jobs, total, slots, |range| {
                tally_range(&search, class, range)
            })
        }
        CensusMode::Sampled { count, seed } => sharded(jobs, count, slots, |range| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_word_pos(u128::from(range.start) * 2);
            let len = range.end - range.start;
            tally_words(
                &search,
                class,
                std::iter::repeat_with(|| rng.next_u64()).take(len as usize),
            )
        }),
    })
}

fn formula(query: &CensusQuery, l: u64) -> Result<Option<u64>> {
    match expected_count(query.n, query.k, query.class, l) {
        Ok(v) => Ok(Some(
            u64::try_from(v).expect("census-sized counts fit in 64 bits"),
        )),
        Err(lcforge_core::Error::NoFormulaAvailable { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Whether the Wilson score interval at 3σ for `hits` out of `draws` contains
/// `expected / population`. The interval is exactly the set of `p` with
/// `(hits - draws·p)^2 <= 9·draws·p·(1 - p)`, which is checked in integers.
pub fn wilson_covers(hits: u64, draws: u64, expected: u64, population: u64) -> bool {
    let (x, n, f, s) = (
        BigUint::from(hits),
        BigUint::from(draws),
        BigUint::from(expected),
        BigUint::from(population),
    );
    let (a, b) = (&x * &s, &n * &f);
    let diff = if a > b { a - b } else { b - a };
    &diff * &diff <= BigUint::from(9u32) * n * &f * (s - &f)
}

/// Displayed bounds of the Wilson score interval at 3σ.
pub fn wilson_bounds(hits: u64, draws: u64) -> (f64, f64) {
    let z2 = 9.0;
    let n = draws as f64;
    let p = hits as f64 / n;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = (z2 * (p * (1.0 - p) / n + z2 / (4.0 * n * n))).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Runs a census and compares each row with the closed form, when there is one.
pub fn census_distribution(query: &CensusQuery, jobs: usize) -> Result<CensusReport> {
    let started = Instant::now();
    let counts = tally(query, jobs)?;
    let population = query.class.size(query.n);
    let mut rows = Vec::with_capacity(counts.len());
    for (l, &census) in counts.iter().enumerate() {
        let formula = formula(query, l as u64)?;
        let (verdict, interval) = match (query.mode, formula) {
            (_, None) => (Verdict::Unchecked, None),
            (CensusMode::Exhaustive, Some(f)) => (
                if f == census {
                    Verdict::Match
                } else {
                    Verdict::Mismatch
                },
                None,
            ),
            (CensusMode::Sampled { count, .. }, Some(f)) => {
                let (lo, hi) = wilson_bounds(census, count);
                let verdict = if wilson_covers(census, count, f, population) {
                    Verdict::Covered
                } else {
                    Verdict::Outside
                };
                let iv = Interval {
                    lower: format!("{lo:.6}"),
                    upper: format!("{hi:.6}"),
                };
                (verdict, Some(iv))
            }
        };
        rows.push(Row {
            l: l as u64,
            census,
            formula,
            fixture: None,
            interval,
            verdict,
        });
    }
    let totals = Totals {
        census: counts.iter().sum(),
        formula: rows.iter().map(|r| r.formula).sum(),
        fixture: None,
        population,
        disagreements: rows.iter().filter(|r| r.verdict.is_failure()).count() as u64,
    };
    Ok(CensusReport {
        n: query.n,
        k: query.k,
        class: query.class,
        mode: Mode::from(query.mode),
        rows,
        totals,
        elapsed_ms: Some(started.elapsed().as_millis() as u64),
    })
}

/// [`census_distribution`] for a query that must have a closed form.
pub fn verify_formulas(query: &CensusQuery, jobs: usize) -> Result<CensusReport> {
    query.validate()?;
    expected_count(query.n, query.k, query.class, 0)?;
    census_distribution(query, jobs)
}

/// Exhaustive `n = 4`, `k = 3` census next to the closed form and the published table.
pub fn refutation_report(jobs: usize) -> Result<CensusReport> {
    let query = CensusQuery::new(4, 3, SequenceClass::All, CensusMode::Exhaustive)?;
    let mut report = census_distribution(&query, jobs)?;
    for row in &mut report.rows {
        row.fixture = kavuluru_table1(row.l)
            .ok()
            .map(|v| u64::try_from(v).expect("fixture values are small"));
        row.verdict = match (row.fixture, row.formula) {
            (Some(fx), _) if fx == row.census => Verdict::Match,
            (_, Some(f)) if f == row.census => {
                if row.fixture.is_some() {
                    Verdict::FixtureWrong
                } else {
                    Verdict::Match
                }
            }
            _ => Verdict::Mismatch,
        };
    }
    report.totals.fixture = Some(report.rows.iter().filter_map(|r| r.fixture).sum());
    report.totals.disagreements = report
        .rows
        .iter()
        .filter(|r| r.verdict != Verdict::Match)
        .count() as u64;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_check_matches_bounds() {
        for (hits, draws, f, s) in [
            (0, 100, 0, 16),
            (5, 100, 1, 16),
            (50, 100, 1, 2),
            (1, 1000, 1, 2),
        ] {
            let (lo, hi) = wilson_bounds(hits, draws);
            let p = f as f64 / s as f64;
            assert_eq!(
                wilson_covers(hits, draws, f, s),
                lo <= p && p <= hi,
                "{hits}/{draws}"
            );
        }
        assert!(wilson_covers(0, 10, 0, 4));
        assert!(!wilson_covers(0, 1000, 1, 2));
    }

    #[test]
    fn sharding_is_worker_independent() {
        let q = CensusQuery::new(3, 2, SequenceClass::All, CensusMode::Exhaustive).unwrap();
        let one = tally(&q, 1).unwrap();
        assert_eq!(tally(&q, 3).unwrap(), one);
        assert_eq!(one.iter().sum::<u64>(), 256);
        let q = CensusQuery::new(
            4,
            1,
            SequenceClass::FullLc,
            CensusMode::Sampled {
                count: 5000,
                seed: 9,
            },
        )
        .unwrap();
        assert_eq!(tally(&q, 1).unwrap(), tally(&q, 7).unwrap());
    }

    #[test]
    fn small_exhaustive_report() {
        let q = CensusQuery::new(2, 0, SequenceClass::All, CensusMode::Exhaustive).unwrap();
        let r = census_distribution(&q, 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.totals.census, 16);
        assert_eq!(r.totals.formula, Some(16));
        assert!(r.rows.iter().all(|row| row.verdict == Verdict::Match));
    }

    #[test]
    fn missing_formula_is_an_error_only_for_verify() {
        let q = CensusQuery::new(3, 4, SequenceClass::LessLc, CensusMode::Exhaustive).unwrap();
        let r = census_distribution(&q, 1).unwrap();
        assert!(r.rows.iter().all(|row| row.verdict == Verdict::Unchecked));
        assert_eq!(r.totals.formula, None);
        assert!(verify_formulas(&q, 1).is_err());
    }
}
