//! Exact k-error linear complexity.
//!
//! `L_k(s)` is the smallest linear complexity reachable by flipping at most `k` bits of
//! one period. The search enumerates error patterns by increasing weight and, within a
//! weight, in lexicographic order of positions, so the first pattern reaching the
//! minimum is the reported witness.
//!
//! Only patterns that leave the result with even weight can lower the complexity:
//! an odd-weight result has complexity `2^n`, which never beats the unmodified
//! sequence. Patterns whose weight has the wrong parity are skipped.

use alloc::vec;
use alloc::vec::Vec;

use crate::lc::{games_chan_in_place, games_chan_word};
use crate::sequence::{check_exponent, WORD_BITS, WORD_EXPONENT};
use crate::{games_chan_lc, Error, PeriodicSequence, Result};

/// Upper bound on error patterns a single search may enumerate.
pub const DEFAULT_SEARCH_BUDGET: u128 = 100_000_000;

/// Positions flipped within one period, strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ErrorPattern(Vec<usize>);

impl ErrorPattern {
    pub fn new(mut positions: Vec<usize>) -> Result<Self> {
        positions.sort_unstable();
        if positions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSupport("repeated position"));
        }
        Ok(Self(positions))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn to_sequence(&self, exponent: u32) -> Result<PeriodicSequence> {
        PeriodicSequence::from_positions(exponent, &self.0)
    }

    /// `s + e` for this pattern `e`.
    pub fn apply(&self, s: &PeriodicSequence) -> Result<PeriodicSequence> {
        s.add(&self.to_sequence(s.exponent())?)
    }
}

/// `L_k(s)` together with a pattern of weight at most `k` that reaches it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KErrorResult {
    pub k: usize,
    pub value: u64,
    pub witness: ErrorPattern,
}

/// Saturating binomial coefficient.
fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays exact because acc = C(n, i).
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of patterns the search enumerates for a sequence of this weight parity,
/// counting the empty pattern.
pub fn search_size(period: usize, odd_weight: bool, k: usize) -> u128 {
    let parity = usize::from(odd_weight);
    (1..=k).filter(|w| w % 2 == parity).fold(1u128, |acc, w| {
        acc.saturating_add(binomial(period as u128, w as u128))
    })
}

/// Working copy of the searched sequence; patterns are toggled in and out of it.
enum Scratch {
    Word {
        word: u64,
        exponent: u32,
    },
    Words {
        current: Vec<u64>,
        buf: Vec<u64>,
        exponent: u32,
    },
}

impl Scratch {
    fn new(s: &PeriodicSequence) -> Self {
        match s.as_word() {
            Some(word) => Scratch::Word {
                word,
                exponent: s.exponent(),
            },
            None => Scratch::Words {
                current: s.words().to_vec(),
                buf: vec![0; s.words().len()],
                exponent: s.exponent(),
            },
        }
    }

    #[inline]
    fn flip(&mut self, p: usize) {
        match self {
            Scratch::Word { word, .. } => *word ^= 1 << p,
            Scratch::Words { current, .. } => current[p / WORD_BITS] ^= 1 << (p % WORD_BITS),
        }
    }

    #[inline]
    fn eval(&mut self) -> u64 {
        match self {
            Scratch::Word { word, exponent } => games_chan_word(*word, *exponent),
            Scratch::Words {
                current,
                buf,
                exponent,
            } => {
                buf.copy_from_slice(current);
                games_chan_in_place(buf, *exponent)
            }
        }
    }
}

/// Best `(value, witness)` for every budget `0..=k`.
fn search(s: &PeriodicSequence, k: usize, budget: u128) -> Result<Vec<(u64, Vec<usize>)>> {
    check_exponent(s.exponent())?;
    let period = s.period();
    if k > period {
        return Err(Error::InvalidParams("k exceeds the period"));
    }
    let odd = s.weight() % 2 == 1;
    let size = search_size(period, odd, k);
    if size > budget {
        return Err(Error::SearchTooLarge(size));
    }

    let mut scratch = Scratch::new(s);
    let mut best = (games_chan_lc(s), Vec::new());
    let mut out = Vec::with_capacity(k + 1);
    out.push(best.clone());

    for weight in 1..=k {
        if best.0 > 0 && weight % 2 == usize::from(odd) {
            scan_weight(&mut scratch, period, weight, &mut best);
        }
        out.push(best.clone());
    }
    Ok(out)
}

/// Visits all `weight`-subsets of `0..period` in lexicographic order, keeping the first
/// strict improvement on `best`. Stops early once `best` reaches 0.
fn scan_weight(scratch: &mut Scratch, period: usize, weight: usize, best: &mut (u64, Vec<usize>)) {
    let mut combo: Vec<usize> = (0..weight).collect();
    for &p in &combo {
        scratch.flip(p);
    }
    loop {
        let value = scratch.eval();
        if value < best.0 {
            *best = (value, combo.clone());
            if value == 0 {
                break;
            }
        }
        // Advance to the next combination, applying only the changed positions.
        let Some(i) = (0..weight).rev().find(|&i| combo[i] < period - weight + i) else {
            break;
        };
        for &p in &combo[i..] {
            scratch.flip(p);
        }
        combo[i] += 1;
        for t in i + 1..weight {
            combo[t] = combo[t - 1] + 1;
        }
        for &p in &combo[i..] {
            scratch.flip(p);
        }
    }
    for &p in &combo {
        scratch.flip(p);
    }
}

/// Exact `L_k(s)` with the lowest-weight, lexicographically smallest witness.
pub fn k_error_lc(s: &PeriodicSequence, k: usize) -> Result<KErrorResult> {
    k_error_lc_with_budget(s, k, DEFAULT_SEARCH_BUDGET)
}

pub fn k_error_lc_with_budget(
    s: &PeriodicSequence,
    k: usize,
    budget: u128,
) -> Result<KErrorResult> {
    let (value, witness) = search(s, k, budget)?
        .pop()
        .expect("search yields k + 1 entries");
    Ok(KErrorResult {
        k,
        value,
        witness: ErrorPattern(witness),
    })
}

/// `[(0, L_0), (1, L_1), ..., (k_max, L_{k_max})]`, from a single enumeration.
pub fn k_error_profile(s: &PeriodicSequence, k_max: usize) -> Result<Vec<(usize, u64)>> {
    Ok(search(s, k_max, DEFAULT_SEARCH_BUDGET)?
        .into_iter()
        .enumerate()
        .map(|(k, (value, _))| (k, value))
        .collect())
}

/// Kurosawa's closed form for the least `k` with `L_k(s) < L(s)`:
/// `2^{W_H(2^n - L(s))}`, where `W_H` counts the ones in the binary representation.
pub fn k_min_formula(s: &PeriodicSequence) -> Result<u64> {
    if s.is_zero() {
        return Err(Error::UndefinedForZeroSequence);
    }
    let gap = s.period() as u64 - games_chan_lc(s);
    Ok(1u64 << gap.count_ones())
}

/// Least `k <= cap` with `L_k(s) < L(s)`, by exhaustive search.
pub fn k_min_search(s: &PeriodicSequence, cap: usize) -> Result<usize> {
    if s.is_zero() {
        return Err(Error::UndefinedForZeroSequence);
    }
    let cap = cap.min(s.period());
    let profile = search(s, cap, DEFAULT_SEARCH_BUDGET)?;
    let l0 = profile[0].0;
    profile
        .iter()
        .position(|(value, _)| *value < l0)
        .ok_or(Error::NotFoundWithinCap { cap })
}

/// Precomputed error masks for repeated `L_k` evaluation on single-word periods.
///
/// The census evaluates millions of sequences with the same `(n, k)`; building the
/// masks once and splitting them by weight parity keeps the inner loop to a Games-Chan
/// call per candidate.
#[derive(Clone, Debug)]
pub struct WordSearch {
    exponent: u32,
    k: usize,
    even: Vec<u64>,
    odd: Vec<u64>,
}

impl WordSearch {
    pub fn new(exponent: u32, k: usize) -> Result<Self> {
        if exponent > WORD_EXPONENT {
            return Err(Error::InvalidParams("word search needs exponent <= 6"));
        }
        let period = 1usize << exponent;
        if k > period {
            return Err(Error::InvalidParams("k exceeds the period"));
        }
        let size = search_size(period, false, k).saturating_add(search_size(period, true, k));
        if size > DEFAULT_SEARCH_BUDGET {
            return Err(Error::SearchTooLarge(size));
        }
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for weight in 1..=k {
            let target = if weight % 2 == 0 { &mut even } else { &mut odd };
            let mut combo: Vec<usize> = (0..weight).collect();
            loop {
                target.push(combo.iter().fold(0u64, |m, &p| m | 1 << p));
                let Some(i) = (0..weight).rev().find(|&i| combo[i] < period - weight + i) else {
                    break;
                };
                combo[i] += 1;
                for t in i + 1..weight {
                    combo[t] = combo[t - 1] + 1;
                }
            }
        }
        Ok(Self {
            exponent,
            k,
            even,
            odd,
        })
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `L_k` of the period packed in `word`.
    #[inline]
    pub fn value(&self, word: u64) -> u64 {
        let mut best = games_chan_word(word, self.exponent);
        if best == 0 {
            return 0;
        }
        let masks = if word.count_ones() % 2 == 0 {
            &self.even
        } else {
            &self.odd
        };
        for &m in masks {
            let v = games_chan_word(word ^ m, self.exponent);
            if v < best {
                best = v;
                if best == 0 {
                    break;
                }
            }
        }
        best
    }
}
