//! Building blocks for counting sequences by their k-error linear complexity.
//!
//! A census walks sequence indices: index `i` is the period whose packed word equals `i`,
//! so position `t` holds bit `t` of `i`. Shards of the index range can be tallied
//! independently and summed, which keeps the result independent of how work is split.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;
use core::str::FromStr;

use crate::kerror::WordSearch;
use crate::sequence::period_mask;
use crate::{Error, Result, MAX_CENSUS_EXPONENT};

/// Which sequences a census covers, by weight parity of the period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SequenceClass {
    All,
    /// Odd weight, equivalently `L(s) = 2^n`.
    FullLc,
    /// Even weight, equivalently `L(s) < 2^n`.
    LessLc,
}

impl SequenceClass {
    pub const ALL: [SequenceClass; 3] = [Self::All, Self::FullLc, Self::LessLc];

    pub fn contains_weight(self, weight: u32) -> bool {
        match self {
            Self::All => true,
            Self::FullLc => weight % 2 == 1,
            Self::LessLc => weight % 2 == 0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::All => "all",
            Self::FullLc => "full",
            Self::LessLc => "less",
        }
    }

    /// Number of sequences of period `2^n` in the class.
    pub fn size(self, exponent: u32) -> u64 {
        let period = 1u64 << exponent;
        match self {
            Self::All => 1 << period,
            _ => 1 << (period - 1),
        }
    }

    /// Maps `raw` onto a class member. Restricted to the low `2^n` bits, `All` keeps
    /// `raw` as is; the parity classes overwrite bit 0 to fix the weight parity, so a
    /// uniform `raw` gives a uniform member.
    pub fn member(self, exponent: u32, raw: u64) -> u64 {
        let word = raw & period_mask(exponent);
        let rest = word & !1;
        let odd = u64::from(rest.count_ones() % 2);
        match self {
            Self::All => word,
            Self::FullLc => rest | (odd ^ 1),
            Self::LessLc => rest | odd,
        }
    }
}

impl fmt::Display for SequenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SequenceClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Self::All),
            "full" => Ok(Self::FullLc),
            "less" => Ok(Self::LessLc),
            _ => Err(Error::InvalidParams("class must be all, full or less")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CensusMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

/// Largest `k` a census accepts.
pub const MAX_CENSUS_K: u32 = 4;

/// Largest exponent for which an exhaustive census is allowed.
pub const MAX_EXHAUSTIVE_EXPONENT: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CensusQuery {
    pub n: u32,
    pub k: u32,
    pub class: SequenceClass,
    pub mode: CensusMode,
}

impl CensusQuery {
    pub fn new(n: u32, k: u32, class: SequenceClass, mode: CensusMode) -> Result<Self> {
        let q = Self { n, k, class, mode };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n > MAX_CENSUS_EXPONENT {
            return Err(Error::ExponentTooLarge {
                exponent: self.n,
                max: MAX_CENSUS_EXPONENT,
            });
        }
        if self.k > MAX_CENSUS_K {
            return Err(Error::InvalidParams("census k must be at most 4"));
        }
        match self.mode {
            CensusMode::Exhaustive if self.n > MAX_EXHAUSTIVE_EXPONENT => Err(Error::TooLarge(
                "exhaustive census needs n <= 4; use sampling",
            )),
            CensusMode::Sampled { count: 0, .. } => {
                Err(Error::InvalidParams("sample count must be at least 1"))
            }
            _ => Ok(()),
        }
    }

    /// Builds the per-sequence evaluator for this query.
    pub fn search(&self) -> Result<WordSearch> {
        self.validate()?;
        WordSearch::new(self.n, self.k as usize)
    }
}

/// Tallies `L_k` over the sequence indices in `indices` that belong to `class`.
/// Slot `L` of the result counts sequences with `L_k = L`, for `0 <= L <= 2^n`.
pub fn tally_range(search: &WordSearch, class: SequenceClass, indices: Range<u64>) -> Vec<u64> {
    let mut counts = vec![0u64; (1usize << search.exponent()) + 1];
    for word in indices {
        if class.contains_weight(word.count_ones()) {
            counts[search.value(word) as usize] += 1;
        }
    }
    counts
}

/// Tallies `L_k` over class members built from each raw word (see [`SequenceClass::member`]).
pub fn tally_words<I>(search: &WordSearch, class: SequenceClass, raw: I) -> Vec<u64>
where
    I: IntoIterator<Item = u64>,
{
    let mut counts = vec![0u64; (1usize << search.exponent()) + 1];
    for r in raw {
        let word = class.member(search.exponent(), r);
        counts[search.value(word) as usize] += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::rueppel_n;

    #[test]
    fn class_parsing() {
        for class in SequenceClass::ALL {
            assert_eq!(class.as_str().parse::<SequenceClass>(), Ok(class));
        }
        assert!("odd".parse::<SequenceClass>().is_err());
    }

    #[test]
    fn member_mapping_is_a_bijection_onto_the_class() {
        for class in [SequenceClass::FullLc, SequenceClass::LessLc] {
            let mut seen = vec![false; 1 << 8];
            for raw in (0u64..256).step_by(2) {
                let w = class.member(3, raw);
                assert!(class.contains_weight(w.count_ones()));
                assert!(!seen[w as usize]);
                seen[w as usize] = true;
            }
            assert_eq!(seen.iter().filter(|&&b| b).count() as u64, class.size(3));
        }
        assert_eq!(SequenceClass::All.member(2, 0xFFF5), 5);
    }

    #[test]
    fn query_validation() {
        use CensusMode::*;
        assert!(CensusQuery::new(4, 4, SequenceClass::All, Exhaustive).is_ok());
        assert!(matches!(
            CensusQuery::new(5, 3, SequenceClass::All, Exhaustive),
            Err(Error::TooLarge(_))
        ));
        assert!(CensusQuery::new(5, 3, SequenceClass::All, Sampled { count: 10, seed: 1 }).is_ok());
        assert!(
            CensusQuery::new(6, 1, SequenceClass::All, Sampled { count: 10, seed: 1 }).is_err()
        );
        assert!(CensusQuery::new(3, 5, SequenceClass::All, Exhaustive).is_err());
        assert!(CensusQuery::new(3, 1, SequenceClass::All, Sampled { count: 0, seed: 1 }).is_err());
    }

    #[test]
    fn zero_error_census_is_rueppel() {
        let search = WordSearch::new(2, 0).unwrap();
        let counts = tally_range(&search, SequenceClass::All, 0..16);
        for (l, &c) in counts.iter().enumerate() {
            assert_eq!(u64::try_from(rueppel_n(2, l as u64).unwrap()).unwrap(), c);
        }
    }

    #[test]
    fn shards_add_up() {
        let search = WordSearch::new(3, 2).unwrap();
        let whole = tally_range(&search, SequenceClass::LessLc, 0..256);
        let a = tally_range(&search, SequenceClass::LessLc, 0..100);
        let b = tally_range(&search, SequenceClass::LessLc, 100..256);
        let sum: Vec<u64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        assert_eq!(whole, sum);
        assert_eq!(whole.iter().sum::<u64>(), 128);
    }
}
