//! One period of a binary sequence with period `2^n`.
//!
//! Bits are packed into `u64` words: position 0 is the least significant bit of word 0,
//! position 64 the least significant bit of word 1, and so on. Periods shorter than a
//! word occupy the low bits of a single word and the unused high bits are always zero.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result, MAX_EXPONENT};

pub(crate) const WORD_BITS: usize = 64;
/// Exponent of the longest period that fits in one word.
pub(crate) const WORD_EXPONENT: u32 = 6;

pub(crate) fn check_exponent(exponent: u32) -> Result<()> {
    if exponent > MAX_EXPONENT {
        return Err(Error::ExponentTooLarge {
            exponent,
            max: MAX_EXPONENT,
        });
    }
    Ok(())
}

pub(crate) fn word_count(exponent: u32) -> usize {
    if exponent <= WORD_EXPONENT {
        1
    } else {
        1 << (exponent - WORD_EXPONENT)
    }
}

/// Mask of the valid bits in a single-word period.
pub(crate) fn period_mask(exponent: u32) -> u64 {
    if exponent >= WORD_EXPONENT {
        !0
    } else {
        (1u64 << (1u32 << exponent)) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PeriodicSequence {
    exponent: u32,
    words: Vec<u64>,
}

impl PeriodicSequence {
    /// The all-zero sequence of period `2^exponent`.
    pub fn zero(exponent: u32) -> Result<Self> {
        check_exponent(exponent)?;
        Ok(Self {
            exponent,
            words: vec![0; word_count(exponent)],
        })
    }

    /// `E_i`: a single one at `position`.
    pub fn unit(exponent: u32, position: usize) -> Result<Self> {
        Self::from_positions(exponent, &[position])
    }

    /// Builds a sequence from its support. Positions may come in any order but must be
    /// distinct and inside the period.
    pub fn from_positions(exponent: u32, positions: &[usize]) -> Result<Self> {
        let mut seq = Self::zero(exponent)?;
        for &p in positions {
            if p >= seq.period() {
                return Err(Error::InvalidSupport("position outside the period"));
            }
            if seq.bit(p) {
                return Err(Error::InvalidSupport("repeated position"));
            }
            seq.flip(p);
        }
        Ok(seq)
    }

    /// Builds a sequence of period at most 64 from the low bits of `word`.
    pub fn from_word(exponent: u32, word: u64) -> Result<Self> {
        if exponent > WORD_EXPONENT {
            return Err(Error::InvalidParams("from_word needs exponent <= 6"));
        }
        if word & !period_mask(exponent) != 0 {
            return Err(Error::InvalidPeriod {
                expected: 1 << exponent,
                found: (WORD_BITS - word.leading_zeros() as usize),
            });
        }
        Ok(Self {
            exponent,
            words: vec![word],
        })
    }

    pub fn from_bits<I>(exponent: u32, bits: I) -> Result<Self>
    where
        I: IntoIterator<Item = bool>,
    {
        let mut seq = Self::zero(exponent)?;
        let mut len = 0;
        for bit in bits {
            if len < seq.period() && bit {
                seq.flip(len);
            }
            len += 1;
        }
        if len != seq.period() {
            return Err(Error::InvalidPeriod {
                expected: seq.period(),
                found: len,
            });
        }
        Ok(seq)
    }

    /// Parses one period given either as `2^n` binary digits (position 0 first) or as
    /// `2^n / 4` hex digits decoded most-significant-bit first. The length decides which.
    pub fn parse(text: &str, exponent: u32) -> Result<Self> {
        check_exponent(exponent)?;
        let period = 1usize << exponent;
        let len = text.chars().count();
        if len != period && exponent >= 2 && len == period / 4 {
            Self::parse_hex(text, exponent)
        } else {
            Self::parse_binary(text, exponent)
        }
    }

    pub fn parse_binary(text: &str, exponent: u32) -> Result<Self> {
        check_exponent(exponent)?;
        let period = 1usize << exponent;
        let found = text.chars().count();
        if found != period {
            return Err(Error::InvalidPeriod {
                expected: period,
                found,
            });
        }
        let mut seq = Self::zero(exponent)?;
        for (offset, digit) in text.chars().enumerate() {
            match digit {
                '0' => {}
                '1' => seq.flip(offset),
                _ => return Err(Error::InvalidDigit { digit, offset }),
            }
        }
        Ok(seq)
    }

    /// Hex form: each digit covers four consecutive positions, most significant bit at
    /// the lowest position. `"8000"` at `n = 4` is `E_0`.
    pub fn parse_hex(text: &str, exponent: u32) -> Result<Self> {
        check_exponent(exponent)?;
        if exponent < 2 {
            return Err(Error::InvalidParams(
                "hex input needs a period of at least 4",
            ));
        }
        let expected = 1usize << (exponent - 2);
        let found = text.chars().count();
        if found != expected {
            return Err(Error::InvalidPeriod { expected, found });
        }
        let mut seq = Self::zero(exponent)?;
        for (offset, digit) in text.chars().enumerate() {
            let value = digit
                .to_digit(16)
                .ok_or(Error::InvalidDigit { digit, offset })?;
            for b in 0..4 {
                if value >> (3 - b) & 1 == 1 {
                    seq.flip(4 * offset + b);
                }
            }
        }
        Ok(seq)
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Period length `2^n`.
    pub fn period(&self) -> usize {
        1 << self.exponent
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The packed period when it fits in one word (`n <= 6`).
    pub fn as_word(&self) -> Option<u64> {
        (self.exponent <= WORD_EXPONENT).then(|| self.words[0])
    }

    pub fn bit(&self, position: usize) -> bool {
        debug_assert!(position < self.period());
        self.words[position / WORD_BITS] >> (position % WORD_BITS) & 1 == 1
    }

    pub(crate) fn flip(&mut self, position: usize) {
        debug_assert!(position < self.period());
        self.words[position / WORD_BITS] ^= 1 << (position % WORD_BITS);
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.period()).map(move |i| self.bit(i))
    }

    /// Hamming weight `W(s)` of one period.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn support(&self) -> SupportSet {
        let mut positions = Vec::with_capacity(self.weight());
        for (i, &word) in self.words.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                positions.push(i * WORD_BITS + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        SupportSet(positions)
    }

    /// Termwise sum over GF(2).
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.exponent != other.exponent {
            return Err(Error::PeriodMismatch {
                left: self.exponent,
                right: other.exponent,
            });
        }
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Self {
            exponent: self.exponent,
            words,
        })
    }

    /// First and second half of the period, as sequences of half the period.
    pub fn halves(&self) -> Result<(Self, Self)> {
        if self.exponent == 0 {
            return Err(Error::CannotHalve);
        }
        let exponent = self.exponent - 1;
        if self.exponent <= WORD_EXPONENT {
            let half = 1u32 << exponent;
            let mask = period_mask(exponent);
            let w = self.words[0];
            let left = Self {
                exponent,
                words: vec![w & mask],
            };
            let right = Self {
                exponent,
                words: vec![(w >> half) & mask],
            };
            return Ok((left, right));
        }
        let (l, r) = self.words.split_at(self.words.len() / 2);
        Ok((
            Self {
                exponent,
                words: l.to_vec(),
            },
            Self {
                exponent,
                words: r.to_vec(),
            },
        ))
    }

    /// The halving map `Left(s) + Right(s)`: bit `i` of the result is
    /// `s_i + s_{i + 2^(n-1)}`.
    pub fn phi(&self) -> Result<Self> {
        let (left, right) = self.halves()?;
        left.add(&right)
    }

    pub fn to_binary_string(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    /// Inverse of [`PeriodicSequence::parse_hex`]; `None` for periods shorter than 4.
    pub fn to_hex_string(&self) -> Option<String> {
        if self.exponent < 2 {
            return None;
        }
        let digits = (0..self.period() / 4)
            .map(|d| {
                let v = (0..4).fold(0u32, |acc, b| acc << 1 | self.bit(4 * d + b) as u32);
                char::from_digit(v, 16).unwrap().to_ascii_uppercase()
            })
            .collect();
        Some(digits)
    }
}

impl fmt::Display for PeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_binary_string())
    }
}

impl fmt::Debug for PeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent <= 8 {
            write!(f, "PeriodicSequence(n={}, {})", self.exponent, self)
        } else {
            write!(
                f,
                "PeriodicSequence(n={}, weight={})",
                self.exponent,
                self.weight()
            )
        }
    }
}

/// Positions of the nonzero bits of one period, strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SupportSet(Vec<usize>);

impl SupportSet {
    /// Sorts `positions`; repeated positions are rejected.
    pub fn new(mut positions: Vec<usize>) -> Result<Self> {
        positions.sort_unstable();
        if positions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSupport("repeated position"));
        }
        Ok(Self(positions))
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}
