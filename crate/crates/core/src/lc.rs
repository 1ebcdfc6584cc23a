//! Linear complexity of `2^n`-periodic binary sequences.
//!
//! Over GF(2), `1 - x^N = (1 + x)^N` when `N = 2^n`, so the linear complexity of a
//! sequence is `N` minus the multiplicity of the root `x = 1` in its period polynomial.
//! [`games_chan_lc`] gets there by repeated halving; [`lc_by_minimal_polynomial`] counts
//! the root multiplicity directly and serves as its oracle.

use alloc::vec::Vec;

use crate::sequence::{check_exponent, period_mask, WORD_EXPONENT};
use crate::{Error, PeriodicSequence, Result};

/// Games-Chan on a period packed in the low `2^n` bits of `word` (`n <= 6`).
#[inline]
pub fn games_chan_word(mut word: u64, exponent: u32) -> u64 {
    debug_assert!(exponent <= WORD_EXPONENT);
    let mut lc = 0;
    for t in (0..exponent).rev() {
        let half = 1u32 << t;
        let mask = period_mask(t);
        let left = word & mask;
        let right = (word >> half) & mask;
        if left == right {
            word = left;
        } else {
            lc += u64::from(half);
            word = left ^ right;
        }
    }
    lc + (word & 1)
}

/// Games-Chan over a packed period, halving `buf` in place. `buf` holds
/// `2^(n-6)` words when `n > 6`.
pub(crate) fn games_chan_in_place(buf: &mut [u64], exponent: u32) -> u64 {
    let mut lc = 0;
    let mut len = buf.len();
    let mut n = exponent;
    while n > WORD_EXPONENT {
        let half = len / 2;
        let (left, right) = buf[..len].split_at_mut(half);
        if left != right {
            lc += 1u64 << (n - 1);
            for (l, r) in left.iter_mut().zip(right.iter()) {
                *l ^= *r;
            }
        }
        len = half;
        n -= 1;
    }
    lc + games_chan_word(buf[0], n)
}

/// Linear complexity `L(s)` by the Games-Chan algorithm.
///
/// At period `2^t`, equal halves recurse on the left half; unequal halves add `2^(t-1)`
/// and recurse on their sum. A period of length one adds its bit. The all-zero
/// sequence has complexity 0.
pub fn games_chan_lc(s: &PeriodicSequence) -> u64 {
    match s.as_word() {
        Some(word) => games_chan_word(word, s.exponent()),
        None => games_chan_in_place(&mut s.words().to_vec(), s.exponent()),
    }
}

/// Linear complexity as `2^n - mu`, where `mu` is the multiplicity of the root 1 in
/// `s^N(x) = s_0 + s_1 x + ... + s_{N-1} x^{N-1}`, found by dividing out `(1 + x)`
/// one factor at a time. The all-zero sequence gives 0.
pub fn lc_by_minimal_polynomial(s: &PeriodicSequence) -> u64 {
    let mut poly: Vec<u64> = s.words().to_vec();
    trim(&mut poly);
    if poly.is_empty() {
        return 0;
    }
    let mut multiplicity = 0u64;
    // p(1) is the remainder of division by (1 + x).
    while poly.iter().fold(0, |acc, w| acc ^ w.count_ones()) & 1 == 0 {
        divide_by_one_plus_x(&mut poly);
        trim(&mut poly);
        multiplicity += 1;
    }
    s.period() as u64 - multiplicity
}

fn trim(poly: &mut Vec<u64>) {
    while poly.last() == Some(&0) {
        poly.pop();
    }
}

/// Exact division by `(1 + x)`; only valid when `p(1) = 0`.
///
/// With `p = (1 + x) q`, the quotient coefficient `q_j` is the sum of `p_t` over `t > j`,
/// so `q` is the inclusive suffix sum of `p` shifted down one place.
fn divide_by_one_plus_x(poly: &mut [u64]) {
    let mut carry = 0u64;
    for word in poly.iter_mut().rev() {
        let mut s = *word;
        s ^= s >> 1;
        s ^= s >> 2;
        s ^= s >> 4;
        s ^= s >> 8;
        s ^= s >> 16;
        s ^= s >> 32;
        s ^= carry;
        carry = if s & 1 == 1 { !0 } else { 0 };
        *word = s;
    }
    for i in 0..poly.len() {
        let next = poly.get(i + 1).map_or(0, |w| w & 1);
        poly[i] = poly[i] >> 1 | next << 63;
    }
}

/// `L(E_i + E_j) = 2^n - 2^r`, where `2^r` is the largest power of two dividing `j - i`.
pub fn lc_pair(i: usize, j: usize, exponent: u32) -> Result<u64> {
    check_exponent(exponent)?;
    if i >= j {
        return Err(Error::InvalidSupport("need i < j"));
    }
    if j >= 1 << exponent {
        return Err(Error::InvalidSupport("position outside the period"));
    }
    let r = (j - i).trailing_zeros();
    Ok((1u64 << exponent) - (1u64 << r))
}

/// Closed form for a weight-4 sequence with support `{i, j, k, l}`.
///
/// Requires `i < j`, `i < k < l`, four distinct positions and `k - i` odd. With `d` and
/// `e` the 2-adic valuations of `j - i` and `l - k`, returns `2^n - (1 + 2^d)` when
/// `d == e` and `2^n - 2^min(d, e)` otherwise.
pub fn lc_quad(i: usize, j: usize, k: usize, l: usize, exponent: u32) -> Result<u64> {
    check_exponent(exponent)?;
    let period = 1usize << exponent;
    if [i, j, k, l].iter().any(|&p| p >= period) {
        return Err(Error::InvalidSupport("position outside the period"));
    }
    if !(i < j && i < k && k < l) {
        return Err(Error::LemmaPreconditionViolated("need i < j and i < k < l"));
    }
    if j == k || j == l {
        return Err(Error::LemmaPreconditionViolated(
            "positions must be distinct",
        ));
    }
    if (k - i) % 2 == 0 {
        return Err(Error::LemmaPreconditionViolated("k - i must be odd"));
    }
    let d = (j - i).trailing_zeros();
    let e = (l - k).trailing_zeros();
    let full = 1u64 << exponent;
    Ok(if d == e {
        full - (1 + (1u64 << d))
    } else {
        full - (1u64 << d.min(e))
    })
}
