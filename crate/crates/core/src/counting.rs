//! Closed-form counting functions for the k-error linear complexity distribution.
//!
//! Every function answers "how many sequences of period `2^n` have k-error linear
//! complexity `L`", restricted to a class of sequences:
//!
//! | function          | k | class                          |
//! |-------------------|---|--------------------------------|
//! | [`rueppel_n`]     | 0 | all                            |
//! | [`meidl_n1_full`] | 1 | odd weight (`L(s) = 2^n`)      |
//! | [`n2_lcless`]     | 2 | even weight (`L(s) < 2^n`)     |
//! | [`n2_lcfull`]     | 2 | odd weight                     |
//! | [`n2_total`]      | 2 | all                            |
//! | [`n3_lcless`]     | 3 | even weight                    |
//! | [`n3_lcfull`]     | 3 | odd weight                     |
//! | [`n3_total`]      | 3 | all                            |
//! | [`n4_lcfull`]     | 4 | odd weight                     |
//!
//! Apart from `L = 0`, each one is driven by writing `L = 2^n - 2^r + c` with
//! `2 <= r <= n` and `1 <= c <= 2^(r-1) - 1` (see [`decompose_l`]). Values of `L` with no
//! such form never occur as a 2- or 3-error linear complexity and count 0.
//!
//! Arithmetic is exact throughout; `2^(L-1)` outgrows a machine word from `n = 7` on.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::census::SequenceClass;
use crate::sequence::check_exponent;
use crate::{Error, Result};

pub type BigCount = BigUint;

/// Shape of `c` within `L = 2^n - 2^r + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subcase {
    /// `1 <= c <= 2^(r-2) - 1`, only possible for `r > 2`.
    Small,
    /// `c = 2^(r-1) - 2^(r-m)` with `1 < m <= r`.
    PowerGap { m: u32 },
    /// `c = 2^(r-1) - 2^(r-m) + x` with `1 < m < r - 1` and `0 < x < 2^(r-m-1)`.
    GapPlus { m: u32, x: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LKind {
    Zero,
    /// `2^n - L` is zero or a power of two: no `(r, c)` exists.
    Others,
    Case {
        r: u32,
        c: u64,
        subcase: Subcase,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LDecomposition {
    pub n: u32,
    pub l: u64,
    pub kind: LKind,
}

fn bit_length(v: u64) -> u32 {
    64 - v.leading_zeros()
}

/// Writes `L` as `2^n - 2^r + c` and classifies `c`.
pub fn decompose_l(n: u32, l: u64) -> Result<LDecomposition> {
    check_exponent(n)?;
    let full = 1u64 << n;
    if l > full {
        return Err(Error::InvalidL { n, l });
    }
    let kind = if l == 0 {
        LKind::Zero
    } else {
        let gap = full - l;
        if gap.is_power_of_two() || gap == 0 {
            LKind::Others
        } else {
            let r = bit_length(gap);
            let c = (1u64 << r) - gap;
            let subcase = if r > 2 && c < 1 << (r - 2) {
                Subcase::Small
            } else {
                let e = (1u64 << (r - 1)) - c;
                if e.is_power_of_two() {
                    Subcase::PowerGap {
                        m: r - e.trailing_zeros(),
                    }
                } else {
                    let m = r - bit_length(e);
                    Subcase::GapPlus {
                        m,
                        x: (1u64 << (r - m)) - e,
                    }
                }
            };
            LKind::Case { r, c, subcase }
        }
    };
    Ok(LDecomposition { n, l, kind })
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

fn choose(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C(2^e, k)`.
fn choose_pow2(e: u32, k: u64) -> BigInt {
    choose(1u64 << e, k)
}

fn into_count(v: BigInt) -> BigCount {
    match v.into_parts() {
        (Sign::Minus, _) => unreachable!("counting functions are non-negative on their domain"),
        (_, magnitude) => magnitude,
    }
}

/// `2^(L-1)` for `L >= 1`.
fn lead(l: u64) -> BigInt {
    pow2(l - 1)
}

/// `C(2^r, 2) + 1 - 3 * 2^(r+m-3)`, the even-weight bracket for `c = 2^(r-1) - 2^(r-m)`.
fn less_power_gap(r: u32, m: u32) -> BigInt {
    choose_pow2(r, 2) + 1 - 3 * pow2(u64::from(r + m - 3))
}

/// `C(2^r, 2) + 1 + 2^(r-m) - 2^(r+m-2)`, the even-weight bracket for the `+x` case.
fn less_gap_plus(r: u32, m: u32) -> BigInt {
    choose_pow2(r, 2) + 1 + pow2(u64::from(r - m)) - pow2(u64::from(r + m - 2))
}

fn f_big(r: u32, m: u32) -> BigInt {
    let (r64, m64) = (u64::from(r), u64::from(m));
    let side = choose_pow2(r - m, 2);
    let pm2 = pow2(m64 - 2) - 1;
    // 2^(r-m-1) * C(2^(m-1), 3); the exponent is -1 when m = r, and the product
    // is still an integer there because C(2^(m-1), 3) is even.
    let halved = pow2(r64 - m64) * choose_pow2(m - 1, 3);
    debug_assert!((&halved % 2u32).is_zero());
    choose_pow2(r, 3)
        - pow2(r64 - m64) * choose_pow2(m, 3)
        - &side * choose_pow2(m, 2) * pow2(m64 + 1)
        + &side * pow2(2 * m64) * &pm2
        + halved / 2u32
        - pow2(r64 - 2) * &pm2
}

fn g_big(r: u32, m: u32) -> BigInt {
    let (r64, m64) = (u64::from(r), u64::from(m));
    let side = choose_pow2(r - m, 2);
    choose_pow2(r, 3)
        - (pow2(m64 - 2) - 1) * pow2(r64 + 1)
        - (pow2(m64 - 1) - 1) * &side * pow2(m64 + 1)
        - 3 * pow2(r64 - m64 - 2) * (choose_pow2(m, 3) - 4 * choose_pow2(m - 1, 2))
        - &side * (choose_pow2(m, 2) - pow2(m64 - 1)) * pow2(m64)
}

/// The odd-weight 3-error term for `c = 2^(r-1) - 2^(r-m)`, `1 < m <= r`.
pub fn f_term(r: u32, m: u32) -> Result<BigCount> {
    check_exponent(r)?;
    if !(1 < m && m <= r) {
        return Err(Error::InvalidParams("f needs 1 < m <= r"));
    }
    Ok(into_count(f_big(r, m)))
}

/// The odd-weight 3-error term for `c = 2^(r-1) - 2^(r-m) + x`, `1 < m < r - 1`.
pub fn g_term(r: u32, m: u32) -> Result<BigCount> {
    check_exponent(r)?;
    if !(1 < m && m + 1 < r) {
        return Err(Error::InvalidParams("g needs 1 < m < r - 1"));
    }
    Ok(into_count(g_big(r, m)))
}

/// Number of sequences with linear complexity `L` (k = 0, all sequences).
pub fn rueppel_n(n: u32, l: u64) -> Result<BigCount> {
    decompose_l(n, l)?;
    Ok(if l == 0 {
        BigCount::one()
    } else {
        BigCount::one() << (l - 1)
    })
}

/// Odd-weight sequences with 1-error linear complexity `L`.
pub fn meidl_n1_full(n: u32, l: u64) -> Result<BigCount> {
    let d = decompose_l(n, l)?;
    Ok(match d.kind {
        LKind::Zero => BigCount::one() << n,
        LKind::Case { r, .. } => BigCount::one() << (l + u64::from(r) - 1),
        LKind::Others => BigCount::zero(),
    })
}

/// Even-weight sequences (`L(s) < 2^n`) with 2-error linear complexity `L`.
pub fn n2_lcless(n: u32, l: u64) -> Result<BigCount> {
    let d = decompose_l(n, l)?;
    let v = match d.kind {
        LKind::Zero => choose_pow2(n, 2) + 1,
        LKind::Others => BigInt::zero(),
        LKind::Case { r, subcase, .. } => {
            lead(l)
                * match subcase {
                    Subcase::Small => choose_pow2(r, 2) + 1,
                    Subcase::PowerGap { m } => less_power_gap(r, m),
                    Subcase::GapPlus { m, .. } => less_gap_plus(r, m),
                }
        }
    };
    Ok(into_count(v))
}

/// Even-weight sequences with 3-error linear complexity `L`. Flipping three bits of an
/// even-weight period gives odd weight and complexity `2^n`, so `L_3 = L_2` here.
pub fn n3_lcless(n: u32, l: u64) -> Result<BigCount> {
    n2_lcless(n, l)
}

/// Odd-weight sequences with 2-error linear complexity `L`; `L_2 = L_1` on this class.
pub fn n2_lcfull(n: u32, l: u64) -> Result<BigCount> {
    meidl_n1_full(n, l)
}

/// Odd-weight sequences (`L(s) = 2^n`) with 3-error linear complexity `L`.
pub fn n3_lcfull(n: u32, l: u64) -> Result<BigCount> {
    let d = decompose_l(n, l)?;
    let v = match d.kind {
        LKind::Zero => choose_pow2(n, 3) + pow2(u64::from(n)),
        LKind::Others => BigInt::zero(),
        LKind::Case { r, subcase, .. } => match subcase {
            Subcase::Small => lead(l) * (choose_pow2(r, 3) + pow2(u64::from(r))),
            Subcase::PowerGap { m } if r > 3 => lead(l) * f_big(r, m),
            Subcase::GapPlus { m, .. } if r > 3 => lead(l) * g_big(r, m),
            _ => BigInt::zero(),
        },
    };
    Ok(into_count(v))
}

/// Odd-weight sequences with 4-error linear complexity `L`; `L_4 = L_3` on this class.
pub fn n4_lcfull(n: u32, l: u64) -> Result<BigCount> {
    n3_lcfull(n, l)
}

/// All sequences with 2-error linear complexity `L`, as a single piecewise formula.
pub fn n2_total(n: u32, l: u64) -> Result<BigCount> {
    let d = decompose_l(n, l)?;
    let v = match d.kind {
        LKind::Zero => choose_pow2(n, 2) + pow2(u64::from(n)) + 1,
        LKind::Others => BigInt::zero(),
        LKind::Case { r, subcase, .. } => {
            let pr = pow2(u64::from(r));
            lead(l)
                * match subcase {
                    Subcase::Small => choose_pow2(r, 2) + pr + 1,
                    Subcase::PowerGap { m } => less_power_gap(r, m) + pr,
                    Subcase::GapPlus { m, .. } => less_gap_plus(r, m) + pr,
                }
        }
    };
    Ok(into_count(v))
}

/// All sequences with 3-error linear complexity `L`, as a single piecewise formula.
///
/// The `Small` branch uses `C(2^r, 3)`: with `C(2^n, 3)` there the branch would not
/// equal the sum of its two class counts, and the `n = 4, L = 9` row would not be 23808.
pub fn n3_total(n: u32, l: u64) -> Result<BigCount> {
    let d = decompose_l(n, l)?;
    let v = match d.kind {
        LKind::Zero => choose_pow2(n, 3) + choose_pow2(n, 2) + pow2(u64::from(n)) + 1,
        LKind::Others => BigInt::zero(),
        LKind::Case { r, subcase, .. } => {
            lead(l)
                * match subcase {
                    Subcase::PowerGap { m } if r <= 3 => less_power_gap(r, m),
                    Subcase::Small => {
                        choose_pow2(r, 3) + choose_pow2(r, 2) + pow2(u64::from(r)) + 1
                    }
                    Subcase::PowerGap { m } => less_power_gap(r, m) + f_big(r, m),
                    Subcase::GapPlus { m, .. } => less_gap_plus(r, m) + g_big(r, m),
                }
        }
    };
    Ok(into_count(v))
}

/// The published (and incorrect) 3-error counts for `n = 4` that [`n3_total`] refutes.
pub const KAVULURU_TABLE1: [u64; 16] = [
    697, 697, 1394, 2788, 5128, 10704, 18720, 30272, 0, 23808, 22016, 37888, 0, 4096, 0, 0,
];

pub fn kavuluru_table1(l: u64) -> Result<BigCount> {
    KAVULURU_TABLE1
        .get(l as usize)
        .map(|&v| BigCount::from(v))
        .ok_or(Error::InvalidL { n: 4, l })
}

/// Closed-form count for `k`-error linear complexity `L` within `class`.
///
/// Besides the table in the module docs, `k = 0` and `k = 1` follow from Rueppel's
/// count and the parity rule: an even-weight period keeps `L_1 = L_0`, and the odd-weight
/// class is exactly the sequences with `L = 2^n`.
pub fn expected_count(n: u32, k: u32, class: SequenceClass, l: u64) -> Result<BigCount> {
    use SequenceClass::*;
    let full = 1u64 << n;
    match (k, class) {
        (0, All) => rueppel_n(n, l),
        (0, FullLc) => {
            decompose_l(n, l)?;
            Ok(if l == full {
                BigCount::one() << (full - 1)
            } else {
                BigCount::zero()
            })
        }
        (0 | 1, LessLc) => {
            decompose_l(n, l)?;
            if l == full {
                Ok(BigCount::zero())
            } else {
                rueppel_n(n, l)
            }
        }
        (1, FullLc) => meidl_n1_full(n, l),
        (1, All) => Ok(expected_count(n, 1, LessLc, l)? + meidl_n1_full(n, l)?),
        (2, LessLc) => n2_lcless(n, l),
        (2, FullLc) => n2_lcfull(n, l),
        (2, All) => n2_total(n, l),
        (3, LessLc) => n3_lcless(n, l),
        (3, FullLc) => n3_lcfull(n, l),
        (3, All) => n3_total(n, l),
        (4, FullLc) => n4_lcfull(n, l),
        _ => Err(Error::NoFormulaAvailable {
            k,
            class: class.as_str(),
        }),
    }
}
