use lcforge_core::census::{tally_range, CensusQuery};
use lcforge_core::counting::{
    decompose_l, expected_count, kavuluru_table1, meidl_n1_full, n2_lcfull, n2_lcless, n2_total,
    n3_lcfull, n3_lcless, n3_total, n4_lcfull, rueppel_n, BigCount, LKind, Subcase,
};
use lcforge_core::{CensusMode, Error, Result, SequenceClass};
use num_bigint::BigUint;
use proptest::prelude::*;

type CountFn = fn(u32, u64) -> Result<BigCount>;

fn total(f: CountFn, n: u32) -> BigUint {
    (0..=1u64 << n).map(|l| f(n, l).unwrap()).sum()
}

fn pow2(e: u64) -> BigUint {
    BigUint::from(1u32) << e
}

#[test]
fn every_class_sums_to_its_size() {
    let per_class: [(&str, CountFn); 6] = [
        ("meidl_n1_full", meidl_n1_full),
        ("n2_lcfull", n2_lcfull),
        ("n3_lcfull", n3_lcfull),
        ("n4_lcfull", n4_lcfull),
        ("n2_lcless", n2_lcless),
        ("n3_lcless", n3_lcless),
    ];
    let complete: [(&str, CountFn); 3] = [
        ("rueppel_n", rueppel_n),
        ("n2_total", n2_total),
        ("n3_total", n3_total),
    ];
    for n in 2..=6u32 {
        let period = 1u64 << n;
        for (name, f) in per_class {
            assert_eq!(total(f, n), pow2(period - 1), "{name} n={n}");
        }
        for (name, f) in complete {
            assert_eq!(total(f, n), pow2(period), "{name} n={n}");
        }
    }
}

#[test]
fn totals_split_into_classes() {
    for n in 2..=6u32 {
        for l in 0..=1u64 << n {
            assert_eq!(
                n2_total(n, l).unwrap(),
                n2_lcless(n, l).unwrap() + n2_lcfull(n, l).unwrap()
            );
            assert_eq!(
                n3_total(n, l).unwrap(),
                n3_lcless(n, l).unwrap() + n3_lcfull(n, l).unwrap()
            );
        }
    }
}

#[test]
fn decompositions_round_trip() {
    for n in 0..=10u32 {
        for l in 0..=1u64 << n {
            let d = decompose_l(n, l).unwrap();
            match d.kind {
                LKind::Zero => assert_eq!(l, 0),
                LKind::Others => {
                    let gap = (1u64 << n) - l;
                    assert!(gap == 0 || gap.is_power_of_two());
                }
                LKind::Case { r, c, subcase } => {
                    assert!((2..=n).contains(&r));
                    assert!((1..1u64 << (r - 1)).contains(&c));
                    assert_eq!((1u64 << n) - (1 << r) + c, l);
                    let top = 1u64 << (r - 1);
                    match subcase {
                        Subcase::Small => assert!(r > 2 && c < 1 << (r - 2)),
                        Subcase::PowerGap { m } => {
                            assert!(1 < m && m <= r);
                            assert_eq!(c, top - (1 << (r - m)));
                        }
                        Subcase::GapPlus { m, x } => {
                            assert!(1 < m && m + 1 < r);
                            assert!(0 < x && x < 1 << (r - m - 1));
                            assert_eq!(c, top - (1 << (r - m)) + x);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn published_table_disagrees_exactly_where_underlined() {
    let wrong: Vec<u64> = (0..16)
        .filter(|&l| n3_total(4, l).unwrap() != kavuluru_table1(l).unwrap())
        .collect();
    assert_eq!(wrong, vec![4, 5, 6, 7, 10, 11]);
    let fixture: BigUint = (0..16).map(|l| kavuluru_table1(l).unwrap()).sum();
    assert!(fixture > BigUint::from(65_536u32));
}

#[test]
fn formulas_match_enumeration_up_to_period_eight() {
    for n in 1..=3u32 {
        for k in 0..=4u32.min(1 << n) {
            for class in SequenceClass::ALL {
                let q = CensusQuery::new(n, k, class, CensusMode::Exhaustive).unwrap();
                let counts = tally_range(&q.search().unwrap(), class, 0..1 << (1 << n));
                for (l, &c) in counts.iter().enumerate() {
                    match expected_count(n, k, class, l as u64) {
                        Ok(v) => assert_eq!(v, BigUint::from(c), "n={n} k={k} {class} L={l}"),
                        Err(Error::NoFormulaAvailable { .. }) => {}
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }
}

#[test]
fn large_periods_stay_exact() {
    // 2^(L-1) for L near 2^8 needs far more than 64 bits.
    let v = n3_total(8, 200).unwrap();
    assert!(v.bits() > 64);
    assert_eq!(total(n3_total, 8), pow2(256));
}

#[test]
fn counts_are_defined_and_non_negative_up_to_n_eight() {
    // Negative intermediate results would panic on conversion to an unsigned count.
    let all: [CountFn; 9] = [
        rueppel_n,
        meidl_n1_full,
        n2_lcless,
        n3_lcless,
        n2_lcfull,
        n3_lcfull,
        n4_lcfull,
        n2_total,
        n3_total,
    ];
    for n in 0..=8u32 {
        for l in 0..=1u64 << n {
            for f in all {
                f(n, l).unwrap();
            }
        }
        for f in all {
            assert!(f(n, (1u64 << n) + 1).is_err());
        }
    }
}

proptest! {
    #[test]
    fn rueppel_counts_are_powers_of_two(n in 1u32..=20, seed: u64) {
        let l = 1 + seed % (1u64 << n);
        prop_assert_eq!(rueppel_n(n, l).unwrap(), pow2(l - 1));
    }
}
