#![allow(dead_code)]

use annuity_core::{Amount, MortalityTable};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Brute-force tail sum over a common denominator, in plain big integers:
///
/// `r / l(m) * sum_{k>=from} l(m+k) * q^k / p^k` with `lambda = p/q`.
///
/// Shares no code with the library's summation or recurrence.
pub fn oracle_tail(
    survivors: &[u64],
    lambda: &Amount,
    m: usize,
    from: usize,
    r: &Amount,
) -> Amount {
    let p = lambda.numer().clone();
    let q = lambda.denom().clone();
    let last = survivors.len();
    if m + from >= last {
        return Amount::from_integer(BigInt::from(0));
    }
    let horizon = last - m;
    let mut numer = BigInt::from(0);
    for k in from..horizon {
        let term = BigInt::from(survivors[m + k]) * q.pow(k as u32) * p.pow((horizon - k) as u32);
        numer += term;
    }
    let denom = p.pow(horizon as u32) * BigInt::from(survivors[m]);
    Amount::new(numer, denom) * r
}

pub fn oracle_price(survivors: &[u64], lambda: &Amount, m: usize, r: &Amount) -> Amount {
    oracle_tail(survivors, lambda, m, 1, r)
}

pub fn int(n: i64) -> Amount {
    Amount::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Amount {
    Amount::new(BigInt::from(n), BigInt::from(d))
}

/// Valid synthetic survivor columns: radix in 1..=10000, at most 120 ages,
/// non-increasing.
pub fn survivor_column() -> impl Strategy<Value = Vec<u64>> {
    (1u64..=10_000, prop::collection::vec(0u32..=1000, 0..120)).prop_map(|(radix, drops)| {
        let mut counts = vec![radix];
        let mut alive = radix;
        for d in drops {
            alive -= alive * d as u64 / 1000;
            counts.push(alive);
        }
        counts
    })
}

pub fn synthetic_table() -> impl Strategy<Value = MortalityTable> {
    survivor_column().prop_map(|c| MortalityTable::new(c).expect("generated column is valid"))
}

/// Accumulation factors between 1 + 1/1000 and 1 + 30/100.
pub fn lambda() -> impl Strategy<Value = Amount> {
    (1i64..=300, prop_oneof![Just(100i64), Just(1000)])
        .prop_filter("rate above zero and at most 30%", |(n, d)| {
            *n * 1000 / d <= 300
        })
        .prop_map(|(n, d)| ratio(d + n, d))
}

pub fn payment() -> impl Strategy<Value = Amount> {
    (1i64..=5000, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}
