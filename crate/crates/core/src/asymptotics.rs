//! Asymptotic estimates for bicolored graphs and the ratio inequalities
//! showing that almost all split graphs are balanced.
//!
//! Floats are only used for reporting. Every inequality is decided on
//! exact integers by comparing squares.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bigfloat::{BigFloat, DEFAULT_PRECISION};
use crate::counting::{binomial, LabeledCounts};
use crate::error::{Error, Result};
use crate::series::derive_unlabeled_chain;

pub const MAX_REPORT_N: usize = 400;

/// Significant digits in serialized reports.
const REPORT_DIGITS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// `sum_k 2^{-k^2}` (even) or `sum_k 2^{-(k+1/2)^2}` (odd) over all
/// integers `k`, with the dropped tail below `2^{-bits}`.
pub fn c_constant(parity: Parity, bits: u32) -> BigFloat {
    let bits = bits.max(64);
    let prec = bits + 16;
    // Both sums are 2 * sum_{k>=0} 2^{-e(k)} minus the doubled k=0 term
    // for the even case; e(k) = k^2 or k^2 + k.
    let exponent = |k: u64| match parity {
        Parity::Even => k * k,
        Parity::Odd => k * k + k,
    };
    let mut k_max = 0u64;
    while exponent(k_max + 1) <= bits as u64 + 4 {
        k_max += 1;
    }
    let top = exponent(k_max + 1);
    // numerator over 2^top
    let mut num = BigInt::zero();
    for k in 0..=k_max {
        num += BigInt::one() << (top - exponent(k)) as usize;
    }
    num <<= 1;
    if parity == Parity::Even {
        num -= BigInt::one() << top as usize;
    }
    let sum = BigFloat::from_parts(num, -(top as i64), prec);
    let value = match parity {
        Parity::Even => sum,
        Parity::Odd => sum.div(&BigFloat::root_of_two(4, prec)),
    };
    value.with_precision(bits)
}

/// `c(n) C(n, floor(n/2)) 2^{n^2/4}`.
pub fn asymptotic_bicolored(n: usize, bits: u32) -> BigFloat {
    let prec = bits.max(64) + 16;
    let c = c_constant(Parity::of(n), prec);
    let binom = BigFloat::from_biguint(binomial(n as u64, n as u64 / 2), prec);
    let n2 = (n * n) as i64;
    let mut v = c.mul(&binom).ldexp(n2 / 4);
    if n % 2 == 1 {
        // n^2 = 4q + 1
        v = v.mul(&BigFloat::root_of_two(4, prec));
    }
    v.with_precision(bits.max(64))
}

fn ratio(num: &BigUint, den: &BigUint, prec: u32) -> BigFloat {
    BigFloat::from_ratio(&BigInt::from(num.clone()), &BigInt::from(den.clone()), prec)
}

/// `n^2 / 2^{(n+1)/2}`.
pub fn balance_bound(n: usize, prec: u32) -> BigFloat {
    let mut v = BigFloat::from_bigint(BigInt::from(n * n), prec).ldexp(-((n as i64 + 1) / 2));
    if n.is_multiple_of(2) {
        v = v.div(&BigFloat::root_of_two(2, prec));
    }
    v
}

#[derive(Clone, Debug)]
pub struct RatioRow {
    pub n: usize,
    pub b_ratio: BigFloat,
    pub s_over_b: BigFloat,
    pub u_over_s: BigFloat,
    pub bound: BigFloat,
}

#[derive(Clone, Debug)]
pub struct UnlabeledRatioRow {
    pub n: usize,
    pub s: BigUint,
    pub u: BigUint,
    pub b: BigUint,
    pub u_over_s: BigFloat,
    pub s_over_b: BigFloat,
    /// `b~_n n! / b_n`, reported without any closeness claim.
    pub scaled_b: BigFloat,
}

#[derive(Clone, Debug)]
pub struct RatioReport {
    pub precision: u32,
    pub rows: Vec<RatioRow>,
    pub unlabeled: Vec<UnlabeledRatioRow>,
}

#[derive(Serialize)]
struct RowRepr {
    n: usize,
    b_ratio: String,
    s_over_b: String,
    u_over_s: String,
    bound: String,
}

#[derive(Serialize)]
struct UnlabeledRowRepr {
    n: usize,
    s: String,
    u: String,
    b: String,
    u_over_s: String,
    s_over_b: String,
    scaled_b: String,
}

#[derive(Serialize)]
struct ReportRepr {
    precision: u32,
    rows: Vec<RowRepr>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    unlabeled: Vec<UnlabeledRowRepr>,
}

impl RatioReport {
    pub fn to_json(&self) -> String {
        let d = REPORT_DIGITS;
        let repr = ReportRepr {
            precision: self.precision,
            rows: self
                .rows
                .iter()
                .map(|r| RowRepr {
                    n: r.n,
                    b_ratio: r.b_ratio.to_scientific(d),
                    s_over_b: r.s_over_b.to_scientific(d),
                    u_over_s: r.u_over_s.to_scientific(d),
                    bound: r.bound.to_scientific(d),
                })
                .collect(),
            unlabeled: self
                .unlabeled
                .iter()
                .map(|r| UnlabeledRowRepr {
                    n: r.n,
                    s: r.s.to_string(),
                    u: r.u.to_string(),
                    b: r.b.to_string(),
                    u_over_s: r.u_over_s.to_scientific(d),
                    s_over_b: r.s_over_b.to_scientific(d),
                    scaled_b: r.scaled_b.to_scientific(d),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&repr).expect("plain data")
    }

    /// Labeled rows only, one per line.
    pub fn to_csv(&self) -> String {
        let d = REPORT_DIGITS;
        let mut out = String::from("n,b_ratio,s_over_b,u_over_s,bound\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.n,
                r.b_ratio.to_scientific(d),
                r.s_over_b.to_scientific(d),
                r.u_over_s.to_scientific(d),
                r.bound.to_scientific(d)
            ));
        }
        out
    }
}

/// Labeled ratio rows for `1 <= n <= n_max`.
pub fn ratio_report(n_max: usize) -> Result<RatioReport> {
    ratio_report_at(n_max, DEFAULT_PRECISION)
}

pub fn ratio_report_at(n_max: usize, prec: u32) -> Result<RatioReport> {
    if n_max > MAX_REPORT_N {
        return Err(Error::TooLarge {
            what: "ratio report order",
            max: MAX_REPORT_N,
            got: n_max,
        });
    }
    let counts = LabeledCounts::up_to(n_max);
    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let b = &counts.bicolored[n];
            let s = &counts.split[n];
            let u = &counts.unbalanced[n];
            let asym = asymptotic_bicolored(n, prec);
            RatioRow {
                n,
                b_ratio: BigFloat::from_biguint(b.clone(), prec).div(&asym),
                s_over_b: ratio(s, b, prec),
                u_over_s: ratio(u, s, prec),
                bound: balance_bound(n, prec),
            }
        })
        .collect();
    Ok(RatioReport {
        precision: prec,
        rows,
        unlabeled: Vec::new(),
    })
}

/// Adds unlabeled rows built from unlabeled split counts `s~_0..s~_m`.
pub fn with_unlabeled(mut report: RatioReport, split_unlabeled: &[BigUint]) -> Result<RatioReport> {
    let Some(order) = split_unlabeled.len().checked_sub(1) else {
        return Ok(report);
    };
    let chain = derive_unlabeled_chain(order, split_unlabeled)?;
    let u = chain.u.natural_counts()?;
    let b = chain.bc.natural_counts()?;
    let prec = report.precision;
    let mut factorial = BigUint::one();
    for n in 1..=order {
        factorial *= n;
        let s = &split_unlabeled[n];
        let b_labeled = crate::counting::bicolored_labeled(n as u64);
        report.unlabeled.push(UnlabeledRatioRow {
            n,
            s: s.clone(),
            u: u[n].clone(),
            b: b[n].clone(),
            u_over_s: ratio(&u[n], s, prec),
            s_over_b: ratio(s, &b[n], prec),
            scaled_b: ratio(&(&b[n] * &factorial), &b_labeled, prec),
        });
    }
    Ok(report)
}

/// Indices `1 <= n < seq.len()` where `seq[n]/seq[n-1] >= 2^{(n+1)/2} / n^d`
/// fails, decided by `seq[n]^2 n^{2d} >= 2^{n+1} seq[n-1]^2`.
pub fn ratio_violations(seq: &[BigUint], divisor_power: u32) -> Vec<usize> {
    (1..seq.len())
        .filter(|&n| {
            let lhs = &seq[n] * &seq[n] * BigUint::from(n).pow(2 * divisor_power);
            let rhs = (&seq[n - 1] * &seq[n - 1]) << (n + 1);
            lhs < rhs
        })
        .collect()
}

/// Violations of `b_n / b_{n-1} >= 2^{(n+1)/2}` for `n <= n_max`.
pub fn check_b_ratio(n_max: usize) -> Vec<usize> {
    let b: Vec<BigUint> = (0..=n_max as u64)
        .map(crate::counting::bicolored_labeled)
        .collect();
    ratio_violations(&b, 0)
}

/// Violations of `s_n / s_{n-1} >= 2^{(n+1)/2}` for `n <= n_max`.
pub fn check_s_ratio(n_max: usize) -> Vec<usize> {
    let s: Vec<BigUint> = (0..=n_max as u64)
        .map(crate::counting::split_labeled)
        .collect();
    ratio_violations(&s, 0)
}

/// Violations of `b~_n / b~_{n-1} >= 2^{(n+1)/2} / n` given unlabeled
/// bicolored counts `b~_0..b~_m`.
pub fn check_unlabeled_b_ratio(bicolored_unlabeled: &[BigUint]) -> Vec<usize> {
    ratio_violations(bicolored_unlabeled, 1)
}

/// Violations of `u_n / s_n <= n^2 / 2^{(n+1)/2}` for `1 <= n <= n_max`,
/// decided by `u_n^2 2^{n+1} <= n^4 s_n^2`.
pub fn balance_bound_violations(counts: &LabeledCounts, n_max: usize) -> Vec<usize> {
    (1..=n_max)
        .filter(|&n| {
            let u = &counts.unbalanced[n];
            let s = &counts.split[n];
            let lhs = (u * u) << (n + 1);
            let rhs = s * s * BigUint::from(n).pow(4);
            lhs > rhs
        })
        .collect()
}

/// First `n` after the last violation, or `start` if there is none. The
/// inequality then holds on every checked index from the returned value on.
pub fn threshold(violations: &[usize], start: usize) -> usize {
    violations.last().map_or(start, |&v| v + 1)
}

/// Whether the violation list is an initial segment `start, start+1, ...`.
pub fn is_initial_segment(violations: &[usize], start: usize) -> bool {
    violations.iter().enumerate().all(|(i, &v)| v == start + i)
}

/// Smallest `N >= 1` such that `u_n / s_n` is strictly decreasing on
/// `N..=n_max`.
pub fn u_over_s_decreasing_from(counts: &LabeledCounts, n_max: usize) -> usize {
    let mut start = n_max.max(1);
    while start > 1 {
        let n = start - 1;
        // u_n / s_n > u_{n+1} / s_{n+1}
        let left = &counts.unbalanced[n] * &counts.split[n + 1];
        let right = &counts.unbalanced[n + 1] * &counts.split[n];
        if left > right {
            start = n;
        } else {
            break;
        }
    }
    start
}

/// Smallest `N >= 1` such that `n b_{n-1} / b_n` (which equals
/// `1 - s_n / b_n`) is strictly decreasing on `N..=n_max`.
pub fn split_gap_decreasing_from(counts: &LabeledCounts, n_max: usize) -> usize {
    let b = &counts.bicolored;
    let mut start = n_max.max(1);
    while start > 1 {
        let n = start - 1;
        // n b_{n-1} / b_n > (n+1) b_n / b_{n+1}
        let left = &b[n - 1] * &b[n + 1] * n;
        let right = &b[n] * &b[n] * (n + 1);
        if left > right {
            start = n;
        } else {
            break;
        }
    }
    start
}

/// Empirical starting points of the "for large enough n" statements, each
/// checked exactly up to the stated bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    pub ratio_checked_to: usize,
    pub bound_checked_to: usize,
    /// `b_n / b_{n-1} >= 2^{(n+1)/2}` from here on.
    pub b_ratio_from: usize,
    /// `s_n / s_{n-1} >= 2^{(n+1)/2}` from here on.
    pub s_ratio_from: usize,
    /// `u_n / s_n <= n^2 / 2^{(n+1)/2}` from here on.
    pub balance_bound_from: usize,
    /// `u_n / s_n` strictly decreasing from here on.
    pub u_over_s_decreasing_from: usize,
    /// `1 - s_n / b_n` strictly decreasing from here on.
    pub split_gap_decreasing_from: usize,
}

pub fn thresholds(ratio_checked_to: usize, bound_checked_to: usize) -> Result<Thresholds> {
    if bound_checked_to > MAX_REPORT_N {
        return Err(Error::TooLarge {
            what: "bound check order",
            max: MAX_REPORT_N,
            got: bound_checked_to,
        });
    }
    let counts = LabeledCounts::up_to(bound_checked_to);
    Ok(Thresholds {
        ratio_checked_to,
        bound_checked_to,
        b_ratio_from: threshold(&check_b_ratio(ratio_checked_to), 1),
        s_ratio_from: threshold(&check_s_ratio(ratio_checked_to), 1),
        balance_bound_from: threshold(&balance_bound_violations(&counts, bound_checked_to), 1),
        u_over_s_decreasing_from: u_over_s_decreasing_from(&counts, bound_checked_to),
        split_gap_decreasing_from: split_gap_decreasing_from(&counts, bound_checked_to),
    })
}
