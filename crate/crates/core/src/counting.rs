//! Closed-form counts of labeled bicolored and split graphs, and the
//! cross-checks between independent formulas, the series chain and the
//! exhaustive oracle.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumeration::{class_census, count_labeled, ClassTag};
use crate::error::{Error, Result};
use crate::series::{derive_labeled_chain, derive_unlabeled_chain};

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `b_n = sum_k C(n,k) 2^{k(n-k)}`: choose the green vertices, then any
/// subset of the green-red pairs.
pub fn bicolored_labeled(n: u64) -> BigUint {
    let mut total = BigUint::zero();
    let mut c = BigUint::one();
    for k in 0..=n {
        total += &c << (k * (n - k));
        c = c * (n - k) / (k + 1);
    }
    total
}

/// `s_n = b_n - n b_{n-1}`, with `s_0 = 1`.
pub fn split_labeled(n: u64) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    bicolored_labeled(n) - bicolored_labeled(n - 1) * n
}

/// The older, independent formula for labeled split graphs:
///
/// `1 + sum_{k=2}^n C(n,k) ((2^k-1)^{n-k}
///      - sum_{j=1}^{n-k} jk/(j+1) C(n-k,j) (2^{k-1}-1)^{n-k-j})`.
///
/// The `jk/(j+1)` factors make the terms rational. Everything is scaled by
/// `L = lcm(2..=n)`, which clears every `j+1`, and the total is only
/// accepted if `L` divides it.
pub fn split_labeled_bp(n: u64) -> Result<BigUint> {
    let lcm = (2..=n.max(2)).fold(BigInt::one(), |acc, d| acc.lcm(&BigInt::from(d)));
    let mut numer = lcm.clone();
    let mut outer = BigInt::one(); // C(n,k)
    for k in 0..=n {
        if k >= 2 {
            let m = n - k;
            let p = (BigInt::one() << (k - 1)) - 1;
            // Horner over j = 1..=m of c_j p^{m-j}
            let mut inner = BigInt::zero();
            let mut binom = BigInt::one(); // C(m,j)
            for j in 1..=m {
                binom = binom * (m - j + 1) / j;
                let c = BigInt::from(j * k) * (&lcm / BigInt::from(j + 1)) * &binom;
                inner = inner * &p + c;
            }
            let lead = ((BigInt::one() << k) - 1u32).pow(m as u32) * &lcm;
            numer += &outer * (lead - inner);
        }
        outer = outer * (n - k) / (k + 1);
    }
    let (q, r) = numer.div_rem(&lcm);
    if !r.is_zero() {
        return Err(Error::NonIntegralResult(n as usize));
    }
    q.to_biguint().ok_or(Error::NonIntegralResult(n as usize))
}

/// Labeled counts `b_n, s_n, u_n` for `n <= max_n`, with `u` read off the
/// series chain.
#[derive(Clone, Debug)]
pub struct LabeledCounts {
    pub bicolored: Vec<BigUint>,
    pub split: Vec<BigUint>,
    pub unbalanced: Vec<BigUint>,
    pub balanced: Vec<BigUint>,
}

impl LabeledCounts {
    pub fn up_to(max_n: usize) -> Self {
        let chain = derive_labeled_chain(max_n);
        LabeledCounts {
            bicolored: (0..=max_n as u64).map(bicolored_labeled).collect(),
            split: (0..=max_n as u64).map(split_labeled).collect(),
            unbalanced: chain.u.natural_counts().expect("U is an honest species"),
            balanced: chain.b.natural_counts().expect("B is an honest species"),
        }
    }
}

/// `u_n = n! [x^n] U(x)` from the series chain.
pub fn unbalanced_labeled(n: usize) -> BigUint {
    derive_labeled_chain(n)
        .u
        .natural_counts()
        .expect("U is an honest species")
        .swap_remove(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Formula,
    SeriesChain,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountEntry {
    #[serde(with = "crate::decimal")]
    pub value: BigUint,
    pub provenance: Provenance,
}

/// Exact counts of one class, keyed by `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub class: ClassTag,
    pub labeled: bool,
    pub values: BTreeMap<usize, CountEntry>,
}

impl CountTable {
    pub fn new(class: ClassTag, labeled: bool) -> Self {
        CountTable {
            class,
            labeled,
            values: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, n: usize, value: BigUint, provenance: Provenance) {
        self.values.insert(n, CountEntry { value, provenance });
    }

    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.values.get(&n).map(|e| &e.value)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(e.to_string()))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n").map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Largest order accepted by [`cross_check`].
pub const MAX_CROSS_CHECK_N: usize = 500;

/// Largest `n` for labeled tables built from the series chain.
pub const MAX_CHAIN_N: usize = 400;
/// Largest `n` for labeled tables built from closed forms.
pub const MAX_FORMULA_N: usize = 2000;

/// Labeled counts of `class` for each `n` in `ns`, from closed forms where
/// one exists and from the series chain otherwise.
pub fn labeled_table(class: ClassTag, ns: &[usize]) -> Result<CountTable> {
    let max = ns.iter().copied().max().unwrap_or(0);
    let mut table = CountTable::new(class, true);
    let formula = matches!(
        class,
        ClassTag::AllGraphs | ClassTag::Split | ClassTag::Bicolored
    );
    let limit = if formula { MAX_FORMULA_N } else { MAX_CHAIN_N };
    if max > limit {
        return Err(Error::TooLarge {
            what: "labeled count order",
            max: limit,
            got: max,
        });
    }
    if formula {
        for &n in ns {
            let v = match class {
                ClassTag::AllGraphs => BigUint::one() << (n * n.saturating_sub(1) / 2),
                ClassTag::Split => split_labeled(n as u64),
                _ => bicolored_labeled(n as u64),
            };
            table.insert(n, v, Provenance::Formula);
        }
        return Ok(table);
    }
    let chain = derive_labeled_chain(max);
    let series = match class {
        ClassTag::Unbalanced => &chain.u,
        ClassTag::Balanced => &chain.b,
        ClassTag::KCanonical | ClassTag::SCanonical => &chain.uk,
        ClassTag::Ambiguous => &chain.uamb,
        _ => &chain.cs,
    };
    let values = series.natural_counts()?;
    for &n in ns {
        table.insert(n, values[n].clone(), Provenance::SeriesChain);
    }
    Ok(table)
}

/// Unlabeled counts of `class` for each `n` in `ns`, by canonical codes.
pub fn unlabeled_table(class: ClassTag, ns: &[usize]) -> Result<CountTable> {
    let mut table = CountTable::new(class, false);
    for &n in ns {
        let v = crate::enumeration::count_unlabeled(n, class)?;
        table.insert(n, BigUint::from(v), Provenance::Oracle);
    }
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub n: usize,
    pub check: String,
    #[serde(with = "crate::decimal")]
    pub left: BigUint,
    #[serde(with = "crate::decimal")]
    pub right: BigUint,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub checked_to: usize,
    pub discrepancies: Vec<Discrepancy>,
    pub elapsed_ms: u128,
}

/// Which comparisons [`cross_check`] runs besides the two formulas.
#[derive(Clone, Copy, Debug, Default)]
pub struct OracleLimits {
    /// Compare formulas with brute-force labeled counts up to this `n`.
    pub labeled: Option<usize>,
    /// Compare the unlabeled series chain with canonical-code counts up to
    /// this `n`.
    pub unlabeled: Option<usize>,
}

/// Compares `split_labeled` with `split_labeled_bp` for `1 <= n <= max_n`,
/// plus the oracle comparisons selected by `oracle`. Entries of `cache`
/// are reused for the second formula and new values are added to it.
pub fn cross_check(
    max_n: usize,
    oracle: OracleLimits,
    mut cache: Option<&mut CountTable>,
) -> CrossCheckReport {
    let start = Instant::now();
    let cached: BTreeMap<usize, BigUint> = cache
        .as_deref()
        .map(|c| {
            c.values
                .iter()
                .filter(|(_, e)| e.provenance == Provenance::Formula)
                .map(|(&n, e)| (n, e.value.clone()))
                .collect()
        })
        .unwrap_or_default();
    let rows: Vec<(usize, BigUint, Result<BigUint>)> = (1..=max_n)
        .into_par_iter()
        .map(|n| {
            let bp = match cached.get(&n) {
                Some(v) => Ok(v.clone()),
                None => split_labeled_bp(n as u64),
            };
            (n, split_labeled(n as u64), bp)
        })
        .collect();

    let mut discrepancies = Vec::new();
    for (n, ours, theirs) in rows {
        match theirs {
            Ok(v) => {
                if let Some(c) = cache.as_deref_mut() {
                    c.insert(n, v.clone(), Provenance::Formula);
                }
                if v != ours {
                    discrepancies.push(Discrepancy {
                        n,
                        check: "split formula vs BP formula".into(),
                        left: ours,
                        right: v,
                    });
                }
            }
            Err(_) => discrepancies.push(Discrepancy {
                n,
                check: "BP formula integrality".into(),
                left: ours,
                right: BigUint::zero(),
            }),
        }
    }

    if let Some(limit) = oracle.labeled {
        let limit = limit.min(max_n);
        let counts = LabeledCounts::up_to(limit);
        for n in 0..=limit {
            let pairs = [
                (
                    "b_n formula vs oracle",
                    &counts.bicolored[n],
                    ClassTag::Bicolored,
                ),
                ("s_n formula vs oracle", &counts.split[n], ClassTag::Split),
                (
                    "u_n series vs oracle",
                    &counts.unbalanced[n],
                    ClassTag::Unbalanced,
                ),
                (
                    "B_n series vs oracle",
                    &counts.balanced[n],
                    ClassTag::Balanced,
                ),
            ];
            for (check, formula, tag) in pairs {
                let brute = count_labeled(n, tag).expect("n within oracle range");
                if &brute != formula {
                    discrepancies.push(Discrepancy {
                        n,
                        check: check.into(),
                        left: formula.clone(),
                        right: brute,
                    });
                }
            }
        }
    }

    if let Some(limit) = oracle.unlabeled {
        let limit = limit.min(max_n);
        let censuses: Vec<_> = (0..=limit)
            .map(|n| class_census(n).expect("n within census range"))
            .collect();
        let base: Vec<BigUint> = censuses
            .iter()
            .map(|c| BigUint::from(c.unlabeled(ClassTag::Split)))
            .collect();
        let chain = derive_unlabeled_chain(limit, &base).expect("base covers the order");
        let u = chain.u.natural_counts().expect("integral");
        let bc = chain.bc.natural_counts().expect("integral");
        for (n, c) in censuses.iter().enumerate() {
            for (check, from_chain, tag) in [
                ("unlabeled U chain vs oracle", &u[n], ClassTag::Unbalanced),
                ("unlabeled BC chain vs oracle", &bc[n], ClassTag::Bicolored),
            ] {
                let brute = BigUint::from(c.unlabeled(tag));
                if &brute != from_chain {
                    discrepancies.push(Discrepancy {
                        n,
                        check: check.into(),
                        left: from_chain.clone(),
                        right: brute,
                    });
                }
            }
        }
    }

    discrepancies.sort_by(|a, b| (a.n, &a.check).cmp(&(b.n, &b.check)));
    CrossCheckReport {
        checked_to: max_n,
        discrepancies,
        elapsed_ms: start.elapsed().as_millis(),
    }
}
