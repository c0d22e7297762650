//! Self-checks shared by the test suites and the command line: bijection
//! round trips and equivariance on single inputs, exhaustive sweeps over
//! small label sets, and the count identities report.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bijections::{
    amb_compose, amb_decompose, bicolored_to_split, cuk_compose, cuk_decompose, split_to_bicolored,
    uk_compose, uk_decompose, PointedSet,
};
use crate::counting::{binomial, LabeledCounts};
use crate::enumeration::{class_census, enumerate_labeled, ClassTag, Structure, MAX_CLASSIFIED_N};
use crate::error::{Error, Result};
use crate::graph::{Graph, Permutation, VertexSet};
use crate::split::{color, ColoredSplitGraph, SplitAnalysis, SplitClass};

/// Every S-max coloring of a split graph.
pub fn colorings(g: &Graph) -> Vec<ColoredSplitGraph> {
    SplitAnalysis::of(g)
        .map(|a| {
            a.s_max_partitions()
                .into_iter()
                .map(|p| color(g, p).expect("S-max partition"))
                .collect()
        })
        .unwrap_or_default()
}

/// Round-trip failures of every bijection that applies to `g` or to one of
/// its colorings. Empty for a non-split graph.
pub fn roundtrip_failures(g: &Graph) -> Vec<String> {
    let mut out = Vec::new();
    let Some(an) = SplitAnalysis::of(g) else {
        return out;
    };
    let tag = g.to_text().replace('\n', " ");
    match an.class {
        SplitClass::KCanonical => match uk_decompose(g) {
            Ok((a, rest)) => {
                if uk_compose(a, &rest).as_ref() != Ok(g) {
                    out.push(format!("uk compose(decompose) != id on {tag}"));
                }
            }
            Err(e) => out.push(format!("uk_decompose failed on {tag}: {e}")),
        },
        SplitClass::Ambiguous => match amb_decompose(g) {
            Ok((a, rest)) => {
                if amb_compose(a, &rest).as_ref() != Ok(g) {
                    out.push(format!("amb compose(decompose) != id on {tag}"));
                }
            }
            Err(e) => out.push(format!("amb_decompose failed on {tag}: {e}")),
        },
        _ => {}
    }
    for c in colorings(g) {
        let b = split_to_bicolored(&c);
        if !b.isolated_green().is_empty() {
            out.push(format!(
                "split_to_bicolored left an isolated green vertex on {tag}"
            ));
        }
        if bicolored_to_split(&b).as_ref() != Ok(&c) {
            out.push(format!("bicolored round trip failed on {tag}"));
        }
        if an.class == SplitClass::KCanonical {
            match cuk_decompose(&c) {
                Ok((ps, rest)) => {
                    if ps.elements() != an.swings {
                        out.push(format!("cuk pointed set is not the swing set on {tag}"));
                    }
                    if cuk_compose(&ps, &rest).as_ref() != Ok(&c) {
                        out.push(format!("cuk compose(decompose) != id on {tag}"));
                    }
                }
                Err(e) => out.push(format!("cuk_decompose failed on {tag}: {e}")),
            }
        }
    }
    out
}

/// Failures of `decompose(relabel(g, p)) = relabel(decompose(g), p)` for
/// every bijection that applies to `g` or to one of its colorings.
pub fn equivariance_failures(g: &Graph, p: &Permutation) -> Vec<String> {
    let mut out = Vec::new();
    let Some(an) = SplitAnalysis::of(g) else {
        return out;
    };
    let h = match g.relabel(p) {
        Ok(h) => h,
        Err(e) => return vec![format!("relabel failed: {e}")],
    };
    let tag = g.to_text().replace('\n', " ");
    match an.class {
        SplitClass::KCanonical => {
            let (a, rest) = uk_decompose(g).expect("K-canonical");
            let expected = (p.apply_set(a), rest.relabel(p).expect("perm covers labels"));
            if uk_decompose(&h).ok() != Some(expected) {
                out.push(format!("uk_decompose not equivariant on {tag}"));
            }
        }
        SplitClass::Ambiguous => {
            let (a, rest) = amb_decompose(g).expect("ambiguous");
            let expected = (p.apply(a), rest.relabel(p).expect("perm covers labels"));
            if amb_decompose(&h).ok() != Some(expected) {
                out.push(format!("amb_decompose not equivariant on {tag}"));
            }
        }
        _ => {}
    }
    for c in colorings(g) {
        let moved = c.relabel(p).expect("perm covers labels");
        let b = split_to_bicolored(&c)
            .relabel(p)
            .expect("perm covers labels");
        if split_to_bicolored(&moved) != b {
            out.push(format!("split_to_bicolored not equivariant on {tag}"));
        }
        if an.class == SplitClass::KCanonical {
            let (ps, rest) = cuk_decompose(&c).expect("K-canonical");
            let expected = (
                ps.relabel(p).expect("perm covers labels"),
                rest.relabel(p).expect("perm covers labels"),
            );
            if cuk_decompose(&moved).ok() != Some(expected) {
                out.push(format!("cuk_decompose not equivariant on {tag}"));
            }
        }
    }
    out
}

/// Permutation of `0..n` sending `0..labels.len()` onto `labels` in order
/// and the remaining points onto the complement.
fn placing(n: usize, labels: VertexSet) -> Permutation {
    let mut image = labels.to_vec();
    image.extend(VertexSet::range(n).difference(labels).iter());
    Permutation::new(image).expect("a permutation of 0..n")
}

fn colored_on(labels: VertexSet, n: usize) -> Vec<ColoredSplitGraph> {
    let p = placing(n, labels);
    enumerate_labeled(labels.len(), ClassTag::ColoredSplit)
        .expect("small n")
        .map(|s| match s {
            Structure::Colored(c) => c.relabel(&p).expect("perm covers labels"),
            _ => unreachable!("colored enumeration"),
        })
        .collect()
}

/// Sizes of the compose domains swept by [`exhaustive_roundtrips`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainSizes {
    pub graphs: u64,
    pub uk_pairs: u64,
    pub amb_pairs: u64,
    pub cuk_pairs: u64,
    pub bicolored_star: u64,
}

/// Checks both directions of every bijection on label set `0..n`: compose
/// after decompose over all graphs, and decompose after compose over every
/// valid compose input.
pub fn exhaustive_roundtrips(n: usize) -> Result<(DomainSizes, Vec<String>)> {
    if n > 6 {
        return Err(Error::TooLarge {
            what: "exhaustive round-trip sweep",
            max: 6,
            got: n,
        });
    }
    let mut sizes = DomainSizes::default();
    let mut out = Vec::new();
    for s in enumerate_labeled(n, ClassTag::AllGraphs)? {
        if let Structure::Graph(g) = s {
            sizes.graphs += 1;
            out.extend(roundtrip_failures(&g));
        }
    }

    let all = VertexSet::range(n);
    for bits in 0u32..(1 << n) {
        let a = VertexSet::from_bits(bits as u16);
        let rest_labels = all.difference(a);
        if a.len() >= 2 {
            for rest in colored_on(rest_labels, n) {
                sizes.uk_pairs += 1;
                match uk_compose(a, &rest).and_then(|g| uk_decompose(&g)) {
                    Ok(back) if back == (a, rest) => {}
                    _ => out.push(format!("uk decompose(compose) != id for A={a:?}")),
                }
                for point in a.iter() {
                    sizes.cuk_pairs += 1;
                    let ps = PointedSet::new(a, point)?;
                    match cuk_compose(&ps, &rest).and_then(|c| cuk_decompose(&c)) {
                        Ok(back) if back == (ps, rest) => {}
                        _ => out.push(format!("cuk decompose(compose) != id for A={a:?}")),
                    }
                }
            }
        }
        if a.len() == 1 {
            let v = a.first().expect("singleton");
            let p = placing(n, rest_labels);
            for s in enumerate_labeled(n - 1, ClassTag::Balanced)? {
                let Structure::Graph(h) = s else { continue };
                let h = h.relabel(&p)?;
                sizes.amb_pairs += 1;
                match amb_compose(v, &h).and_then(|g| amb_decompose(&g)) {
                    Ok(back) if back == (v, h) => {}
                    _ => out.push(format!("amb decompose(compose) != id for a={v}")),
                }
            }
        }
    }

    for s in enumerate_labeled(n, ClassTag::BicoloredNoIsolatedGreen)? {
        let Structure::Bicolored(b) = s else { continue };
        sizes.bicolored_star += 1;
        match bicolored_to_split(&b) {
            Ok(c) if split_to_bicolored(&c) == b => {}
            _ => out.push(format!(
                "bicolored decompose(compose) != id on {:?}",
                b.graph().edges()
            )),
        }
    }
    Ok((sizes, out))
}

/// A uniformly random split graph on `0..n` from a K side chosen by
/// `k_bits` and K-S edges chosen by `edge_bits` (one bit per pair, in
/// increasing order of K vertex then S vertex).
pub fn split_graph_from_bits(n: usize, k_bits: u16, edge_bits: u64) -> Graph {
    let k = VertexSet::from_bits(k_bits).intersection(VertexSet::range(n));
    let s = VertexSet::range(n).difference(k);
    let mut g = Graph::empty(n).expect("n within range");
    for x in k.iter() {
        for y in k.iter().filter(|&y| y > x) {
            g.add_edge(x, y);
        }
    }
    let mut bit = 0;
    for x in k.iter() {
        for y in s.iter() {
            if edge_bits >> bit & 1 == 1 {
                g.add_edge(x, y);
            }
            bit += 1;
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub n: usize,
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub max_n: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn new(suite: &str, max_n: usize) -> Self {
        VerifyReport {
            suite: suite.into(),
            max_n,
            passed: true,
            checks: Vec::new(),
        }
    }

    pub fn record(&mut self, n: usize, name: &str, passed: bool, detail: Option<String>) {
        self.passed &= passed;
        self.checks.push(CheckResult {
            n,
            name: name.into(),
            passed,
            detail: if passed { None } else { detail },
        });
    }

    fn equal<T: PartialEq + std::fmt::Display>(&mut self, n: usize, name: &str, left: T, right: T) {
        let detail = format!("{left} != {right}");
        self.record(n, name, left == right, Some(detail));
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

/// Largest `n` at which [`identities_report`] also sweeps the bijections.
pub const MAX_BIJECTION_SWEEP_N: usize = 6;

/// Checks, for every `n <= max_n`, the oracle counts against the closed
/// forms and the series chain, the class identities (labeled and
/// unlabeled), the convolution identities behind the bijections, and the
/// exhaustive bijection round trips for `n <= 6`. The report has no timing
/// and is identical across runs.
pub fn identities_report(max_n: usize) -> Result<VerifyReport> {
    if max_n > MAX_CLASSIFIED_N {
        return Err(Error::TooLarge {
            what: "identities suite order",
            max: MAX_CLASSIFIED_N,
            got: max_n,
        });
    }
    let mut r = VerifyReport::new("identities", max_n);
    let counts = LabeledCounts::up_to(max_n);
    let chain = crate::series::derive_labeled_chain(max_n);
    let nat = |s: &crate::series::RationalSeries| s.natural_counts().expect("integral chain");
    let (cs, uk, uamb) = (nat(&chain.cs), nat(&chain.uk), nat(&chain.uamb));
    let mut censuses = Vec::with_capacity(max_n + 1);
    let mut split_unlabeled_sum = 0u64;

    for n in 0..=max_n {
        let c = class_census(n)?;
        let lab = |t: ClassTag| c.labeled(t).clone();

        let violations = c.identity_violations();
        r.record(
            n,
            "class identities",
            violations.is_empty(),
            Some(violations.join("; ")),
        );

        r.equal(
            n,
            "b_n closed form = oracle",
            counts.bicolored[n].clone(),
            lab(ClassTag::Bicolored),
        );
        r.equal(
            n,
            "s_n closed form = oracle",
            counts.split[n].clone(),
            lab(ClassTag::Split),
        );
        r.equal(
            n,
            "u_n series = oracle",
            counts.unbalanced[n].clone(),
            lab(ClassTag::Unbalanced),
        );
        r.equal(
            n,
            "balanced series = oracle",
            counts.balanced[n].clone(),
            lab(ClassTag::Balanced),
        );
        r.equal(
            n,
            "colored split series = oracle",
            cs[n].clone(),
            lab(ClassTag::ColoredSplit),
        );
        r.equal(
            n,
            "K-canonical series = oracle",
            uk[n].clone(),
            lab(ClassTag::KCanonical),
        );
        r.equal(
            n,
            "ambiguous series = oracle",
            uamb[n].clone(),
            lab(ClassTag::Ambiguous),
        );
        r.equal(
            n,
            "colored split = bicolored without isolated green",
            lab(ClassTag::ColoredSplit),
            lab(ClassTag::BicoloredNoIsolatedGreen),
        );

        // Convolutions over smaller label sets.
        let prior: &Vec<crate::enumeration::Census> = &censuses;
        let colored_split = |m: usize| -> BigUint {
            if m == n {
                lab(ClassTag::ColoredSplit)
            } else {
                prior[m].labeled(ClassTag::ColoredSplit).clone()
            }
        };
        let uk_sum: BigUint = (2..=n)
            .map(|k| binomial(n as u64, k as u64) * colored_split(n - k))
            .sum();
        r.equal(
            n,
            "K-canonical = sum C(n,k) colored split[n-k]",
            lab(ClassTag::KCanonical),
            uk_sum,
        );
        let cuk_sum: BigUint = (2..=n)
            .map(|k| binomial(n as u64, k as u64) * k * colored_split(n - k))
            .sum();
        r.equal(
            n,
            "colored K-canonical = sum C(n,k) k colored split[n-k]",
            c.colored_k_canonical.0.clone(),
            cuk_sum,
        );
        let amb = if n == 0 {
            BigUint::default()
        } else {
            prior[n - 1].labeled(ClassTag::Balanced) * n
        };
        r.equal(
            n,
            "ambiguous = n balanced[n-1]",
            lab(ClassTag::Ambiguous),
            amb,
        );

        // Unlabeled identities.
        let un = |t: ClassTag| c.unlabeled(t);
        r.equal(
            n,
            "unlabeled unbalanced = sum_{k<n} s~_k",
            un(ClassTag::Unbalanced),
            split_unlabeled_sum,
        );
        split_unlabeled_sum += un(ClassTag::Split);
        r.equal(
            n,
            "unlabeled bicolored = sum_{k<=n} s~_k",
            un(ClassTag::Bicolored),
            split_unlabeled_sum,
        );
        r.equal(
            n,
            "unlabeled colored split = unlabeled split",
            un(ClassTag::ColoredSplit),
            un(ClassTag::Split),
        );

        if n <= MAX_BIJECTION_SWEEP_N {
            let (sizes, failures) = exhaustive_roundtrips(n)?;
            r.record(
                n,
                "bijection round trips",
                failures.is_empty(),
                Some(failures.into_iter().take(5).collect::<Vec<_>>().join("; ")),
            );
            r.equal(
                n,
                "uk compose domain = K-canonical",
                BigUint::from(sizes.uk_pairs),
                lab(ClassTag::KCanonical),
            );
            r.equal(
                n,
                "amb compose domain = ambiguous",
                BigUint::from(sizes.amb_pairs),
                lab(ClassTag::Ambiguous),
            );
            r.equal(
                n,
                "cuk compose domain = colored K-canonical",
                BigUint::from(sizes.cuk_pairs),
                c.colored_k_canonical.0.clone(),
            );
        }
        censuses.push(c);
    }
    Ok(r)
}
