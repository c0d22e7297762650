//! Exhaustive labeled and unlabeled enumeration of every class of graph in
//! the crate. These counts are the ground truth the formulas and series are
//! checked against.
//!
//! Graphs are generated by ascending adjacency word, bicolored graphs by
//! ascending green set and then ascending bipartite edge word. Counting fans
//! out over disjoint word ranges with rayon and merges by addition and set
//! union, so results never depend on the schedule.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bicolored::BicoloredGraph;
use crate::canon::{canonical_code, canonical_code_bicolored, canonical_code_two_colored};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::split::{ColoredSplitGraph, SplitAnalysis, SplitClass};

/// Largest `n` for plain and split graph enumeration.
pub const MAX_GRAPH_N: usize = 8;
/// Largest `n` for classes that need a classification pass, for bicolored
/// graphs, and for unlabeled counting.
pub const MAX_CLASSIFIED_N: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassTag {
    AllGraphs,
    Split,
    Balanced,
    Unbalanced,
    KCanonical,
    SCanonical,
    Ambiguous,
    ColoredSplit,
    Bicolored,
    BicoloredNoIsolatedGreen,
}

impl ClassTag {
    pub const ALL: [ClassTag; 10] = [
        ClassTag::AllGraphs,
        ClassTag::Split,
        ClassTag::Balanced,
        ClassTag::Unbalanced,
        ClassTag::KCanonical,
        ClassTag::SCanonical,
        ClassTag::Ambiguous,
        ClassTag::ColoredSplit,
        ClassTag::Bicolored,
        ClassTag::BicoloredNoIsolatedGreen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassTag::AllGraphs => "all-graphs",
            ClassTag::Split => "split",
            ClassTag::Balanced => "balanced",
            ClassTag::Unbalanced => "unbalanced",
            ClassTag::KCanonical => "k-canonical",
            ClassTag::SCanonical => "s-canonical",
            ClassTag::Ambiguous => "ambiguous",
            ClassTag::ColoredSplit => "colored-split",
            ClassTag::Bicolored => "bicolored",
            ClassTag::BicoloredNoIsolatedGreen => "bicolored-no-isolated-green",
        }
    }

    fn index(self) -> usize {
        ClassTag::ALL.iter().position(|&t| t == self).unwrap()
    }

    fn max_n(self) -> usize {
        match self {
            ClassTag::AllGraphs | ClassTag::Split => MAX_GRAPH_N,
            _ => MAX_CLASSIFIED_N,
        }
    }

    fn check_n(self, n: usize) -> Result<()> {
        if n > self.max_n() {
            Err(Error::TooLarge {
                what: "enumeration",
                max: self.max_n(),
                got: n,
            })
        } else {
            Ok(())
        }
    }

    fn accepts_class(self, class: Option<SplitClass>) -> bool {
        match self {
            ClassTag::AllGraphs => true,
            ClassTag::Split | ClassTag::ColoredSplit => class.is_some(),
            ClassTag::Balanced => class == Some(SplitClass::Balanced),
            ClassTag::Unbalanced => matches!(class, Some(c) if c != SplitClass::Balanced),
            ClassTag::KCanonical => class == Some(SplitClass::KCanonical),
            ClassTag::SCanonical => class == Some(SplitClass::SCanonical),
            ClassTag::Ambiguous => class == Some(SplitClass::Ambiguous),
            ClassTag::Bicolored | ClassTag::BicoloredNoIsolatedGreen => false,
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let alias = match s {
            "all" | "graphs" => Some(ClassTag::AllGraphs),
            "bc" => Some(ClassTag::Bicolored),
            "bc-star" => Some(ClassTag::BicoloredNoIsolatedGreen),
            _ => None,
        };
        alias
            .or_else(|| ClassTag::ALL.into_iter().find(|t| t.name() == s))
            .ok_or_else(|| Error::Parse(format!("unknown class `{s}`")))
    }
}

/// One labeled structure of any enumerated class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Structure {
    Graph(Graph),
    Colored(ColoredSplitGraph),
    Bicolored(BicoloredGraph),
}

fn pair_count(n: usize) -> u32 {
    (n * n.saturating_sub(1) / 2) as u32
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    (0u128..1 << pair_count(n)).map(move |w| Graph::from_adjacency_word(n, w))
}

/// Bipartite pairs `(green, red)` in lexicographic order.
fn bipartite_pairs(n: usize, green: VertexSet) -> Vec<(usize, usize)> {
    let red = VertexSet::range(n).difference(green);
    green
        .iter()
        .flat_map(|g| red.iter().map(move |r| (g, r)))
        .collect()
}

fn bicolored_with_green(n: usize, green: VertexSet) -> impl Iterator<Item = BicoloredGraph> {
    let pairs = bipartite_pairs(n, green);
    (0u64..1 << pairs.len()).map(move |mask| {
        let mut g = Graph::empty_on(VertexSet::range(n));
        for (bit, &(x, y)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                g.add_edge(x, y);
            }
        }
        BicoloredGraph::from_parts_unchecked(g, green)
    })
}

fn all_bicolored(n: usize) -> impl Iterator<Item = BicoloredGraph> {
    (0u16..1 << n).flat_map(move |g| bicolored_with_green(n, VertexSet::from_bits(g)))
}

/// Every labeled structure of class `tag` on `0..n`, each exactly once.
pub fn enumerate_labeled(n: usize, tag: ClassTag) -> Result<Box<dyn Iterator<Item = Structure>>> {
    tag.check_n(n)?;
    Ok(match tag {
        ClassTag::AllGraphs => Box::new(all_graphs(n).map(Structure::Graph)),
        ClassTag::Split => Box::new(all_graphs(n).filter(Graph::is_split).map(Structure::Graph)),
        ClassTag::ColoredSplit => Box::new(all_graphs(n).filter(Graph::is_split).flat_map(|g| {
            let a = SplitAnalysis::of(&g).expect("split graph");
            a.s_max_partitions()
                .into_iter()
                .map(move |p| Structure::Colored(ColoredSplitGraph::from_parts_unchecked(g, p.k)))
        })),
        ClassTag::Bicolored => Box::new(all_bicolored(n).map(Structure::Bicolored)),
        ClassTag::BicoloredNoIsolatedGreen => Box::new(
            all_bicolored(n)
                .filter(|b| b.isolated_green().is_empty())
                .map(Structure::Bicolored),
        ),
        _ => Box::new(
            all_graphs(n)
                .filter(move |g| {
                    g.is_split() && tag.accepts_class(SplitAnalysis::of(g).map(|a| a.class))
                })
                .map(Structure::Graph),
        ),
    })
}

/// Slot after the ten class tags: colored graphs with K-canonical shape.
const COLORED_K_CANONICAL: usize = 10;

/// Per-tag tallies for one chunk of the search space.
struct Tally {
    labeled: [u64; 11],
    codes: Option<Vec<HashSet<u64>>>,
}

impl Tally {
    fn new(with_codes: bool) -> Self {
        Tally {
            labeled: [0; 11],
            codes: with_codes.then(|| vec![HashSet::new(); 11]),
        }
    }

    fn add(&mut self, tag: ClassTag, code: impl FnOnce() -> u64) {
        self.add_slot(tag.index(), code)
    }

    fn add_slot(&mut self, slot: usize, code: impl FnOnce() -> u64) {
        self.labeled[slot] += 1;
        if let Some(codes) = &mut self.codes {
            codes[slot].insert(code());
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.labeled.iter_mut().zip(other.labeled) {
            *a += b;
        }
        if let (Some(mine), Some(theirs)) = (&mut self.codes, other.codes) {
            for (a, b) in mine.iter_mut().zip(theirs) {
                if a.len() < b.len() {
                    let small = std::mem::replace(a, b);
                    a.extend(small);
                } else {
                    a.extend(b);
                }
            }
        }
        self
    }

    fn unlabeled(&self, tag: ClassTag) -> Option<u64> {
        self.unlabeled_slot(tag.index())
    }

    fn unlabeled_slot(&self, slot: usize) -> Option<u64> {
        self.codes.as_ref().map(|c| c[slot].len() as u64)
    }
}

const CHUNK: u128 = 1 << 12;

/// Tallies every graph on `n` vertices; `classify` adds the split classes
/// and colorings, `with_codes` the canonical codes.
fn graph_pass(n: usize, with_codes: bool, classify: bool) -> Tally {
    let total = 1u128 << pair_count(n);
    let chunks = total.div_ceil(CHUNK) as u64;
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut t = Tally::new(with_codes);
            let start = c as u128 * CHUNK;
            let end = (start + CHUNK).min(total);
            for w in start..end {
                let g = Graph::from_adjacency_word(n, w);
                let code = || canonical_code(&g).expect("n <= 8").as_u64();
                t.add(ClassTag::AllGraphs, code);
                if !g.is_split() {
                    continue;
                }
                t.add(ClassTag::Split, code);
                if !classify {
                    continue;
                }
                let a = SplitAnalysis::of(&g).expect("split graph");
                let class_tag = match a.class {
                    SplitClass::Balanced => ClassTag::Balanced,
                    SplitClass::Ambiguous => ClassTag::Ambiguous,
                    SplitClass::KCanonical => ClassTag::KCanonical,
                    SplitClass::SCanonical => ClassTag::SCanonical,
                };
                t.add(class_tag, code);
                if class_tag != ClassTag::Balanced {
                    t.add(ClassTag::Unbalanced, code);
                }
                for p in a.s_max_partitions() {
                    let colored = || {
                        canonical_code_two_colored(&g, p.k)
                            .expect("n <= 8")
                            .as_u64()
                    };
                    if class_tag == ClassTag::KCanonical {
                        t.add_slot(COLORED_K_CANONICAL, colored);
                    }
                    t.add(ClassTag::ColoredSplit, colored);
                }
            }
            t
        })
        .reduce(|| Tally::new(with_codes), Tally::merge)
}

fn bicolored_pass(n: usize, with_codes: bool) -> Tally {
    (0u16..1 << n)
        .into_par_iter()
        .map(|green| {
            let mut t = Tally::new(with_codes);
            for b in bicolored_with_green(n, VertexSet::from_bits(green)) {
                let code = || canonical_code_bicolored(&b).expect("n <= 8").as_u64();
                t.add(ClassTag::Bicolored, code);
                if b.isolated_green().is_empty() {
                    t.add(ClassTag::BicoloredNoIsolatedGreen, code);
                }
            }
            t
        })
        .reduce(|| Tally::new(with_codes), Tally::merge)
}

fn pass_for(n: usize, tag: ClassTag, with_codes: bool) -> Tally {
    match tag {
        ClassTag::Bicolored | ClassTag::BicoloredNoIsolatedGreen => bicolored_pass(n, with_codes),
        ClassTag::AllGraphs | ClassTag::Split => graph_pass(n, with_codes, false),
        _ => graph_pass(n, with_codes, true),
    }
}

/// Number of labeled structures of class `tag` on `n` vertices.
pub fn count_labeled(n: usize, tag: ClassTag) -> Result<BigUint> {
    tag.check_n(n)?;
    Ok(BigUint::from(pass_for(n, tag, false).labeled[tag.index()]))
}

/// Number of isomorphism classes (color-preserving for colored classes).
pub fn count_unlabeled(n: usize, tag: ClassTag) -> Result<u64> {
    let max = if tag == ClassTag::Split {
        MAX_GRAPH_N
    } else {
        MAX_CLASSIFIED_N
    };
    if n > max {
        return Err(Error::TooLarge {
            what: "unlabeled enumeration",
            max,
            got: n,
        });
    }
    Ok(pass_for(n, tag, true)
        .unlabeled(tag)
        .expect("codes collected"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: usize,
    pub tag: ClassTag,
    #[serde(with = "crate::decimal")]
    pub labeled: BigUint,
    pub unlabeled: u64,
}

/// Labeled and unlabeled counts of every class at one `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: usize,
    pub rows: Vec<CensusRow>,
    /// Colored split graphs whose underlying graph is K-canonical, as
    /// (labeled, unlabeled).
    #[serde(with = "colored_k_canonical_repr")]
    pub colored_k_canonical: (BigUint, u64),
}

mod colored_k_canonical_repr {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        #[serde(with = "crate::decimal")]
        labeled: BigUint,
        unlabeled: u64,
    }

    pub fn serialize<S: Serializer>(v: &(BigUint, u64), s: S) -> Result<S::Ok, S::Error> {
        Repr {
            labeled: v.0.clone(),
            unlabeled: v.1,
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(BigUint, u64), D::Error> {
        let r = Repr::deserialize(d)?;
        Ok((r.labeled, r.unlabeled))
    }
}

impl Census {
    pub fn labeled(&self, tag: ClassTag) -> &BigUint {
        &self.rows[tag.index()].labeled
    }

    pub fn unlabeled(&self, tag: ClassTag) -> u64 {
        self.rows[tag.index()].unlabeled
    }

    /// The class relations every census must satisfy; returns the failed
    /// ones by name.
    pub fn identity_violations(&self) -> Vec<String> {
        use ClassTag::*;
        let mut out = Vec::new();
        let labeled = |t| self.labeled(t).clone();
        let unlabeled = |t| BigUint::from(self.unlabeled(t));
        type Getter<'a> = &'a dyn Fn(ClassTag) -> BigUint;
        let sides: [(&str, Getter, BigUint); 2] = [
            ("labeled", &labeled, self.colored_k_canonical.0.clone()),
            (
                "unlabeled",
                &unlabeled,
                BigUint::from(self.colored_k_canonical.1),
            ),
        ];
        for (kind, get, cuk) in sides {
            let checks = [
                ("S = B + U", get(Split) == get(Balanced) + get(Unbalanced)),
                (
                    "U = UK + US + Uamb",
                    get(Unbalanced) == get(KCanonical) + get(SCanonical) + get(Ambiguous),
                ),
                ("UK = US", get(KCanonical) == get(SCanonical)),
                (
                    "cS - cUK = S - UK",
                    get(ColoredSplit) + get(KCanonical) == get(Split) + cuk,
                ),
            ];
            for (name, ok) in checks {
                if !ok {
                    out.push(format!("{kind} n={}: {name}", self.n));
                }
            }
        }
        out
    }
}

/// Counts every class at `n` in one graph pass and one bicolored pass. The
/// class relations are left to [`Census::identity_violations`].
pub fn class_census(n: usize) -> Result<Census> {
    if n > MAX_CLASSIFIED_N {
        return Err(Error::TooLarge {
            what: "census",
            max: MAX_CLASSIFIED_N,
            got: n,
        });
    }
    let graphs = graph_pass(n, true, true);
    let bicolored = bicolored_pass(n, true);
    let rows = ClassTag::ALL
        .iter()
        .map(|&tag| {
            let src = match tag {
                ClassTag::Bicolored | ClassTag::BicoloredNoIsolatedGreen => &bicolored,
                _ => &graphs,
            };
            CensusRow {
                n,
                tag,
                labeled: BigUint::from(src.labeled[tag.index()]),
                unlabeled: src.unlabeled(tag).expect("codes collected"),
            }
        })
        .collect();
    Ok(Census {
        n,
        rows,
        colored_k_canonical: (
            BigUint::from(graphs.labeled[COLORED_K_CANONICAL]),
            graphs
                .unlabeled_slot(COLORED_K_CANONICAL)
                .expect("codes collected"),
        ),
    })
}

/// CSV with header `n,tag,labeled,unlabeled`.
pub fn census_csv(censuses: &[Census]) -> String {
    let mut out = String::from("n,tag,labeled,unlabeled\n");
    for c in censuses {
        for r in &c.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.n, r.tag, r.labeled, r.unlabeled
            ));
        }
    }
    out
}
