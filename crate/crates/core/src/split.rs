//! KS-partitions, swing vertices, the four-way classification of split
//! graphs, and colored split graphs.
//!
//! Everything here is computed from the full list of KS-partitions, which is
//! found by exhaustion. Swing vertices are the vertices whose side can be
//! flipped to get another KS-partition.
//!
//! Conventions for tiny graphs: the empty graph has the single partition
//! (∅, ∅) and is balanced; `K1` has two partitions, so its vertex swings and
//! it is ambiguous.

use serde::{Deserialize, Serialize};

use crate::bicolored::ColoredRepr;
use crate::error::{Error, Result};
use crate::graph::{Graph, Permutation, VertexSet};

/// A partition of the vertices into a clique `k` and a stable set `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KSPartition {
    #[serde(rename = "K")]
    pub k: VertexSet,
    #[serde(rename = "S")]
    pub s: VertexSet,
}

impl KSPartition {
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.k.is_disjoint(self.s)
            && self.k.union(self.s) == g.vertices()
            && g.is_clique(self.k)
            && g.is_stable(self.s)
    }

    pub fn relabel(&self, p: &Permutation) -> KSPartition {
        KSPartition {
            k: p.apply_set(self.k),
            s: p.apply_set(self.s),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SplitClass {
    Balanced,
    Ambiguous,
    KCanonical,
    SCanonical,
}

impl SplitClass {
    pub fn name(self) -> &'static str {
        match self {
            SplitClass::Balanced => "balanced",
            SplitClass::Ambiguous => "ambiguous",
            SplitClass::KCanonical => "K-canonical",
            SplitClass::SCanonical => "S-canonical",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SwingKind {
    Empty,
    Singleton,
    Clique,
    Stable,
}

/// Swing set `A` with the split of the remaining vertices into `Y` (always
/// in K, adjacent to all of `A`) and `Z` (always in S, adjacent to none).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwingReport {
    pub swings: VertexSet,
    pub kind: SwingKind,
    #[serde(rename = "Y")]
    pub y: VertexSet,
    #[serde(rename = "Z")]
    pub z: VertexSet,
}

/// All KS-partitions of `g`, ordered by the bit word of `K`.
pub fn ks_partitions(g: &Graph) -> Vec<KSPartition> {
    let verts = g.vertices().bits();
    let mut out = Vec::new();
    let mut k: u16 = 0;
    loop {
        let kset = VertexSet::from_bits(k);
        let sset = VertexSet::from_bits(verts & !k);
        if g.is_clique(kset) && g.is_stable(sset) {
            out.push(KSPartition { k: kset, s: sset });
        }
        if k == verts {
            break;
        }
        // next submask of `verts` in ascending order
        k = (k | !verts).wrapping_add(1) & verts;
    }
    out
}

/// Everything the classification needs, computed from one partition scan.
#[derive(Clone, Debug)]
pub struct SplitAnalysis {
    pub partitions: Vec<KSPartition>,
    pub swings: VertexSet,
    pub class: SplitClass,
}

impl SplitAnalysis {
    /// `None` when `g` is not split.
    pub fn of(g: &Graph) -> Option<Self> {
        let partitions = ks_partitions(g);
        if partitions.is_empty() {
            return None;
        }
        let mut swings = VertexSet::EMPTY;
        for p in &partitions {
            for v in g.vertices().iter() {
                if swings.contains(v) {
                    continue;
                }
                let mut moved = p.k;
                if moved.contains(v) {
                    moved.remove(v);
                } else {
                    moved.insert(v);
                }
                if partitions
                    .binary_search_by(|q| q.k.bits().cmp(&moved.bits()))
                    .is_ok()
                {
                    swings.insert(v);
                }
            }
        }
        let class = match swings.len() {
            0 => SplitClass::Balanced,
            1 => SplitClass::Ambiguous,
            _ if g.is_clique(swings) => SplitClass::KCanonical,
            _ => SplitClass::SCanonical,
        };
        Some(SplitAnalysis {
            partitions,
            swings,
            class,
        })
    }

    fn require(g: &Graph) -> Result<Self> {
        SplitAnalysis::of(g).ok_or(Error::NotSplit)
    }

    pub fn max_stable_size(&self) -> usize {
        self.partitions.iter().map(|p| p.s.len()).max().unwrap_or(0)
    }

    pub fn s_max_partitions(&self) -> Vec<KSPartition> {
        let best = self.max_stable_size();
        self.partitions
            .iter()
            .copied()
            .filter(|p| p.s.len() == best)
            .collect()
    }

    pub fn k_max_partitions(&self) -> Vec<KSPartition> {
        let best = self.partitions.iter().map(|p| p.k.len()).max().unwrap_or(0);
        self.partitions
            .iter()
            .copied()
            .filter(|p| p.k.len() == best)
            .collect()
    }
}

pub fn swing_report(g: &Graph) -> Result<SwingReport> {
    let a = SplitAnalysis::require(g)?;
    let always_k = a
        .partitions
        .iter()
        .fold(g.vertices(), |acc, p| acc.intersection(p.k));
    let always_s = a
        .partitions
        .iter()
        .fold(g.vertices(), |acc, p| acc.intersection(p.s));
    let kind = match a.class {
        SplitClass::Balanced => SwingKind::Empty,
        SplitClass::Ambiguous => SwingKind::Singleton,
        SplitClass::KCanonical => SwingKind::Clique,
        SplitClass::SCanonical => SwingKind::Stable,
    };
    Ok(SwingReport {
        swings: a.swings,
        kind,
        y: always_k.difference(a.swings),
        z: always_s.difference(a.swings),
    })
}

pub fn classify(g: &Graph) -> Result<SplitClass> {
    Ok(SplitAnalysis::require(g)?.class)
}

/// Partitions whose stable side has size α(g).
pub fn s_max_partitions(g: &Graph) -> Result<Vec<KSPartition>> {
    Ok(SplitAnalysis::require(g)?.s_max_partitions())
}

/// Partitions whose clique side has size ω(g).
pub fn k_max_partitions(g: &Graph) -> Result<Vec<KSPartition>> {
    Ok(SplitAnalysis::require(g)?.k_max_partitions())
}

/// The unique K-max partition of a K-canonical graph, the unique S-max
/// partition of an S-canonical graph, the unique partition of a balanced
/// graph, and `None` for an ambiguous graph.
pub fn canonical_partition(g: &Graph) -> Result<Option<KSPartition>> {
    let a = SplitAnalysis::require(g)?;
    Ok(match a.class {
        SplitClass::Ambiguous => None,
        SplitClass::KCanonical => Some(a.k_max_partitions()[0]),
        SplitClass::SCanonical => Some(a.s_max_partitions()[0]),
        SplitClass::Balanced => Some(a.partitions[0]),
    })
}

fn max_set_size(g: &Graph, mut accept: impl FnMut(VertexSet) -> bool) -> usize {
    let verts = g.vertices().bits();
    let mut best = 0;
    let mut sub: u16 = 0;
    loop {
        let set = VertexSet::from_bits(sub);
        if set.len() > best && accept(set) {
            best = set.len();
        }
        if sub == verts {
            return best;
        }
        sub = (sub | !verts).wrapping_add(1) & verts;
    }
}

/// ω(g) by exhaustion.
pub fn clique_number(g: &Graph) -> usize {
    max_set_size(g, |s| g.is_clique(s))
}

/// α(g) by exhaustion.
pub fn independence_number(g: &Graph) -> usize {
    max_set_size(g, |s| g.is_stable(s))
}

/// A split graph with a chosen S-max partition: `green` is K, the other
/// vertices (red) are S.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ColoredSplitGraph {
    graph: Graph,
    green: VertexSet,
}

impl ColoredSplitGraph {
    /// Fails with `NotAPartition` unless `(green, rest)` is a KS-partition,
    /// and with `NotSMax` unless it is an S-max one.
    pub fn new(graph: Graph, green: VertexSet) -> Result<Self> {
        let p = KSPartition {
            k: green,
            s: graph.vertices().difference(green),
        };
        color(&graph, p)
    }

    pub(crate) fn from_parts_unchecked(graph: Graph, green: VertexSet) -> Self {
        debug_assert!(ColoredSplitGraph::new(graph, green).is_ok());
        ColoredSplitGraph { graph, green }
    }

    /// The empty colored split graph on no vertices.
    pub fn empty() -> Self {
        ColoredSplitGraph {
            graph: Graph::empty_on(VertexSet::EMPTY),
            green: VertexSet::EMPTY,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn green(&self) -> VertexSet {
        self.green
    }

    pub fn red(&self) -> VertexSet {
        self.graph.vertices().difference(self.green)
    }

    pub fn vertices(&self) -> VertexSet {
        self.graph.vertices()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn partition(&self) -> KSPartition {
        KSPartition {
            k: self.green,
            s: self.red(),
        }
    }

    pub fn relabel(&self, p: &Permutation) -> Result<Self> {
        Ok(ColoredSplitGraph {
            graph: self.graph.relabel(p)?,
            green: p.apply_set(self.green),
        })
    }

    /// Removes `set`, keeping the inherited colors. The result is not
    /// re-validated; callers that need an S-max coloring check it.
    pub(crate) fn remove_vertices_unchecked(&self, set: VertexSet) -> (Graph, VertexSet) {
        (self.graph.remove_vertices(set), self.green.difference(set))
    }
}

/// Colors `g` by `p`, requiring `p` to be an S-max KS-partition.
pub fn color(g: &Graph, p: KSPartition) -> Result<ColoredSplitGraph> {
    if !p.is_valid_for(g) {
        return Err(Error::NotAPartition);
    }
    // A valid partition is S-max iff no K vertex can join S.
    let movable = p.k.iter().any(|v| g.neighbors(v).is_disjoint(p.s));
    if movable {
        return Err(Error::NotSMax);
    }
    Ok(ColoredSplitGraph {
        graph: *g,
        green: p.k,
    })
}

impl Serialize for ColoredSplitGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ColoredRepr::new(&self.graph, self.green).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColoredSplitGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (graph, green) = ColoredRepr::deserialize(d)?
            .into_parts()
            .map_err(serde::de::Error::custom)?;
        ColoredSplitGraph::new(graph, green).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn p4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    fn c4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn ks_partition_examples() {
        assert_eq!(
            ks_partitions(&k(1)),
            vec![
                KSPartition {
                    k: set(&[]),
                    s: set(&[0])
                },
                KSPartition {
                    k: set(&[0]),
                    s: set(&[])
                },
            ]
        );
        assert_eq!(
            ks_partitions(&p4()),
            vec![KSPartition {
                k: set(&[1, 2]),
                s: set(&[0, 3])
            }]
        );
        assert!(ks_partitions(&c4()).is_empty());
        assert_eq!(ks_partitions(&Graph::empty(0).unwrap()).len(), 1);
    }

    #[test]
    fn swing_report_examples() {
        let r = swing_report(&k(1)).unwrap();
        assert_eq!((r.swings, r.kind), (set(&[0]), SwingKind::Singleton));
        let r = swing_report(&k(2)).unwrap();
        assert_eq!((r.swings, r.kind), (set(&[0, 1]), SwingKind::Clique));
        let r = swing_report(&p4()).unwrap();
        assert_eq!(r.swings, VertexSet::EMPTY);
        assert_eq!(r.kind, SwingKind::Empty);
        assert_eq!((r.y, r.z), (set(&[1, 2]), set(&[0, 3])));
        assert_eq!(swing_report(&c4()), Err(Error::NotSplit));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&p4()), Ok(SplitClass::Balanced));
        assert_eq!(classify(&k(1)), Ok(SplitClass::Ambiguous));
        assert_eq!(classify(&k(2)), Ok(SplitClass::KCanonical));
        assert_eq!(classify(&k(2).complement()), Ok(SplitClass::SCanonical));
        assert_eq!(
            classify(&Graph::empty(0).unwrap()),
            Ok(SplitClass::Balanced)
        );
        assert_eq!(classify(&c4()), Err(Error::NotSplit));
    }

    #[test]
    fn s_max_examples() {
        assert_eq!(s_max_partitions(&p4()).unwrap().len(), 1);
        assert_eq!(
            s_max_partitions(&k(2)).unwrap(),
            vec![
                KSPartition {
                    k: set(&[0]),
                    s: set(&[1])
                },
                KSPartition {
                    k: set(&[1]),
                    s: set(&[0])
                },
            ]
        );
        assert_eq!(
            s_max_partitions(&k(1)).unwrap(),
            vec![KSPartition {
                k: set(&[]),
                s: set(&[0])
            }]
        );
    }

    #[test]
    fn canonical_partition_examples() {
        assert_eq!(
            canonical_partition(&k(2)).unwrap(),
            Some(KSPartition {
                k: set(&[0, 1]),
                s: set(&[])
            })
        );
        assert_eq!(
            canonical_partition(&p4()).unwrap(),
            Some(KSPartition {
                k: set(&[1, 2]),
                s: set(&[0, 3])
            })
        );
        assert_eq!(canonical_partition(&k(1)).unwrap(), None);
    }

    #[test]
    fn color_examples() {
        let p = ks_partitions(&p4())[0];
        let c = color(&p4(), p).unwrap();
        assert_eq!((c.green(), c.red()), (set(&[1, 2]), set(&[0, 3])));

        let all = KSPartition {
            k: set(&[0, 1]),
            s: set(&[]),
        };
        assert_eq!(color(&k(2), all), Err(Error::NotSMax));

        let red = KSPartition {
            k: set(&[]),
            s: set(&[0]),
        };
        let c = color(&k(1), red).unwrap();
        assert_eq!(c.red(), set(&[0]));

        let bogus = KSPartition {
            k: set(&[0, 3]),
            s: set(&[1, 2]),
        };
        assert_eq!(color(&p4(), bogus), Err(Error::NotAPartition));
    }

    #[test]
    fn clique_and_independence_numbers() {
        assert_eq!((clique_number(&k(3)), independence_number(&k(3))), (3, 1));
        assert_eq!((clique_number(&p4()), independence_number(&p4())), (2, 2));
        let e5 = Graph::empty(5).unwrap();
        assert_eq!((clique_number(&e5), independence_number(&e5)), (1, 5));
    }

    #[test]
    fn colored_json_round_trip() {
        let c = ColoredSplitGraph::new(p4(), set(&[1, 2])).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(
            json,
            r#"{"n":4,"edges":[[0,1],[1,2],[2,3]],"green":[1,2],"red":[0,3]}"#
        );
        assert_eq!(serde_json::from_str::<ColoredSplitGraph>(&json).unwrap(), c);
        let not_smax = r#"{"n":2,"edges":[[0,1]],"green":[0,1],"red":[]}"#;
        assert!(serde_json::from_str::<ColoredSplitGraph>(not_smax).is_err());
    }

    fn split_graphs_up_to(max_n: usize) -> impl Iterator<Item = Graph> {
        (0..=max_n).flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            (0u128..1 << pairs)
                .map(move |w| Graph::from_adjacency_word(n, w))
                .filter(Graph::is_split)
        })
    }

    #[test]
    fn trichotomy_for_every_partition() {
        for g in split_graphs_up_to(7) {
            let omega = clique_number(&g);
            let alpha = independence_number(&g);
            let parts = ks_partitions(&g);
            for p in &parts {
                let sizes = (p.k.len(), p.s.len());
                let case_i = sizes == (omega, alpha) && parts.len() == 1;
                let case_ii = sizes.0 + 1 == omega
                    && sizes.1 == alpha
                    && p.s
                        .iter()
                        .any(|x| g.is_clique(p.k.union(VertexSet::singleton(x))));
                let case_iii = sizes.0 == omega
                    && sizes.1 + 1 == alpha
                    && p.k
                        .iter()
                        .any(|x| g.is_stable(p.s.union(VertexSet::singleton(x))));
                let holding = [case_i, case_ii, case_iii].iter().filter(|&&b| b).count();
                assert_eq!(holding, 1, "{g:?} {p:?}");
            }
        }
    }

    #[test]
    fn swing_structure_for_unbalanced_graphs() {
        for g in split_graphs_up_to(7) {
            let r = swing_report(&g).unwrap();
            let a = SplitAnalysis::of(&g).unwrap();
            assert_eq!(r.swings.union(r.y).union(r.z), g.vertices());
            for v in r.swings.iter() {
                assert!(r.y.is_subset(g.neighbors(v)));
                assert!(r.z.is_disjoint(g.neighbors(v)));
            }
            let mut expected_smax = Vec::new();
            let mut expected_kmax = Vec::new();
            match a.class {
                SplitClass::Balanced => continue,
                SplitClass::KCanonical | SplitClass::Ambiguous if g.is_clique(r.swings) => {
                    expected_kmax.push(KSPartition {
                        k: r.swings.union(r.y),
                        s: r.z,
                    });
                    for x in r.swings.iter() {
                        let xs = VertexSet::singleton(x);
                        expected_smax.push(KSPartition {
                            k: r.swings.difference(xs).union(r.y),
                            s: r.z.union(xs),
                        });
                    }
                }
                _ => {
                    assert!(g.is_stable(r.swings));
                    expected_smax.push(KSPartition {
                        k: r.y,
                        s: r.swings.union(r.z),
                    });
                    for x in r.swings.iter() {
                        let xs = VertexSet::singleton(x);
                        expected_kmax.push(KSPartition {
                            k: r.y.union(xs),
                            s: r.swings.difference(xs).union(r.z),
                        });
                    }
                }
            }
            expected_smax.sort();
            expected_kmax.sort();
            let mut smax = a.s_max_partitions();
            let mut kmax = a.k_max_partitions();
            smax.sort();
            kmax.sort();
            assert_eq!(smax, expected_smax, "{g:?}");
            assert_eq!(kmax, expected_kmax, "{g:?}");
        }
    }

    #[test]
    fn complement_swaps_canonical_classes() {
        for g in split_graphs_up_to(7) {
            let c = classify(&g).unwrap();
            let cc = classify(&g.complement()).unwrap();
            let expected = match c {
                SplitClass::KCanonical => SplitClass::SCanonical,
                SplitClass::SCanonical => SplitClass::KCanonical,
                other => other,
            };
            assert_eq!(cc, expected);
        }
    }

    #[test]
    fn s_max_partition_unique_unless_k_canonical() {
        for g in split_graphs_up_to(7) {
            let a = SplitAnalysis::of(&g).unwrap();
            let smax = a.s_max_partitions();
            assert_eq!(smax[0].s.len(), independence_number(&g));
            assert_eq!(a.k_max_partitions()[0].k.len(), clique_number(&g));
            if a.class == SplitClass::KCanonical {
                assert_eq!(smax.len(), a.swings.len());
            } else {
                assert_eq!(smax.len(), 1);
            }
            for p in &a.partitions {
                assert_eq!(color(&g, *p).is_ok(), smax.contains(p));
            }
        }
    }
}
