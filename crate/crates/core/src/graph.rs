//! Labeled simple graphs on at most 16 vertices.
//!
//! A [`Graph`] lives on a label set drawn from the universe `{0, .., 15}`.
//! Graphs built by [`Graph::new`] use the labels `0..n`; sub-structures
//! produced by the bijections keep the labels of the graph they came from.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size of the label universe; graphs never exceed this many vertices.
pub const MAX_VERTICES: usize = 16;

/// A set of vertex labels from `{0, .., 15}`, stored as a bit word.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u16);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u16) -> Self {
        VertexSet(bits)
    }

    /// `{0, .., n-1}`.
    pub fn range(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n >= 16 {
            VertexSet(u16::MAX)
        } else {
            VertexSet((1u16 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub const fn bits(self) -> u16 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// One more than the largest element (0 for the empty set).
    pub fn bound(self) -> usize {
        16 - self.0.leading_zeros() as usize
    }

    /// Elements in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Builds a set from labels, rejecting labels outside the universe.
    pub fn try_from_slice(labels: &[usize]) -> Result<Self> {
        let mut set = VertexSet::EMPTY;
        for &v in labels {
            if v >= MAX_VERTICES {
                return Err(Error::OutOfRange {
                    vertex: v,
                    n: MAX_VERTICES,
                });
            }
            set.insert(v);
        }
        Ok(set)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(d)?;
        VertexSet::try_from_slice(&labels).map_err(serde::de::Error::custom)
    }
}

/// A bijection on `{0, .., len-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || seen[i] {
                return Err(Error::InvalidPermutation(image));
            }
            seen[i] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(len: usize) -> Self {
        Permutation {
            image: (0..len).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn apply_set(&self, set: VertexSet) -> VertexSet {
        set.iter().map(|v| self.image[v]).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { image: inv }
    }

    /// `self` after `first`: `i -> self(first(i))`.
    pub fn after(&self, first: &Permutation) -> Self {
        Permutation {
            image: first.image.iter().map(|&j| self.image[j]).collect(),
        }
    }

    pub(crate) fn check_acts_on(&self, set: VertexSet) -> Result<()> {
        if self.image.len() < set.bound() {
            Err(Error::LengthMismatch {
                perm: self.image.len(),
                needed: set.bound(),
            })
        } else {
            Ok(())
        }
    }
}

/// Bit position of the pair `{i, j}` in an adjacency word.
#[inline]
pub fn pair_index(i: usize, j: usize) -> usize {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    hi * (hi - 1) / 2 + lo
}

/// A simple labeled graph. Rows of `adj` are neighbor bit sets; the rows of
/// labels outside the vertex set are always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    verts: VertexSet,
    adj: [u16; MAX_VERTICES],
}

impl Graph {
    /// The edgeless graph on `0..n`.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "graph",
                max: MAX_VERTICES,
                got: n,
            });
        }
        Ok(Graph {
            verts: VertexSet::range(n),
            adj: [0; MAX_VERTICES],
        })
    }

    /// The edgeless graph on an arbitrary label set.
    pub fn empty_on(verts: VertexSet) -> Self {
        Graph {
            verts,
            adj: [0; MAX_VERTICES],
        }
    }

    /// Builds the graph on `0..n` with exactly the given edges.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(i, j) in edges {
            g.try_add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Complete graph on `0..n`.
    pub fn complete(n: usize) -> Result<Self> {
        Ok(Graph::empty(n)?.complement())
    }

    /// Decodes an adjacency word on `0..n`; bit `pair_index(i, j)` is the
    /// pair `{i, j}`.
    pub fn from_adjacency_word(n: usize, word: u128) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        let mut g = Graph::empty_on(VertexSet::range(n));
        let mut bit = 0;
        for j in 1..n {
            for i in 0..j {
                if word >> bit & 1 == 1 {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
                bit += 1;
            }
        }
        g
    }

    /// Adjacency word over the pairs of `0..bound`, where `bound` is one
    /// past the largest label.
    pub fn adjacency_word(&self) -> u128 {
        let mut word = 0u128;
        for i in self.verts.iter() {
            for j in VertexSet(self.adj[i]).iter().filter(|&j| j > i) {
                word |= 1 << pair_index(i, j);
            }
        }
        word
    }

    pub(crate) fn try_add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        let n = self.verts.bound();
        for v in [i, j] {
            if !self.verts.contains(v) {
                return Err(Error::OutOfRange { vertex: v, n });
            }
        }
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
        Ok(())
    }

    pub(crate) fn add_edge(&mut self, i: usize, j: usize) {
        debug_assert!(i != j && self.verts.contains(i) && self.verts.contains(j));
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
    }

    pub(crate) fn remove_edge(&mut self, i: usize, j: usize) {
        self.adj[i] &= !(1 << j);
        self.adj[j] &= !(1 << i);
    }

    pub fn n(&self) -> usize {
        self.verts.len()
    }

    pub fn vertices(&self) -> VertexSet {
        self.verts
    }

    /// True when the label set is exactly `0..n`.
    pub fn is_compact(&self) -> bool {
        self.verts == VertexSet::range(self.n())
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < MAX_VERTICES && self.adj[i] >> j & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in self.verts.iter() {
            for j in self.neighbors(i).iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.verts.iter().map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter().all(|v| {
            set.difference(VertexSet::singleton(v))
                .is_subset(self.neighbors(v))
        })
    }

    pub fn is_stable(&self, set: VertexSet) -> bool {
        set.iter().all(|v| self.neighbors(v).is_disjoint(set))
    }

    /// Applies `p` to every label: `{i, j}` is an edge of `g` iff
    /// `{p(i), p(j)}` is an edge of the result.
    pub fn relabel(&self, p: &Permutation) -> Result<Self> {
        p.check_acts_on(self.verts)?;
        let mut out = Graph::empty_on(p.apply_set(self.verts));
        for (i, j) in self.edges() {
            out.add_edge(p.apply(i), p.apply(j));
        }
        Ok(out)
    }

    /// Complement within the same label set.
    pub fn complement(&self) -> Self {
        let mut out = *self;
        for v in self.verts.iter() {
            out.adj[v] = self.verts.bits() & !self.adj[v] & !(1 << v);
        }
        out
    }

    /// Induced subgraph on `set ∩ vertices`, labels preserved.
    pub fn induced(&self, set: VertexSet) -> Self {
        let keep = set.intersection(self.verts);
        let mut out = Graph::empty_on(keep);
        for v in keep.iter() {
            out.adj[v] = self.adj[v] & keep.bits();
        }
        out
    }

    /// `g - set`, labels preserved.
    pub fn remove_vertices(&self, set: VertexSet) -> Self {
        self.induced(self.verts.difference(set))
    }

    /// Disjoint union; fails with `LabelClash` on shared labels.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self> {
        if !self.verts.is_disjoint(other.verts) {
            return Err(Error::LabelClash);
        }
        let mut out = *self;
        out.verts = self.verts.union(other.verts);
        for v in other.verts.iter() {
            out.adj[v] = other.adj[v];
        }
        Ok(out)
    }

    /// Relabels the vertex set onto `0..n` preserving order. Returns the
    /// compacted graph and the original label of each new vertex.
    pub fn compact(&self) -> (Graph, Vec<usize>) {
        let labels = self.verts.to_vec();
        let mut pos = [0usize; MAX_VERTICES];
        for (new, &old) in labels.iter().enumerate() {
            pos[old] = new;
        }
        let mut out = Graph::empty_on(VertexSet::range(labels.len()));
        for (i, j) in self.edges() {
            out.add_edge(pos[i], pos[j]);
        }
        (out, labels)
    }

    /// Degrees in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degs: Vec<usize> = self.verts.iter().map(|v| self.degree(v)).collect();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        degs
    }

    /// Split recognition by the degree-sequence criterion: with
    /// `d_1 >= .. >= d_n` and `m = max{i : d_i >= i - 1}`, the graph is
    /// split iff `sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i`.
    pub fn is_split(&self) -> bool {
        let degs = self.degree_sequence();
        let m = degs
            .iter()
            .enumerate()
            .filter(|&(i, &d)| d >= i)
            .map(|(i, _)| i + 1)
            .max()
            .unwrap_or(0);
        let head: usize = degs[..m].iter().sum();
        let tail: usize = degs[m..].iter().sum();
        head == m * m.saturating_sub(1) + tail
    }

    /// Parses the text fixture format: first line `n`, then one `i j` pair
    /// per line. Blank lines and `#` comments are ignored.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("missing vertex count".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("vertex count: {e}")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(i)), Some(Ok(j)), None) => edges.push((i, j)),
                _ => return Err(Error::Parse(format!("bad edge line `{line}`"))),
            }
        }
        Graph::new(n, &edges)
    }

    pub fn to_text(&self) -> String {
        let (g, _) = self.compact();
        let mut out = format!("{}\n", g.n());
        for (i, j) in g.edges() {
            out.push_str(&format!("{i} {j}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.verts)
            .field("edges", &self.edges())
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<VertexSet>,
    edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphRepr {
    fn from(g: &Graph) -> Self {
        GraphRepr {
            n: g.n(),
            vertices: (!g.is_compact()).then_some(g.verts),
            edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        let verts = match r.vertices {
            Some(v) if v.len() != r.n => {
                return Err(Error::Parse(format!(
                    "n = {} but {} vertices listed",
                    r.n,
                    v.len()
                )))
            }
            Some(v) => v,
            None if r.n > MAX_VERTICES => {
                return Err(Error::TooLarge {
                    what: "graph",
                    max: MAX_VERTICES,
                    got: r.n,
                })
            }
            None => VertexSet::range(r.n),
        };
        let mut g = Graph::empty_on(verts);
        for [i, j] in r.edges {
            g.try_add_edge(i, j)?;
        }
        Ok(g)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        Graph::try_from(repr).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).unwrap()
    }

    /// Exhaustive oracle: some bipartition has a clique side and a stable side.
    fn has_ks_partition(g: &Graph) -> bool {
        let n = g.n();
        (0u16..1 << n).any(|k| {
            let k = VertexSet::from_bits(k);
            g.is_clique(k) && g.is_stable(VertexSet::range(n).difference(k))
        })
    }

    #[test]
    fn make_graph_edge_cases() {
        assert_eq!(Graph::new(0, &[]).unwrap().n(), 0);
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.edges(), vec![(0, 1)]);
        let two_k2 = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two_k2.is_split());
        assert!(!has_ks_partition(&two_k2));

        assert_eq!(
            Graph::new(3, &[(0, 3)]),
            Err(Error::OutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert!(matches!(Graph::new(17, &[]), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn relabel_examples() {
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.relabel(&Permutation::identity(2)).unwrap(), k2);

        let p3 = path(3);
        let swap = Permutation::new(vec![2, 1, 0]).unwrap();
        assert_eq!(p3.relabel(&swap).unwrap(), p3);

        let e01 = Graph::new(3, &[(0, 1)]).unwrap();
        let cycle = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(
            e01.relabel(&cycle).unwrap(),
            Graph::new(3, &[(1, 2)]).unwrap()
        );
        let back = e01
            .relabel(&cycle)
            .unwrap()
            .relabel(&cycle.inverse())
            .unwrap();
        assert_eq!(back, e01);

        assert!(matches!(
            p3.relabel(&Permutation::identity(2)),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn complement_examples() {
        let c = Graph::empty(3).unwrap().complement();
        assert_eq!(c, Graph::complete(3).unwrap());
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.complement().edge_count(), 0);

        // P4 = 0-1-2-3 is self-complementary: its complement is 1-3-0-2.
        let p4 = path(4);
        let pc = p4.complement();
        assert_eq!(pc.edges(), vec![(0, 2), (0, 3), (1, 3)]);
        let iso = Permutation::new(vec![1, 3, 0, 2]).unwrap();
        assert_eq!(p4.relabel(&iso).unwrap(), pc);
        assert_eq!(pc.complement(), p4);
    }

    #[test]
    fn degree_sequences() {
        assert_eq!(Graph::complete(3).unwrap().degree_sequence(), vec![2, 2, 2]);
        assert_eq!(path(3).degree_sequence(), vec![2, 1, 1]);
        let two_k2 = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_k2.degree_sequence(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn split_recognition_examples() {
        assert!(Graph::complete(3).unwrap().is_split());
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!c4.is_split());
        assert!(!has_ks_partition(&c4));
        assert!(Graph::empty(0).unwrap().is_split());
    }

    #[test]
    fn split_recognition_matches_exhaustive_search_up_to_six() {
        for n in 0..=6usize {
            let pairs = n * n.saturating_sub(1) / 2;
            for word in 0u128..1 << pairs {
                let g = Graph::from_adjacency_word(n, word);
                assert_eq!(g.is_split(), has_ks_partition(&g), "{g:?}");
                assert_eq!(g.is_split(), g.complement().is_split());
            }
        }
    }

    #[test]
    fn adjacency_word_round_trip() {
        for word in [0u128, 1, 0b101101, (1 << 21) - 1] {
            assert_eq!(Graph::from_adjacency_word(7, word).adjacency_word(), word);
        }
    }

    #[test]
    fn text_and_json_formats() {
        let g = Graph::parse_text("4\n0 1\n1 2 # middle\n\n2 3\n").unwrap();
        assert_eq!(g, path(4));
        assert_eq!(Graph::parse_text(&g.to_text()).unwrap(), g);
        assert!(Graph::parse_text("3\n0 x\n").is_err());

        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"n":4,"edges":[[0,1],[1,2],[2,3]]}"#);
        assert_eq!(serde_json::from_str::<Graph>(&json).unwrap(), g);

        let sparse = g.remove_vertices(VertexSet::singleton(0));
        let json = serde_json::to_string(&sparse).unwrap();
        assert_eq!(json, r#"{"n":3,"vertices":[1,2,3],"edges":[[1,2],[2,3]]}"#);
        assert_eq!(serde_json::from_str::<Graph>(&json).unwrap(), sparse);
    }
}
