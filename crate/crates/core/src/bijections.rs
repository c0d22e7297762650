//! Invertible, relabeling-equivariant decompositions of split graphs.
//!
//! | map | from | to |
//! |-----|------|----|
//! | [`uk_decompose`] | K-canonical graph | (swing clique of size ≥ 2, colored split graph) |
//! | [`amb_decompose`] | ambiguous graph | (swing vertex, balanced graph) |
//! | [`cuk_decompose`] | colored K-canonical graph | (pointed set of size ≥ 2, colored split graph) |
//! | [`split_to_bicolored`] | colored split graph | bicolored graph without isolated green vertex |
//!
//! Sub-structures keep the labels of the structure they came from, and the
//! compose maps require disjoint label sets.

use serde::{Deserialize, Serialize};

use crate::bicolored::BicoloredGraph;
use crate::error::{Error, Result};
use crate::graph::{Graph, Permutation, VertexSet, MAX_VERTICES};
use crate::split::{canonical_partition, ColoredSplitGraph, SplitAnalysis, SplitClass};

/// A set of at least two labels with one distinguished element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PointedSetRepr")]
pub struct PointedSet {
    elements: VertexSet,
    point: usize,
}

#[derive(Deserialize)]
struct PointedSetRepr {
    elements: VertexSet,
    point: usize,
}

impl TryFrom<PointedSetRepr> for PointedSet {
    type Error = Error;

    fn try_from(r: PointedSetRepr) -> Result<Self> {
        PointedSet::new(r.elements, r.point)
    }
}

impl PointedSet {
    pub fn new(elements: VertexSet, point: usize) -> Result<Self> {
        if elements.len() < 2 {
            return Err(Error::TooSmall {
                min: 2,
                got: elements.len(),
            });
        }
        if !elements.contains(point) {
            return Err(Error::OutOfRange {
                vertex: point,
                n: elements.bound(),
            });
        }
        Ok(PointedSet { elements, point })
    }

    pub fn elements(&self) -> VertexSet {
        self.elements
    }

    pub fn point(&self) -> usize {
        self.point
    }

    pub fn relabel(&self, p: &Permutation) -> Result<Self> {
        p.check_acts_on(self.elements)?;
        Ok(PointedSet {
            elements: p.apply_set(self.elements),
            point: p.apply(self.point),
        })
    }
}

fn expect_class(g: &Graph, expected: SplitClass) -> Result<SplitAnalysis> {
    let a = SplitAnalysis::of(g).ok_or(Error::NotSplit)?;
    if a.class != expected {
        return Err(Error::WrongClass {
            expected: expected.name(),
            found: a.class.name(),
        });
    }
    Ok(a)
}

/// `G ↦ (A, G − A)` for a K-canonical `G` with swing set `A`. The remainder
/// is colored by the canonical K-max partition of `G`.
pub fn uk_decompose(g: &Graph) -> Result<(VertexSet, ColoredSplitGraph)> {
    let a = expect_class(g, SplitClass::KCanonical)?;
    let kmax = a.k_max_partitions()[0];
    let rest = g.remove_vertices(a.swings);
    let rest = ColoredSplitGraph::new(rest, kmax.k.difference(a.swings))?;
    Ok((a.swings, rest))
}

/// Inverse of [`uk_decompose`]: `A` becomes a clique joined to every green
/// vertex of `rest`.
pub fn uk_compose(a: VertexSet, rest: &ColoredSplitGraph) -> Result<Graph> {
    if a.len() < 2 {
        return Err(Error::TooSmall {
            min: 2,
            got: a.len(),
        });
    }
    let mut g = rest.graph().disjoint_union(&Graph::empty_on(a))?;
    for x in a.iter() {
        for y in a.iter().filter(|&y| y > x) {
            g.add_edge(x, y);
        }
        for k in rest.green().iter() {
            g.add_edge(x, k);
        }
    }
    Ok(g)
}

/// `G ↦ (a, G − a)` for an ambiguous `G` with swing vertex `a`.
pub fn amb_decompose(g: &Graph) -> Result<(usize, Graph)> {
    let an = expect_class(g, SplitClass::Ambiguous)?;
    let a = an
        .swings
        .first()
        .expect("ambiguous graph has a swing vertex");
    Ok((a, g.remove_vertices(VertexSet::singleton(a))))
}

/// Inverse of [`amb_decompose`]: joins `a` to the clique side of the unique
/// partition of the balanced graph `h`.
pub fn amb_compose(a: usize, h: &Graph) -> Result<Graph> {
    if a >= MAX_VERTICES {
        return Err(Error::OutOfRange {
            vertex: a,
            n: MAX_VERTICES,
        });
    }
    if h.vertices().contains(a) {
        return Err(Error::LabelClash);
    }
    expect_class(h, SplitClass::Balanced)?;
    let k = canonical_partition(h)?
        .expect("balanced graph has a partition")
        .k;
    let mut g = h.disjoint_union(&Graph::empty_on(VertexSet::singleton(a)))?;
    for v in k.iter() {
        g.add_edge(a, v);
    }
    Ok(g)
}

/// Splits a colored K-canonical graph into its swing set, pointed at the one
/// swing vertex colored red, and the colored remainder.
pub fn cuk_decompose(c: &ColoredSplitGraph) -> Result<(PointedSet, ColoredSplitGraph)> {
    let a = expect_class(c.graph(), SplitClass::KCanonical)?;
    let red_swings = a.swings.intersection(c.red());
    debug_assert_eq!(red_swings.len(), 1);
    let point = red_swings
        .first()
        .expect("S-max coloring puts one swing vertex in S");
    let (rest, green) = c.remove_vertices_unchecked(a.swings);
    Ok((
        PointedSet::new(a.swings, point)?,
        ColoredSplitGraph::new(rest, green)?,
    ))
}

/// Inverse of [`cuk_decompose`].
pub fn cuk_compose(ps: &PointedSet, rest: &ColoredSplitGraph) -> Result<ColoredSplitGraph> {
    let g = uk_compose(ps.elements, rest)?;
    let mut green = rest.green().union(ps.elements);
    green.remove(ps.point);
    ColoredSplitGraph::new(g, green)
}

/// Deletes the edges inside the green clique.
pub fn split_to_bicolored(c: &ColoredSplitGraph) -> BicoloredGraph {
    let mut g = *c.graph();
    let green = c.green();
    for x in green.iter() {
        for y in green.iter().filter(|&y| y > x) {
            g.remove_edge(x, y);
        }
    }
    BicoloredGraph::from_parts_unchecked(g, green)
}

/// Makes the green vertices a clique. Fails on an isolated green vertex,
/// which would be a swing vertex on the clique side.
pub fn bicolored_to_split(b: &BicoloredGraph) -> Result<ColoredSplitGraph> {
    if let Some(v) = b.isolated_green().first() {
        return Err(Error::IsolatedGreen(v));
    }
    let mut g = *b.graph();
    let green = b.green();
    for x in green.iter() {
        for y in green.iter().filter(|&y| y > x) {
            g.add_edge(x, y);
        }
    }
    Ok(ColoredSplitGraph::from_parts_unchecked(g, green))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::split::classify;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    fn p4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn uk_examples() {
        let (a, rest) = uk_decompose(&k(2)).unwrap();
        assert_eq!((a, rest.n()), (set(&[0, 1]), 0));
        let (a, rest) = uk_decompose(&k(3)).unwrap();
        assert_eq!((a, rest.n()), (set(&[0, 1, 2]), 0));

        // Star with center 0 is S-canonical.
        let star = Graph::new(3, &[(0, 1), (0, 2)]).unwrap();
        assert!(matches!(uk_decompose(&star), Err(Error::WrongClass { .. })));

        assert_eq!(
            uk_compose(set(&[0, 1]), &ColoredSplitGraph::empty()).unwrap(),
            k(2)
        );

        let lone_red = ColoredSplitGraph::new(Graph::empty_on(set(&[2])), set(&[])).unwrap();
        let g = uk_compose(set(&[0, 1]), &lone_red).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert_eq!(g.vertices(), set(&[0, 1, 2]));
        assert_eq!(SplitAnalysis::of(&g).unwrap().swings, set(&[0, 1]));

        let lone_green = Graph::empty_on(set(&[2]));
        assert_eq!(
            ColoredSplitGraph::new(lone_green, set(&[2])),
            Err(Error::NotSMax)
        );
        assert!(matches!(
            uk_compose(set(&[0]), &ColoredSplitGraph::empty()),
            Err(Error::TooSmall { .. })
        ));
        assert_eq!(uk_compose(set(&[1, 2]), &lone_red), Err(Error::LabelClash));
    }

    #[test]
    fn amb_examples() {
        let (a, rest) = amb_decompose(&k(1)).unwrap();
        assert_eq!((a, rest.n()), (0, 0));

        // P3 has two non-adjacent swing vertices, so it is S-canonical.
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(classify(&p3), Ok(SplitClass::SCanonical));
        assert!(matches!(amb_decompose(&p3), Err(Error::WrongClass { .. })));
        assert!(matches!(
            amb_decompose(&p4()),
            Err(Error::WrongClass { .. })
        ));

        assert_eq!(
            amb_compose(0, &Graph::empty_on(VertexSet::EMPTY)).unwrap(),
            k(1)
        );

        let p4_shifted = p4()
            .relabel(&Permutation::new(vec![1, 2, 3, 4, 0]).unwrap())
            .unwrap();
        let g = amb_compose(0, &p4_shifted).unwrap();
        assert_eq!(g.neighbors(0), set(&[2, 3]));
        assert_eq!(classify(&g), Ok(SplitClass::Ambiguous));
        assert_eq!(SplitAnalysis::of(&g).unwrap().swings, set(&[0]));
        let (a, rest) = amb_decompose(&g).unwrap();
        assert_eq!((a, rest), (0, p4_shifted));
        assert_eq!(classify(&rest), Ok(SplitClass::Balanced));

        let k2 = Graph::new(3, &[(1, 2)]).unwrap().remove_vertices(set(&[0]));
        assert!(matches!(amb_compose(0, &k2), Err(Error::WrongClass { .. })));
        assert_eq!(amb_compose(1, &p4()), Err(Error::LabelClash));
    }

    #[test]
    fn cuk_examples() {
        let c = ColoredSplitGraph::new(k(2), set(&[0])).unwrap();
        let (ps, rest) = cuk_decompose(&c).unwrap();
        assert_eq!((ps.elements(), ps.point(), rest.n()), (set(&[0, 1]), 1, 0));
        assert_eq!(cuk_compose(&ps, &rest).unwrap(), c);

        let c = ColoredSplitGraph::new(k(3), set(&[0, 1])).unwrap();
        let (ps, rest) = cuk_decompose(&c).unwrap();
        assert_eq!(
            (ps.elements(), ps.point(), rest.n()),
            (set(&[0, 1, 2]), 2, 0)
        );
        assert_eq!(cuk_compose(&ps, &rest).unwrap(), c);

        let c = ColoredSplitGraph::new(p4(), set(&[1, 2])).unwrap();
        assert!(matches!(cuk_decompose(&c), Err(Error::WrongClass { .. })));

        let ps = PointedSet::new(set(&[0, 1]), 0).unwrap();
        let c = cuk_compose(&ps, &ColoredSplitGraph::empty()).unwrap();
        assert_eq!((c.graph(), c.red()), (&k(2), set(&[0])));
        assert!(matches!(
            PointedSet::new(set(&[0]), 0),
            Err(Error::TooSmall { .. })
        ));
    }

    #[test]
    fn bicolored_examples() {
        let c = ColoredSplitGraph::new(p4(), set(&[1, 2])).unwrap();
        let b = split_to_bicolored(&c);
        assert_eq!(b.graph().edges(), vec![(0, 1), (2, 3)]);
        assert_eq!(b.green(), set(&[1, 2]));
        assert_eq!(bicolored_to_split(&b).unwrap(), c);

        let red = ColoredSplitGraph::new(k(1), set(&[])).unwrap();
        let b = split_to_bicolored(&red);
        assert_eq!((b.n(), b.red()), (1, set(&[0])));
        assert_eq!(bicolored_to_split(&b).unwrap(), red);

        let green = BicoloredGraph::new(k(1), set(&[0])).unwrap();
        assert_eq!(bicolored_to_split(&green), Err(Error::IsolatedGreen(0)));
    }
}
