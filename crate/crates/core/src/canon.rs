//! Canonical codes for graphs and color-preserving canonical codes for
//! two-colored graphs.
//!
//! The canonical form of a graph is the smallest adjacency word reachable
//! from the leaves of an individualization/refinement search tree. Cell
//! refinement and target-cell choice depend only on the structure, so the
//! leaf set is closed under relabeling and the minimum is an isomorphism
//! invariant. Branches through twin vertices are skipped since the swap of
//! two twins is an automorphism fixing the current partition.

use serde::{Serialize, Serializer};

use crate::bicolored::BicoloredGraph;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest graph accepted by the canonicalizer.
pub const MAX_CANON_VERTICES: usize = 8;

/// Isomorphism-class key. Layout (high to low): vertex count (4 bits),
/// green count (4 bits), then the 28-bit adjacency word of the canonical
/// relabeling. Uncolored graphs have green count 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(u64);

impl CanonicalCode {
    pub fn bytes(&self) -> [u8; 8] {
        self.0.to_be_bytes()
    }

    pub fn as_u64(&self) -> u64 {
        self.0
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{:016x}", self.0))
    }
}

/// Canonical code of a graph up to isomorphism.
pub fn canonical_code(g: &Graph) -> Result<CanonicalCode> {
    check_size(g)?;
    let (g, _) = g.compact();
    let cells = if g.n() == 0 {
        vec![]
    } else {
        vec![g.vertices().to_vec()]
    };
    Ok(pack(g.n(), 0, search(&g, cells)))
}

/// Canonical code of a bicolored graph up to color-preserving isomorphism.
pub fn canonical_code_bicolored(b: &BicoloredGraph) -> Result<CanonicalCode> {
    canonical_code_two_colored(b.graph(), b.green())
}

/// Canonical code of any graph with a distinguished green vertex set, up to
/// isomorphisms mapping green to green and the rest to the rest.
pub fn canonical_code_two_colored(g: &Graph, green: VertexSet) -> Result<CanonicalCode> {
    check_size(g)?;
    let (cg, labels) = g.compact();
    let mut greens = Vec::new();
    let mut reds = Vec::new();
    for (new, &old) in labels.iter().enumerate() {
        if green.contains(old) {
            greens.push(new);
        } else {
            reds.push(new);
        }
    }
    let k = greens.len();
    let cells: Vec<Vec<usize>> = [greens, reds]
        .into_iter()
        .filter(|c| !c.is_empty())
        .collect();
    Ok(pack(cg.n(), k, search(&cg, cells)))
}

fn check_size(g: &Graph) -> Result<()> {
    if g.n() > MAX_CANON_VERTICES {
        Err(Error::TooLarge {
            what: "canonical form",
            max: MAX_CANON_VERTICES,
            got: g.n(),
        })
    } else {
        Ok(())
    }
}

fn pack(n: usize, green: usize, word: u64) -> CanonicalCode {
    CanonicalCode((n as u64) << 60 | (green as u64) << 56 | word)
}

fn search(g: &Graph, cells: Vec<Vec<usize>>) -> u64 {
    let cells = refine(g, cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        return leaf_word(g, &cells);
    };
    let mut best = u64::MAX;
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cells[target] {
        if tried.iter().any(|&u| are_twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..target]);
        next.push(vec![v]);
        next.push(cells[target].iter().copied().filter(|&u| u != v).collect());
        next.extend_from_slice(&cells[target + 1..]);
        best = best.min(search(g, next));
    }
    best
}

fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    let mut nu = g.neighbors(u);
    let mut nv = g.neighbors(v);
    nu.remove(v);
    nv.remove(u);
    nu == nv
}

/// Splits cells by neighbor counts into every cell until the partition is
/// equitable. New sub-cells are ordered by their count signature.
fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    'outer: loop {
        let masks: Vec<u16> = cells
            .iter()
            .map(|c| c.iter().copied().collect::<VertexSet>().bits())
            .collect();
        for ci in 0..cells.len() {
            if cells[ci].len() < 2 {
                continue;
            }
            let mut keyed: Vec<(u64, usize)> = cells[ci]
                .iter()
                .map(|&v| {
                    let nb = g.neighbors(v).bits();
                    let sig = masks
                        .iter()
                        .fold(0u64, |acc, &m| acc << 4 | (nb & m).count_ones() as u64);
                    (sig, v)
                })
                .collect();
            if keyed.iter().all(|&(s, _)| s == keyed[0].0) {
                continue;
            }
            keyed.sort_unstable();
            let mut split: Vec<Vec<usize>> = Vec::new();
            let mut last = None;
            for (sig, v) in keyed {
                if last != Some(sig) {
                    split.push(Vec::new());
                    last = Some(sig);
                }
                split.last_mut().unwrap().push(v);
            }
            cells.splice(ci..=ci, split);
            continue 'outer;
        }
        return cells;
    }
}

fn leaf_word(g: &Graph, cells: &[Vec<usize>]) -> u64 {
    let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
    let mut word = 0u64;
    let mut bit = 0;
    for q in 1..order.len() {
        for p in 0..q {
            if g.has_edge(order[p], order[q]) {
                word |= 1 << bit;
            }
            bit += 1;
        }
    }
    word
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::graph::Permutation;

    fn all_perms(n: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Permutation>) {
            if prefix.len() == n {
                out.push(Permutation::new(prefix.clone()).unwrap());
                return;
            }
            for i in 0..n {
                if !prefix.contains(&i) {
                    prefix.push(i);
                    rec(prefix, n, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), n, &mut out);
        out
    }

    /// Brute-force canonical form: minimum adjacency word over all n!
    /// relabelings.
    fn brute_min_word(g: &Graph) -> u128 {
        all_perms(g.n())
            .iter()
            .map(|p| g.relabel(p).unwrap().adjacency_word())
            .min()
            .unwrap_or(0)
    }

    #[test]
    fn small_examples() {
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let k3 = Graph::complete(3).unwrap();
        let code = canonical_code(&p3).unwrap();
        for p in all_perms(3) {
            assert_eq!(canonical_code(&p3.relabel(&p).unwrap()).unwrap(), code);
        }
        assert_ne!(canonical_code(&k3).unwrap(), code);
        assert!(matches!(
            canonical_code(&Graph::empty(9).unwrap()),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn eleven_graphs_on_four_vertices() {
        let codes: HashSet<_> = (0u128..64)
            .map(|w| canonical_code(&Graph::from_adjacency_word(4, w)).unwrap())
            .collect();
        assert_eq!(codes.len(), 11);
    }

    #[test]
    fn agrees_with_brute_force_classes_up_to_five() {
        // Codes and brute-force minima must induce the same partition.
        for n in 0..=5usize {
            let pairs = n * n.saturating_sub(1) / 2;
            let mut by_code = std::collections::HashMap::new();
            for w in 0u128..1 << pairs {
                let g = Graph::from_adjacency_word(n, w);
                let code = canonical_code(&g).unwrap();
                let brute = brute_min_word(&g);
                let prev = by_code.insert(code, brute);
                assert!(prev.is_none() || prev == Some(brute));
            }
            let distinct: HashSet<_> = by_code.values().collect();
            assert_eq!(distinct.len(), by_code.len());
        }
    }

    #[test]
    fn orbit_sizes_sum_to_labeled_count() {
        // Each class has n!/|Aut| labeled members.
        for n in 1..=5 {
            let pairs = n * (n - 1) / 2;
            let perms = all_perms(n);
            let mut class_sizes = std::collections::HashMap::new();
            for w in 0u128..1 << pairs {
                let g = Graph::from_adjacency_word(n, w);
                *class_sizes
                    .entry(canonical_code(&g).unwrap())
                    .or_insert(0usize) += 1;
            }
            let mut seen = HashSet::new();
            for w in 0u128..1 << pairs {
                let g = Graph::from_adjacency_word(n, w);
                let code = canonical_code(&g).unwrap();
                if !seen.insert(code) {
                    continue;
                }
                let aut = perms.iter().filter(|p| g.relabel(p).unwrap() == g).count();
                assert_eq!(class_sizes[&code] * aut, perms.len());
            }
        }
    }

    #[test]
    fn bicolored_codes_respect_colors() {
        let one = Graph::empty(1).unwrap();
        let green = BicoloredGraph::new(one, VertexSet::singleton(0)).unwrap();
        let red = BicoloredGraph::new(one, VertexSet::EMPTY).unwrap();
        assert_ne!(
            canonical_code_bicolored(&green).unwrap(),
            canonical_code_bicolored(&red).unwrap()
        );

        let two = Graph::empty(2).unwrap();
        let gg = BicoloredGraph::new(two, VertexSet::range(2)).unwrap();
        let swapped = gg.relabel(&Permutation::new(vec![1, 0]).unwrap()).unwrap();
        assert_eq!(
            canonical_code_bicolored(&gg).unwrap(),
            canonical_code_bicolored(&swapped).unwrap()
        );

        let mut codes = HashSet::new();
        for green in 0u16..4 {
            for edge in [false, true] {
                let g = if edge {
                    Graph::new(2, &[(0, 1)]).unwrap()
                } else {
                    two
                };
                if let Ok(b) = BicoloredGraph::new(g, VertexSet::from_bits(green)) {
                    codes.insert(canonical_code_bicolored(&b).unwrap());
                }
            }
        }
        assert_eq!(codes.len(), 4);
    }

    #[test]
    fn sparse_labels_canonicalize_like_compact() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let sub = g.remove_vertices(VertexSet::singleton(0));
        let (compact, _) = sub.compact();
        assert_eq!(
            canonical_code(&sub).unwrap(),
            canonical_code(&compact).unwrap()
        );
    }
}
