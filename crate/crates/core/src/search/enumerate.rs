use std::collections::{HashMap, HashSet};

use super::canon::{canonical_form, graph_from_code};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count for exhaustive enumeration.
pub const MAX_SEARCH_VERTICES: usize = 8;
/// Largest number of labelled graphs enumerated in one run.
pub const MAX_LABELED_GRAPHS: u64 = 100_000_000;

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Vertex pairs `(u, v)`, `u < v`, in lexicographic order; edge-subset
/// combinations index into this list.
pub(crate) fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

pub(crate) fn check_size(n: usize, m: usize, dedup: bool) -> Result<u64> {
    if n > MAX_SEARCH_VERTICES {
        return Err(Error::TooLarge(format!(
            "exhaustive enumeration supports n <= {MAX_SEARCH_VERTICES}, got {n}"
        )));
    }
    let slots = (n * n.saturating_sub(1) / 2) as u64;
    if m as u64 > slots {
        return Err(Error::invalid(format!("{m} edges do not fit on {n} vertices")));
    }
    let total = binomial(slots, m as u64);
    if !dedup && total > MAX_LABELED_GRAPHS {
        return Err(Error::TooLarge(format!(
            "{total} labelled graphs exceed the limit of {MAX_LABELED_GRAPHS}; use dedup mode"
        )));
    }
    Ok(total)
}

/// Lexicographic `k`-subsets of `0..n`, starting from a given rank.
#[derive(Clone, Debug)]
pub(crate) struct Combinations {
    n: usize,
    current: Vec<usize>,
    remaining: u64,
}

impl Combinations {
    pub(crate) fn from_rank(n: usize, k: usize, rank: u64, count: u64) -> Self {
        let mut current = Vec::with_capacity(k);
        let mut r = rank;
        let mut next = 0;
        for i in 0..k {
            let mut c = next;
            loop {
                let below = binomial((n - c - 1) as u64, (k - i - 1) as u64);
                if r < below {
                    break;
                }
                r -= below;
                c += 1;
            }
            current.push(c);
            next = c + 1;
        }
        Combinations { n, current, remaining: count }
    }

    fn advance(&mut self) {
        let k = self.current.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.current[i] < self.n - k + i {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                return;
            }
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.remaining == 0 {
            return None;
        }
        let out = self.current.clone();
        self.remaining -= 1;
        if self.remaining > 0 {
            self.advance();
        }
        Some(out)
    }
}

pub(crate) fn graph_from_combination(n: usize, pairs: &[(usize, usize)], combo: &[usize]) -> Graph {
    let mut g = Graph::empty(n);
    for &k in combo {
        let (u, v) = pairs[k];
        g.add_edge(u, v).expect("pair in range");
    }
    g
}

/// Graphs produced by [`enumerate_graphs`].
pub struct GraphStream {
    inner: StreamKind,
}

enum StreamKind {
    Labeled {
        n: usize,
        pairs: Vec<(usize, usize)>,
        combos: Combinations,
    },
    Classes(std::vec::IntoIter<Graph>),
}

impl Iterator for GraphStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        match &mut self.inner {
            StreamKind::Labeled { n, pairs, combos } => {
                combos.next().map(|c| graph_from_combination(*n, pairs, &c))
            }
            StreamKind::Classes(it) => it.next(),
        }
    }
}

/// Every labelled graph with `n` vertices and `m` edges or, with `dedup`,
/// one canonical representative per isomorphism class (sorted by code).
pub fn enumerate_graphs(n: usize, m: usize, dedup: bool) -> Result<GraphStream> {
    let total = check_size(n, m, dedup)?;
    let inner = if dedup {
        StreamKind::Classes(
            isomorphism_classes(n, m)?
                .into_iter()
                .map(|c| graph_from_code(n, c))
                .collect::<Vec<_>>()
                .into_iter(),
        )
    } else {
        let pairs = pairs(n);
        let combos = Combinations::from_rank(pairs.len(), m, 0, total);
        StreamKind::Labeled { n, pairs, combos }
    };
    Ok(GraphStream { inner })
}

/// Canonical codes of all `m`-edge graphs on `n` vertices, sorted.
///
/// Classes are grown one edge at a time from the edgeless graph; candidate
/// codes are bucketed by degree sequence before the set lookup. Dense levels
/// are obtained by complementing the sparse ones.
pub(crate) fn isomorphism_classes(n: usize, m: usize) -> Result<Vec<u64>> {
    check_size(n, m, true)?;
    let slots = n * n.saturating_sub(1) / 2;
    if m > slots / 2 {
        let mut out: Vec<u64> = isomorphism_classes(n, slots - m)?
            .into_iter()
            .map(|c| canonical_form(&graph_from_code(n, c).complement()).map(|f| f.code))
            .collect::<Result<_>>()?;
        out.sort_unstable();
        return Ok(out);
    }
    let mut level = vec![0u64];
    for _ in 0..m {
        let mut buckets: HashMap<Vec<usize>, HashSet<u64>> = HashMap::new();
        for &code in &level {
            let g = graph_from_code(n, code);
            for u in 0..n {
                for v in u + 1..n {
                    if g.has_edge(u, v) {
                        continue;
                    }
                    let mut h = g.clone();
                    h.add_edge(u, v)?;
                    let mut degs = h.degrees();
                    degs.sort_unstable();
                    let bucket = buckets.entry(degs).or_default();
                    bucket.insert(canonical_form(&h)?.code);
                }
            }
        }
        level = buckets.into_values().flatten().collect();
        level.sort_unstable();
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_examples() {
        let all: Vec<Graph> = enumerate_graphs(3, 3, false).unwrap().collect();
        assert_eq!(all, vec![Graph::complete(3)]);
        assert_eq!(enumerate_graphs(4, 3, false).unwrap().count(), 20);
        assert_eq!(enumerate_graphs(5, 0, false).unwrap().count(), 1);
        let distinct: HashSet<Vec<(usize, usize)>> =
            enumerate_graphs(5, 4, false).unwrap().map(|g| g.edges()).collect();
        assert_eq!(distinct.len(), 210);
    }

    #[test]
    fn dedup_examples() {
        let classes: Vec<Graph> = enumerate_graphs(4, 3, true).unwrap().collect();
        assert_eq!(classes.len(), 3);
        let mut degs: Vec<Vec<usize>> = classes
            .iter()
            .map(|g| {
                let mut d = g.degrees();
                d.sort_unstable();
                d
            })
            .collect();
        degs.sort();
        // K_3 + isolated, P_4, K_{1,3}
        assert_eq!(degs, vec![vec![0, 2, 2, 2], vec![1, 1, 1, 3], vec![1, 1, 2, 2]]);
    }

    #[test]
    fn class_counts_match_known_totals() {
        // Non-isomorphic graphs on n vertices, summed over m.
        for (n, expected) in [(4usize, 11usize), (5, 34), (6, 156), (7, 1044)] {
            let slots = n * (n - 1) / 2;
            let total: usize = (0..=slots).map(|m| isomorphism_classes(n, m).unwrap().len()).sum();
            assert_eq!(total, expected, "n={n}");
        }
    }

    #[test]
    fn unranking_matches_iteration() {
        let all: Vec<Vec<usize>> = Combinations::from_rank(7, 3, 0, 35).collect();
        assert_eq!(all.len(), 35);
        for (r, c) in all.iter().enumerate() {
            assert_eq!(&Combinations::from_rank(7, 3, r as u64, 1).next().unwrap(), c);
        }
    }

    #[test]
    fn size_limits() {
        assert!(enumerate_graphs(9, 3, true).is_err());
        assert!(enumerate_graphs(4, 7, false).is_err());
        assert!(check_size(8, 14, false).is_ok());
    }
}
