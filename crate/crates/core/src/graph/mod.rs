//! Simple undirected graphs, the named constructions, and graph I/O.

mod construct;
mod io;

pub use construct::{
    g_alpha, g_alpha_clusters, g_alpha_prime, linial_graph, linial_parameters, pendant_graph,
    semi_complete, sparse_optimal, sparse_side_lengths, turan, turan_edge_count, turan_part_sizes,
    BipartitionSpec, CenterSide, ClusterLayout,
};
pub use io::{decode, encode, to_graph6, GraphFormat};

use std::fmt;

use crate::error::{Error, Result};

/// Vertex cap for search-oriented code paths: one adjacency row per machine word.
pub const DEFAULT_VERTEX_CAP: usize = 64;

/// Simple undirected graph on vertices `0..n`.
///
/// Adjacency is stored as one bit row per vertex. Loops and parallel edges
/// cannot be represented, and every mutation keeps the rows symmetric.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            rows: vec![0; words * n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set(u, v);
            }
        }
        g
    }

    /// Complete bipartite graph with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.set(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("cycle needs at least 3 vertices, got {n}")));
        }
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.set(v, (v + 1) % n);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.set(v - 1, v);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        let total: u32 = self.rows.iter().map(|w| w.count_ones()).sum();
        total as usize / 2
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    fn unset(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    /// Adds `{u, v}`. Returns `Ok(false)` if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_pair(u, v)?;
        let fresh = !self.has_edge(u, v);
        self.set(u, v);
        Ok(fresh)
    }

    /// Removes `{u, v}`. Returns `Ok(false)` if the edge was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_pair(u, v)?;
        let present = self.has_edge(u, v);
        self.unset(u, v);
        Ok(present)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::invalid(format!("loop at vertex {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::invalid(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.n
            )));
        }
        Ok(())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(i, &w)| BitIter(w).map(move |b| i * 64 + b))
    }

    /// Neighbor set of `v` as a single word. Only meaningful when `n <= 64`.
    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.rows[v * self.words]
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 0).collect()
    }

    /// Subgraph induced by `keep`, relabelled `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set(i, j);
                }
            }
        }
        g
    }

    /// The graph with isolated vertices removed (relative order preserved).
    pub fn strip_isolated(&self) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) > 0).collect();
        self.induced(&keep)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::invalid("permutation length differs from vertex count"));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid("not a permutation"));
            }
        }
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.set(perm[u], perm[v]);
        }
        Ok(g)
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.set(u, v);
        }
        for (u, v) in other.edges() {
            g.set(self.n + u, self.n + v);
        }
        g
    }

    /// Adds `k` isolated vertices at the end.
    pub fn with_isolated(&self, k: usize) -> Graph {
        self.disjoint_union(&Graph::empty(k))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// A proper 2-coloring (side per vertex) if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap();
                for v in self.neighbors(u) {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            stack.push(v);
                        }
                        Some(sv) if sv == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap_or(false)).collect())
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set(u, v);
                }
            }
        }
        g
    }

    /// Number of edge additions and deletions turning `self` into `other`
    /// under the identity labelling.
    pub fn labeled_edit_distance(&self, other: &Graph) -> Result<usize> {
        if self.n != other.n {
            return Err(Error::invalid("edit distance needs equal vertex counts"));
        }
        Ok(self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum::<usize>()
            / 2)
    }

    /// Edit distance minimized over all relabellings of `other`; exhaustive, so
    /// limited to `n <= 9`.
    pub fn edit_distance(&self, other: &Graph) -> Result<usize> {
        if self.n != other.n {
            return Err(Error::invalid("edit distance needs equal vertex counts"));
        }
        if self.n > 9 {
            return Err(Error::TooLarge(format!(
                "exhaustive edit distance supports n <= 9, got {}",
                self.n
            )));
        }
        let own = self.edges();
        let total = own.len() + other.edge_count();
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut best = usize::MAX;
        permute_all(&mut perm, 0, &mut |p| {
            let common = own.iter().filter(|&&(u, v)| other.has_edge(p[u], p[v])).count();
            best = best.min(total - 2 * common);
        });
        Ok(best)
    }
}

fn permute_all(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, f);
        perm.swap(k, i);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Iterator over the set bit positions of a word.
#[derive(Clone, Copy)]
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let b = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(b)
        }
    }
}
