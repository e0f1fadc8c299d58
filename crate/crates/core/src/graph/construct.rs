use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::opt::evaluate;
use crate::subset::SubsetVector;

/// Slack allowed when checking that a vector sums to one.
const VERTEX_SUM_TOL: f64 = 1e-9;

/// Part sizes of the Turán graph `T_r(n)`: the first `n mod r` parts get the
/// extra vertex.
pub fn turan_part_sizes(n: usize, r: usize) -> Result<Vec<usize>> {
    if r == 0 || r > n {
        return Err(Error::invalid(format!(
            "Turán graph needs 1 <= r <= n, got n={n}, r={r}"
        )));
    }
    Ok((0..r).map(|i| n / r + usize::from(i < n % r)).collect())
}

/// Edge count `t_r(n)` of the Turán graph.
pub fn turan_edge_count(n: usize, r: usize) -> Result<usize> {
    let sizes = turan_part_sizes(n, r)?;
    let sum_sq: usize = sizes.iter().map(|s| s * s).sum();
    Ok((n * n - sum_sq) / 2)
}

/// Complete `r`-partite graph on `n` vertices with balanced parts laid out
/// contiguously.
pub fn turan(n: usize, r: usize) -> Result<Graph> {
    let sizes = turan_part_sizes(n, r)?;
    let mut part = Vec::with_capacity(n);
    for (i, &s) in sizes.iter().enumerate() {
        part.extend(std::iter::repeat_n(i, s));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if part[u] != part[v] {
                g.set(u, v);
            }
        }
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CenterSide {
    Smaller,
    Larger,
}

/// `K_{a,b}` minus a star of `r` edges.
///
/// The smaller side is `0..a`, the larger side `a..a+b`. When `a == b` the
/// "larger" side is simply the second one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitionSpec {
    pub a: usize,
    pub b: usize,
    pub r: usize,
    pub center_side: CenterSide,
}

impl BipartitionSpec {
    pub fn new(a: usize, b: usize, r: usize, center_side: CenterSide) -> Result<Self> {
        let spec = BipartitionSpec {
            a,
            b,
            r,
            center_side,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a == 0 || self.a > self.b {
            return Err(Error::invalid(format!(
                "need 1 <= a <= b, got a={}, b={}",
                self.a, self.b
            )));
        }
        if self.r >= self.a {
            return Err(Error::invalid(format!(
                "missing-star size r={} must be less than a={}",
                self.r, self.a
            )));
        }
        Ok(())
    }

    /// The center lies on the larger side.
    pub fn correctly_oriented(&self) -> bool {
        self.center_side == CenterSide::Larger
    }
}

pub fn semi_complete(spec: BipartitionSpec) -> Result<Graph> {
    spec.validate()?;
    let BipartitionSpec { a, b, r, .. } = spec;
    let mut g = Graph::complete_bipartite(a, b);
    for i in 0..r {
        match spec.center_side {
            CenterSide::Larger => g.unset(i, a),
            CenterSide::Smaller => g.unset(0, a + i),
        }
    }
    Ok(g)
}

/// Vertex clusters of a cluster construction, in increasing mask order.
#[derive(Clone, Debug, PartialEq)]
pub struct ClusterLayout {
    pub graph: Graph,
    pub clusters: Vec<(u32, Range<usize>)>,
}

impl ClusterLayout {
    pub fn cluster_size(&self, mask: u32) -> usize {
        self.clusters
            .iter()
            .find(|(m, _)| *m == mask)
            .map_or(0, |(_, r)| r.len())
    }
}

fn check_distribution(alpha: &SubsetVector) -> Result<()> {
    let v: f64 = alpha.as_slice().iter().sum();
    if (v - 1.0).abs() > VERTEX_SUM_TOL {
        return Err(Error::invalid(format!(
            "cluster weights must sum to 1, got {v}"
        )));
    }
    Ok(())
}

/// Cluster sizes: floor every `n·α_A`, then hand the leftover vertices to the
/// largest fractional parts, ties to the smaller mask.
fn cluster_sizes(n: usize, alpha: &SubsetVector) -> Vec<(u32, usize)> {
    let positive: Vec<(u32, f64)> = alpha.nonzero().collect();
    let mut sizes: Vec<(u32, usize)> = Vec::with_capacity(positive.len());
    let mut frac: Vec<(f64, u32, usize)> = Vec::with_capacity(positive.len());
    let mut assigned = 0usize;
    for (i, &(mask, a)) in positive.iter().enumerate() {
        let x = n as f64 * a;
        let fl = (x.floor() as usize).min(n);
        assigned += fl;
        sizes.push((mask, fl));
        frac.push((x - fl as f64, mask, i));
    }
    frac.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)));
    let mut left = n.saturating_sub(assigned);
    let mut k = 0;
    while left > 0 && !frac.is_empty() {
        sizes[frac[k % frac.len()].2].1 += 1;
        left -= 1;
        k += 1;
    }
    sizes
}

/// Cluster construction with the cluster ranges exposed.
pub fn g_alpha_clusters(n: usize, alpha: &SubsetVector) -> Result<ClusterLayout> {
    check_distribution(alpha)?;
    let sizes = cluster_sizes(n, alpha);
    let mut clusters = Vec::with_capacity(sizes.len());
    let mut start = 0;
    for (mask, s) in sizes {
        clusters.push((mask, start..start + s));
        start += s;
    }
    let mut g = Graph::empty(n);
    for (i, (ma, ra)) in clusters.iter().enumerate() {
        for (mb, rb) in &clusters[i + 1..] {
            if ma & mb == 0 {
                for u in ra.clone() {
                    for v in rb.clone() {
                        g.set(u, v);
                    }
                }
            }
        }
    }
    Ok(ClusterLayout { graph: g, clusters })
}

/// Blow-up of `α`: clusters `V_A` of size about `n·α_A`, completely joined
/// exactly when their index sets are disjoint.
pub fn g_alpha(n: usize, alpha: &SubsetVector, q: usize) -> Result<Graph> {
    if alpha.q() != q {
        return Err(Error::invalid(format!(
            "vector is indexed by subsets of [{}], not [{q}]",
            alpha.q()
        )));
    }
    Ok(g_alpha_clusters(n, alpha)?.graph)
}

/// Cluster construction topped up to at least `m` edges.
///
/// `α` is accepted when `e(α)·n² > m - 2^q·n`, i.e. when the edge shortfall
/// is within what rounding the clusters can cause.
pub fn g_alpha_prime(n: usize, m: usize, alpha: &SubsetVector, q: usize) -> Result<Graph> {
    if alpha.q() != q {
        return Err(Error::invalid(format!(
            "vector is indexed by subsets of [{}], not [{q}]",
            alpha.q()
        )));
    }
    check_distribution(alpha)?;
    let e = evaluate(alpha).e;
    let nf = n as f64;
    if e * nf * nf <= m as f64 - (1u64 << q) as f64 * nf {
        return Err(Error::Infeasible(format!(
            "e(α)·n² = {} is too far below m = {m}",
            e * nf * nf
        )));
    }
    let layout = g_alpha_clusters(n, alpha)?;
    let have = layout.graph.edge_count();
    if have >= m {
        return Ok(layout.graph);
    }
    let k = m - have;
    let side = (k as f64).sqrt().ceil() as usize;
    let side = if side * side < k { side + 1 } else { side };
    let target = layout
        .clusters
        .iter()
        .filter(|(mask, _)| mask.count_ones() >= 2)
        .max_by(|(ma, ra), (mb, rb)| ra.len().cmp(&rb.len()).then(mb.cmp(ma)));
    match target {
        Some((_, range)) if range.len() >= 2 * side => {
            let mut g = layout.graph;
            let u1 = range.start..range.start + side;
            let u2 = range.start + side..range.start + 2 * side;
            let mut added = 0;
            'fill: for u in u1 {
                for v in u2.clone() {
                    if added == k {
                        break 'fill;
                    }
                    g.set(u, v);
                    added += 1;
                }
            }
            Ok(g)
        }
        _ => turan(n, q.min(n.max(1))),
    }
}

/// Real side lengths `(t1, t2)` with `t1/t2 = log(q/(q-1)) / log q` and
/// `t1·t2 = m`.
pub fn sparse_side_lengths(m: usize, q: usize) -> Result<(f64, f64)> {
    if q < 2 {
        return Err(Error::invalid(format!("need q >= 2, got {q}")));
    }
    let qf = q as f64;
    let ratio = (qf / (qf - 1.0)).ln() / qf.ln();
    let t1 = (m as f64 * ratio).sqrt();
    let t2 = if m == 0 { 0.0 } else { m as f64 / t1 };
    Ok((t1, t2))
}

fn ceil_tol(x: f64) -> usize {
    (x - 1e-9).ceil().max(0.0) as usize
}

/// `K_{⌈t1⌉,⌈t2⌉}` plus isolated vertices up to `n`.
pub fn sparse_optimal(n: usize, m: usize, q: usize) -> Result<Graph> {
    let (t1, t2) = sparse_side_lengths(m, q)?;
    let (a, b) = (ceil_tol(t1), ceil_tol(t2));
    if a + b > n {
        return Err(Error::invalid(format!(
            "sides {a} + {b} do not fit in {n} vertices"
        )));
    }
    Ok(Graph::complete_bipartite(a, b).with_isolated(n - a - b))
}

/// The unique `(k, l)` with `m = C(k,2) + l` and `k > l >= 0`.
pub fn linial_parameters(m: usize) -> (usize, usize) {
    let mut k = 1usize;
    while (k + 1) * k / 2 <= m {
        k += 1;
    }
    (k, m - k * (k - 1) / 2)
}

/// `K_k` plus a vertex joined to `l` clique vertices, padded with isolated
/// vertices to `n`.
pub fn linial_graph(n: usize, m: usize) -> Result<Graph> {
    if m > n * n.saturating_sub(1) / 2 {
        return Err(Error::invalid(format!(
            "{m} edges do not fit on {n} vertices"
        )));
    }
    if m == 0 {
        return Ok(Graph::empty(n));
    }
    let (k, l) = linial_parameters(m);
    let mut g = Graph::complete(k);
    if l > 0 {
        g = g.with_isolated(1);
        for v in 0..l {
            g.set(v, k);
        }
    }
    let used = g.n();
    Ok(g.with_isolated(n - used))
}

/// `K_{a,b}` plus a pendant vertex hanging off the first vertex of the
/// `b`-side.
pub fn pendant_graph(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(Error::invalid(format!(
            "pendant graph needs a, b >= 1, got a={a}, b={b}"
        )));
    }
    let mut g = Graph::complete_bipartite(a, b).with_isolated(1);
    g.set(a, a + b);
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turan_examples() {
        assert_eq!(turan(6, 2).unwrap(), Graph::complete_bipartite(3, 3));
        assert_eq!(turan(4, 4).unwrap(), Graph::complete(4));
        assert_eq!(turan(5, 3).unwrap().edge_count(), 8);
        assert_eq!(turan_part_sizes(5, 3).unwrap(), vec![2, 2, 1]);
        assert!(turan(3, 0).is_err());
        assert!(turan(3, 4).is_err());
        assert_eq!(turan(5, 1).unwrap().edge_count(), 0);
    }

    #[test]
    fn semi_complete_examples() {
        let full = semi_complete(BipartitionSpec::new(3, 4, 0, CenterSide::Larger).unwrap()).unwrap();
        assert_eq!(full, Graph::complete_bipartite(3, 4));
        let g = semi_complete(BipartitionSpec::new(3, 4, 2, CenterSide::Larger).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 10);
        // both missing edges meet the same b-side vertex
        assert!(!g.has_edge(0, 3) && !g.has_edge(1, 3));
        assert_eq!(g.degree(3), 1);
        let h = semi_complete(BipartitionSpec::new(3, 4, 2, CenterSide::Smaller).unwrap()).unwrap();
        assert_eq!(h.degree(0), 2);
        assert!(BipartitionSpec::new(2, 5, 2, CenterSide::Larger).is_err());
        assert!(BipartitionSpec::new(5, 2, 0, CenterSide::Larger).is_err());
    }

    #[test]
    fn g_alpha_examples() {
        let single = SubsetVector::from_entries(3, &[(0b111, 1.0)]).unwrap();
        assert_eq!(g_alpha(5, &single, 3).unwrap(), Graph::empty(5));

        let two = SubsetVector::from_entries(3, &[(0b100, 0.5), (0b011, 0.5)]).unwrap();
        let g = g_alpha(10, &two, 3).unwrap();
        assert_eq!(g.edge_count(), 25);
        assert_eq!(g.components().len(), 1);
        assert!(g.bipartition().is_some());

        let three =
            SubsetVector::from_entries(3, &[(0b100, 0.3), (0b011, 0.5), (0b111, 0.2)]).unwrap();
        let layout = g_alpha_clusters(20, &three).unwrap();
        assert_eq!(layout.cluster_size(0b100), 6);
        assert_eq!(layout.cluster_size(0b011), 10);
        assert_eq!(layout.cluster_size(0b111), 4);
        assert_eq!(layout.graph.edge_count(), 60);
    }

    #[test]
    fn rounding_hands_out_leftovers_by_fraction() {
        // n·α = (1.4, 1.3, 0.3): floors (1, 1, 0), one vertex left for the
        // largest fraction 0.4 -> mask 1.
        let a = SubsetVector::from_entries(2, &[(0b01, 0.4667), (0b10, 0.4333), (0b11, 0.1)])
            .unwrap();
        let layout = g_alpha_clusters(3, &a).unwrap();
        assert_eq!(layout.cluster_size(0b01), 2);
        assert_eq!(layout.cluster_size(0b10), 1);
        assert_eq!(layout.cluster_size(0b11), 0);
    }

    #[test]
    fn g_alpha_rejects_bad_vectors() {
        let short = SubsetVector::from_entries(3, &[(0b111, 0.5)]).unwrap();
        assert!(g_alpha(5, &short, 3).is_err());
        assert!(g_alpha(5, &short, 4).is_err());
    }

    #[test]
    fn g_alpha_prime_branches() {
        let three =
            SubsetVector::from_entries(3, &[(0b100, 0.3), (0b011, 0.5), (0b111, 0.2)]).unwrap();
        let base = g_alpha(20, &three, 3).unwrap();
        assert_eq!(g_alpha_prime(20, 60, &three, 3).unwrap(), base);

        let topped = g_alpha_prime(20, 64, &three, 3).unwrap();
        assert_eq!(topped.edge_count(), 64);
        // V_{12} is the first cluster (vertices 0..10); U1 = {0,1}, U2 = {2,3}.
        let extra: Vec<_> = topped
            .edges()
            .into_iter()
            .filter(|e| !base.has_edge(e.0, e.1))
            .collect();
        assert_eq!(extra, vec![(0, 2), (0, 3), (1, 2), (1, 3)]);

        // Clusters too small for the deficit: falls back to T_q(n).
        let tiny = SubsetVector::from_entries(3, &[(0b001, 0.5), (0b110, 0.5)]).unwrap();
        let g = g_alpha_prime(6, 11, &tiny, 3).unwrap();
        assert_eq!(g, turan(6, 3).unwrap());

        let hopeless = SubsetVector::from_entries(3, &[(0b111, 1.0)]).unwrap();
        assert!(matches!(
            g_alpha_prime(20, 180, &hopeless, 3),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn sparse_optimal_examples() {
        let (t1, t2) = sparse_side_lengths(1, 3).unwrap();
        assert!((t1 - 0.6075).abs() < 1e-3 && (t2 - 1.6460).abs() < 1e-3);
        assert_eq!(
            sparse_optimal(4, 1, 3).unwrap(),
            Graph::complete_bipartite(1, 2).with_isolated(1)
        );
        let (t1, t2) = sparse_side_lengths(12, 3).unwrap();
        assert!((t1 - 2.104).abs() < 1e-3 && (t2 - 5.703).abs() < 1e-3);
        assert_eq!(
            sparse_optimal(10, 12, 3).unwrap(),
            Graph::complete_bipartite(3, 6).with_isolated(1)
        );
        assert!(sparse_optimal(8, 12, 3).is_err());
    }

    #[test]
    fn linial_examples() {
        assert_eq!(linial_parameters(4), (3, 1));
        assert_eq!(linial_parameters(6), (4, 0));
        assert_eq!(linial_parameters(5), (3, 2));
        assert_eq!(linial_parameters(0), (1, 0));
        let paw = linial_graph(4, 4).unwrap();
        assert_eq!(paw.edge_count(), 4);
        assert_eq!(paw.degrees(), vec![3, 2, 2, 1]);
        let k4 = linial_graph(5, 6).unwrap();
        assert_eq!(k4, Graph::complete(4).with_isolated(1));
        let g = linial_graph(4, 5).unwrap();
        assert_eq!(g.degree(3), 2);
        assert!(linial_graph(4, 7).is_err());
        assert_eq!(linial_graph(3, 0).unwrap(), Graph::empty(3));
    }

    #[test]
    fn pendant_examples() {
        let g = pendant_graph(2, 4).unwrap();
        assert_eq!((g.n(), g.edge_count()), (7, 9));
        assert_eq!(g.degree(6), 1);
        assert!(g.has_edge(2, 6));
        let p3 = pendant_graph(1, 1).unwrap();
        assert_eq!(p3.degrees(), vec![1, 2, 1]);
        let g = pendant_graph(3, 3).unwrap();
        assert_eq!((g.n(), g.edge_count()), (7, 10));
        assert!(pendant_graph(0, 3).is_err());
    }
}
