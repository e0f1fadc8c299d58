use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::count::BigCount;
use crate::graph::Graph;

/// Exact number of proper `q`-colorings of `g`.
///
/// Vertices whose neighbourhood is a clique are peeled first (each gives a
/// factor `q - deg`, so isolated vertices give `q`). What remains is split
/// into components and each is counted by backtracking over colour classes
/// in descending-degree order, opening at most one new class per step.
pub fn count_colorings(g: &Graph, q: usize) -> BigCount {
    match count_with::<u128>(g, q) {
        Some(x) => BigCount::from(x),
        None => BigCount(count_with::<BigUint>(g, q).expect("big integers do not overflow")),
    }
}

/// Fast path that gives up on overflow.
pub(crate) fn count_colorings_u128(g: &Graph, q: usize) -> Option<u128> {
    count_with::<u128>(g, q)
}

trait Acc: Sized + Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(self, other: Self) -> Option<Self>;
    fn mul_small(self, k: usize) -> Option<Self>;
    fn mul(self, other: Self) -> Option<Self>;
    fn is_zero(&self) -> bool;
}

impl Acc for u128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(self, other: Self) -> Option<Self> {
        self.checked_add(other)
    }
    fn mul_small(self, k: usize) -> Option<Self> {
        self.checked_mul(k as u128)
    }
    fn mul(self, other: Self) -> Option<Self> {
        self.checked_mul(other)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl Acc for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(self, other: Self) -> Option<Self> {
        Some(self + other)
    }
    fn mul_small(self, k: usize) -> Option<Self> {
        Some(self * k)
    }
    fn mul(self, other: Self) -> Option<Self> {
        Some(self * other)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

fn count_with<N: Acc>(g: &Graph, q: usize) -> Option<N> {
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut alive = vec![true; n];
    let mut total = N::one();

    // Simplicial peeling.
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let nb: Vec<usize> = adj[v].iter().copied().filter(|&u| alive[u]).collect();
            let clique = nb
                .iter()
                .enumerate()
                .all(|(i, &a)| nb[i + 1..].iter().all(|&b| g.has_edge(a, b)));
            if clique {
                if nb.len() >= q {
                    return Some(N::zero());
                }
                total = total.mul_small(q - nb.len())?;
                alive[v] = false;
                changed = true;
            }
        }
    }

    // Components of what is left.
    let mut seen = vec![false; n];
    for s in 0..n {
        if !alive[s] || seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for &u in &adj[v] {
                if alive[u] && !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                }
            }
            i += 1;
        }
        let c = count_component::<N>(&adj, &alive, comp, q)?;
        if c.is_zero() {
            return Some(N::zero());
        }
        total = total.mul(c)?;
    }
    Some(total)
}

fn count_component<N: Acc>(adj: &[Vec<usize>], alive: &[bool], mut comp: Vec<usize>, q: usize) -> Option<N> {
    let deg = |v: usize| adj[v].iter().filter(|&&u| alive[u]).count();
    comp.sort_by_key(|&v| (std::cmp::Reverse(deg(v)), v));
    let mut pos = vec![usize::MAX; adj.len()];
    for (i, &v) in comp.iter().enumerate() {
        pos[v] = i;
    }
    let earlier: Vec<Vec<usize>> = comp
        .iter()
        .enumerate()
        .map(|(i, &v)| adj[v].iter().map(|&u| pos[u]).filter(|&j| j < i).collect())
        .collect();
    let mut class = vec![0usize; comp.len()];
    backtrack::<N>(0, 0, q, &earlier, &mut class)
}

/// Colorings of positions `i..`, given `k` classes opened so far; opening a
/// new class carries the factor `q - k` for its colour choice.
fn backtrack<N: Acc>(i: usize, k: usize, q: usize, earlier: &[Vec<usize>], class: &mut [usize]) -> Option<N> {
    if i == earlier.len() {
        return Some(N::one());
    }
    let mut total = N::zero();
    for c in 0..k {
        if earlier[i].iter().all(|&j| class[j] != c) {
            class[i] = c;
            total = total.add(backtrack::<N>(i + 1, k, q, earlier, class)?)?;
        }
    }
    if k < q {
        class[i] = k;
        let sub = backtrack::<N>(i + 1, k + 1, q, earlier, class)?;
        total = total.add(sub.mul_small(q - k)?)?;
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::oracle::brute_force_colorings;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(count_colorings(&Graph::complete(3), 3), 6);
        assert_eq!(count_colorings(&Graph::empty(3), 3), 27);
        assert_eq!(count_colorings(&Graph::complete_bipartite(3, 3), 3), 42);
        assert_eq!(count_colorings(&Graph::cycle(4).unwrap(), 3), 18);
        assert_eq!(count_colorings(&Graph::complete(4), 3), 0);
        assert_eq!(count_colorings(&Graph::empty(0), 0), 1);
        assert_eq!(count_colorings(&Graph::empty(2), 0), 0);
    }

    #[test]
    fn matches_brute_force_on_named_graphs() {
        let graphs = [
            Graph::complete_bipartite(3, 3),
            Graph::cycle(5).unwrap(),
            Graph::path(6),
            Graph::complete_bipartite(2, 4),
            Graph::complete(5),
        ];
        for g in &graphs {
            for q in 0..5 {
                assert_eq!(count_colorings(g, q), brute_force_colorings(g, q), "{g:?} q={q}");
            }
        }
    }

    #[test]
    fn big_counts_fall_back_to_big_integers() {
        // 100^40 overflows u128.
        let g = Graph::empty(40);
        let c = count_colorings(&g, 100);
        assert_eq!(c.to_string(), format!("1{}", "0".repeat(80)));
        assert!(count_colorings_u128(&g, 100).is_none());
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(n in 0usize..8, bits in any::<u32>(), q in 0usize..5) {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| bits >> (i % 32) & 1 == 1 && *i < 32).map(|(_, &e)| e).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            prop_assert_eq!(count_colorings(&g, q), brute_force_colorings(&g, q));
        }
    }
}
