use num_bigint::BigUint;
use num_traits::One;

use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest missing-edge set whose subsets are enumerated explicitly.
pub const FOOTPRINT_MISSING_CAP: usize = 24;

fn factorial(q: usize) -> BigUint {
    (1..=q).fold(BigUint::one(), |acc, k| acc * k)
}

fn pow2(k: usize) -> BigUint {
    BigUint::one() << k
}

/// Proper `q`-colorings of the Turán graph `T_{q-1}(n)`, in closed form:
/// with `n = s(q-1) + r`, `0 <= r < q-1`, the count is
/// `q! ((q-1+r) 2^(s-1) - q + 2)`.
pub fn turan_coloring_count(n: usize, q: usize) -> Result<BigCount> {
    if q < 3 {
        return Err(Error::invalid(format!("need q >= 3, got {q}")));
    }
    if n < q - 1 {
        return Err(Error::invalid(format!(
            "need n >= q - 1 = {} so that every part is nonempty, got n = {n}",
            q - 1
        )));
    }
    let (s, r) = (n / (q - 1), n % (q - 1));
    let inner = BigUint::from(q - 1 + r) * pow2(s - 1) - BigUint::from(q - 2);
    Ok(BigCount(factorial(q) * inner))
}

/// Three-colorings of `K_{a,b}` minus an `r`-edge star:
/// `3·2^a + 3·2^b − 6 + 6(2^r − 1)`.
pub fn bipartite_star_count_q3(a: usize, b: usize, r: usize) -> Result<BigCount> {
    if a == 0 || b == 0 {
        return Err(Error::invalid(format!("both sides must be nonempty, got a = {a}, b = {b}")));
    }
    if r >= a.max(b) {
        return Err(Error::invalid(format!(
            "star size r = {r} must be below max(a, b) = {}",
            a.max(b)
        )));
    }
    Ok(BigCount(star_formula(a, b, pow2(r) - 1u32)))
}

fn star_formula(a: usize, b: usize, s: BigUint) -> BigUint {
    BigUint::from(3u32) * (pow2(a) + pow2(b)) + BigUint::from(6u32) * s - 6u32
}

/// Three-colorings of a spanning subgraph of `K_{A,B}` from its missing
/// edges: `3·2^a + 3·2^b − 6 + 6s`, where `s` counts the nonempty sets of
/// missing edges that are themselves complete bipartite between their end
/// points.
///
/// Requires that the sides partition the vertices, all edges go across, some
/// vertex on each side sees the whole other side, and fewer than
/// `max(a, b)` edges are missing.
pub fn footprint_count_q3(g: &Graph, a_side: &[usize], b_side: &[usize]) -> Result<BigCount> {
    let n = g.n();
    let mut side = vec![None; n];
    for (label, part) in [(0u8, a_side), (1u8, b_side)] {
        for &v in part {
            if v >= n {
                return Err(Error::Precondition(format!("vertex {v} is out of range for n = {n}")));
            }
            if side[v].is_some() {
                return Err(Error::Precondition(format!(
                    "vertex {v} is listed twice; the sides must be disjoint"
                )));
            }
            side[v] = Some(label);
        }
    }
    if a_side.is_empty() || b_side.is_empty() {
        return Err(Error::Precondition("both sides must be nonempty".into()));
    }
    if let Some(v) = side.iter().position(Option::is_none) {
        return Err(Error::Precondition(format!("vertex {v} is on neither side")));
    }
    if let Some((u, v)) = g.edges().into_iter().find(|&(u, v)| side[u] == side[v]) {
        return Err(Error::Precondition(format!(
            "edge ({u},{v}) lies inside one side, so the graph is not a subgraph of K_{{A,B}}"
        )));
    }
    if !a_side.iter().any(|&x| b_side.iter().all(|&y| g.has_edge(x, y))) {
        return Err(Error::Precondition("no vertex of side A is adjacent to all of side B".into()));
    }
    if !b_side.iter().any(|&y| a_side.iter().all(|&x| g.has_edge(x, y))) {
        return Err(Error::Precondition("no vertex of side B is adjacent to all of side A".into()));
    }
    let missing: Vec<(usize, usize)> = a_side
        .iter()
        .flat_map(|&x| b_side.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| !g.has_edge(x, y))
        .collect();
    let (a, b) = (a_side.len(), b_side.len());
    if missing.len() >= a.max(b) {
        return Err(Error::Precondition(format!(
            "{} missing edges is not below max(a, b) = {}",
            missing.len(),
            a.max(b)
        )));
    }
    if missing.len() > FOOTPRINT_MISSING_CAP {
        return Err(Error::TooLarge(format!(
            "{} missing edges exceeds the enumeration cap {FOOTPRINT_MISSING_CAP}",
            missing.len()
        )));
    }
    let mut s = 0u64;
    for set in 1u32..1 << missing.len() {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let mut size = 0;
        for (i, &(x, y)) in missing.iter().enumerate() {
            if set >> i & 1 == 1 {
                size += 1;
                if !xs.contains(&x) {
                    xs.push(x);
                }
                if !ys.contains(&y) {
                    ys.push(y);
                }
            }
        }
        if size == xs.len() * ys.len() {
            s += 1;
        }
    }
    Ok(BigCount(star_formula(a, b, BigUint::from(s))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::oracle::brute_force_colorings;
    use crate::graph::{semi_complete, turan, BipartitionSpec, CenterSide};

    #[test]
    fn turan_examples() {
        assert_eq!(turan_coloring_count(6, 3).unwrap(), 42);
        assert_eq!(turan_coloring_count(3, 4).unwrap(), 24);
        assert_eq!(turan_coloring_count(5, 4).unwrap(), 72);
        assert!(turan_coloring_count(2, 4).is_err());
        assert!(turan_coloring_count(5, 2).is_err());
    }

    #[test]
    fn turan_formula_matches_brute_force() {
        for q in 3..=5 {
            for n in q - 1..=8 {
                let g = turan(n, q - 1).unwrap();
                assert_eq!(turan_coloring_count(n, q).unwrap(), brute_force_colorings(&g, q), "n={n} q={q}");
            }
        }
    }

    #[test]
    fn star_examples() {
        assert_eq!(bipartite_star_count_q3(2, 3, 0).unwrap(), 30);
        assert_eq!(bipartite_star_count_q3(3, 4, 2).unwrap(), 84);
        assert_eq!(bipartite_star_count_q3(2, 5, 1).unwrap(), 108);
        assert!(bipartite_star_count_q3(2, 3, 3).is_err());
    }

    #[test]
    fn star_formula_matches_brute_force() {
        for a in 1..=4 {
            for b in a..=4 {
                for r in 0..a {
                    for side in [CenterSide::Smaller, CenterSide::Larger] {
                        let g = semi_complete(BipartitionSpec::new(a, b, r, side).unwrap()).unwrap();
                        assert_eq!(
                            bipartite_star_count_q3(a, b, r).unwrap(),
                            brute_force_colorings(&g, 3),
                            "a={a} b={b} r={r} {side:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn footprint_examples() {
        let sides = ([0, 1, 2], [3, 4, 5]);
        let mut g = Graph::complete_bipartite(3, 3);
        g.remove_edge(0, 3).unwrap();
        g.remove_edge(1, 4).unwrap();
        assert_eq!(brute_force_colorings(&g, 3), 54);
        assert_eq!(footprint_count_q3(&g, &sides.0, &sides.1).unwrap(), 54);

        let g = semi_complete(BipartitionSpec::new(3, 4, 2, CenterSide::Larger).unwrap()).unwrap();
        assert_eq!(footprint_count_q3(&g, &[0, 1, 2], &[3, 4, 5, 6]).unwrap(), 84);

        let g = Graph::complete_bipartite(2, 3);
        assert_eq!(footprint_count_q3(&g, &[0, 1], &[2, 3, 4]).unwrap(), 3 * 4 + 3 * 8 - 6);
    }

    #[test]
    fn footprint_reports_failed_hypothesis() {
        let g = Graph::complete_bipartite(3, 3);
        let err = footprint_count_q3(&g, &[0, 1], &[2, 3, 4, 5]).unwrap_err();
        assert!(err.to_string().contains("inside one side"), "{err}");
        let err = footprint_count_q3(&g, &[0, 1, 2], &[3, 4]).unwrap_err();
        assert!(err.to_string().contains("neither side"), "{err}");
        let mut h = Graph::complete_bipartite(3, 3);
        for (u, v) in [(0, 3), (1, 4), (2, 5)] {
            h.remove_edge(u, v).unwrap();
        }
        let err = footprint_count_q3(&h, &[0, 1, 2], &[3, 4, 5]).unwrap_err();
        assert!(err.to_string().contains("adjacent to all"), "{err}");
    }
}
