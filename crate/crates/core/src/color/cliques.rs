use crate::count::BigCount;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Number of `t`-vertex cliques.
pub fn count_cliques(g: &Graph, t: usize) -> Result<BigCount> {
    if t == 0 {
        return Err(Error::invalid("clique size must be at least 1"));
    }
    let n = g.n();
    let later: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).filter(|&u| u > v).collect()).collect();
    let mut total = 0u128;
    let mut stack: Vec<usize> = Vec::new();
    for v in 0..n {
        extend(g, &later, v, t - 1, &mut stack, &mut total);
    }
    Ok(BigCount::from(total))
}

/// Counts cliques containing `v` plus `need` more vertices, all later than
/// `v` and adjacent to everything chosen so far.
fn extend(g: &Graph, later: &[Vec<usize>], v: usize, need: usize, chosen: &mut Vec<usize>, total: &mut u128) {
    if need == 0 {
        *total += 1;
        return;
    }
    chosen.push(v);
    for &u in &later[v] {
        if chosen.iter().all(|&w| g.has_edge(w, u)) {
            extend(g, later, u, need - 1, chosen, total);
        }
    }
    chosen.pop();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(count_cliques(&Graph::complete(4), 3).unwrap(), 4);
        let paw = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        assert_eq!(count_cliques(&paw, 3).unwrap(), 1);
        assert_eq!(count_cliques(&Graph::cycle(4).unwrap(), 3).unwrap(), 0);
        assert_eq!(count_cliques(&Graph::cycle(4).unwrap(), 1).unwrap(), 4);
        assert_eq!(count_cliques(&Graph::cycle(4).unwrap(), 2).unwrap(), 4);
        assert!(count_cliques(&Graph::empty(3), 0).is_err());
    }

    #[test]
    fn complete_graph_gives_binomials() {
        let g = Graph::complete(9);
        let expected = [9u64, 36, 84, 126, 126, 84, 36, 9, 1, 0];
        for (t, &e) in (1..=10).zip(expected.iter()) {
            assert_eq!(count_cliques(&g, t).unwrap(), e);
        }
    }
}
