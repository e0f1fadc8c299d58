use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CheckResult, DEFAULT_SEED};
use crate::color::{
    bipartite_star_count_q3, chromatic_polynomial, count_colorings, footprint_count_q3, turan_coloring_count,
};
use crate::count::BigCount;
use crate::graph::{turan, Graph};

/// Records one comparison; margin 0 on agreement, −1 otherwise.
fn compare(res: &mut CheckResult, input: impl Fn() -> String, got: &BigCount, want: &BigCount) {
    if got == want {
        res.observe(&input, 0.0);
    } else {
        res.passed = false;
        res.observe(|| format!("{}: {} vs {}", input(), got.value(), want.value()), -1.0);
    }
}

/// `K_{a,b}` (sides `0..a`, `a..a+b`) minus `r` edges at one vertex.
fn star_graph(a: usize, b: usize, r: usize, center_on_a: bool) -> Graph {
    let mut edges = Vec::new();
    for x in 0..a {
        for y in 0..b {
            let missing = if center_on_a { x == 0 && y < r } else { y == 0 && x < r };
            if !missing {
                edges.push((x, a + y));
            }
        }
    }
    Graph::from_edges(a + b, &edges).expect("valid edges")
}

/// Compares the closed forms and the two counting backends against the
/// backtracking counter. `limit` caps `n` for Turán graphs; the other
/// families use their own smaller caps, further limited by `limit`.
pub fn cross_check_counting(limit: usize) -> CheckResult {
    let star_cap = limit.min(5);
    let foot_cap = limit.min(4);
    let random_cap = limit.min(9);
    let mut res = CheckResult::new(
        "cross-check counting",
        format!(
            "turan q in 3..=5, n <= {limit}; stars a <= b <= {star_cap}; footprints a, b <= {foot_cap}; \
             random graphs n <= {random_cap}, q in 2..=4"
        ),
    );
    let mut cases = 0usize;

    for q in 3..=5 {
        for n in q - 1..=limit {
            let formula = turan_coloring_count(n, q).expect("q >= 3, n >= q - 1");
            let g = turan(n, q - 1).expect("n >= q - 1");
            compare(&mut res, || format!("turan n={n} q={q}"), &formula, &count_colorings(&g, q));
            cases += 1;
        }
    }

    for a in 1..=star_cap {
        for b in a..=star_cap {
            for r in 0..a {
                let formula = bipartite_star_count_q3(a, b, r).expect("r < a <= b");
                for center_on_a in [true, false] {
                    let g = star_graph(a, b, r, center_on_a);
                    compare(
                        &mut res,
                        || format!("star a={a} b={b} r={r} center on {}", if center_on_a { "a" } else { "b" }),
                        &formula,
                        &count_colorings(&g, 3),
                    );
                    cases += 1;
                }
            }
        }
    }

    for a in 1..=foot_cap {
        for b in 1..=foot_cap {
            let a_side: Vec<usize> = (0..a).collect();
            let b_side: Vec<usize> = (a..a + b).collect();
            let slots = a * b;
            for missing in 0u32..(1 << slots) {
                if missing.count_ones() as usize >= a.max(b) {
                    continue;
                }
                let edges: Vec<(usize, usize)> = (0..slots)
                    .filter(|&k| missing >> k & 1 == 0)
                    .map(|k| (k / b, a + k % b))
                    .collect();
                let g = Graph::from_edges(a + b, &edges).expect("valid edges");
                // Subgraphs without a full vertex on each side are outside the formula's domain.
                let Ok(formula) = footprint_count_q3(&g, &a_side, &b_side) else {
                    continue;
                };
                compare(
                    &mut res,
                    || format!("footprint a={a} b={b} missing mask {missing:#x}"),
                    &formula,
                    &count_colorings(&g, 3),
                );
                cases += 1;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for n in 1..=random_cap {
        for _ in 0..20 {
            let density: f64 = rng.gen();
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(density) {
                        g.add_edge(u, v).expect("in range");
                    }
                }
            }
            let poly = chromatic_polynomial(&g).expect("n <= 12");
            for q in 2..=4usize {
                compare(
                    &mut res,
                    || format!("backends n={n} q={q} edges {:?}", g.edges()),
                    &poly.count_at(q as u64),
                    &count_colorings(&g, q),
                );
                cases += 1;
            }
        }
    }

    res.notes.push(format!("{cases} cases compared"));
    res
}
