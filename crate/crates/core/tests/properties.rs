use chromax::color::{chromatic_polynomial, count_colorings};
use chromax::graph::{
    decode, encode, g_alpha, linial_graph, linial_parameters, semi_complete, sparse_optimal, turan, BipartitionSpec,
    CenterSide, GraphFormat,
};
use chromax::opt::{
    evaluate, kappa, opt2_closed_form, opt_closed_form_q3, opt_closed_form_sparse, solve_opt2_partition, SizePartition,
};
use chromax::search::{canonical_form, search_extremal, search_max_colorings, Objective};
use chromax::verify::check_claim5_inequality_seeded;
use chromax::{Graph, SubsetVector};
use num_bigint::Sign;
use proptest::prelude::*;

/// A graph on `1..=max_n` vertices with each pair present according to a random bit.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

/// Nonnegative weights normalized to sum 1.
fn arb_alpha(max_q: usize) -> impl Strategy<Value = SubsetVector> {
    (1..=max_q).prop_flat_map(|q| {
        proptest::collection::vec(0.0f64..1.0, (1 << q) - 1).prop_map(move |mut w| {
            let s: f64 = w.iter().sum();
            if s <= 0.0 {
                w[0] = 1.0;
            } else {
                w.iter_mut().for_each(|x| *x /= s);
            }
            SubsetVector::from_slice(q, &w).unwrap()
        })
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn turan_edges_match_balanced_parts(n in 1usize..40, r in 1usize..40) {
        prop_assume!(r <= n);
        let g = turan(n, r).unwrap();
        let (base, extra) = (n / r, n % r);
        let squares = extra * (base + 1) * (base + 1) + (r - extra) * base * base;
        prop_assert_eq!(g.edge_count(), (n * n - squares) / 2);
        prop_assert_eq!(turan(n, 1).unwrap().edge_count(), 0);
        prop_assert_eq!(turan(n, n).unwrap(), Graph::complete(n));
    }

    #[test]
    fn semi_complete_misses_a_star(a in 1usize..8, extra in 0usize..6, r in 0usize..8, larger in any::<bool>()) {
        prop_assume!(r < a);
        let b = a + extra;
        let side = if larger { CenterSide::Larger } else { CenterSide::Smaller };
        let g = semi_complete(BipartitionSpec::new(a, b, r, side).unwrap()).unwrap();
        prop_assert_eq!(g.edge_count(), a * b - r);
        let missing: Vec<(usize, usize)> = (0..a)
            .flat_map(|u| (a..a + b).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        prop_assert_eq!(missing.len(), r);
        if r >= 1 {
            let (u0, v0) = missing[0];
            let star = missing.iter().all(|&(u, _)| u == u0) || missing.iter().all(|&(_, v)| v == v0);
            prop_assert!(star);
        }
    }

    #[test]
    fn linial_edges_and_isolated(n in 1usize..30, frac in 0.0f64..=1.0) {
        let m = ((n * (n - 1) / 2) as f64 * frac).floor() as usize;
        let g = linial_graph(n, m).unwrap();
        prop_assert_eq!(g.edge_count(), m);
        // With l = 0 the extra vertex is absent, so K_k leaves n - k isolated vertices.
        let expected = if m == 0 {
            n
        } else {
            let (k, l) = linial_parameters(m);
            n - k - usize::from(l > 0)
        };
        prop_assert_eq!(g.isolated_vertices().len(), expected);
    }

    #[test]
    fn io_round_trip(g in arb_graph(64)) {
        for format in [GraphFormat::EdgeList, GraphFormat::Graph6] {
            prop_assert_eq!(&decode(&encode(&g, format), format).unwrap(), &g);
        }
    }

    #[test]
    fn g_alpha_edge_bound(alpha in arb_alpha(5), n in 1usize..=200) {
        let q = alpha.q();
        let g = g_alpha(n, &alpha, q).unwrap();
        let target = evaluate(&alpha).e * (n * n) as f64;
        prop_assert!((g.edge_count() as f64 - target).abs() < ((1usize << q) * n) as f64);
    }

    #[test]
    fn backends_agree(g in arb_graph(9)) {
        let p = chromatic_polynomial(&g).unwrap();
        for q in 2..=4 {
            prop_assert_eq!(count_colorings(&g, q), p.count_at(q as u64));
        }
    }

    #[test]
    fn chromatic_polynomial_shape(g in arb_graph(9)) {
        let p = chromatic_polynomial(&g).unwrap();
        let c = p.coefficients();
        prop_assert_eq!(p.degree(), g.n());
        prop_assert_eq!(c[g.n()].clone(), 1.into());
        prop_assert_eq!(p.eval(0), 0.into());
        for (i, ci) in c.iter().enumerate() {
            let want = if (g.n() - i) % 2 == 0 { Sign::Plus } else { Sign::Minus };
            prop_assert!(ci.sign() == want || ci.sign() == Sign::NoSign);
        }
    }

    #[test]
    fn deleting_an_edge_never_lowers_the_count(g in arb_graph(8), pick in any::<prop::sample::Index>(), q in 2usize..=4) {
        let edges = g.edges();
        prop_assume!(!edges.is_empty());
        let (u, v) = edges[pick.index(edges.len())];
        let mut h = g.clone();
        h.remove_edge(u, v).unwrap();
        prop_assert!(count_colorings(&h, q).value() >= count_colorings(&g, q).value());
    }

    #[test]
    fn e_is_nonnegative_with_constant_hessian(
        q in 2usize..=5,
        seed in proptest::collection::vec((1.0f64..2.0, 1.0f64..2.0, -1.0f64..1.0), 31),
    ) {
        let len = (1 << q) - 1;
        let x: Vec<f64> = seed[..len].iter().map(|s| s.0).collect();
        let y: Vec<f64> = seed[..len].iter().map(|s| s.1).collect();
        let d: Vec<f64> = seed[..len].iter().map(|s| s.2).collect();
        let e = |base: &[f64], t: f64| {
            let v: Vec<f64> = base.iter().zip(&d).map(|(b, di)| b + t * di).collect();
            evaluate(&SubsetVector::from_slice(q, &v).unwrap()).e
        };
        prop_assert!(e(&x, 0.0) >= 0.0);
        let second = |base: &[f64], t: f64| (e(base, t) + e(base, -t) - 2.0 * e(base, 0.0)) / (t * t);
        let reference = second(&x, 0.5);
        let scale = reference.abs().max(1.0);
        prop_assert!((second(&x, 0.25) - reference).abs() < 1e-9 * scale);
        prop_assert!((second(&y, 0.5) - reference).abs() < 1e-9 * scale);
    }

    #[test]
    fn scale_law(alpha in arb_alpha(5), t in 0.0f64..10.0) {
        let base = evaluate(&alpha);
        let scaled = evaluate(&alpha.scaled(t));
        prop_assert!((scaled.obj_star - t * base.obj_star).abs() <= 1e-12 * (1.0 + t * base.obj_star.abs()));
        prop_assert!((scaled.e - t * t * base.e).abs() <= 1e-12 * (1.0 + t * t * base.e));
    }

    #[test]
    fn sparse_closed_form_reduces_to_problem_two(q in 3usize..=8, frac in 0.0f64..=1.0) {
        let gamma = frac * kappa(q).unwrap();
        let value = opt_closed_form_sparse(q, gamma).unwrap().value;
        let reduced = (q as f64).ln() + gamma.sqrt() * opt2_closed_form(q).unwrap().value;
        prop_assert!((value - reduced).abs() < 1e-12);
    }

    #[test]
    fn sandwich(n in 2usize..=6, frac in 0.0f64..=1.0, q in 3usize..=4) {
        let m = ((n * (n - 1) / 2) as f64 * frac).round() as usize;
        let Ok(g) = sparse_optimal(n, m, q) else { return Ok(()) };
        let best = search_max_colorings(n, m, q).unwrap();
        prop_assert!(count_colorings(&g, q).value() <= best.extremal_value.value());
    }

    #[test]
    fn claim5_check_is_reproducible(seed in any::<u64>()) {
        prop_assert_eq!(check_claim5_inequality_seeded(500, seed), check_claim5_inequality_seeded(500, seed));
    }
}

#[test]
fn q3_closed_form_is_non_increasing() {
    let mut last = f64::INFINITY;
    for i in 0..=200 {
        let gamma = (i as f64 * 0.005).min(1.0 / 3.0);
        let value = opt_closed_form_q3(gamma).unwrap().value;
        assert!(value <= last + 1e-12, "rises at γ = {gamma}");
        last = value;
    }
}

#[test]
fn partitions_without_a_large_part_lose_for_nine_and_twelve() {
    let cases: [(usize, &[&[usize]]); 2] = [
        (9, &[&[4, 5], &[3, 3, 3], &[2, 3, 4], &[1, 2, 6], &[1, 1, 1, 6], &[2, 2, 2, 3]]),
        (12, &[&[6, 6], &[4, 4, 4], &[3, 3, 3, 3], &[1, 2, 9], &[2, 2, 8], &[1, 1, 1, 9]]),
    ];
    for (q, partitions) in cases {
        let best = opt2_closed_form(q).unwrap().value;
        for sizes in partitions {
            let p = SizePartition::new(sizes.to_vec()).unwrap();
            let value = solve_opt2_partition(q, &p).unwrap().value;
            assert!(value < best, "q={q} {sizes:?}: {value} vs {best}");
        }
    }
}

#[test]
fn labeled_search_examines_every_edge_set() {
    for n in 1..=6u64 {
        let pairs = n * (n - 1) / 2;
        for m in 0..=pairs {
            let report = search_extremal(n as usize, m as usize, Objective::MaxColorings, 2, false).unwrap();
            assert_eq!(report.graphs_examined, binomial(pairs, m), "n={n} m={m}");
        }
    }
}

#[test]
fn search_reports_are_deterministic_and_consistent() {
    for (n, m) in [(5, 4), (6, 7), (6, 9)] {
        for dedup in [false, true] {
            let a = search_extremal(n, m, Objective::MaxColorings, 3, dedup).unwrap();
            let b = search_extremal(n, m, Objective::MaxColorings, 3, dedup).unwrap();
            assert_eq!(a, b);
            for w in &a.witnesses {
                assert_eq!(&count_colorings(w, 3), &a.extremal_value);
            }
            let mut codes: Vec<u64> = a.witnesses.iter().map(|w| canonical_form(w).unwrap().code).collect();
            codes.dedup();
            assert_eq!(codes.len(), a.witnesses.len());
        }
    }
}
