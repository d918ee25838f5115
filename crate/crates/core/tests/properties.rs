mod common;

use std::collections::BTreeSet;

use hyperspec::blowup::{blowup, BlowupCaps};
use hyperspec::bounds::{degree_power_mean_bound, verify_bounds, BoundKind};
use hyperspec::hypergraph::parse_hypergraph;
use hyperspec::spectral::{spectral_radius, SolverConfig, SpectralKind};
use hyperspec::tensor::{eigen_residual, kron_vector, KroneckerSum, SparseTensor, TensorOperator};
use hyperspec::UniformHypergraph;
use proptest::prelude::*;

use common::{form_a, form_q, oracle_rho, power_mean};

fn hypergraph(max_n: usize, max_edges: usize) -> impl Strategy<Value = UniformHypergraph> {
    (2usize..=4)
        .prop_flat_map(move |r| (Just(r), r..=max_n.max(r)))
        .prop_flat_map(move |(r, n)| {
            let edge = prop::collection::btree_set(0..n, r..=r);
            (Just(r), Just(n), prop::collection::vec(edge, 0..=max_edges))
        })
        .prop_map(|(r, n, edges)| {
            let edges = edges
                .into_iter()
                .map(|e: BTreeSet<usize>| e.into_iter().collect())
                .collect();
            UniformHypergraph::new(n, r, edges).unwrap()
        })
}

fn vector(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, n)
}

fn rho(h: &UniformHypergraph, kind: SpectralKind) -> f64 {
    spectral_radius(h, kind, &SolverConfig::default())
        .unwrap()
        .lambda
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degree_sum_is_r_times_edges(h in hypergraph(9, 12)) {
        prop_assert_eq!(h.degrees().sum(), h.r() * h.edge_count());
    }

    #[test]
    fn text_and_json_round_trip(h in hypergraph(9, 12)) {
        let parsed = parse_hypergraph(&h.to_text()).unwrap();
        prop_assert_eq!(parsed.duplicates, 0);
        prop_assert_eq!(&parsed.graph, &h);
        let json = serde_json::to_string(&h.to_json()).unwrap();
        prop_assert_eq!(&UniformHypergraph::from_json_str(&json).unwrap(), &h);
    }

    #[test]
    fn components_partition_vertices_and_edges(h in hypergraph(10, 8)) {
        let comps = h.components();
        let mut seen = vec![false; h.n()];
        let mut edges = 0;
        for c in &comps {
            prop_assert_eq!(c.vertices.len(), c.graph.n());
            prop_assert!(c.graph.n() == 1 || c.graph.is_connected());
            for &v in &c.vertices {
                prop_assert!(!seen[v]);
                seen[v] = true;
            }
            edges += c.graph.edge_count();
        }
        prop_assert!(seen.iter().all(|&s| s));
        prop_assert_eq!(edges, h.edge_count());
        prop_assert_eq!(comps.len() == 1, h.is_connected());
    }

    #[test]
    fn operators_are_homogeneous(h in hypergraph(8, 10), c in 0.1f64..3.0, seed in any::<u64>()) {
        let x: Vec<f64> = (0..h.n()).map(|i| ((seed >> (i % 64)) & 7) as f64 / 7.0 + 0.1).collect();
        let cx: Vec<f64> = x.iter().map(|v| c * v).collect();
        let p = c.powi(h.r() as i32 - 1);
        for t in [TensorOperator::adjacency(&h), TensorOperator::signless_laplacian(&h)] {
            let lhs = t.apply(&cx).unwrap();
            let rhs = t.apply(&x).unwrap();
            for (a, b) in lhs.iter().zip(&rhs) {
                prop_assert!((a - p * b).abs() <= 1e-10 * (1.0 + a.abs()));
            }
        }
    }

    #[test]
    fn forms_match_independent_evaluation(h in hypergraph(8, 10), x in vector(8)) {
        let x = &x[..h.n()];
        let a = TensorOperator::adjacency(&h).apply(x).unwrap();
        let q = TensorOperator::signless_laplacian(&h).apply(x).unwrap();
        let fa: f64 = a.iter().zip(x).map(|(u, v)| u * v).sum();
        let fq: f64 = q.iter().zip(x).map(|(u, v)| u * v).sum();
        prop_assert!((fa - form_a(&h, x)).abs() <= 1e-10 * (1.0 + fa.abs()));
        prop_assert!((fq - form_q(&h, x)).abs() <= 1e-10 * (1.0 + fq.abs()));
    }

    #[test]
    fn relabeling_preserves_spectrum_and_bounds(h in hypergraph(8, 8), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..h.n()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let g = h.relabel(&perm).unwrap();
        prop_assert_eq!(g.degrees().sum(), h.degrees().sum());
        prop_assert!((degree_power_mean_bound(&g) - degree_power_mean_bound(&h)).abs() <= 1e-12);
        for kind in [SpectralKind::Adjacency, SpectralKind::SignlessLaplacian] {
            prop_assert!((rho(&g, kind) - rho(&h, kind)).abs() <= 1e-8);
        }
    }

    #[test]
    fn kronecker_acts_factorwise(h in hypergraph(5, 6), u in vector(5), v in vector(4)) {
        let r = h.r();
        let u = &u[..h.n()];
        let v = &v[..r];
        let a = SparseTensor::adjacency(&h);
        let b = SparseTensor::distinct_indices(r);
        let au = a.apply(u).unwrap();
        let bv = b.apply(v).unwrap();
        let sum = KroneckerSum::new().term(1.0, a, b).unwrap();
        let lhs = sum.apply(&kron_vector(u, v)).unwrap();
        let rhs = kron_vector(&au, &bv);
        for (p, q) in lhs.iter().zip(&rhs) {
            prop_assert!((p - q).abs() <= 1e-10 * (1.0 + q.abs()));
        }
        let tilde = blowup(&h, &BlowupCaps::default()).unwrap().tilde;
        let direct = TensorOperator::adjacency(&tilde).apply(&kron_vector(u, v)).unwrap();
        for (p, q) in direct.iter().zip(&rhs) {
            prop_assert!((p - q).abs() <= 1e-10 * (1.0 + q.abs()));
        }
    }

    #[test]
    fn rayleigh_never_exceeds_rho(h in hypergraph(8, 10), x in vector(8)) {
        let x = &x[..h.n()];
        let norm: f64 = x.iter().map(|v| v.powi(h.r() as i32)).sum();
        prop_assume!(norm > 1e-6);
        prop_assert!(form_a(&h, x) / norm <= rho(&h, SpectralKind::Adjacency) + 1e-8);
        prop_assert!(form_q(&h, x) / norm <= rho(&h, SpectralKind::SignlessLaplacian) + 1e-8);
    }

    #[test]
    fn adding_an_edge_never_lowers_rho(h in hypergraph(8, 8), extra in prop::collection::btree_set(0usize..8, 2..=4)) {
        let edge: Vec<usize> = extra.into_iter().filter(|&v| v < h.n()).take(h.r()).collect();
        prop_assume!(edge.len() == h.r());
        let g = h.with_edge(edge).unwrap();
        for kind in [SpectralKind::Adjacency, SpectralKind::SignlessLaplacian] {
            prop_assert!(rho(&g, kind) >= rho(&h, kind) - 1e-8);
        }
    }

    #[test]
    fn eigenpair_residual_is_scale_invariant(h in hypergraph(8, 10), c in 0.01f64..100.0) {
        let cfg = SolverConfig::default();
        for kind in [SpectralKind::Adjacency, SpectralKind::SignlessLaplacian] {
            let pair = spectral_radius(&h, kind, &cfg).unwrap();
            let t = kind.operator(&h);
            let res = eigen_residual(&t, pair.lambda, &pair.vector).unwrap();
            let scaled: Vec<f64> = pair.vector.iter().map(|v| c * v).collect();
            let res_scaled = eigen_residual(&t, pair.lambda, &scaled).unwrap();
            prop_assert!(res <= 10.0 * cfg.tolerance);
            prop_assert!((res - res_scaled).abs() <= 1e-12);
            prop_assert!(pair.lower <= pair.lambda && pair.lambda <= pair.upper);
        }
    }

    #[test]
    fn bounds_hold_on_arbitrary_input(h in hypergraph(9, 12)) {
        let v = verify_bounds(&h, &SolverConfig::default()).unwrap();
        prop_assert!(!v.any_violated(1e-10));
        prop_assert!(v.power_mean_dominates);
        if h.edge_count() > 0 {
            let rep = v.report(BoundKind::Adjacency).unwrap();
            prop_assert!((rep.bound - power_mean(&h)).abs() <= 1e-12 * rep.bound.max(1.0));
        }
    }
}

#[test]
fn signless_oracle_agrees_on_small_graphs() {
    for (k, h) in common::small_connected_3_graphs()
        .iter()
        .enumerate()
        .step_by(7)
    {
        let lambda = rho(h, SpectralKind::SignlessLaplacian);
        let oracle = oracle_rho(h, true, 20, k as u64);
        assert!(
            (lambda - oracle).abs() <= 1e-6,
            "{lambda} vs {oracle} on {:?}",
            h.edges()
        );
    }
}

#[test]
fn regular_sweep_instances_are_regular() {
    for (n, r) in [(5, 3), (12, 3), (9, 4)] {
        let c = common::tight_cycle(n, r);
        assert!(c.is_regular() && c.is_connected());
        assert_eq!(c.degrees().max(), r);
    }
}
