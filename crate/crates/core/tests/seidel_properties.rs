use std::collections::BTreeSet;

use eqlines_core::real::{fano_28_lines, hexagon_lines, icosahedron_lines};
use eqlines_core::seidel::{
    graph_from_seidel, is_strongly_regular, lines_from_seidel, negate_line_vector,
    seidel_from_graph, seidel_from_gram, switch, switching_equivalent, Graph, SeidelMatrix,
};
use eqlines_core::{certify_equiangular, gram, LineSet};
use nalgebra::SymmetricEigen;
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in (u + 1)..n {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn subset(n: usize) -> impl Strategy<Value = BTreeSet<usize>> {
    prop::collection::btree_set(0..n.max(1), 0..=n).prop_map(move |s| s.into_iter().filter(|&v| v < n).collect())
}

fn graph_and_subsets(max_n: usize) -> impl Strategy<Value = (Graph, BTreeSet<usize>, BTreeSet<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), subset(n), subset(n))
    })
}

/// A real equiangular set from a random Seidel matrix. With `tight`, alpha
/// is `1 / |lambda_min|`, so the Gram matrix is singular and the set lives
/// in fewer than N dimensions.
fn equiangular_set() -> impl Strategy<Value = (LineSet, f64)> {
    (graph(10), any::<bool>()).prop_filter_map("needs two lines", |(g, tight)| {
        let n = g.vertex_count();
        if n < 2 {
            return None;
        }
        let s = seidel_from_graph(&g);
        let lmin = SymmetricEigen::new(s.gram_with_alpha(1.0) - nalgebra::DMatrix::identity(n, n))
            .eigenvalues
            .min();
        let alpha = if tight { -1.0 / lmin } else { 1.0 / n as f64 };
        let ls = lines_from_seidel(&s, alpha, 1e-10).ok()?;
        Some((ls, alpha))
    })
}

fn brute_force_equivalent(g: &Graph, h: &Graph) -> bool {
    let n = g.vertex_count();
    (0u32..1 << n).any(|mask| {
        let a: BTreeSet<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        &switch(g, &a).unwrap() == h
    })
}

fn symmetric_difference(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> BTreeSet<usize> {
    a.symmetric_difference(b).copied().collect()
}

fn assert_gram_round_trip(ls: &LineSet, alpha: f64) {
    let s = seidel_from_gram(&gram(ls), alpha, 1e-10).unwrap();
    let back = lines_from_seidel(&s, alpha, 1e-10).unwrap();
    assert_eq!(back.len(), ls.len());
    assert!(gram(&back).max_abs_diff(&gram(ls)) < 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn correspondence_square_commutes((ls, alpha) in equiangular_set(), i in 0usize..10) {
        let i = i % ls.len();
        let tol = 1e-10;
        let left = graph_from_seidel(&seidel_from_gram(&gram(&negate_line_vector(&ls, i).unwrap()), alpha, tol).unwrap());
        let base = graph_from_seidel(&seidel_from_gram(&gram(&ls), alpha, tol).unwrap());
        let right = switch(&base, &BTreeSet::from([i])).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn seidel_round_trip_preserves_gram((ls, alpha) in equiangular_set()) {
        let s = seidel_from_gram(&gram(&ls), alpha, 1e-10).unwrap();
        let back = lines_from_seidel(&s, alpha, 1e-10).unwrap();
        prop_assert!(back.dimension() <= ls.dimension());
        prop_assert!(gram(&back).max_abs_diff(&gram(&ls)) < 1e-10);
        let c = certify_equiangular(&back, 1e-10).unwrap();
        prop_assert!(c.is_equiangular);
        prop_assert!((c.alpha - alpha).abs() < 1e-10);
    }

    #[test]
    fn switch_is_an_involution((g, a, _) in graph_and_subsets(10)) {
        prop_assert_eq!(switch(&switch(&g, &a).unwrap(), &a).unwrap(), g);
    }

    #[test]
    fn switches_compose_by_symmetric_difference((g, a, b) in graph_and_subsets(10)) {
        let twice = switch(&switch(&g, &a).unwrap(), &b).unwrap();
        prop_assert_eq!(twice, switch(&g, &symmetric_difference(&a, &b)).unwrap());
    }

    #[test]
    fn graph_seidel_round_trip(g in graph(10)) {
        prop_assert_eq!(graph_from_seidel(&seidel_from_graph(&g)), g);
    }

    #[test]
    fn switching_equivalence_is_an_equivalence((g, a, b) in graph_and_subsets(8), other in graph(8)) {
        let h = switch(&g, &a).unwrap();
        let k = switch(&h, &b).unwrap();
        prop_assert!(switching_equivalent(&g, &g).unwrap());
        prop_assert!(switching_equivalent(&g, &h).unwrap());
        prop_assert!(switching_equivalent(&h, &g).unwrap());
        prop_assert!(switching_equivalent(&h, &k).unwrap());
        prop_assert!(switching_equivalent(&g, &k).unwrap());
        if other.vertex_count() == g.vertex_count() {
            let fwd = switching_equivalent(&g, &other).unwrap();
            prop_assert_eq!(fwd, switching_equivalent(&other, &g).unwrap());
            prop_assert_eq!(fwd, brute_force_equivalent(&g, &other));
        }
    }
}

#[test]
fn constructed_sets_round_trip() {
    for ls in [hexagon_lines(), icosahedron_lines(), fano_28_lines()] {
        let alpha = certify_equiangular(&ls, 1e-10).unwrap().alpha;
        assert_gram_round_trip(&ls, alpha);
    }
}

#[test]
fn pentagon_two_graph() {
    // Icosahedron lines in two-graph form: the switching class of C5.
    let ls = icosahedron_lines();
    let alpha = certify_equiangular(&ls, 1e-10).unwrap().alpha;
    let g = graph_from_seidel(&seidel_from_gram(&gram(&ls), alpha, 1e-10).unwrap());
    // Switch so vertex 0 is isolated; the rest must be the pentagon.
    let nbrs: BTreeSet<usize> = (1..6).filter(|&v| g.has_edge(0, v)).collect();
    let h = switch(&g, &nbrs).unwrap();
    assert_eq!(h.degree(0), 0);
    let rest = h.edges();
    assert_eq!(rest.len(), 5);
    assert!((1..6).all(|v| h.degree(v) == 2));
    let sub = Graph::from_edges(5, &rest.iter().map(|&(u, v)| (u - 1, v - 1)).collect::<Vec<_>>()).unwrap();
    assert_eq!(is_strongly_regular(&sub), is_strongly_regular(&Graph::cycle(5)));
}

#[test]
fn seidel_rejects_bad_grids() {
    assert!(SeidelMatrix::from_rows(vec![vec![0, 1], vec![-1, 0]]).is_err());
    assert!(SeidelMatrix::from_rows(vec![vec![1, 1], vec![1, 0]]).is_err());
    assert!(SeidelMatrix::from_rows(vec![vec![0, 2], vec![2, 0]]).is_err());
    assert!(SeidelMatrix::from_rows(vec![vec![0, 1]]).is_err());
}
