mod common;

use common::*;
use morsekit::complex::{PointedComplex, SimplicialComplex};
use morsekit::families::random_directed;
use morsekit::reductions::{amplified_size, amplify, classic_dunce_hat, modified_dunce_hat};
use morsekit::solvers::{
    algorithm_b, branch_and_bound_matching, is_collapsible_exact, is_collapsible_exact_with, mas_half_approx,
    max_acyclic_exact, min_fas_exact, optimal_matching, optimal_matching_with, random_gradient, SolverConfig,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn exact(k: &SimplicialComplex) -> Result<morsekit::morse::DiscreteGradient, morsekit::solvers::SolverError> {
    Ok(optimal_matching(k)?.gradient)
}

fn fixtures() -> Vec<(&'static str, SimplicialComplex, bool)> {
    vec![
        ("edge", SimplicialComplex::from_maximal([["a", "b"]]).unwrap(), true),
        ("triangle", SimplicialComplex::from_maximal([["a", "b", "c"]]).unwrap(), true),
        (
            "hollow triangle",
            SimplicialComplex::from_maximal([["a", "b"], ["b", "c"], ["a", "c"]]).unwrap(),
            false,
        ),
        (
            "bowtie",
            SimplicialComplex::from_maximal([["a", "b", "c"], ["c", "d", "e"]]).unwrap(),
            true,
        ),
        (
            "sphere",
            SimplicialComplex::from_maximal([["a", "b", "c"], ["a", "b", "d"], ["a", "c", "d"], ["b", "c", "d"]]).unwrap(),
            false,
        ),
    ]
}

#[test]
fn fas_and_mas_agree_with_brute_force() {
    let cfg = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let n = rng.gen_range(1..=6);
        let g = random_directed(n, rng.gen_range(0.1..0.6), &mut rng);
        let fas = min_fas_exact(&g, &cfg).unwrap();
        let mas = max_acyclic_exact(&g, &cfg).unwrap();
        assert!(g.without_edges(&fas).is_acyclic());
        assert!(mas.is_acyclic() && mas.is_subgraph_of(&g));
        assert_eq!(fas.len() + mas.edge_count(), g.edge_count());
        assert_eq!(mas.edge_count(), mas_brute_force(&g), "{g:?}");
    }
}

#[test]
fn half_approximation_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let g = random_directed(n, rng.gen_range(0.1..0.8), &mut rng);
        let a = mas_half_approx(&g);
        let proper = g.edge_count() - g.loops().count();
        assert!(a.is_acyclic() && a.is_subgraph_of(&g));
        assert!(a.edge_count() >= proper.div_ceil(2));
        if g.loops().count() == 0 {
            assert!(a.edge_count() >= g.edge_count().div_ceil(2));
        }
    }
}

#[test]
fn amplification_preserves_collapsibility() {
    let cfg = SolverConfig::default();
    for (name, k, collapsible) in fixtures() {
        assert_eq!(is_collapsible_exact(&k, &cfg).unwrap().collapsible, collapsible, "{name}");
        let n = k.len();
        let big = amplify(&PointedComplex::at_least_vertex(k.clone()).unwrap(), 2).unwrap();
        assert_eq!(big.complex().len() as u128, amplified_size(n, 2).unwrap(), "{name}");
        assert_eq!(is_collapsible_exact(big.complex(), &cfg).unwrap().collapsible, collapsible, "{name}");
        let best = optimal_matching(big.complex()).unwrap().critical;
        if collapsible {
            assert_eq!(best, 1, "{name}");
        } else {
            assert!(best > n, "{name}: {best} critical vs n = {n}");
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..20 {
                let v = random_gradient(big.complex(), &mut rng);
                assert!(big.complex().len() - 2 * v.len() > n);
            }
        }
    }
}

#[test]
fn algorithm_b_on_fixtures() {
    let cfg = SolverConfig::default();
    let dunce = classic_dunce_hat();
    let out = algorithm_b(&dunce, 2, exact, &cfg).unwrap();
    assert!(!out.collapsible);
    assert_eq!(out.threshold, dunce.len() as u128);
    assert!(out.critical.unwrap() as u128 >= out.threshold);
    let triangle = SimplicialComplex::from_maximal([["a", "b", "c"]]).unwrap();
    let out = algorithm_b(&triangle, 2, exact, &cfg).unwrap();
    assert!(out.collapsible);
    assert_eq!(out.critical, Some(1));
    for (name, k, collapsible) in fixtures() {
        assert_eq!(algorithm_b(&k, 2, exact, &cfg).unwrap().collapsible, collapsible, "{name}");
        assert_eq!(algorithm_b(&k, 1, exact, &cfg).unwrap().collapsible, collapsible, "{name}");
    }
}

#[test]
fn dunce_hat_collapsibility() {
    let cfg = SolverConfig::default();
    let gadget = modified_dunce_hat();
    assert!(is_collapsible_exact(gadget.complex(), &cfg).unwrap().collapsible);
    assert!(is_collapsible_exact_with(gadget.complex(), &cfg, false).unwrap().collapsible);
    let dunce = classic_dunce_hat();
    assert!(!is_collapsible_exact(&dunce, &cfg).unwrap().collapsible);
    assert!(!is_collapsible_exact_with(&dunce, &cfg, false).unwrap().collapsible);
    assert_eq!(optimal_matching(&dunce).unwrap().critical, 3);
}

#[test]
fn collapsibility_trace_replays_to_a_vertex() {
    let cfg = SolverConfig::default();
    let k = SimplicialComplex::from_maximal(vec![vec!["a", "b", "c", "d"], vec!["d", "e", "f"], vec!["f", "g"]]).unwrap();
    let c = is_collapsible_exact(&k, &cfg).unwrap();
    let trace = c.trace.unwrap();
    assert_eq!(trace.replay(&k).unwrap().len(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn branch_and_bound_matches_exhaustive_search_in_dimension_three(k in complexes(5, 4, 2)) {
        prop_assume!(k.len() <= 16);
        let bb = branch_and_bound_matching(&k, &SolverConfig::default()).unwrap();
        bb.gradient.validate_on(&k).unwrap();
        prop_assert_eq!(bb.critical, optimal_critical_brute_force(&k));
    }

    #[test]
    fn both_exact_routes_agree(k in complexes(6, 3, 6)) {
        let er = optimal_matching_with(&k, &SolverConfig::default()).unwrap();
        let bb = branch_and_bound_matching(&k, &SolverConfig::default()).unwrap();
        prop_assert_eq!(er.critical, bb.critical);
        prop_assert!(morse_inequalities_hold(&k, &er.gradient));
        prop_assert!(morse_inequalities_hold(&k, &bb.gradient));
    }

    #[test]
    fn exact_collapsibility_with_and_without_the_shortcut(k in complexes(6, 4, 4)) {
        prop_assume!(!k.is_empty());
        let cfg = SolverConfig::default();
        prop_assert_eq!(
            is_collapsible_exact_with(&k, &cfg, true).unwrap().collapsible,
            is_collapsible_exact_with(&k, &cfg, false).unwrap().collapsible
        );
    }
}
