mod common;

use std::collections::BTreeSet;

use common::*;
use morsekit::collapse::{collapse_by_gradient, erase, erase_shuffled, is_erasable};
use morsekit::complex::{quotient, Labelling, SimplicialComplex, VertexId};
use morsekit::homology::betti_gf2;
use morsekit::morse::{morse_function, validate, GradientPair};
use morsekit::solvers::{
    er_exact, greedy_gradient, is_collapsible_exact, optimal_matching, random_gradient, SolverConfig,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn relabel(k: &SimplicialComplex, seed: u64) -> SimplicialComplex {
    let mut vs: Vec<VertexId> = k.vertices().cloned().collect();
    let mut targets: Vec<String> = (0..vs.len()).map(|i| format!("r{i:02}")).collect();
    targets.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    vs.sort();
    let f: Labelling = vs
        .into_iter()
        .zip(targets)
        .map(|(v, t)| (v, VertexId::new(t).unwrap()))
        .collect();
    quotient(k, &f).unwrap()
}

fn random_labelling(k: &SimplicialComplex, classes: usize, seed: u64, prefix: &str) -> Labelling {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    k.vertices()
        .map(|v| (v.clone(), VertexId::new(format!("{prefix}{}", rng.gen_range(0..classes))).unwrap()))
        .collect()
}

/// Arbitrary facet-coface pairs, possibly overlapping or cyclic.
fn random_pairs(k: &SimplicialComplex, seed: u64) -> Vec<GradientPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs: Vec<GradientPair> = k
        .simplices()
        .iter()
        .flat_map(|s| s.facets().map(move |f| GradientPair::new(f, s.clone())))
        .collect();
    arcs.shuffle(&mut rng);
    let mut used = BTreeSet::new();
    let take = rng.gen_range(0..=arcs.len());
    arcs.into_iter()
        .take(take)
        .filter(|p| rng.gen_bool(0.1) || (used.insert(p.face.clone()) & used.insert(p.coface.clone())))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn euler_identity(k in complexes(7, 4, 8)) {
        let chi: i64 = betti_gf2(&k).iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(chi, k.euler_characteristic());
    }

    #[test]
    fn quotient_is_functorial(k in complexes(7, 4, 6), s1 in any::<u64>(), s2 in any::<u64>()) {
        let f = random_labelling(&k, 5, s1, "p");
        let once = quotient(&k, &f).unwrap();
        let g = random_labelling(&once, 3, s2, "q");
        let twice = quotient(&once, &g).unwrap();
        prop_assert_eq!(&quotient(&k, &f.then(&g)).unwrap(), &twice);
        prop_assert_eq!(&quotient(&k, &Labelling::identity(&k)).unwrap(), &k);
    }

    #[test]
    fn relabeling_preserves_invariants(k in complexes(6, 3, 6), seed in any::<u64>()) {
        let r = relabel(&k, seed);
        prop_assert_eq!(k.f_vector(), r.f_vector());
        prop_assert_eq!(betti_gf2(&k), betti_gf2(&r));
        prop_assert_eq!(is_erasable(&k).unwrap(), is_erasable(&r).unwrap());
        let cfg = SolverConfig::default();
        prop_assert_eq!(er_exact(&k, &cfg).unwrap().0, er_exact(&r, &cfg).unwrap().0);
        prop_assert_eq!(optimal_matching(&k).unwrap().critical, optimal_matching(&r).unwrap().critical);
        if !k.is_empty() {
            prop_assert_eq!(is_collapsible_exact(&k, &cfg).unwrap().collapsible, is_collapsible_exact(&r, &cfg).unwrap().collapsible);
        }
    }

    #[test]
    fn validation_agrees_with_the_hasse_oracle(k in complexes(5, 4, 5), seed in any::<u64>()) {
        let pairs = random_pairs(&k, seed);
        prop_assert_eq!(validate(&k, &pairs).is_ok(), is_gradient_oracle(&k, &pairs));
    }

    #[test]
    fn produced_gradients_satisfy_the_morse_inequalities(k in complexes(7, 4, 7), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for v in [greedy_gradient(&k), random_gradient(&k, &mut rng), optimal_matching(&k).unwrap().gradient] {
            let pairs: Vec<GradientPair> = v.pairs().collect();
            prop_assert!(is_gradient_oracle(&k, &pairs));
            prop_assert!(morse_inequalities_hold(&k, &v));
            prop_assert!(morse_function(&k, &v).unwrap().is_discrete_morse(&k));
            let trace = collapse_by_gradient(&k, &v).unwrap();
            prop_assert_eq!(trace.replay(&k), Some(trace.residue.clone()));
        }
    }

    #[test]
    fn collapsibility_matches_exhaustive_search(k in complexes(5, 4, 4)) {
        prop_assume!(!k.is_empty());
        let got = is_collapsible_exact(&k, &SolverConfig::default()).unwrap().collapsible;
        prop_assert_eq!(got, collapsible_brute_force(&k));
    }

    #[test]
    fn optimum_matches_exhaustive_search(k in complexes(4, 3, 3)) {
        prop_assume!(k.len() <= 15);
        prop_assert_eq!(optimal_matching(&k).unwrap().critical, optimal_critical_brute_force(&k));
    }

    #[test]
    fn er_matches_subset_search(k in complexes(6, 3, 8)) {
        let triangles = k.of_dim(2).to_vec();
        prop_assume!(triangles.len() <= 10);
        let best = (0u32..1 << triangles.len())
            .filter(|mask| {
                let removed: Vec<_> = (0..triangles.len()).filter(|i| mask >> i & 1 == 1).map(|i| triangles[i].clone()).collect();
                is_erasable(&k.without_maximal(&removed).unwrap()).unwrap()
            })
            .map(u32::count_ones)
            .min()
            .unwrap() as usize;
        prop_assert_eq!(er_exact(&k, &SolverConfig::default()).unwrap().0, best);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn erasure_is_confluent(k in complexes(7, 3, 10), seed in any::<u64>()) {
        let a = erase(&k).unwrap();
        let b = erase_shuffled(&k, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        // the surviving triangles are order independent; which edges go with them is not
        prop_assert_eq!(a.residue.of_dim(2), b.residue.of_dim(2));
        prop_assert_eq!(a.residue.f_vector(), b.residue.f_vector());
        prop_assert_eq!(betti_gf2(&a.residue), betti_gf2(&b.residue));
        prop_assert_eq!(a.replay(&k), Some(a.residue.clone()));
        prop_assert_eq!(b.replay(&k), Some(b.residue.clone()));
    }
}
