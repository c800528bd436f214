#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use morsekit::complex::{Simplex, SimplicialComplex};
use morsekit::graph::{DirectedGraph, Edge};
use morsekit::homology::betti_gf2;
use morsekit::morse::{critical_profile, DiscreteGradient, GradientPair};
use petgraph::graph::DiGraph;
use proptest::prelude::*;

pub fn complex_from_masks(masks: &[u32]) -> SimplicialComplex {
    let faces: Vec<Vec<String>> = masks
        .iter()
        .filter(|m| **m != 0)
        .map(|m| (0..32).filter(|i| m >> i & 1 == 1).map(|i| format!("x{i}")).collect())
        .collect();
    if faces.is_empty() {
        return SimplicialComplex::empty();
    }
    SimplicialComplex::from_maximal(faces).unwrap()
}

/// Random complexes on at most `n` vertices whose generators have at most
/// `max_size` vertices.
pub fn complexes(n: usize, max_size: u32, max_faces: usize) -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(1u32..(1 << n), 1..=max_faces).prop_map(move |masks| {
        let masks: Vec<u32> = masks.into_iter().filter(|m| m.count_ones() <= max_size).collect();
        complex_from_masks(&masks)
    })
}

/// Oracle: a matching is a gradient iff every simplex is used once and the
/// Hasse diagram with matched arcs reversed has no directed cycle.
pub fn is_gradient_oracle(k: &SimplicialComplex, pairs: &[GradientPair]) -> bool {
    let mut used = BTreeSet::new();
    for p in pairs {
        if !k.contains(&p.face) || !k.contains(&p.coface) || !p.face.is_facet_of(&p.coface) {
            return false;
        }
        if !used.insert(p.face.clone()) || !used.insert(p.coface.clone()) {
            return false;
        }
    }
    let matched: BTreeSet<(Simplex, Simplex)> = pairs.iter().map(|p| (p.face.clone(), p.coface.clone())).collect();
    let mut g = DiGraph::<(), ()>::new();
    let nodes: BTreeMap<&Simplex, _> = k.simplices().iter().map(|s| (s, g.add_node(()))).collect();
    for s in k.simplices() {
        for f in s.facets() {
            if matched.contains(&(f.clone(), s.clone())) {
                g.add_edge(nodes[&f], nodes[s], ());
            } else {
                g.add_edge(nodes[s], nodes[&f], ());
            }
        }
    }
    !petgraph::algo::is_cyclic_directed(&g)
}

/// Weak and strong Morse inequalities plus the Euler identity.
pub fn morse_inequalities_hold(k: &SimplicialComplex, v: &DiscreteGradient) -> bool {
    let beta = betti_gf2(k);
    let prof = critical_profile(k, v);
    let mut m_alt = 0i64;
    let mut b_alt = 0i64;
    for (d, &b) in beta.iter().enumerate() {
        if prof.m(d) < b {
            return false;
        }
        // strong inequalities: alternating partial sums ending at d
        m_alt = prof.m(d) as i64 - m_alt;
        b_alt = b as i64 - b_alt;
        if m_alt < b_alt {
            return false;
        }
    }
    prof.alternating_sum() == k.euler_characteristic() && m_alt == b_alt
}

/// Oracle: best acyclic subgraph by trying every vertex order.
pub fn mas_brute_force(g: &DirectedGraph) -> usize {
    let vs: Vec<_> = g.vertices().iter().cloned().collect();
    let mut best = 0;
    let mut perm: Vec<usize> = (0..vs.len()).collect();
    permute(&mut perm, 0, &mut |p| {
        let pos: BTreeMap<_, _> = p.iter().enumerate().map(|(i, &v)| (&vs[v], i)).collect();
        let forward = g.edges().iter().filter(|e| pos[&e.source] < pos[&e.target]).count();
        best = best.max(forward);
    });
    best
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

pub fn edges(list: &[(&str, &str)]) -> BTreeSet<Edge> {
    list.iter().map(|(a, b)| Edge::from_tokens(a, b).unwrap()).collect()
}

/// Oracle: collapsible iff some sequence of elementary collapses reaches one vertex.
pub fn collapsible_brute_force(k: &SimplicialComplex) -> bool {
    fn go(alive: BTreeSet<Simplex>, seen: &mut BTreeSet<BTreeSet<Simplex>>) -> bool {
        if alive.len() == 1 {
            return true;
        }
        if !seen.insert(alive.clone()) {
            return false;
        }
        for s in &alive {
            let cofaces: Vec<&Simplex> = alive.iter().filter(|c| s.is_face_of(c) && *c != s).collect();
            if let [c] = cofaces[..] {
                let mut next = alive.clone();
                next.remove(s);
                next.remove(c);
                if go(next, seen) {
                    return true;
                }
            }
        }
        false
    }
    !k.is_empty() && go(k.simplices().iter().cloned().collect(), &mut BTreeSet::new())
}

/// Oracle: fewest critical simplices over every acyclic matching.
pub fn optimal_critical_brute_force(k: &SimplicialComplex) -> usize {
    let arcs: Vec<(Simplex, Simplex)> = k
        .simplices()
        .iter()
        .flat_map(|s| s.facets().map(move |f| (f, s.clone())))
        .collect();
    fn go(
        k: &SimplicialComplex,
        arcs: &[(Simplex, Simplex)],
        i: usize,
        chosen: &mut Vec<GradientPair>,
        used: &mut BTreeSet<Simplex>,
        best: &mut usize,
    ) {
        if i == arcs.len() {
            if is_gradient_oracle(k, chosen) {
                *best = (*best).min(k.len() - 2 * chosen.len());
            }
            return;
        }
        go(k, arcs, i + 1, chosen, used, best);
        let (f, c) = &arcs[i];
        if !used.contains(f) && !used.contains(c) {
            chosen.push(GradientPair::new(f.clone(), c.clone()));
            if is_gradient_oracle(k, chosen) {
                used.insert(f.clone());
                used.insert(c.clone());
                go(k, arcs, i + 1, chosen, used, best);
                used.remove(f);
                used.remove(c);
            }
            chosen.pop();
        }
    }
    let mut best = k.len();
    go(k, &arcs, 0, &mut Vec::new(), &mut BTreeSet::new(), &mut best);
    best
}
