//! Graph instance families for exhaustive and randomized checks.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{DirectedGraph, Edge, OrientedDeg3Graph};

fn name(i: usize) -> String {
    format!("v{i}")
}

fn graph_from(n: usize, edges: &[(usize, usize)]) -> DirectedGraph {
    let mut g = DirectedGraph::new();
    for i in 0..n {
        g.add_vertex(crate::complex::VertexId::new(name(i)).unwrap());
    }
    for &(a, b) in edges {
        g.add_edge(Edge::from_tokens(&name(a), &name(b)).unwrap());
    }
    g
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every connected oriented graph with total degree at most 3, between 2 and
/// `max_vertices` vertices, one per isomorphism class.
pub fn connected_oriented_deg3(max_vertices: usize) -> Vec<OrientedDeg3Graph> {
    let mut out = Vec::new();
    for n in 2..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let perms = permutations(n);
        let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
        let total = 3usize.pow(pairs.len() as u32);
        for code in 0..total {
            let mut c = code;
            let mut edges = Vec::new();
            let mut degree = vec![0; n];
            for &(a, b) in &pairs {
                match c % 3 {
                    1 => edges.push((a, b)),
                    2 => edges.push((b, a)),
                    _ => {}
                }
                if c % 3 != 0 {
                    degree[a] += 1;
                    degree[b] += 1;
                }
                c /= 3;
            }
            if degree.iter().any(|&d| d == 0 || d > 3) {
                continue;
            }
            let canonical = perms
                .iter()
                .map(|p| {
                    let mut e: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (p[a], p[b])).collect();
                    e.sort_unstable();
                    e
                })
                .min()
                .unwrap();
            if !seen.insert(canonical.clone()) {
                continue;
            }
            if let Ok(g) = OrientedDeg3Graph::new(graph_from(n, &canonical)) {
                out.push(g);
            }
        }
    }
    out
}

/// A random connected oriented graph with total degree at most 3: a random
/// tree plus up to `n` attempts at extra edges.
pub fn random_oriented_deg3(n: usize, rng: &mut impl Rng) -> OrientedDeg3Graph {
    assert!(n >= 2, "need at least two vertices");
    let mut degree = vec![0usize; n];
    let mut adjacent = BTreeSet::new();
    let mut edges = Vec::new();
    let mut add = |a: usize, b: usize, forward: bool, degree: &mut Vec<usize>, adjacent: &mut BTreeSet<(usize, usize)>| {
        edges.push(if forward { (a, b) } else { (b, a) });
        adjacent.insert((a.min(b), a.max(b)));
        degree[a] += 1;
        degree[b] += 1;
    };
    for i in 1..n {
        let options: Vec<usize> = (0..i).filter(|&j| degree[j] < 3).collect();
        let j = *options.choose(rng).expect("a tree always has a leaf");
        add(i, j, rng.gen_bool(0.5), &mut degree, &mut adjacent);
    }
    for _ in 0..rng.gen_range(0..=n) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b || degree[a] >= 3 || degree[b] >= 3 || adjacent.contains(&(a.min(b), a.max(b))) {
            continue;
        }
        add(a, b, rng.gen_bool(0.5), &mut degree, &mut adjacent);
    }
    OrientedDeg3Graph::new(graph_from(n, &edges)).expect("construction respects the constraints")
}

/// A random directed graph on `n` vertices; every ordered pair, loops included,
/// is an edge with probability `p`.
pub fn random_directed(n: usize, p: f64, rng: &mut impl Rng) -> DirectedGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    graph_from(n, &edges)
}

/// All spanning subgraphs (every subset of the edges).
pub fn all_subgraphs(g: &DirectedGraph) -> Vec<DirectedGraph> {
    let edges: Vec<&Edge> = g.edges().iter().collect();
    assert!(edges.len() < 24, "too many edges to enumerate subsets");
    (0..1usize << edges.len())
        .map(|mask| {
            g.subgraph(edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e))
                .unwrap()
        })
        .collect()
}
