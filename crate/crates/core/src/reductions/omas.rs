use std::collections::{BTreeMap, BTreeSet};

use super::ReductionError;
use crate::graph::{DirectedGraph, Edge};

/// Result of stripping a directed graph down to an oriented one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Oriented {
    pub graph: DirectedGraph,
    /// Number of anti-parallel pairs removed (`k`).
    pub antiparallel_pairs: usize,
    pub loops: usize,
}

/// Drops every loop and both edges of every anti-parallel pair.
pub fn mas_to_omas_f(g: &DirectedGraph) -> Oriented {
    let pairs = g.antiparallel_pairs();
    let loops = g.loops().count();
    let mut removed: BTreeSet<Edge> = g.loops().cloned().collect();
    for (a, b) in &pairs {
        removed.insert(a.clone());
        removed.insert(b.clone());
    }
    let graph = g.without_edges(&removed);
    Oriented {
        graph,
        antiparallel_pairs: pairs.len(),
        loops,
    }
}

/// Lifts an acyclic subgraph `a` of `f(g)` back to `g` by adding, for each
/// anti-parallel pair, the edge that agrees with the least topological order
/// of `a`.
pub fn mas_to_omas_g(g: &DirectedGraph, a: &DirectedGraph) -> Result<DirectedGraph, ReductionError> {
    let f = mas_to_omas_f(g).graph;
    if let Some(e) = a.edges().iter().find(|e| !f.contains_edge(e)) {
        return Err(ReductionError::NotASubgraph(e.clone()));
    }
    let a = f.subgraph(a.edges())?;
    let order = a.topological_order().ok_or(ReductionError::Cyclic)?;
    let place: BTreeMap<_, _> = order.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut out = a.clone();
    for v in g.vertices() {
        out.add_vertex(v.clone());
    }
    for (x, y) in g.antiparallel_pairs() {
        let forward = place[&x.source] < place[&x.target];
        out.add_edge(if forward { x } else { y });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_and_loop_vanish() {
        let g = DirectedGraph::from_edges([("u", "v"), ("v", "u"), ("w", "w")]).unwrap();
        let o = mas_to_omas_f(&g);
        assert_eq!(o.graph.edge_count(), 0);
        assert_eq!((o.antiparallel_pairs, o.loops), (1, 1));
        let lifted = mas_to_omas_g(&g, &o.graph).unwrap();
        assert_eq!(lifted.edge_count(), 1);
    }

    #[test]
    fn lift_is_acyclic() {
        let g = DirectedGraph::from_edges([("u", "v"), ("v", "u"), ("v", "w")]).unwrap();
        let o = mas_to_omas_f(&g);
        assert_eq!(o.graph.edge_count(), 1);
        let lifted = mas_to_omas_g(&g, &o.graph).unwrap();
        assert_eq!(lifted.edge_count(), 2);
        assert!(lifted.is_acyclic());
    }

    #[test]
    fn rejects_cyclic_or_foreign_subgraphs() {
        let g = DirectedGraph::from_edges([("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        assert_eq!(mas_to_omas_g(&g, &g), Err(ReductionError::Cyclic));
        let foreign = DirectedGraph::from_edges([("b", "a")]).unwrap();
        assert!(matches!(mas_to_omas_g(&g, &foreign), Err(ReductionError::NotASubgraph(_))));
    }
}
