use std::collections::BTreeSet;

use super::{GadgetAtlas, ReductionError, Role};
use crate::collapse::erase;
use crate::complex::{SimplicialComplex, VertexId};
use crate::graph::{DirectedGraph, Edge};
use crate::morse::{unique_critical_vertex, DiscreteGradient};

/// Edges whose gadget carries a critical triangle of `v`.
pub fn critical_edges(k: &SimplicialComplex, atlas: &GadgetAtlas, v: &DiscreteGradient) -> BTreeSet<Edge> {
    k.of_dim(2)
        .iter()
        .filter(|t| !v.is_matched(t))
        .filter_map(|t| atlas.owner(t).cloned())
        .collect()
}

/// The acyclic subgraph `(V, E \ F)` read off a gradient on `K(G)`, where `F`
/// holds the edges whose gadget has a critical triangle.
pub fn solution_map_a(
    g: &DirectedGraph,
    k: &SimplicialComplex,
    atlas: &GadgetAtlas,
    v: &DiscreteGradient,
) -> Result<DirectedGraph, ReductionError> {
    v.validate_on(k)?;
    let f = critical_edges(k, atlas, v);
    let a = g.without_edges(&f);
    if !a.is_acyclic() {
        return Err(ReductionError::Cyclic);
    }
    Ok(a)
}

/// A gradient on `K(G)` whose critical simplices are `p`, the triangles
/// `Γ_f` for `f ∈ F`, and the edges the cycle space forces.
///
/// Removes each `Γ_f`, erases the rest greedily, then matches the remaining
/// vertices along a spanning tree rooted at `p`.
pub fn witness_gradient(
    g: &DirectedGraph,
    k: &SimplicialComplex,
    atlas: &GadgetAtlas,
    fas: &BTreeSet<Edge>,
    p: &VertexId,
) -> Result<DiscreteGradient, ReductionError> {
    if let Some(e) = fas.iter().find(|e| !g.contains_edge(e)) {
        return Err(ReductionError::NotASubgraph(e.clone()));
    }
    if !g.without_edges(fas).is_acyclic() {
        return Err(ReductionError::NotFeedbackArcSet);
    }
    if !k.contains_vertex(p) {
        return Err(ReductionError::MissingVertex(p.clone()));
    }
    let removed: Vec<_> = fas
        .iter()
        .map(|f| atlas.role(f, Role::Gamma).ok_or_else(|| ReductionError::NotASubgraph(f.clone())))
        .collect::<Result<_, _>>()?;
    let rest = k.without_maximal(&removed)?;
    let trace = erase(&rest)?;
    if !trace.residue.of_dim(2).is_empty() {
        return Err(ReductionError::NotErasable);
    }
    Ok(unique_critical_vertex(k, &trace.to_gradient(), p)?)
}
