use std::collections::{BTreeMap, BTreeSet};

use super::{Budget, SolverConfig, SolverError};
use crate::complex::VertexId;
use crate::graph::{DirectedGraph, Edge};

/// Vertex limit of the subset DP in [`min_fas_exact`].
pub const MAX_FAS_VERTICES: usize = 22;

/// A minimum feedback arc set.
///
/// DP over vertex subsets: `best[S]` is the fewest backward edges inside `S`
/// over all orderings of `S`, and appending `v` after `S` adds the edges from
/// `v` into `S`. Loops are always in the set.
pub fn min_fas_exact(g: &DirectedGraph, config: &SolverConfig) -> Result<BTreeSet<Edge>, SolverError> {
    let n = g.vertex_count();
    if n > MAX_FAS_VERTICES {
        return Err(SolverError::TooManyVertices {
            max: MAX_FAS_VERTICES,
            got: n,
        });
    }
    let verts: Vec<&VertexId> = g.vertices().iter().collect();
    let pos: BTreeMap<&VertexId, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut out_mask = vec![0u32; n];
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        out_mask[pos[&e.source]] |= 1 << pos[&e.target];
    }
    let mut budget = Budget::new(config);
    let full = (1usize << n) - 1;
    let mut best = vec![u32::MAX; full + 1];
    let mut last = vec![0u8; full + 1];
    best[0] = 0;
    for s in 0..full {
        if s & 0xfff == 0 {
            budget.tick()?;
        }
        let base = best[s];
        for v in 0..n {
            if s & (1 << v) != 0 {
                continue;
            }
            let t = s | (1 << v);
            let cost = base + (out_mask[v] & s as u32).count_ones();
            if cost < best[t] {
                best[t] = cost;
                last[t] = v as u8;
            }
        }
    }
    let mut place = vec![0usize; n];
    let mut s = full;
    for p in (0..n).rev() {
        let v = last[s] as usize;
        place[v] = p;
        s &= !(1 << v);
    }
    Ok(g.edges()
        .iter()
        .filter(|e| place[pos[&e.source]] >= place[pos[&e.target]])
        .cloned()
        .collect())
}

/// A maximum acyclic subgraph: the complement of a minimum feedback arc set.
pub fn max_acyclic_exact(g: &DirectedGraph, config: &SolverConfig) -> Result<DirectedGraph, SolverError> {
    Ok(g.without_edges(&min_fas_exact(g, config)?))
}

/// Half-approximation: order vertices, keep the larger of the forward and
/// backward edge sets. Loops are never kept.
pub fn mas_half_approx(g: &DirectedGraph) -> DirectedGraph {
    let (forward, backward): (Vec<&Edge>, Vec<&Edge>) = g
        .edges()
        .iter()
        .filter(|e| !e.is_loop())
        .partition(|e| e.source < e.target);
    let keep = if forward.len() >= backward.len() { forward } else { backward };
    g.subgraph(keep).expect("edges come from g")
}
