//! Gluing gadget copies along a directed graph.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

use super::gadget::{modified_dunce_hat, Role, GADGET_TRIANGLES, GADGET_VERTICES};
use super::ReductionError;
use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::graph::{DirectedGraph, Edge, EdgeOrder, OrientedDeg3Graph};

/// Where each gadget copy landed in a built complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetAtlas {
    vertices: BTreeMap<Edge, BTreeMap<&'static str, VertexId>>,
    owner: BTreeMap<Simplex, Edge>,
}

impl GadgetAtlas {
    /// Builds an atlas from the vertex letters of each copy.
    pub fn from_vertex_maps(vertices: BTreeMap<Edge, BTreeMap<&'static str, VertexId>>) -> Result<Self, ReductionError> {
        let mut owner = BTreeMap::new();
        for (e, map) in &vertices {
            if let Some(l) = GADGET_VERTICES.iter().find(|l| !map.contains_key(*l)) {
                return Err(ReductionError::MissingRole(e.clone(), l.to_string()));
            }
            for tri in GADGET_TRIANGLES {
                let s = Simplex::spanned_by(tri.iter().map(|l| map[l].clone()))
                    .filter(|s| s.dim() == 2)
                    .ok_or_else(|| ReductionError::Degenerate(e.clone()))?;
                if let Some(prev) = owner.insert(s.clone(), e.clone()) {
                    return Err(ReductionError::SharedTriangle(s, prev, e.clone()));
                }
            }
        }
        Ok(GadgetAtlas { vertices, owner })
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.vertices.keys()
    }

    pub fn vertex(&self, e: &Edge, letter: &str) -> Option<&VertexId> {
        self.vertices.get(e)?.get(letter)
    }

    /// Image of a gadget simplex (in gadget letters) inside the copy for `e`.
    pub fn image(&self, e: &Edge, gadget_simplex: &Simplex) -> Option<Simplex> {
        let map = self.vertices.get(e)?;
        let verts: Option<Vec<VertexId>> = gadget_simplex
            .vertices()
            .iter()
            .map(|v| map.get(v.as_str()).cloned())
            .collect();
        Simplex::spanned_by(verts?)
    }

    pub fn role(&self, e: &Edge, role: Role) -> Option<Simplex> {
        self.image(e, &modified_dunce_hat().role(role))
    }

    /// Images of all simplices of the gadget copy for `e`.
    pub fn simplices(&self, e: &Edge) -> Vec<Simplex> {
        let gadget = modified_dunce_hat();
        let mut out: Vec<Simplex> = gadget
            .complex()
            .simplices()
            .iter()
            .filter_map(|s| self.image(e, s))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn triangles(&self, e: &Edge) -> Vec<Simplex> {
        self.simplices(e).into_iter().filter(|s| s.dim() == 2).collect()
    }

    /// The edge whose gadget contains a given triangle.
    pub fn owner(&self, triangle: &Simplex) -> Option<&Edge> {
        self.owner.get(triangle)
    }

    /// `edge role simplex` lines, sorted.
    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in self.edges() {
            for r in Role::ALL {
                out.push(format!("{e} {r} {}", self.role(e, r).expect("atlas is complete")));
            }
        }
        out
    }
}

struct Glue<'a> {
    edges: Vec<&'a Edge>,
    slot: BTreeMap<&'a Edge, usize>,
    uf: UnionFind<usize>,
}

impl<'a> Glue<'a> {
    fn new(edges: Vec<&'a Edge>) -> Self {
        let slot = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let uf = UnionFind::new(7 * edges.len());
        Glue { edges, slot, uf }
    }

    fn id(&self, e: &Edge, letter: &str) -> usize {
        7 * self.slot[e] + GADGET_VERTICES.iter().position(|&x| x == letter).unwrap()
    }

    fn join(&mut self, a: (&Edge, &str), b: (&Edge, &str)) {
        let (x, y) = (self.id(a.0, a.1), self.id(b.0, b.1));
        self.uf.union(x, y);
    }

    fn join_all(&mut self, edges: &[&Edge], letter: &str) {
        for w in edges.windows(2) {
            self.join((w[0], letter), (w[1], letter));
        }
    }

    fn finish(self) -> Result<(SimplicialComplex, GadgetAtlas), ReductionError> {
        let n = 7 * self.edges.len();
        let token = |i: usize| format!("{}/{}", self.edges[i / 7], GADGET_VERTICES[i % 7]);
        let mut canon: BTreeMap<usize, String> = BTreeMap::new();
        for i in 0..n {
            let root = self.uf.find(i);
            let t = token(i);
            canon
                .entry(root)
                .and_modify(|c| {
                    if t < *c {
                        *c = t.clone();
                    }
                })
                .or_insert(t);
        }
        let mut vertices = BTreeMap::new();
        for (slot, e) in self.edges.iter().enumerate() {
            let map: BTreeMap<&'static str, VertexId> = GADGET_VERTICES
                .iter()
                .enumerate()
                .map(|(j, &l)| Ok((l, VertexId::new(&canon[&self.uf.find(7 * slot + j)])?)))
                .collect::<Result<_, ReductionError>>()?;
            vertices.insert((*e).clone(), map);
        }
        let atlas = GadgetAtlas::from_vertex_maps(vertices)?;
        let complex = SimplicialComplex::from_simplices(atlas.owner.keys().cloned());
        Ok((complex, atlas))
    }
}

/// `K(G,H)`: one gadget per edge of `H`, glued at each vertex of `G`.
///
/// Sources and sinks of `H` get their `s` (resp. `t`) vertices merged. Where `G`
/// has one incoming edge `j` and outgoing `k ≺ l`, `ω_k ∼ φ_j` and `ω_l ∼ ψ_j`;
/// where `G` has one outgoing edge `j`, `ω_j ∼ φ_i` for every incoming `i`. Each
/// edge identification needs both edges in `H`.
pub fn build_k(
    g: &OrientedDeg3Graph,
    h: &DirectedGraph,
    order: &EdgeOrder,
) -> Result<(SimplicialComplex, GadgetAtlas), ReductionError> {
    if let Some(e) = h.edges().iter().find(|e| !g.contains_edge(e)) {
        return Err(ReductionError::NotASubgraph(e.clone()));
    }
    if !order.covers(g) {
        return Err(ReductionError::Graph(crate::graph::GraphError::BadOrder));
    }
    let in_h = |e: &Edge| h.contains_edge(e);
    let mut glue = Glue::new(h.edges().iter().collect());
    for x in g.vertices() {
        let mut ins: Vec<Edge> = g.in_edges(x).cloned().collect();
        let mut outs: Vec<Edge> = g.out_edges(x).cloned().collect();
        order.sort(&mut ins);
        order.sort(&mut outs);
        let ins_h: Vec<&Edge> = ins.iter().filter(|e| in_h(e)).collect();
        let outs_h: Vec<&Edge> = outs.iter().filter(|e| in_h(e)).collect();
        if ins_h.is_empty() && !outs_h.is_empty() {
            glue.join_all(&outs_h, "s");
        }
        if outs_h.is_empty() && !ins_h.is_empty() {
            glue.join_all(&ins_h, "t");
        }
        if ins.len() == 1 && outs.len() == 2 {
            let j = &ins[0];
            for (k, end) in [(&outs[0], "v"), (&outs[1], "w")] {
                if in_h(j) && in_h(k) {
                    glue.join((k, "u"), (j, end));
                    glue.join((k, "s"), (j, "t"));
                }
            }
        }
        if outs.len() == 1 && matches!(ins.len(), 1 | 2) {
            let j = &outs[0];
            for i in &ins {
                if in_h(j) && in_h(i) {
                    glue.join((j, "u"), (i, "v"));
                    glue.join((j, "s"), (i, "t"));
                }
            }
        }
    }
    glue.finish()
}

pub fn build_k_full(g: &OrientedDeg3Graph, order: &EdgeOrder) -> Result<(SimplicialComplex, GadgetAtlas), ReductionError> {
    build_k(g, g, order)
}

/// `K̃(G)`: gadgets glued at `s` and `t` only, so it collapses onto a copy of
/// the undirected graph.
pub fn build_k_tilde(g: &OrientedDeg3Graph) -> Result<(SimplicialComplex, GadgetAtlas), ReductionError> {
    let mut glue = Glue::new(g.edges().iter().collect());
    for x in g.vertices() {
        let ins: Vec<&Edge> = g.in_edges(x).collect();
        let outs: Vec<&Edge> = g.out_edges(x).collect();
        match (ins.is_empty(), outs.is_empty()) {
            (false, false) => {
                for i in &ins {
                    for j in &outs {
                        glue.join((j, "s"), (i, "t"));
                    }
                }
            }
            (false, true) => glue.join_all(&ins, "t"),
            (true, false) => glue.join_all(&outs, "s"),
            (true, true) => {}
        }
    }
    glue.finish()
}
