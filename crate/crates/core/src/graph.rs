//! Directed graphs: instances of the acyclic-subgraph problems.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::complex::{ComplexError, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error(transparent)]
    Token(#[from] ComplexError),
    #[error("loop at {0}")]
    Loop(VertexId),
    #[error("anti-parallel edges between {0} and {1}")]
    Antiparallel(VertexId, VertexId),
    #[error("vertex {0} has total degree {1}, more than 3")]
    DegreeTooLarge(VertexId, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge {0} is not in the graph")]
    NotInGraph(Edge),
    #[error("edge order does not list every edge exactly once")]
    BadOrder,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
}

impl Edge {
    pub fn new(source: VertexId, target: VertexId) -> Self {
        Edge { source, target }
    }

    pub fn from_tokens(source: &str, target: &str) -> Result<Self, GraphError> {
        Ok(Edge::new(VertexId::new(source)?, VertexId::new(target)?))
    }

    pub fn reversed(&self) -> Edge {
        Edge::new(self.target.clone(), self.source.clone())
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.source, self.target)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A directed graph; loops and anti-parallel pairs are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DirectedGraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<Edge>,
}

impl DirectedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges<'a>(edges: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self, GraphError> {
        let mut g = DirectedGraph::new();
        for (u, v) in edges {
            g.add_edge(Edge::from_tokens(u, v)?);
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    /// Returns false if the edge was already present.
    pub fn add_edge(&mut self, e: Edge) -> bool {
        self.vertices.insert(e.source.clone());
        self.vertices.insert(e.target.clone());
        self.edges.insert(e)
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn out_edges<'a>(&'a self, v: &'a VertexId) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| &e.source == v)
    }

    pub fn in_edges<'a>(&'a self, v: &'a VertexId) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| &e.target == v)
    }

    pub fn out_degree(&self, v: &VertexId) -> usize {
        self.out_edges(v).count()
    }

    pub fn in_degree(&self, v: &VertexId) -> usize {
        self.in_edges(v).count()
    }

    pub fn loops(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.is_loop())
    }

    /// Anti-parallel pairs, each reported once as `(u->v, v->u)` with `u < v`.
    pub fn antiparallel_pairs(&self) -> Vec<(Edge, Edge)> {
        self.edges
            .iter()
            .filter(|e| e.source < e.target && self.edges.contains(&e.reversed()))
            .map(|e| (e.clone(), e.reversed()))
            .collect()
    }

    /// Same vertices, only the given edges. Every edge must belong to `self`.
    pub fn subgraph<'a>(&self, edges: impl IntoIterator<Item = &'a Edge>) -> Result<DirectedGraph, GraphError> {
        let mut h = DirectedGraph {
            vertices: self.vertices.clone(),
            edges: BTreeSet::new(),
        };
        for e in edges {
            if !self.edges.contains(e) {
                return Err(GraphError::NotInGraph(e.clone()));
            }
            h.edges.insert(e.clone());
        }
        Ok(h)
    }

    pub fn without_edges(&self, removed: &BTreeSet<Edge>) -> DirectedGraph {
        DirectedGraph {
            vertices: self.vertices.clone(),
            edges: self.edges.difference(removed).cloned().collect(),
        }
    }

    pub fn is_subgraph_of(&self, other: &DirectedGraph) -> bool {
        self.edges.is_subset(&other.edges) && self.vertices.is_subset(&other.vertices)
    }

    /// Kahn's algorithm, always releasing the least available vertex.
    pub fn topological_order(&self) -> Option<Vec<VertexId>> {
        let mut indeg: BTreeMap<&VertexId, usize> = self.vertices.iter().map(|v| (v, 0)).collect();
        for e in &self.edges {
            *indeg.get_mut(&e.target).unwrap() += 1;
        }
        let mut ready: BTreeSet<&VertexId> = indeg
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(v, _)| *v)
            .collect();
        let mut order = Vec::with_capacity(self.vertices.len());
        while let Some(v) = ready.pop_first() {
            order.push(v.clone());
            for e in self.out_edges(v) {
                let d = indeg.get_mut(&e.target).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.insert(&e.target);
                }
            }
        }
        (order.len() == self.vertices.len()).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Weak connectivity. The graph with no vertices counts as connected.
    pub fn is_connected(&self) -> bool {
        let Some(start) = self.vertices.iter().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                let w = if &e.source == v {
                    &e.target
                } else if &e.target == v {
                    &e.source
                } else {
                    continue;
                };
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// `|E| − |V| + (#components)`, the first Betti number of the underlying graph
    /// when it is simple.
    pub fn cycle_rank(&self) -> usize {
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(self.vertices.len());
        let pos: BTreeMap<&VertexId, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut components = self.vertices.len();
        for e in &self.edges {
            if uf.union(pos[&e.source], pos[&e.target]) {
                components -= 1;
            }
        }
        self.edges.len() + components - self.vertices.len()
    }
}

/// A connected oriented graph with total degree at most three everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedDeg3Graph(DirectedGraph);

impl OrientedDeg3Graph {
    pub fn new(g: DirectedGraph) -> Result<Self, GraphError> {
        if let Some(e) = g.loops().next() {
            return Err(GraphError::Loop(e.source.clone()));
        }
        if let Some((a, _)) = g.antiparallel_pairs().first() {
            return Err(GraphError::Antiparallel(a.source.clone(), a.target.clone()));
        }
        for v in g.vertices() {
            let d = g.in_degree(v) + g.out_degree(v);
            if d > 3 {
                return Err(GraphError::DegreeTooLarge(v.clone(), d));
            }
        }
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(OrientedDeg3Graph(g))
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.0
    }

    pub fn into_graph(self) -> DirectedGraph {
        self.0
    }
}

impl std::ops::Deref for OrientedDeg3Graph {
    type Target = DirectedGraph;

    fn deref(&self) -> &DirectedGraph {
        &self.0
    }
}

/// A total order on the edges of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrder {
    rank: BTreeMap<Edge, usize>,
}

impl EdgeOrder {
    /// Lexicographic on `(source, target)`.
    pub fn lexicographic(g: &DirectedGraph) -> Self {
        EdgeOrder {
            rank: g.edges().iter().cloned().enumerate().map(|(i, e)| (e, i)).collect(),
        }
    }

    pub fn reverse_lexicographic(g: &DirectedGraph) -> Self {
        let n = g.edge_count();
        EdgeOrder {
            rank: g.edges().iter().cloned().enumerate().map(|(i, e)| (e, n - 1 - i)).collect(),
        }
    }

    pub fn shuffled(g: &DirectedGraph, rng: &mut impl Rng) -> Self {
        let mut seq: Vec<Edge> = g.edges().iter().cloned().collect();
        seq.shuffle(rng);
        EdgeOrder {
            rank: seq.into_iter().enumerate().map(|(i, e)| (e, i)).collect(),
        }
    }

    /// From an explicit listing, first = least.
    pub fn from_sequence(g: &DirectedGraph, seq: Vec<Edge>) -> Result<Self, GraphError> {
        let rank: BTreeMap<Edge, usize> = seq.into_iter().enumerate().map(|(i, e)| (e, i)).collect();
        if rank.len() != g.edge_count() || rank.keys().any(|e| !g.contains_edge(e)) {
            return Err(GraphError::BadOrder);
        }
        Ok(EdgeOrder { rank })
    }

    pub fn covers(&self, g: &DirectedGraph) -> bool {
        g.edges().iter().all(|e| self.rank.contains_key(e))
    }

    /// Sorts edges ascending in this order.
    pub fn sort(&self, edges: &mut [Edge]) {
        edges.sort_by_key(|e| self.rank[e]);
    }

    pub fn sequence(&self) -> Vec<Edge> {
        let mut seq: Vec<Edge> = self.rank.keys().cloned().collect();
        self.sort(&mut seq);
        seq
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_and_acyclicity() {
        let g = DirectedGraph::from_edges([("a", "b"), ("b", "c"), ("c", "a")]).unwrap();
        let a = VertexId::new("a").unwrap();
        assert_eq!((g.in_degree(&a), g.out_degree(&a)), (1, 1));
        assert!(!g.is_acyclic());
        assert_eq!(g.cycle_rank(), 1);
        let dag = DirectedGraph::from_edges([("a", "b"), ("a", "c"), ("b", "c")]).unwrap();
        let order: Vec<String> = dag.topological_order().unwrap().iter().map(|v| v.to_string()).collect();
        assert_eq!(order, ["a", "b", "c"]);
    }

    #[test]
    fn oriented_degree_three_checks() {
        let anti = DirectedGraph::from_edges([("a", "b"), ("b", "a")]).unwrap();
        assert!(matches!(OrientedDeg3Graph::new(anti), Err(GraphError::Antiparallel(..))));
        let lp = DirectedGraph::from_edges([("a", "a")]).unwrap();
        assert!(matches!(OrientedDeg3Graph::new(lp), Err(GraphError::Loop(_))));
        let star = DirectedGraph::from_edges([("a", "b"), ("a", "c"), ("a", "d"), ("e", "a")]).unwrap();
        assert!(matches!(OrientedDeg3Graph::new(star), Err(GraphError::DegreeTooLarge(_, 4))));
        let split = DirectedGraph::from_edges([("a", "b"), ("c", "d")]).unwrap();
        assert_eq!(OrientedDeg3Graph::new(split), Err(GraphError::Disconnected));
    }

    #[test]
    fn edge_orders() {
        let g = DirectedGraph::from_edges([("b", "c"), ("a", "b")]).unwrap();
        let lex = EdgeOrder::lexicographic(&g);
        assert_eq!(lex.sequence()[0].to_string(), "a->b");
        let rev = EdgeOrder::reverse_lexicographic(&g);
        assert_eq!(rev.sequence()[0].to_string(), "b->c");
        assert!(EdgeOrder::from_sequence(&g, vec![Edge::from_tokens("a", "b").unwrap()]).is_err());
    }
}
