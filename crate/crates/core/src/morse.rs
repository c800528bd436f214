//! Discrete gradients (Morse matchings on the Hasse diagram).

use std::collections::{BTreeMap, BinaryHeap};
use std::cmp::Reverse;

use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::hasse::HasseDiagram;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradientError {
    #[error("simplex {0} is not in the complex")]
    NotInComplex(Simplex),
    #[error("{face} is not a facet of {coface}")]
    NotAFacet { face: Simplex, coface: Simplex },
    #[error("simplex {0} appears in more than one pair")]
    DoublyMatched(Simplex),
    #[error("gradient path closes into a cycle: {}", format_cycle(.0))]
    Cycle(Vec<Simplex>),
}

fn format_cycle(c: &[Simplex]) -> String {
    let mut parts: Vec<String> = c.iter().map(ToString::to_string).collect();
    if let Some(first) = c.first() {
        parts.push(first.to_string());
    }
    parts.join(" -> ")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorseError {
    #[error(transparent)]
    Invalid(#[from] GradientError),
    #[error("complex is not connected")]
    Disconnected,
    #[error("vertex {0} is not in the complex")]
    MissingVertex(VertexId),
    #[error("simplex {0} is not in the complex")]
    MissingSimplex(Simplex),
    #[error("operation needs dimension at most 2, complex has dimension {0}")]
    DimensionTooLarge(isize),
    #[error("{0} is not an edge")]
    NotAnEdge(Simplex),
    #[error("the 1-skeleton minus the edges matched upward is disconnected")]
    SkeletonDisconnected,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradientPair {
    pub face: Simplex,
    pub coface: Simplex,
}

impl GradientPair {
    pub fn new(face: Simplex, coface: Simplex) -> Self {
        GradientPair { face, coface }
    }
}

/// An acyclic matching, stored as `face -> coface`.
///
/// Only [`validate`] and the constructions in this crate produce values of this
/// type, so a `DiscreteGradient` in hand is valid on the complex it was built for.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiscreteGradient {
    up: BTreeMap<Simplex, Simplex>,
    down: BTreeMap<Simplex, Simplex>,
}

impl DiscreteGradient {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = GradientPair> + '_ {
        self.up
            .iter()
            .map(|(f, c)| GradientPair::new(f.clone(), c.clone()))
    }

    pub fn coface_of(&self, face: &Simplex) -> Option<&Simplex> {
        self.up.get(face)
    }

    pub fn face_of(&self, coface: &Simplex) -> Option<&Simplex> {
        self.down.get(coface)
    }

    pub fn contains_pair(&self, face: &Simplex, coface: &Simplex) -> bool {
        self.up.get(face) == Some(coface)
    }

    pub fn is_matched(&self, s: &Simplex) -> bool {
        self.up.contains_key(s) || self.down.contains_key(s)
    }

    /// Unmatched simplices of `k`, in `(dim, vertices)` order.
    pub fn critical(&self, k: &SimplicialComplex) -> Vec<Simplex> {
        k.simplices()
            .iter()
            .filter(|s| !self.is_matched(s))
            .cloned()
            .collect()
    }

    /// Pairs satisfying `keep`. Any subset of a Morse matching is one.
    pub fn retain(&self, mut keep: impl FnMut(&Simplex, &Simplex) -> bool) -> DiscreteGradient {
        let mut out = DiscreteGradient::empty();
        for (f, c) in &self.up {
            if keep(f, c) {
                out.insert_unchecked(f.clone(), c.clone());
            }
        }
        out
    }

    pub(crate) fn insert_unchecked(&mut self, face: Simplex, coface: Simplex) {
        self.down.insert(coface.clone(), face.clone());
        self.up.insert(face, coface);
    }

    /// Partner index per simplex of `k`.
    pub(crate) fn to_mates(&self, k: &SimplicialComplex) -> Result<Vec<Option<usize>>, GradientError> {
        let mut mates = vec![None; k.len()];
        for (f, c) in &self.up {
            let fi = k
                .index_of(f)
                .ok_or_else(|| GradientError::NotInComplex(f.clone()))?;
            let ci = k
                .index_of(c)
                .ok_or_else(|| GradientError::NotInComplex(c.clone()))?;
            mates[fi] = Some(ci);
            mates[ci] = Some(fi);
        }
        Ok(mates)
    }

    pub(crate) fn from_mates(k: &SimplicialComplex, mates: &[Option<usize>]) -> Self {
        let mut out = DiscreteGradient::empty();
        for (i, m) in mates.iter().enumerate() {
            if let Some(j) = *m {
                if k.simplex(i).dim() < k.simplex(j).dim() {
                    out.insert_unchecked(k.simplex(i).clone(), k.simplex(j).clone());
                }
            }
        }
        out
    }

    pub(crate) fn from_index_pairs(k: &SimplicialComplex, pairs: &[(usize, usize)]) -> Self {
        let mut out = DiscreteGradient::empty();
        for &(f, c) in pairs {
            out.insert_unchecked(k.simplex(f).clone(), k.simplex(c).clone());
        }
        out
    }

    /// Re-checks this gradient against `k`.
    pub fn validate_on(&self, k: &SimplicialComplex) -> Result<(), GradientError> {
        let pairs: Vec<GradientPair> = self.pairs().collect();
        validate(k, &pairs).map(|_| ())
    }
}

/// Accepts `pairs` iff they form a matching of covering pairs of `k` whose
/// modified Hasse diagram is acyclic.
pub fn validate(k: &SimplicialComplex, pairs: &[GradientPair]) -> Result<DiscreteGradient, GradientError> {
    let mut mates = vec![None; k.len()];
    for p in pairs {
        let fi = k
            .index_of(&p.face)
            .ok_or_else(|| GradientError::NotInComplex(p.face.clone()))?;
        let ci = k
            .index_of(&p.coface)
            .ok_or_else(|| GradientError::NotInComplex(p.coface.clone()))?;
        if !p.face.is_facet_of(&p.coface) {
            return Err(GradientError::NotAFacet {
                face: p.face.clone(),
                coface: p.coface.clone(),
            });
        }
        for (x, s) in [(fi, &p.face), (ci, &p.coface)] {
            if mates[x].is_some() {
                return Err(GradientError::DoublyMatched(s.clone()));
            }
        }
        mates[fi] = Some(ci);
        mates[ci] = Some(fi);
    }
    let h = k.hasse();
    if let Some(cycle) = find_cycle(&h, &mates) {
        return Err(GradientError::Cycle(
            cycle.into_iter().map(|i| k.simplex(i).clone()).collect(),
        ));
    }
    Ok(DiscreteGradient::from_mates(k, &mates))
}

/// Looks for a closed gradient path. Paths stay inside one `(d, d+1)` layer, so
/// the search runs over faces matched upward and follows
/// `σ -> mate(σ) -> σ'` with `σ'` another facet of `mate(σ)` that is matched upward.
/// The returned cycle alternates face, coface and starts at its least face.
pub(crate) fn find_cycle(h: &HasseDiagram, mates: &[Option<usize>]) -> Option<Vec<usize>> {
    let n = mates.len();
    let up = |i: usize| mates[i].filter(|&j| h.dim(j) > h.dim(i));
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut parent = vec![usize::MAX; n];
    for start in 0..n {
        if state[start] != 0 || up(start).is_none() {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        state[start] = 1;
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            let coface = up(node).expect("only upward-matched nodes are pushed");
            let facets = h.facets(coface);
            if *next < facets.len() {
                let succ = facets[*next];
                *next += 1;
                if succ == node || up(succ).is_none() {
                    continue;
                }
                match state[succ] {
                    0 => {
                        state[succ] = 1;
                        parent[succ] = node;
                        stack.push((succ, 0));
                    }
                    1 => {
                        let mut faces = vec![node];
                        let mut cur = node;
                        while cur != succ {
                            cur = parent[cur];
                            faces.push(cur);
                        }
                        faces.reverse();
                        let least = faces
                            .iter()
                            .enumerate()
                            .min_by_key(|&(_, &f)| f)
                            .map(|(i, _)| i)
                            .unwrap();
                        faces.rotate_left(least);
                        return Some(
                            faces
                                .into_iter()
                                .flat_map(|f| [f, up(f).unwrap()])
                                .collect(),
                        );
                    }
                    _ => {}
                }
            } else {
                state[node] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// Critical simplex counts per dimension.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CriticalProfile {
    pub per_dim: Vec<usize>,
}

impl CriticalProfile {
    pub fn total(&self) -> usize {
        self.per_dim.iter().sum()
    }

    pub fn m(&self, d: usize) -> usize {
        self.per_dim.get(d).copied().unwrap_or(0)
    }

    /// `Σ (−1)^d m_d`.
    pub fn alternating_sum(&self) -> i64 {
        self.per_dim
            .iter()
            .enumerate()
            .map(|(d, &m)| if d % 2 == 0 { m as i64 } else { -(m as i64) })
            .sum()
    }
}

pub fn critical_profile(k: &SimplicialComplex, v: &DiscreteGradient) -> CriticalProfile {
    let mut per_dim = vec![0; (k.dim() + 1).max(0) as usize];
    for s in k.simplices() {
        if !v.is_matched(s) {
            per_dim[s.dim()] += 1;
        }
    }
    CriticalProfile { per_dim }
}

/// Integer values on simplices; equal exactly on gradient pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseFunction {
    values: BTreeMap<Simplex, i64>,
}

impl MorseFunction {
    pub fn value(&self, s: &Simplex) -> Option<i64> {
        self.values.get(s).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, i64)> {
        self.values.iter().map(|(s, &v)| (s, v))
    }

    /// Monotone on faces, and every level set is a single simplex or a facet pair.
    pub fn is_discrete_morse(&self, k: &SimplicialComplex) -> bool {
        let h = k.hasse();
        let val = |i: usize| self.values[k.simplex(i)];
        let monotone = h.arcs().all(|(c, f)| val(f) <= val(c));
        let mut levels: BTreeMap<i64, Vec<&Simplex>> = BTreeMap::new();
        for (s, &v) in &self.values {
            levels.entry(v).or_default().push(s);
        }
        let levels_ok = levels.values().all(|ss| match ss.as_slice() {
            [_] => true,
            [a, b] => a.is_facet_of(b) || b.is_facet_of(a),
            _ => false,
        });
        monotone && levels_ok && self.values.len() == k.len()
    }
}

/// Values are ranks in a deterministic topological order of the gradient's
/// modified Hasse diagram with each pair contracted to one node.
pub fn morse_function(k: &SimplicialComplex, v: &DiscreteGradient) -> Result<MorseFunction, GradientError> {
    let mates = v.to_mates(k)?;
    let h = k.hasse();
    let n = k.len();
    // representative = lower simplex of the pair
    let rep = |i: usize| match mates[i] {
        Some(j) if j < i => j,
        _ => i,
    };
    let mut indegree = vec![0usize; n];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (c, f) in h.arcs() {
        if mates[f] == Some(c) {
            continue;
        }
        let (a, b) = (rep(f), rep(c));
        succ[a].push(b);
        indegree[b] += 1;
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (0..n)
        .filter(|&i| rep(i) == i && indegree[i] == 0)
        .map(Reverse)
        .collect();
    let mut rank = vec![i64::MIN; n];
    let mut next = 0i64;
    while let Some(Reverse(i)) = heap.pop() {
        rank[i] = next;
        next += 1;
        for &j in &succ[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                heap.push(Reverse(j));
            }
        }
    }
    if let Some(i) = (0..n).find(|&i| rep(i) == i && rank[i] == i64::MIN) {
        // contracted graph has a cycle; recover it for the report
        let cycle = find_cycle(&h, &mates).unwrap_or_else(|| vec![i]);
        return Err(GradientError::Cycle(
            cycle.into_iter().map(|x| k.simplex(x).clone()).collect(),
        ));
    }
    Ok(MorseFunction {
        values: (0..n).map(|i| (k.simplex(i).clone(), rank[rep(i)])).collect(),
    })
}

/// Pairs every vertex except the roots with the DFS tree edge that discovered it.
/// `usable[e]` marks edges (by simplex index) the tree may use. Components are
/// rooted at `root` if it lies in them, else at their least vertex.
pub(crate) fn spanning_forest_pairs(
    k: &SimplicialComplex,
    h: &HasseDiagram,
    usable: &[bool],
    root: Option<usize>,
) -> Vec<(usize, usize)> {
    let verts = k.dim_range(0);
    let mut seen = vec![false; verts.len()];
    let mut pairs = Vec::new();
    let starts = root.into_iter().chain(verts.clone());
    for start in starts {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![(start, 0usize)];
        while let Some(&mut (x, ref mut next)) = stack.last_mut() {
            let edges = h.cofaces(x);
            if *next >= edges.len() {
                stack.pop();
                continue;
            }
            let e = edges[*next];
            *next += 1;
            if !usable[e] {
                continue;
            }
            let y = h.facets(e).iter().copied().find(|&y| y != x).unwrap();
            if !seen[y] {
                seen[y] = true;
                pairs.push((y, e));
                stack.push((y, 0));
            }
        }
    }
    pairs
}

/// Rebuilds the vertex-edge part of `v` so that `p` is the only critical vertex.
///
/// Pairs of `v` whose face has dimension at least one are kept; the vertex-edge
/// pairs are replaced by a DFS spanning tree (rooted at `p`) of the 1-skeleton
/// minus the edges matched with triangles. The critical count drops by `2(m₀ − 1)`.
pub fn unique_critical_vertex(
    k: &SimplicialComplex,
    v: &DiscreteGradient,
    p: &VertexId,
) -> Result<DiscreteGradient, MorseError> {
    let root = k
        .index_of(&Simplex::vertex(p.clone()))
        .ok_or_else(|| MorseError::MissingVertex(p.clone()))?;
    if !k.is_connected() {
        return Err(MorseError::Disconnected);
    }
    let mates = v.to_mates(k)?;
    let h = k.hasse();
    let kept: Vec<(usize, usize)> = (0..k.len())
        .filter_map(|i| mates[i].filter(|&j| j > i && h.dim(i) >= 1).map(|j| (i, j)))
        .collect();
    let usable: Vec<bool> = (0..k.len())
        .map(|i| h.dim(i) == 1 && !matches!(mates[i], Some(j) if h.dim(j) == 2))
        .collect();
    let tree = spanning_forest_pairs(k, &h, &usable, Some(root));
    if tree.len() + 1 != k.of_dim(0).len() {
        return Err(MorseError::SkeletonDisconnected);
    }
    let mut out = DiscreteGradient::from_index_pairs(k, &kept);
    for (x, e) in tree {
        out.insert_unchecked(k.simplex(x).clone(), k.simplex(e).clone());
    }
    Ok(out)
}
