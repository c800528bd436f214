//! Abstract simplicial complexes over string-labelled vertices.
//!
//! Simplices are stored in canonical form (strictly sorted vertex lists) and a
//! [`SimplicialComplex`] keeps its simplices ordered by `(dimension, vertices)`,
//! so that the index of a simplex doubles as a stable, layered node id for the
//! Hasse diagram and for every index-based algorithm in this crate.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::hasse::HasseDiagram;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex token must be nonempty and free of whitespace, got {0:?}")]
    InvalidToken(String),
    #[error("empty face")]
    EmptyFace,
    #[error("duplicate vertex {0} in face")]
    DuplicateVertex(VertexId),
    #[error("vertex {0} has no label")]
    UnlabelledVertex(VertexId),
    #[error("basepoint {0} is not a vertex of the complex")]
    MissingBasepoint(VertexId),
    #[error("wedge sum of an empty list")]
    EmptyWedge,
    #[error("simplex {0} is not in the complex")]
    MissingSimplex(Simplex),
    #[error("simplex {0} is not maximal and cannot be removed on its own")]
    NotMaximal(Simplex),
    #[error("malformed simplex literal {0:?}")]
    MalformedSimplex(String),
}

/// A vertex label: a nonempty token without whitespace, commas or braces.
/// Cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(Arc<str>);

impl VertexId {
    pub fn new(token: impl AsRef<str>) -> Result<Self, ComplexError> {
        let token = token.as_ref();
        if token.is_empty() || token.chars().any(|c| c.is_whitespace() || matches!(c, ',' | '{' | '}')) {
            return Err(ComplexError::InvalidToken(token.to_string()));
        }
        Ok(VertexId(Arc::from(token)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `prefix/token`, used to keep copies of a complex apart.
    pub fn namespaced(&self, prefix: &str) -> VertexId {
        VertexId(Arc::from(format!("{prefix}/{}", self.0)))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl FromStr for VertexId {
    type Err = ComplexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        VertexId::new(s)
    }
}

/// A simplex in canonical form: a nonempty, strictly increasing vertex list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Builds the simplex spanned by `vertices`. Rejects empty input and repeats.
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self, ComplexError> {
        let mut vs: Vec<VertexId> = vertices.into_iter().collect();
        if vs.is_empty() {
            return Err(ComplexError::EmptyFace);
        }
        vs.sort();
        if let Some(w) = vs.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateVertex(w[0].clone()));
        }
        Ok(Simplex(vs))
    }

    pub fn from_tokens<T: AsRef<str>>(tokens: impl IntoIterator<Item = T>) -> Result<Self, ComplexError> {
        let vs = tokens
            .into_iter()
            .map(VertexId::new)
            .collect::<Result<Vec<_>, _>>()?;
        Simplex::new(vs)
    }

    /// Like [`Simplex::new`] but collapses repeated vertices instead of failing.
    /// This is the image of a simplex under a vertex map.
    pub fn spanned_by(vertices: impl IntoIterator<Item = VertexId>) -> Option<Self> {
        let set: BTreeSet<VertexId> = vertices.into_iter().collect();
        if set.is_empty() {
            None
        } else {
            Some(Simplex(set.into_iter().collect()))
        }
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(vec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.0.binary_search(v).is_ok()
    }

    /// True if `self` is a (not necessarily proper) face of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(v))
    }

    pub fn is_facet_of(&self, other: &Simplex) -> bool {
        self.0.len() + 1 == other.0.len() && self.is_face_of(other)
    }

    /// Codimension-one faces, in lexicographic order of the omitted vertex reversed.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, v)| v.clone())
                    .collect(),
            )
        })
    }

    /// All nonempty faces, including `self`.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        assert!(n < 32, "simplex dimension too large to enumerate faces");
        (1u32..(1 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i].clone())
                        .collect(),
                )
            })
            .collect()
    }

    /// Image under a vertex map, deduplicated.
    pub fn map(&self, f: impl Fn(&VertexId) -> VertexId) -> Simplex {
        Simplex::spanned_by(self.0.iter().map(f)).expect("image of a nonempty simplex")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(v.as_str())?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Simplex {
    type Err = ComplexError;

    /// Parses `{a,b,c}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| ComplexError::MalformedSimplex(s.to_string()))?;
        if inner.trim().is_empty() {
            return Err(ComplexError::EmptyFace);
        }
        Simplex::from_tokens(inner.split(',').map(str::trim))
    }
}

/// A finite abstract simplicial complex.
#[derive(Clone)]
pub struct SimplicialComplex {
    /// Sorted by `(dim, vertices)`.
    simplices: Vec<Simplex>,
    /// `dim_start[d]..dim_start[d + 1]` is the index range of the `d`-simplices.
    dim_start: Vec<usize>,
    index: HashMap<Simplex, usize>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("f_vector", &self.f_vector())
            .field("maximal", &self.maximal_simplices())
            .finish()
    }
}

impl Default for SimplicialComplex {
    fn default() -> Self {
        Self::empty()
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex {
            simplices: Vec::new(),
            dim_start: vec![0],
            index: HashMap::new(),
        }
    }

    /// Downward closure of the listed faces.
    pub fn from_maximal<I, F, T>(faces: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = T>,
        T: AsRef<str>,
    {
        let faces = faces
            .into_iter()
            .map(Simplex::from_tokens)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_simplices(faces))
    }

    /// Downward closure of an arbitrary family of simplices.
    pub fn from_simplices(generators: impl IntoIterator<Item = Simplex>) -> Self {
        let mut all = BTreeSet::new();
        for s in generators {
            if all.contains(&s) {
                continue;
            }
            all.extend(s.faces());
        }
        Self::from_closed_set(all)
    }

    /// Caller guarantees `set` is downward closed.
    pub(crate) fn from_closed_set(set: impl IntoIterator<Item = Simplex>) -> Self {
        let mut simplices: Vec<Simplex> = set.into_iter().collect();
        simplices.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        simplices.dedup();
        let top = simplices.last().map_or(0, |s| s.dim() + 1);
        let mut dim_start = vec![0; top + 1];
        for s in &simplices {
            dim_start[s.dim() + 1] += 1;
        }
        for d in 1..dim_start.len() {
            dim_start[d] += dim_start[d - 1];
        }
        let index = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        SimplicialComplex {
            simplices,
            dim_start,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Maximal simplex dimension, `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.dim_start.len() as isize - 2
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.dim_start.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Simplices in `(dim, vertices)` order.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplex(&self, index: usize) -> &Simplex {
        &self.simplices[index]
    }

    pub fn of_dim(&self, d: usize) -> &[Simplex] {
        if d + 1 >= self.dim_start.len() {
            return &[];
        }
        &self.simplices[self.dim_start[d]..self.dim_start[d + 1]]
    }

    pub(crate) fn dim_range(&self, d: usize) -> std::ops::Range<usize> {
        if d + 1 >= self.dim_start.len() {
            let end = self.simplices.len();
            return end..end;
        }
        self.dim_start[d]..self.dim_start[d + 1]
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.of_dim(0).iter().map(|s| &s.vertices()[0])
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.index.contains_key(&Simplex::vertex(v.clone()))
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn hasse(&self) -> HasseDiagram {
        HasseDiagram::new(self)
    }

    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let h = self.hasse();
        let mut out: Vec<Simplex> = (0..self.len())
            .filter(|&i| h.cofaces(i).is_empty())
            .map(|i| self.simplices[i].clone())
            .collect();
        out.sort();
        out
    }

    pub fn skeleton(&self, d: usize) -> SimplicialComplex {
        Self::from_closed_set(self.simplices.iter().filter(|s| s.dim() <= d).cloned())
    }

    /// Removes maximal simplices; anything non-maximal is rejected.
    pub fn without_maximal<'a>(
        &self,
        removed: impl IntoIterator<Item = &'a Simplex>,
    ) -> Result<SimplicialComplex, ComplexError> {
        let h = self.hasse();
        let mut drop = vec![false; self.len()];
        for s in removed {
            let i = self
                .index_of(s)
                .ok_or_else(|| ComplexError::MissingSimplex(s.clone()))?;
            drop[i] = true;
        }
        for i in 0..self.len() {
            if drop[i] && h.cofaces(i).iter().any(|&c| !drop[c]) {
                return Err(ComplexError::NotMaximal(self.simplices[i].clone()));
            }
        }
        Ok(Self::from_closed_set(
            self.simplices
                .iter()
                .enumerate()
                .filter(|&(i, _)| !drop[i])
                .map(|(_, s)| s.clone()),
        ))
    }

    /// Subcomplex spanned by the simplices whose index is flagged `alive`.
    /// The flags must describe a downward-closed set.
    pub(crate) fn from_alive(&self, alive: &[bool]) -> SimplicialComplex {
        Self::from_closed_set(
            self.simplices
                .iter()
                .zip(alive)
                .filter(|(_, &a)| a)
                .map(|(s, _)| s.clone()),
        )
    }

    /// Vertex sets of the connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n0 = self.of_dim(0).len();
        let mut uf = UnionFind::<usize>::new(n0);
        for e in self.of_dim(1) {
            let a = self.index[&Simplex::vertex(e.vertices()[0].clone())];
            let b = self.index[&Simplex::vertex(e.vertices()[1].clone())];
            uf.union(a, b);
        }
        let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for i in 0..n0 {
            groups
                .entry(uf.find(i))
                .or_default()
                .push(self.simplices[i].vertices()[0].clone());
        }
        let mut out: Vec<Vec<VertexId>> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}

/// A total vertex map `vertex -> label`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Labelling(BTreeMap<VertexId, VertexId>);

impl Labelling {
    pub fn identity(k: &SimplicialComplex) -> Self {
        Labelling(k.vertices().map(|v| (v.clone(), v.clone())).collect())
    }

    pub fn from_fn(k: &SimplicialComplex, f: impl Fn(&VertexId) -> VertexId) -> Self {
        Labelling(k.vertices().map(|v| (v.clone(), f(v))).collect())
    }

    pub fn insert(&mut self, vertex: VertexId, label: VertexId) {
        self.0.insert(vertex, label);
    }

    pub fn get(&self, v: &VertexId) -> Option<&VertexId> {
        self.0.get(v)
    }

    /// `other ∘ self`; vertices whose label `other` does not know keep the label.
    pub fn then(&self, other: &Labelling) -> Labelling {
        Labelling(
            self.0
                .iter()
                .map(|(v, l)| (v.clone(), other.get(l).cloned().unwrap_or_else(|| l.clone())))
                .collect(),
        )
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &VertexId)> {
        self.0.iter()
    }
}

impl FromIterator<(VertexId, VertexId)> for Labelling {
    fn from_iter<I: IntoIterator<Item = (VertexId, VertexId)>>(iter: I) -> Self {
        Labelling(iter.into_iter().collect())
    }
}

/// The complex `{ f(σ) | σ ∈ K }` obtained by pasting along a vertex labelling.
pub fn quotient(k: &SimplicialComplex, f: &Labelling) -> Result<SimplicialComplex, ComplexError> {
    for v in k.vertices() {
        if f.get(v).is_none() {
            return Err(ComplexError::UnlabelledVertex(v.clone()));
        }
    }
    // images of a downward-closed family are downward closed
    Ok(SimplicialComplex::from_closed_set(
        k.simplices()
            .iter()
            .map(|s| s.map(|v| f.get(v).expect("checked").clone()))
            .collect::<BTreeSet<_>>(),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedComplex {
    complex: SimplicialComplex,
    basepoint: VertexId,
}

impl PointedComplex {
    pub fn new(complex: SimplicialComplex, basepoint: VertexId) -> Result<Self, ComplexError> {
        if !complex.contains_vertex(&basepoint) {
            return Err(ComplexError::MissingBasepoint(basepoint));
        }
        Ok(PointedComplex { complex, basepoint })
    }

    /// Pointed at the lexicographically smallest vertex.
    pub fn at_least_vertex(complex: SimplicialComplex) -> Option<Self> {
        let basepoint = complex.vertices().next()?.clone();
        Some(PointedComplex { complex, basepoint })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn basepoint(&self) -> &VertexId {
        &self.basepoint
    }

    pub fn into_complex(self) -> SimplicialComplex {
        self.complex
    }
}

/// Wedge sum: copy `i` is renamed into namespace `i/`, then all basepoints are
/// identified. The merged basepoint keeps the least name of its class.
pub fn wedge_sum(parts: &[PointedComplex]) -> Result<PointedComplex, ComplexError> {
    match parts {
        [] => Err(ComplexError::EmptyWedge),
        [single] => Ok(single.clone()),
        _ => {
            let merged = parts[0].basepoint.namespaced("0");
            let mut simplices = BTreeSet::new();
            for (i, part) in parts.iter().enumerate() {
                let prefix = i.to_string();
                let rename = |v: &VertexId| {
                    if *v == part.basepoint {
                        merged.clone()
                    } else {
                        v.namespaced(&prefix)
                    }
                };
                simplices.extend(part.complex.simplices().iter().map(|s| s.map(rename)));
            }
            Ok(PointedComplex {
                complex: SimplicialComplex::from_closed_set(simplices),
                basepoint: merged,
            })
        }
    }
}

/// Free faces paired with the coface an elementary collapse would remove.
pub fn free_faces(k: &SimplicialComplex) -> BTreeMap<Simplex, Simplex> {
    let h = k.hasse();
    (0..k.len())
        .filter_map(|i| match h.cofaces(i) {
            [c] if h.cofaces(*c).is_empty() => Some((k.simplex(i).clone(), k.simplex(*c).clone())),
            _ => None,
        })
        .collect()
}

/// Maximal simplices none of whose facets is free.
pub fn internal_faces(k: &SimplicialComplex) -> Vec<Simplex> {
    let h = k.hasse();
    let mut out: Vec<Simplex> = (0..k.len())
        .filter(|&i| h.cofaces(i).is_empty())
        .filter(|&i| h.facets(i).iter().all(|&f| h.cofaces(f).len() != 1))
        .map(|i| k.simplex(i).clone())
        .collect();
    out.sort();
    out
}
