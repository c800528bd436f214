//! Elementary collapses: replaying a gradient, and greedy erasure of 2-complexes.

use std::collections::{BTreeSet, HashSet};

use rand::Rng;

use crate::complex::{Simplex, SimplicialComplex};
use crate::hasse::HasseDiagram;
use crate::morse::{DiscreteGradient, GradientPair, MorseError};

/// A sequence of elementary collapses and the complex left over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseTrace {
    pub steps: Vec<GradientPair>,
    pub residue: SimplicialComplex,
    /// Gradient pairs that never became collapsible. Empty unless produced by
    /// [`collapse_by_gradient`].
    pub leftover: Vec<GradientPair>,
}

impl CollapseTrace {
    /// Whether the trace certifies `K ↘ residue` using every pair it was given.
    pub fn is_complete(&self) -> bool {
        self.leftover.is_empty()
    }

    /// Replays the steps on `k`, checking freeness at every step.
    pub fn replay(&self, k: &SimplicialComplex) -> Option<SimplicialComplex> {
        let mut alive: BTreeSet<Simplex> = k.simplices().iter().cloned().collect();
        for step in &self.steps {
            let cofaces: Vec<&Simplex> = alive
                .iter()
                .filter(|s| step.face.is_face_of(s) && **s != step.face)
                .collect();
            if cofaces != [&step.coface] || !step.face.is_facet_of(&step.coface) {
                return None;
            }
            alive.remove(&step.face);
            alive.remove(&step.coface);
        }
        Some(SimplicialComplex::from_closed_set(alive))
    }

    /// The steps as a gradient. Collapse sequences are always acyclic.
    pub fn to_gradient(&self) -> DiscreteGradient {
        let mut v = DiscreteGradient::empty();
        for p in &self.steps {
            v.insert_unchecked(p.face.clone(), p.coface.clone());
        }
        v
    }
}

/// Mutable "alive" view of a complex with per-simplex counts of live cofaces.
pub(crate) struct LiveComplex<'a> {
    pub h: &'a HasseDiagram,
    pub alive: Vec<bool>,
    pub live_cofaces: Vec<usize>,
}

impl<'a> LiveComplex<'a> {
    pub fn new(h: &'a HasseDiagram) -> Self {
        let n = h.node_count();
        LiveComplex {
            h,
            alive: vec![true; n],
            live_cofaces: (0..n).map(|i| h.cofaces(i).len()).collect(),
        }
    }

    /// Removes a maximal simplex.
    pub fn remove(&mut self, i: usize) {
        debug_assert!(self.alive[i] && self.live_cofaces[i] == 0);
        self.alive[i] = false;
        for &f in self.h.facets(i) {
            self.live_cofaces[f] -= 1;
        }
    }

    /// `face` is free with unique live coface `coface`.
    pub fn is_free_pair(&self, face: usize, coface: usize) -> bool {
        self.alive[face] && self.alive[coface] && self.live_cofaces[face] == 1
    }

    /// The live coface of a free simplex.
    pub fn free_coface(&self, face: usize) -> Option<usize> {
        if !self.alive[face] || self.live_cofaces[face] != 1 {
            return None;
        }
        self.h.cofaces(face).iter().copied().find(|&c| self.alive[c])
    }

    pub fn collapse(&mut self, face: usize, coface: usize) {
        self.remove(coface);
        self.remove(face);
    }

    pub fn restore(&mut self, i: usize) {
        self.alive[i] = true;
        for &f in self.h.facets(i) {
            self.live_cofaces[f] += 1;
        }
    }

    pub fn uncollapse(&mut self, face: usize, coface: usize) {
        self.restore(face);
        self.restore(coface);
    }
}

/// Simplex indices ranked by lexicographic simplex order (not `(dim, vertices)`).
pub(crate) fn lex_ranks(k: &SimplicialComplex) -> Vec<usize> {
    let mut order: Vec<usize> = (0..k.len()).collect();
    order.sort_by(|&a, &b| k.simplex(a).cmp(k.simplex(b)));
    let mut rank = vec![0; k.len()];
    for (r, i) in order.into_iter().enumerate() {
        rank[i] = r;
    }
    rank
}

/// Collapses along pairs of `v` for as long as one is free, always taking the
/// lexicographically least available pair. Pairs that never become free are
/// reported in [`CollapseTrace::leftover`].
pub fn collapse_by_gradient(k: &SimplicialComplex, v: &DiscreteGradient) -> Result<CollapseTrace, MorseError> {
    let mates = v.to_mates(k)?;
    let h = k.hasse();
    let rank = lex_ranks(k);
    let mut live = LiveComplex::new(&h);
    let up = |i: usize| mates[i].filter(|&j| j > i);
    let mut ready: BTreeSet<(usize, usize)> = (0..k.len())
        .filter(|&i| up(i).is_some_and(|c| live.is_free_pair(i, c)))
        .map(|i| (rank[i], i))
        .collect();
    let mut steps = Vec::new();
    while let Some((_, face)) = ready.pop_first() {
        let coface = up(face).unwrap();
        if !live.is_free_pair(face, coface) {
            continue;
        }
        live.collapse(face, coface);
        steps.push(GradientPair::new(k.simplex(face).clone(), k.simplex(coface).clone()));
        for &f in h.facets(coface).iter().chain(h.facets(face)) {
            if let Some(c) = up(f) {
                if live.is_free_pair(f, c) {
                    ready.insert((rank[f], f));
                }
            }
        }
    }
    let leftover = v
        .pairs()
        .filter(|p| live.alive[k.index_of(&p.face).unwrap()])
        .collect();
    Ok(CollapseTrace {
        steps,
        residue: k.from_alive(&live.alive),
        leftover,
    })
}

fn check_dim(k: &SimplicialComplex) -> Result<(), MorseError> {
    if k.dim() > 2 {
        Err(MorseError::DimensionTooLarge(k.dim()))
    } else {
        Ok(())
    }
}

/// Greedy erasure restricted to triangles accepted by `allowed`, choosing each
/// step with `pick` among the currently free `(edge, triangle)` pairs, which are
/// offered in lexicographic order.
fn erase_with(
    k: &SimplicialComplex,
    allowed: impl Fn(usize) -> bool,
    mut pick: impl FnMut(usize) -> usize,
) -> Result<CollapseTrace, MorseError> {
    check_dim(k)?;
    let h = k.hasse();
    let rank = lex_ranks(k);
    let mut live = LiveComplex::new(&h);
    let edges = k.dim_range(1);
    let candidate = |live: &LiveComplex, e: usize| live.free_coface(e).filter(|&t| allowed(t));
    let mut free: BTreeSet<(usize, usize)> = edges
        .clone()
        .filter(|&e| candidate(&live, e).is_some())
        .map(|e| (rank[e], e))
        .collect();
    let mut steps = Vec::new();
    while !free.is_empty() {
        let chosen = pick(free.len());
        let key = *free.iter().nth(chosen).expect("pick within range");
        free.remove(&key);
        let e = key.1;
        let Some(t) = candidate(&live, e) else { continue };
        live.collapse(e, t);
        steps.push(GradientPair::new(k.simplex(e).clone(), k.simplex(t).clone()));
        for &f in h.facets(t) {
            if candidate(&live, f).is_some() {
                free.insert((rank[f], f));
            }
        }
    }
    Ok(CollapseTrace {
        steps,
        residue: k.from_alive(&live.alive),
        leftover: Vec::new(),
    })
}

/// Maximal greedy erasure with lexicographic tie-breaking.
pub fn erase(k: &SimplicialComplex) -> Result<CollapseTrace, MorseError> {
    erase_with(k, |_| true, |_| 0)
}

/// Maximal greedy erasure taking free pairs in random order.
pub fn erase_shuffled(k: &SimplicialComplex, rng: &mut impl Rng) -> Result<CollapseTrace, MorseError> {
    erase_with(k, |_| true, |n| rng.gen_range(0..n))
}

pub fn is_erasable(k: &SimplicialComplex) -> Result<bool, MorseError> {
    Ok(erase(k)?.residue.of_dim(2).is_empty())
}

/// Whether the triangles of `l` can be collapsed away inside `k` using only
/// collapses whose triangle lies in `l`.
pub fn is_erasable_subcomplex(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<bool, MorseError> {
    let mut targets = HashSet::new();
    for t in l.of_dim(2) {
        targets.insert(
            k.index_of(t)
                .ok_or_else(|| MorseError::MissingSimplex(t.clone()))?,
        );
    }
    let trace = erase_with(k, |t| targets.contains(&t), |_| 0)?;
    Ok(l.of_dim(2).iter().all(|t| !trace.residue.contains(t)))
}

/// An edge is eventually free when the maximal erasure removes it or all of
/// its triangles.
pub fn eventually_free(k: &SimplicialComplex, sigma: &Simplex) -> Result<bool, MorseError> {
    check_dim(k)?;
    if !k.contains(sigma) {
        return Err(MorseError::MissingSimplex(sigma.clone()));
    }
    if sigma.dim() != 1 {
        return Err(MorseError::NotAnEdge(sigma.clone()));
    }
    let residue = erase(k)?.residue;
    Ok(!residue.contains(sigma) || residue.of_dim(2).iter().all(|t| !sigma.is_face_of(t)))
}
