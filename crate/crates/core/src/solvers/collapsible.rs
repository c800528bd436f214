use std::collections::{BTreeSet, HashSet};

use super::{Budget, SolverConfig, SolverError};
use crate::collapse::{lex_ranks, CollapseTrace, LiveComplex};
use crate::complex::SimplicialComplex;
use crate::hasse::HasseDiagram;
use crate::morse::GradientPair;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collapsibility {
    pub collapsible: bool,
    /// A collapse sequence down to one vertex, when collapsible.
    pub trace: Option<CollapseTrace>,
}

/// Exact collapsibility test. The empty complex is reported as not collapsible.
pub fn is_collapsible_exact(k: &SimplicialComplex, config: &SolverConfig) -> Result<Collapsibility, SolverError> {
    is_collapsible_exact_with(k, config, true)
}

/// Memoized backtracking over elementary collapses.
///
/// Only collapses of the current top dimension are branched on; any collapse
/// sequence can be reordered so dimensions never increase. With
/// `low_dim_shortcut`, a residue of dimension at most 2 is decided greedily:
/// it is collapsible iff maximal erasure followed by leaf removal leaves a
/// single vertex.
pub fn is_collapsible_exact_with(
    k: &SimplicialComplex,
    config: &SolverConfig,
    low_dim_shortcut: bool,
) -> Result<Collapsibility, SolverError> {
    if k.is_empty() {
        return Ok(Collapsibility {
            collapsible: false,
            trace: None,
        });
    }
    let h = k.hasse();
    let mut search = Search {
        h: &h,
        rank: lex_ranks(k),
        live: LiveComplex::new(&h),
        remaining: k.len(),
        memo: HashSet::new(),
        budget: Budget::new(config),
        steps: Vec::new(),
        shortcut: low_dim_shortcut,
    };
    let collapsible = search.run()?;
    let trace = collapsible.then(|| CollapseTrace {
        steps: search
            .steps
            .iter()
            .map(|&(f, c)| GradientPair::new(k.simplex(f).clone(), k.simplex(c).clone()))
            .collect(),
        residue: k.from_alive(&search.live.alive),
        leftover: Vec::new(),
    });
    Ok(Collapsibility { collapsible, trace })
}

struct Search<'a> {
    h: &'a HasseDiagram,
    rank: Vec<usize>,
    live: LiveComplex<'a>,
    remaining: usize,
    memo: HashSet<Vec<u64>>,
    budget: Budget,
    steps: Vec<(usize, usize)>,
    shortcut: bool,
}

impl Search<'_> {
    fn top_dim(&self) -> usize {
        let last = (0..self.live.alive.len()).rev().find(|&i| self.live.alive[i]).unwrap();
        self.h.dim(last)
    }

    fn collapse(&mut self, f: usize, c: usize) {
        self.live.collapse(f, c);
        self.steps.push((f, c));
        self.remaining -= 2;
    }

    fn undo(&mut self) {
        let (f, c) = self.steps.pop().unwrap();
        self.live.uncollapse(f, c);
        self.remaining += 2;
    }

    fn free_faces_below(&self, d: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.live.alive.len())
            .filter(|&i| self.h.dim(i) + 1 == d && self.live.free_coface(i).is_some())
            .collect();
        out.sort_by_key(|&i| self.rank[i]);
        out
    }

    /// Greedy collapses with cofaces of dimension 2, then 1. Rolls back on failure.
    fn greedy_low(&mut self) -> bool {
        let mark = self.steps.len();
        for d in [2, 1] {
            let mut ready: BTreeSet<(usize, usize)> =
                self.free_faces_below(d).into_iter().map(|i| (self.rank[i], i)).collect();
            while let Some((_, f)) = ready.pop_first() {
                let Some(c) = self.live.free_coface(f) else { continue };
                self.collapse(f, c);
                for &g in self.h.facets(c) {
                    if self.live.free_coface(g).is_some() {
                        ready.insert((self.rank[g], g));
                    }
                }
            }
        }
        if self.remaining == 1 {
            return true;
        }
        while self.steps.len() > mark {
            self.undo();
        }
        false
    }

    fn key(&self) -> Vec<u64> {
        let mut bits = vec![0u64; self.live.alive.len().div_ceil(64)];
        for (i, &a) in self.live.alive.iter().enumerate() {
            if a {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        bits
    }

    fn run(&mut self) -> Result<bool, SolverError> {
        self.budget.tick()?;
        if self.remaining == 1 {
            return Ok(true);
        }
        let d = self.top_dim();
        if d == 0 {
            return Ok(false);
        }
        if self.shortcut && d <= 2 {
            return Ok(self.greedy_low());
        }
        let key = self.key();
        if self.memo.contains(&key) {
            return Ok(false);
        }
        for f in self.free_faces_below(d) {
            let c = self.live.free_coface(f).unwrap();
            self.collapse(f, c);
            if self.run()? {
                return Ok(true);
            }
            self.undo();
        }
        self.memo.insert(key);
        Ok(false)
    }
}
