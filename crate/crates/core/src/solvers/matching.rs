use std::collections::BTreeSet;

use rand::Rng;

use super::{er_exact, Budget, SolverConfig, SolverError};
use crate::collapse::{lex_ranks, LiveComplex};
use crate::complex::SimplicialComplex;
use crate::hasse::HasseDiagram;
use crate::homology::betti_gf2;
use crate::morse::{spanning_forest_pairs, DiscreteGradient};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalMatching {
    pub gradient: DiscreteGradient,
    /// Number of critical simplices of `gradient`.
    pub critical: usize,
    /// The erasability number, when the 2-dimensional route was used.
    pub erasability: Option<usize>,
}

pub fn optimal_matching(k: &SimplicialComplex) -> Result<OptimalMatching, SolverError> {
    optimal_matching_with(k, &SolverConfig::default())
}

/// A gradient with the fewest critical simplices. Complexes of dimension at most
/// 2 go through the exact erasability number; anything else through
/// [`branch_and_bound_matching`].
pub fn optimal_matching_with(k: &SimplicialComplex, config: &SolverConfig) -> Result<OptimalMatching, SolverError> {
    if k.dim() > 2 {
        return branch_and_bound_matching(k, config);
    }
    let (er, cert) = er_exact(k, config)?;
    let h = k.hasse();
    let mut gradient = cert.trace.to_gradient();
    let usable: Vec<bool> = (0..k.len())
        .map(|i| h.dim(i) == 1 && !gradient.is_matched(k.simplex(i)))
        .collect();
    for (x, e) in spanning_forest_pairs(k, &h, &usable, None) {
        gradient.insert_unchecked(k.simplex(x).clone(), k.simplex(e).clone());
    }
    let critical = k.len() - 2 * gradient.len();
    Ok(OptimalMatching {
        gradient,
        critical,
        erasability: Some(er),
    })
}

/// Collapse heuristic: take free pairs while there are any, otherwise declare a
/// top-dimensional simplex critical and remove it. `pick(n)` chooses among `n`
/// options listed in lexicographic order; `stall(n)` chooses which of `n`
/// top-dimensional simplices to remove, and `eager()` may force a removal even
/// when free pairs exist.
fn collapse_heuristic(
    k: &SimplicialComplex,
    h: &HasseDiagram,
    rank: &[usize],
    mut pick: impl FnMut(usize) -> usize,
    mut stall: impl FnMut(usize) -> usize,
    mut eager: impl FnMut() -> bool,
) -> Vec<Option<usize>> {
    let mut live = LiveComplex::new(h);
    let mut mates = vec![None; k.len()];
    let mut free: BTreeSet<(usize, usize)> = (0..k.len())
        .filter(|&i| live.free_coface(i).is_some())
        .map(|i| (rank[i], i))
        .collect();
    let mut remaining = k.len();
    let mut top = k.len();
    while remaining > 0 {
        free.retain(|&(_, i)| live.free_coface(i).is_some());
        let touched: Vec<usize> = if !free.is_empty() && !eager() {
            let key = *free.iter().nth(pick(free.len())).unwrap();
            free.remove(&key);
            let face = key.1;
            let coface = live.free_coface(face).unwrap();
            live.collapse(face, coface);
            mates[face] = Some(coface);
            mates[coface] = Some(face);
            remaining -= 2;
            h.facets(coface).iter().chain(h.facets(face)).copied().collect()
        } else {
            while !live.alive[top - 1] {
                top -= 1;
            }
            let d = h.dim(top - 1);
            let options: Vec<usize> = k.dim_range(d).filter(|&i| live.alive[i]).collect();
            let mut by_lex = options.clone();
            by_lex.sort_by_key(|&i| rank[i]);
            let s = by_lex[stall(by_lex.len())];
            live.remove(s);
            remaining -= 1;
            h.facets(s).to_vec()
        };
        for f in touched {
            if live.free_coface(f).is_some() {
                free.insert((rank[f], f));
            }
        }
    }
    mates
}

/// Deterministic collapse heuristic, always taking the lexicographically least choice.
pub fn greedy_gradient(k: &SimplicialComplex) -> DiscreteGradient {
    let h = k.hasse();
    DiscreteGradient::from_mates(k, &collapse_heuristic(k, &h, &lex_ranks(k), |_| 0, |_| 0, || false))
}

/// A random gradient: randomized collapse heuristic, occasionally declaring
/// critical simplices early and dropping pairs, so that far-from-optimal
/// gradients are sampled too.
pub fn random_gradient(k: &SimplicialComplex, rng: &mut impl Rng) -> DiscreteGradient {
    GradientSampler::new(k).sample(rng)
}

/// Draws many random gradients on one complex without rebuilding its Hasse diagram.
pub struct GradientSampler<'a> {
    k: &'a SimplicialComplex,
    h: HasseDiagram,
    rank: Vec<usize>,
}

impl<'a> GradientSampler<'a> {
    pub fn new(k: &'a SimplicialComplex) -> Self {
        GradientSampler {
            k,
            h: k.hasse(),
            rank: lex_ranks(k),
        }
    }

    /// Same distribution as [`random_gradient`].
    pub fn sample(&self, rng: &mut impl Rng) -> DiscreteGradient {
        let early = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..0.3) };
        let drop = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..0.5) };
        let rng = std::cell::RefCell::new(rng);
        let mates = collapse_heuristic(
            self.k,
            &self.h,
            &self.rank,
            |n| rng.borrow_mut().gen_range(0..n),
            |n| rng.borrow_mut().gen_range(0..n),
            || early > 0.0 && rng.borrow_mut().gen_bool(early),
        );
        let rng = rng.into_inner();
        DiscreteGradient::from_mates(self.k, &mates).retain(|_, _| !rng.gen_bool(drop))
    }
}

struct BranchAndBound<'a> {
    h: &'a HasseDiagram,
    order: Vec<usize>,
    mates: Vec<Option<usize>>,
    best: Vec<Option<usize>>,
    best_critical: usize,
    floor: usize,
    budget: Budget,
    stamp: Vec<u32>,
    generation: u32,
}

impl BranchAndBound<'_> {
    /// Smallest final critical count reachable with `critical` already committed.
    fn bound(&self, critical: usize) -> usize {
        let b = critical.max(self.floor);
        b + (b + self.floor) % 2
    }

    /// Whether matching `face` with `coface` closes a gradient path back to `face`.
    fn closes_cycle(&mut self, face: usize, coface: usize) -> bool {
        self.generation += 1;
        let g = self.generation;
        let mut stack = vec![coface];
        while let Some(c) = stack.pop() {
            for &f in self.h.facets(c) {
                if f == face && c != coface {
                    return true;
                }
                if f == face || self.stamp[f] == g {
                    continue;
                }
                self.stamp[f] = g;
                if let Some(up) = self.mates[f].filter(|&m| m > f) {
                    if up != c && self.stamp[up] != g {
                        self.stamp[up] = g;
                        stack.push(up);
                    }
                }
            }
        }
        false
    }

    fn go(&mut self, pos: usize, critical: usize) -> Result<(), SolverError> {
        self.budget.tick()?;
        if self.bound(critical) >= self.best_critical {
            return Ok(());
        }
        let Some(&s) = self.order.get(pos) else {
            self.best_critical = critical;
            self.best = self.mates.clone();
            return Ok(());
        };
        if self.mates[s].is_some() {
            return self.go(pos + 1, critical);
        }
        let facets = self.h.facets(s).to_vec();
        for f in facets {
            if self.mates[f].is_some() || self.closes_cycle(f, s) {
                continue;
            }
            self.mates[f] = Some(s);
            self.mates[s] = Some(f);
            self.go(pos + 1, critical)?;
            self.mates[f] = None;
            self.mates[s] = None;
            if self.best_critical == self.floor {
                return Ok(());
            }
        }
        self.go(pos + 1, critical + 1)
    }
}

/// Exact optimum by branch and bound over all complexes.
///
/// Simplices are decided from the top dimension down, lexicographically within a
/// dimension: each is matched with a free facet or declared critical. The bound
/// uses the weak Morse inequality and `m ≡ Σβ (mod 2)`; the incumbent starts at
/// [`greedy_gradient`]. When the budget runs out the error carries the incumbent.
pub fn branch_and_bound_matching(k: &SimplicialComplex, config: &SolverConfig) -> Result<OptimalMatching, SolverError> {
    let h = k.hasse();
    let rank = lex_ranks(k);
    let mut order: Vec<usize> = (0..k.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(h.dim(i)), rank[i]));
    let incumbent = collapse_heuristic(k, &h, &rank, |_| 0, |_| 0, || false);
    let incumbent_critical = incumbent.iter().filter(|m| m.is_none()).count();
    let floor: usize = betti_gf2(k).iter().sum();
    let mut bb = BranchAndBound {
        h: &h,
        order,
        mates: vec![None; k.len()],
        best: incumbent,
        best_critical: incumbent_critical,
        floor,
        budget: Budget::new(config),
        stamp: vec![0; k.len()],
        generation: 0,
    };
    if incumbent_critical > floor {
        if let Err(e) = bb.go(0, 0) {
            return Err(match e {
                SolverError::BudgetExhausted { nodes, .. } => SolverError::BudgetExhausted {
                    nodes,
                    best: Some(Box::new(DiscreteGradient::from_mates(k, &bb.best))),
                },
                other => other,
            });
        }
    }
    Ok(OptimalMatching {
        gradient: DiscreteGradient::from_mates(k, &bb.best),
        critical: bb.best_critical,
        erasability: None,
    })
}
