use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use super::{Budget, SolverConfig, SolverError};
use crate::collapse::{erase, CollapseTrace};
use crate::complex::{Simplex, SimplicialComplex};
use crate::morse::MorseError;

/// A minimum set of triangles whose removal makes the complex erasable, with the
/// erasure of what remains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErCertificate {
    pub removed: Vec<Simplex>,
    pub trace: CollapseTrace,
}

/// Triangle/edge incidence of a 2-complex with local ids.
pub(crate) struct TriangleIncidence {
    /// Complex index of each triangle.
    pub triangles: Vec<usize>,
    pub edges_of: Vec<[u32; 3]>,
    pub triangles_of: Vec<Vec<u32>>,
}

impl TriangleIncidence {
    pub fn new(k: &SimplicialComplex) -> Self {
        let h = k.hasse();
        let e0 = k.dim_range(1).start;
        let triangles: Vec<usize> = k.dim_range(2).collect();
        let mut triangles_of = vec![Vec::new(); k.dim_range(1).len()];
        let edges_of = triangles
            .iter()
            .enumerate()
            .map(|(t, &i)| {
                let f = h.facets(i);
                let local = [f[0] - e0, f[1] - e0, f[2] - e0];
                for &e in &local {
                    triangles_of[e].push(t as u32);
                }
                local.map(|e| e as u32)
            })
            .collect();
        TriangleIncidence {
            triangles,
            edges_of,
            triangles_of,
        }
    }

    /// Triangles of `set` that survive maximal erasure of the complex spanned by
    /// `set` (and edges and vertices). Sorted.
    pub fn residue(&self, set: &[u32], count: &mut [u32], alive: &mut [bool]) -> Vec<u32> {
        for &t in set {
            alive[t as usize] = true;
            for &e in &self.edges_of[t as usize] {
                count[e as usize] += 1;
            }
        }
        let mut queue: Vec<u32> = set
            .iter()
            .flat_map(|&t| self.edges_of[t as usize])
            .filter(|&e| count[e as usize] == 1)
            .collect();
        while let Some(e) = queue.pop() {
            if count[e as usize] != 1 {
                continue;
            }
            let t = *self.triangles_of[e as usize]
                .iter()
                .find(|&&t| alive[t as usize])
                .expect("count tracks live triangles");
            alive[t as usize] = false;
            for &f in &self.edges_of[t as usize] {
                count[f as usize] -= 1;
                if count[f as usize] == 1 {
                    queue.push(f);
                }
            }
        }
        let out: Vec<u32> = set.iter().copied().filter(|&t| alive[t as usize]).collect();
        for &t in set {
            alive[t as usize] = false;
            for &e in &self.edges_of[t as usize] {
                count[e as usize] = 0;
            }
        }
        out
    }

    /// Splits a triangle set into classes of triangles linked through shared edges.
    pub fn components(&self, set: &[u32]) -> Vec<Vec<u32>> {
        let pos: HashMap<u32, usize> = set.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let mut uf = UnionFind::<usize>::new(set.len());
        let mut owner: HashMap<u32, usize> = HashMap::new();
        for (i, &t) in set.iter().enumerate() {
            for &e in &self.edges_of[t as usize] {
                if let Some(&j) = owner.get(&e) {
                    uf.union(i, j);
                } else {
                    owner.insert(e, i);
                }
            }
        }
        let mut groups: HashMap<usize, Vec<u32>> = HashMap::new();
        for &t in set {
            groups.entry(uf.find(pos[&t])).or_default().push(t);
        }
        let mut out: Vec<Vec<u32>> = groups.into_values().collect();
        out.sort();
        out
    }
}

#[derive(Default)]
struct Memo {
    exact: Option<Vec<u32>>,
    lower: usize,
}

struct ErSearch<'a> {
    inc: &'a TriangleIncidence,
    memo: HashMap<Vec<u32>, Memo>,
    count: Vec<u32>,
    alive: Vec<bool>,
    budget: Budget,
}

impl ErSearch<'_> {
    /// A minimum deletion set for a residue component if its size is at most
    /// `cap`. Deletions are restricted to the component: erased triangles never
    /// need deleting, and components do not interact.
    fn solve(&mut self, comp: &[u32], cap: usize) -> Result<Option<Vec<u32>>, SolverError> {
        let memo = self.memo.entry(comp.to_vec()).or_default();
        if let Some(d) = &memo.exact {
            return Ok((d.len() <= cap).then(|| d.clone()));
        }
        let lower = memo.lower.max(1);
        for k in lower..=cap {
            for &t in comp {
                self.budget.tick()?;
                let rest: Vec<u32> = comp.iter().copied().filter(|&x| x != t).collect();
                let residue = self.inc.residue(&rest, &mut self.count, &mut self.alive);
                let mut children = self.inc.components(&residue);
                if children.len() > k - 1 {
                    continue;
                }
                children.sort_by_key(Vec::len);
                let mut remaining = k - 1;
                let mut chosen = vec![t];
                let mut feasible = true;
                for (i, c) in children.iter().enumerate() {
                    let others = children.len() - i - 1;
                    match self.solve(c, remaining - others)? {
                        Some(d) => {
                            remaining -= d.len();
                            chosen.extend(d);
                        }
                        None => {
                            feasible = false;
                            break;
                        }
                    }
                }
                if feasible {
                    chosen.sort_unstable();
                    self.memo.get_mut(comp).unwrap().exact = Some(chosen.clone());
                    return Ok(Some(chosen));
                }
            }
            self.memo.get_mut(comp).unwrap().lower = k + 1;
        }
        Ok(None)
    }
}

/// Exact erasability number of a complex of dimension at most 2.
pub fn er_exact(k: &SimplicialComplex, config: &SolverConfig) -> Result<(usize, ErCertificate), SolverError> {
    if k.dim() > 2 {
        return Err(MorseError::DimensionTooLarge(k.dim()).into());
    }
    let inc = TriangleIncidence::new(k);
    let mut search = ErSearch {
        inc: &inc,
        memo: HashMap::new(),
        count: vec![0; inc.triangles_of.len()],
        alive: vec![false; inc.triangles.len()],
        budget: Budget::new(config),
    };
    let all: Vec<u32> = (0..inc.triangles.len() as u32).collect();
    let residue = inc.residue(&all, &mut search.count, &mut search.alive);
    let mut removed = Vec::new();
    for comp in inc.components(&residue) {
        let cap = comp.len();
        let d = search.solve(&comp, cap)?.expect("deleting everything always works");
        removed.extend(d);
    }
    let removed: Vec<Simplex> = removed
        .into_iter()
        .map(|t| k.simplex(inc.triangles[t as usize]).clone())
        .collect();
    let rest = k.without_maximal(&removed).expect("triangles of a 2-complex are maximal");
    let trace = erase(&rest)?;
    debug_assert!(trace.residue.of_dim(2).is_empty());
    Ok((removed.len(), ErCertificate { removed, trace }))
}
