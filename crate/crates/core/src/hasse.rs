use crate::complex::SimplicialComplex;

/// Covering relation of a complex, indexed like [`SimplicialComplex::simplices`].
///
/// Arcs point from coface to face; a Morse matching reverses the matched arcs.
#[derive(Debug, Clone)]
pub struct HasseDiagram {
    facets: Vec<Vec<usize>>,
    cofaces: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl HasseDiagram {
    pub fn new(k: &SimplicialComplex) -> Self {
        let n = k.len();
        let mut facets = vec![Vec::new(); n];
        let mut cofaces = vec![Vec::new(); n];
        for (i, s) in k.simplices().iter().enumerate() {
            for f in s.facets() {
                let j = k.index_of(&f).expect("complex is downward closed");
                facets[i].push(j);
                cofaces[j].push(i);
            }
            facets[i].sort_unstable();
        }
        // cofaces were pushed in increasing coface index already
        let dims = k.simplices().iter().map(|s| s.dim()).collect();
        HasseDiagram { facets, cofaces, dims }
    }

    pub fn node_count(&self) -> usize {
        self.facets.len()
    }

    pub fn arc_count(&self) -> usize {
        self.facets.iter().map(Vec::len).sum()
    }

    pub fn facets(&self, i: usize) -> &[usize] {
        &self.facets[i]
    }

    pub fn cofaces(&self, i: usize) -> &[usize] {
        &self.cofaces[i]
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    /// `(coface, face)` pairs.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.facets
            .iter()
            .enumerate()
            .flat_map(|(c, fs)| fs.iter().map(move |&f| (c, f)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_nine_covering_pairs() {
        let k = SimplicialComplex::from_maximal([["a", "b", "c"]]).unwrap();
        let h = k.hasse();
        assert_eq!(h.node_count(), 7);
        assert_eq!(h.arc_count(), 9);
        let abc = k.len() - 1;
        assert_eq!(h.facets(abc).len(), 3);
        assert!(h.cofaces(abc).is_empty());
    }

    #[test]
    fn single_vertex() {
        let k = SimplicialComplex::from_maximal([["a"]]).unwrap();
        let h = k.hasse();
        assert_eq!((h.node_count(), h.arc_count()), (1, 0));
    }
}
