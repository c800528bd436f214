//! Betti numbers over the two-element field.

use crate::complex::SimplicialComplex;

/// Rank of a GF(2) matrix given as bit-packed rows; destroys the input.
fn rank_gf2(rows: &mut [Vec<u64>]) -> usize {
    let mut rank = 0;
    let words = rows.first().map_or(0, Vec::len);
    for col in 0..words * 64 {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for r in rank + 1..rows.len() {
            if rows[r][w] & bit != 0 {
                for (x, y) in rows[r].iter_mut().zip(&pivot).skip(w) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `ranks[d]` is the rank of the boundary map from `d`-chains to `(d-1)`-chains.
fn boundary_ranks(k: &SimplicialComplex) -> Vec<usize> {
    let top = k.dim();
    if top < 0 {
        return Vec::new();
    }
    let h = k.hasse();
    let mut ranks = vec![0; top as usize + 1];
    for (d, rank) in ranks.iter_mut().enumerate().skip(1) {
        let lower = k.dim_range(d - 1);
        let words = lower.len().div_ceil(64);
        let mut rows: Vec<Vec<u64>> = k
            .dim_range(d)
            .map(|i| {
                let mut row = vec![0u64; words];
                for &f in h.facets(i) {
                    let c = f - lower.start;
                    row[c / 64] |= 1 << (c % 64);
                }
                row
            })
            .collect();
        *rank = rank_gf2(&mut rows);
    }
    ranks
}

/// `β_d = dim ker ∂_d − rank ∂_{d+1}` for `d = 0..=dim K`. Empty for the empty complex.
pub fn betti_gf2(k: &SimplicialComplex) -> Vec<usize> {
    let ranks = boundary_ranks(k);
    let f = k.f_vector();
    (0..f.len())
        .map(|d| f[d] - ranks[d] - ranks.get(d + 1).copied().unwrap_or(0))
        .collect()
}
