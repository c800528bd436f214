use super::{is_collapsible_exact, SolverConfig, SolverError};
use crate::complex::{PointedComplex, SimplicialComplex};
use crate::morse::{DiscreteGradient, MorseError};
use crate::reductions::amplify;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgorithmBOutcome {
    pub collapsible: bool,
    /// `n^(c−1)` with `n` the number of simplices of the input.
    pub threshold: u128,
    /// Critical count reported on the amplified complex, if the solver ran.
    pub critical: Option<usize>,
    pub amplified_size: Option<usize>,
}

/// Decides collapsibility of a connected complex from a Morse matching solver
/// run on its amplification with exponent `c`: collapsible iff the solver
/// returns fewer than `n^(c−1)` critical simplices.
///
/// When `n^(c−1) ≤ 1` (a single vertex, or `c = 1`) the threshold test cannot
/// succeed, so the complex is decided directly with [`is_collapsible_exact`].
pub fn algorithm_b(
    k: &SimplicialComplex,
    c: u32,
    solver: impl FnOnce(&SimplicialComplex) -> Result<DiscreteGradient, SolverError>,
    config: &SolverConfig,
) -> Result<AlgorithmBOutcome, SolverError> {
    if c == 0 {
        return Err(SolverError::BadExponent);
    }
    if !k.is_connected() {
        return Err(MorseError::Disconnected.into());
    }
    let threshold = (k.len() as u128).checked_pow(c - 1).unwrap_or(u128::MAX);
    if threshold <= 1 {
        return Ok(AlgorithmBOutcome {
            collapsible: is_collapsible_exact(k, config)?.collapsible,
            threshold,
            critical: None,
            amplified_size: None,
        });
    }
    let pointed = PointedComplex::at_least_vertex(k.clone()).expect("connected complexes have a vertex");
    let big = amplify(&pointed, c)?.into_complex();
    let v = solver(&big)?;
    v.validate_on(&big)?;
    let critical = big.len() - 2 * v.len();
    Ok(AlgorithmBOutcome {
        collapsible: (critical as u128) < threshold,
        threshold,
        critical: Some(critical),
        amplified_size: Some(big.len()),
    })
}
