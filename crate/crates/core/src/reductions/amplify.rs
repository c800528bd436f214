use thiserror::Error;

use crate::complex::{wedge_sum, PointedComplex};

/// Largest amplified complex we are willing to build.
pub const MAX_AMPLIFIED_SIMPLICES: u128 = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AmplifyError {
    #[error("exponent c must be at least 1")]
    BadExponent,
    #[error("complex must be connected and nonempty")]
    Disconnected,
    #[error("amplified complex would have {0} simplices, limit is {MAX_AMPLIFIED_SIMPLICES}")]
    TooLarge(u128),
}

/// Number of simplices of the amplification: `(n − 1)·n^(c−1) + 1`.
pub fn amplified_size(n: usize, c: u32) -> Option<u128> {
    let m = (n as u128).checked_pow(c.checked_sub(1)?)?;
    (n as u128 - 1).checked_mul(m)?.checked_add(1)
}

/// Wedge of `n^(c−1)` copies of `k` at its basepoint, `n` the number of simplices.
pub fn amplify(k: &PointedComplex, c: u32) -> Result<PointedComplex, AmplifyError> {
    if c == 0 {
        return Err(AmplifyError::BadExponent);
    }
    if !k.complex().is_connected() {
        return Err(AmplifyError::Disconnected);
    }
    let n = k.complex().len();
    match amplified_size(n, c) {
        Some(size) if size <= MAX_AMPLIFIED_SIMPLICES => {}
        other => return Err(AmplifyError::TooLarge(other.unwrap_or(u128::MAX))),
    }
    let m = n.pow(c - 1);
    let copies = vec![k.clone(); m];
    Ok(wedge_sum(&copies).expect("at least one copy"))
}
