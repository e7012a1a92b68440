//! Special cases: the Hamiltonian-skeleton embedder, the edge-count lower
//! bound and instance generators.

pub mod generators;
pub mod hamiltonian;

use crate::error::{Error, Result};

/// Lower bound on the book thickness of a graph with `n` vertices and `m`
/// edges, `ceil((m - n) / (n - 3))`.
pub fn lower_bound(n: usize, m: usize) -> Result<usize> {
    if n <= 3 {
        return Err(Error::DegenerateN(n));
    }
    if m <= n {
        return Ok(usize::from(m > 0));
    }
    Ok((m - n).div_ceil(n - 3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_bound_values() {
        assert_eq!(lower_bound(8, 24).unwrap(), 4);
        assert_eq!(lower_bound(12, 30).unwrap(), 2);
        for k in 3..50 {
            assert_eq!(lower_bound(2 * k + 2, 8 * k).unwrap(), 4);
        }
        assert_eq!(lower_bound(3, 3), Err(Error::DegenerateN(3)));
    }
}
