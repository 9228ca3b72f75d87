//! Sylvester-type Hadamard matrices.
//!
//! The rows of a scaled Hadamard matrix form an orthonormal basis whose
//! every entry has magnitude `1/√m`; probing a summary with centers built
//! from such rows spreads mass evenly across coordinates, which is what the
//! third certificate family of the subspace instance needs.

use crate::HardGenError;

/// An `m × m` matrix of ±1 entries with pairwise orthogonal rows, stored
/// unscaled so the orthogonality check is exact integer arithmetic.
#[derive(Debug, Clone)]
pub struct HadamardBasis {
    m: usize,
    entries: Vec<i8>,
}

impl HadamardBasis {
    pub fn order(&self) -> usize {
        self.m
    }

    /// Sign entry in row `ell`, column `col` (0-based).
    pub fn sign(&self, ell: usize, col: usize) -> i8 {
        self.entries[ell * self.m + col]
    }

    /// Row `ell` (1-based, matching the usual convention that row 1 is
    /// all-ones) scaled to unit length.
    pub fn row(&self, ell: usize) -> Result<Vec<f64>, HardGenError> {
        if ell == 0 || ell > self.m {
            return Err(HardGenError::HadamardIndex { ell, m: self.m });
        }
        let scale = 1.0 / (self.m as f64).sqrt();
        Ok((0..self.m)
            .map(|c| f64::from(self.sign(ell - 1, c)) * scale)
            .collect())
    }

    /// Row `ell` scaled to unit length and zero-padded (or an error if it
    /// would be truncated) to `dim` coordinates.
    pub fn padded_row(&self, ell: usize, dim: usize) -> Result<Vec<f64>, HardGenError> {
        if dim < self.m {
            return Err(HardGenError::DimensionMismatch {
                expected: self.m,
                got: dim,
            });
        }
        let mut row = self.row(ell)?;
        row.resize(dim, 0.0);
        Ok(row)
    }
}

/// Builds the order-`m` Sylvester Hadamard matrix by repeated doubling
/// `H_{2m} = [[H, H], [H, −H]]` from `H_1 = [1]`. `m` must be a power of
/// two.
pub fn hadamard(m: usize) -> Result<HadamardBasis, HardGenError> {
    if m == 0 || !m.is_power_of_two() {
        return Err(HardGenError::NotPowerOfTwo { m });
    }
    let mut size = 1usize;
    let mut entries: Vec<i8> = vec![1];
    while size < m {
        let double = 2 * size;
        let mut next = vec![0i8; double * double];
        for r in 0..size {
            for c in 0..size {
                let v = entries[r * size + c];
                next[r * double + c] = v;
                next[r * double + size + c] = v;
                next[(size + r) * double + c] = v;
                next[(size + r) * double + size + c] = -v;
            }
        }
        entries = next;
        size = double;
    }
    Ok(HadamardBasis { m, entries })
}

/// Largest power of two at most `d` (so always in `[d/2, d]` for `d ≥ 1`).
pub fn largest_hadamard_order(d: usize) -> usize {
    assert!(d >= 1, "dimension must be positive");
    usize::pow(2, d.ilog2())
}
