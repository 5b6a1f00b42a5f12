use std::fmt;

use crate::error::{Error, Result};

/// Ordered subsystem dimensions `(d_1, ..., d_n)` of a composite system.
///
/// Multi-indices are flattened row-major: subsystem 0 varies slowest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DimensionSignature {
    dims: Vec<usize>,
}

impl DimensionSignature {
    pub fn new(dims: impl Into<Vec<usize>>) -> Result<Self> {
        let dims = dims.into();
        if dims.is_empty() {
            return Err(Error::validation("signature", "at least one subsystem is required"));
        }
        if let Some(bad) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::validation(
                "signature",
                format!("subsystem dimension {bad} is below 2"),
            ));
        }
        dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).ok_or_else(|| {
            Error::validation("signature", "total dimension overflows usize")
        })?;
        Ok(Self { dims })
    }

    /// Signature that also admits trivial (dimension 1) factors, used for the
    /// ancilla of a purification of a pure state.
    pub(crate) fn new_allow_trivial(dims: Vec<usize>) -> Self {
        debug_assert!(!dims.is_empty() && dims.iter().all(|&d| d >= 1));
        Self { dims }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, subsystem: usize) -> usize {
        self.dims[subsystem]
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self { dims }
    }

    /// Signature of the listed subsystems, in the listed order.
    pub fn select(&self, subsystems: &[usize]) -> Self {
        Self { dims: subsystems.iter().map(|&s| self.dims[s]).collect() }
    }

    /// Decompose a flat index into per-subsystem digits.
    pub fn digits(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = flat % d;
            flat /= d;
        }
        out
    }

    /// Inverse of [`digits`](Self::digits).
    pub fn flatten(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub(crate) fn check_index(&self, subsystem: usize) -> Result<()> {
        if subsystem < self.dims.len() {
            Ok(())
        } else {
            Err(Error::validation(
                "subsystem index",
                format!("subsystem {subsystem} out of range for {} subsystems", self.dims.len()),
            ))
        }
    }
}

impl fmt::Display for DimensionSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_dims() {
        assert!(DimensionSignature::new(vec![]).is_err());
        assert!(DimensionSignature::new(vec![2, 1]).is_err());
    }

    #[test]
    fn digits_round_trip_row_major() {
        let s = DimensionSignature::new(vec![2, 3, 2]).unwrap();
        assert_eq!(s.total(), 12);
        assert_eq!(s.digits(0), vec![0, 0, 0]);
        assert_eq!(s.digits(1), vec![0, 0, 1]);
        assert_eq!(s.digits(2), vec![0, 1, 0]);
        assert_eq!(s.digits(6), vec![1, 0, 0]);
        for k in 0..12 {
            assert_eq!(s.flatten(&s.digits(k)), k);
        }
    }
}
