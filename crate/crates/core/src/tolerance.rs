//! Central record of numerical thresholds.

/// Thresholds used for validation, eigen-solving and precondition checks.
///
/// All values are stored as `f64` and converted into the working scalar on
/// use. [`Default`] gives the double precision settings; other precisions go
/// through [`crate::Real::default_tolerances`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Allowed deviation of `sum |a|^2` from one for pure states.
    pub normalization: f64,
    /// Allowed `|rho_ij - conj(rho_ji)|` for density operators.
    pub hermitian: f64,
    /// Allowed deviation of the trace from one.
    pub trace: f64,
    /// Eigenvalues in `[-psd, 0)` are clamped to zero; anything below is rejected.
    pub psd: f64,
    /// Jacobi stops once the off-diagonal Frobenius norm drops below this.
    pub jacobi_off_diagonal: f64,
    /// Maximum number of cyclic Jacobi sweeps before giving up.
    pub jacobi_max_sweeps: usize,
    /// Eigenvalues above this count towards the rank of a purification.
    pub rank: f64,
    /// A state counts as globally pure when `1 - Tr rho^2` is below this.
    pub purity: f64,
    /// Equality threshold for the off-diagonal factorisation conditions.
    pub offdiag: f64,
    /// Largest total Hilbert space dimension any operation will build.
    pub max_dimension: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            normalization: 1e-12,
            hermitian: 1e-12,
            trace: 1e-12,
            psd: 1e-10,
            jacobi_off_diagonal: 1e-13,
            jacobi_max_sweeps: 100,
            rank: 1e-12,
            purity: 1e-10,
            offdiag: 1e-10,
            max_dimension: 4096,
        }
    }
}

impl Tolerances {
    /// Rescale every floating threshold by `epsilon / f64::EPSILON` (never tighter).
    pub fn scaled_for_epsilon(self, epsilon: f64) -> Self {
        let k = (epsilon / f64::EPSILON).max(1.0);
        Self {
            normalization: self.normalization * k,
            hermitian: self.hermitian * k,
            trace: self.trace * k,
            psd: self.psd * k,
            jacobi_off_diagonal: self.jacobi_off_diagonal * k,
            rank: self.rank * k,
            purity: self.purity * k,
            offdiag: self.offdiag * k,
            ..self
        }
    }

    pub fn with_max_dimension(mut self, max_dimension: usize) -> Self {
        self.max_dimension = max_dimension;
        self
    }

    pub fn with_purity(mut self, purity: f64) -> Self {
        self.purity = purity;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f32_scaling_only_loosens() {
        let base = Tolerances::default();
        let loose = base.scaled_for_epsilon(f64::from(f32::EPSILON));
        assert!(loose.hermitian > base.hermitian);
        assert_eq!(loose.max_dimension, base.max_dimension);
        assert_eq!(base.scaled_for_epsilon(1e-20), base);
    }
}
