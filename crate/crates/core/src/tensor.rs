//! States with subsystem structure and the structural operations on them:
//! tensor products, partial traces, purity, entropies and purification.

use crate::eigen::{hermitian_spectrum, Spectrum};
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{creal, czero, xlnx, Real, C};
use crate::signature::DimensionSignature;
use crate::tolerance::Tolerances;

/// Normalised state vector over a [`DimensionSignature`].
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T> {
    signature: DimensionSignature,
    amplitudes: Vec<C<T>>,
}

impl<T: Real> PureState<T> {
    pub fn new(signature: DimensionSignature, amplitudes: Vec<C<T>>) -> Result<Self> {
        Self::new_with(signature, amplitudes, &T::default_tolerances())
    }

    pub fn new_with(signature: DimensionSignature, amplitudes: Vec<C<T>>, tol: &Tolerances) -> Result<Self> {
        if amplitudes.len() != signature.total() {
            return Err(Error::validation(
                "shape",
                format!("{} amplitudes for signature {signature} of dimension {}", amplitudes.len(), signature.total()),
            ));
        }
        let norm: T = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - T::one()).abs() > T::lit(tol.normalization) || !norm.is_finite() {
            return Err(Error::validation(
                "normalization",
                format!("sum of |a|^2 is {norm}, expected 1"),
            ));
        }
        Ok(Self { signature, amplitudes })
    }

    /// Divide by the Euclidean norm, then validate.
    pub fn normalized(signature: DimensionSignature, mut amplitudes: Vec<C<T>>) -> Result<Self> {
        let norm: T = amplitudes.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt();
        if !norm.is_finite() || norm <= T::zero() {
            return Err(Error::validation("normalization", "amplitude vector has zero norm"));
        }
        for a in &mut amplitudes {
            *a = a.unscale(norm);
        }
        Self::new(signature, amplitudes)
    }

    /// Computational basis state `|i_1, ..., i_n>`.
    pub fn basis(signature: DimensionSignature, digits: &[usize]) -> Result<Self> {
        if digits.len() != signature.len() || digits.iter().zip(signature.dims()).any(|(&i, &d)| i >= d) {
            return Err(Error::validation("shape", format!("basis label {digits:?} does not fit {signature}")));
        }
        let mut amps = vec![czero(); signature.total()];
        amps[signature.flatten(digits)] = creal(T::one());
        Ok(Self { signature, amplitudes: amps })
    }

    pub(crate) fn from_parts_unchecked(signature: DimensionSignature, amplitudes: Vec<C<T>>) -> Self {
        Self { signature, amplitudes }
    }

    pub fn signature(&self) -> &DimensionSignature {
        &self.signature
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amplitudes
    }

    /// Amplitude of the basis label `|i_1, ..., i_n>`.
    pub fn amplitude(&self, digits: &[usize]) -> C<T> {
        self.amplitudes[self.signature.flatten(digits)]
    }

    pub fn into_density(self) -> DensityOperator<T> {
        density_from_pure(&self)
    }
}

/// Hermitian, unit-trace, positive semidefinite operator over a signature.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator<T> {
    signature: DimensionSignature,
    matrix: CMatrix<T>,
}

impl<T: Real> DensityOperator<T> {
    pub fn new(signature: DimensionSignature, matrix: CMatrix<T>) -> Result<Self> {
        Self::new_with(signature, matrix, &T::default_tolerances())
    }

    /// Validate shape, Hermiticity, trace and positivity under `tol`.
    pub fn new_with(signature: DimensionSignature, matrix: CMatrix<T>, tol: &Tolerances) -> Result<Self> {
        if matrix.dim() != signature.total() {
            return Err(Error::validation(
                "shape",
                format!("{0}x{0} matrix for signature {signature} of dimension {1}", matrix.dim(), signature.total()),
            ));
        }
        if signature.total() > tol.max_dimension {
            return Err(Error::Capacity { requested: signature.total(), limit: tol.max_dimension });
        }
        let defect = matrix.hermiticity_defect();
        if defect.is_nan() || defect > T::lit(tol.hermitian) {
            return Err(Error::validation("hermitian", format!("Hermiticity defect {defect}")));
        }
        let tr = matrix.trace().re;
        if tr.is_nan() || (tr - T::one()).abs() > T::lit(tol.trace) {
            return Err(Error::validation("trace", format!("trace is {tr}, expected 1")));
        }
        let spec = hermitian_spectrum(&matrix, tol)?;
        let min = spec.eigenvalues.last().copied().unwrap_or_else(T::zero);
        if min < -T::lit(tol.psd) {
            return Err(Error::validation(
                "positive semidefinite",
                format!("smallest eigenvalue {min} is negative"),
            ));
        }
        Ok(Self { signature, matrix })
    }

    pub(crate) fn from_parts_unchecked(signature: DimensionSignature, matrix: CMatrix<T>) -> Self {
        debug_assert_eq!(matrix.dim(), signature.total());
        Self { signature, matrix }
    }

    /// Maximally mixed state `I/d` over the signature.
    pub fn maximally_mixed(signature: DimensionSignature) -> Self {
        let d = signature.total();
        let inv = T::one() / T::from_usize(d).expect("dimension fits the scalar");
        Self { signature, matrix: CMatrix::from_diagonal(&vec![inv; d]) }
    }

    pub fn signature(&self) -> &DimensionSignature {
        &self.signature
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C<T> {
        self.matrix[(row, col)]
    }

    /// Diagonal entries (populations) in the computational basis.
    pub fn populations(&self) -> Vec<T> {
        self.matrix.diagonal_real()
    }

    /// Spectrum with eigenvalues in `[-psd, 0)` clamped to zero.
    pub fn spectrum(&self) -> Result<Spectrum<T>> {
        self.spectrum_with(&T::default_tolerances())
    }

    pub fn spectrum_with(&self, tol: &Tolerances) -> Result<Spectrum<T>> {
        let mut spec = hermitian_spectrum(&self.matrix, tol)?;
        let floor = -T::lit(tol.psd);
        for ev in &mut spec.eigenvalues {
            if *ev < floor {
                return Err(Error::validation(
                    "positive semidefinite",
                    format!("eigenvalue {ev} is negative"),
                ));
            }
            if *ev < T::zero() {
                *ev = T::zero();
            }
        }
        Ok(spec)
    }

    /// Reduced state on `keep` (see [`partial_trace`]).
    pub fn reduce(&self, keep: &[usize]) -> Result<Self> {
        partial_trace(self, keep)
    }

    /// Same operator with subsystems listed in `order`.
    pub fn permute_subsystems(&self, order: &[usize]) -> Result<Self> {
        let n = self.signature.len();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&s| s >= n || std::mem::replace(&mut seen[s], true)) {
            return Err(Error::validation("subsystem index", format!("{order:?} is not a permutation of 0..{n}")));
        }
        let new_sig = self.signature.select(order);
        let d = self.dim();
        let map: Vec<usize> = (0..d)
            .map(|k| {
                let digits = self.signature.digits(k);
                let permuted: Vec<usize> = order.iter().map(|&s| digits[s]).collect();
                new_sig.flatten(&permuted)
            })
            .collect();
        let mut m = CMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m[(map[i], map[j])] = self.matrix[(i, j)];
            }
        }
        Ok(Self { signature: new_sig, matrix: m })
    }
}

/// `rho_1 (x) rho_2 (x) ...` in input order.
pub fn tensor_product<T: Real>(states: &[DensityOperator<T>]) -> Result<DensityOperator<T>> {
    tensor_product_with(states, &T::default_tolerances())
}

pub fn tensor_product_with<T: Real>(states: &[DensityOperator<T>], tol: &Tolerances) -> Result<DensityOperator<T>> {
    let (first, rest) = states
        .split_first()
        .ok_or_else(|| Error::validation("shape", "tensor product of an empty list"))?;
    let requested = states
        .iter()
        .try_fold(1usize, |acc, s| acc.checked_mul(s.dim()))
        .unwrap_or(usize::MAX);
    if requested > tol.max_dimension {
        return Err(Error::Capacity { requested, limit: tol.max_dimension });
    }
    let mut sig = first.signature.clone();
    let mut m = first.matrix.clone();
    for s in rest {
        sig = sig.concat(&s.signature);
        m = m.kron(&s.matrix);
    }
    Ok(DensityOperator::from_parts_unchecked(sig, m))
}

/// `|psi><psi|`.
pub fn density_from_pure<T: Real>(psi: &PureState<T>) -> DensityOperator<T> {
    DensityOperator::from_parts_unchecked(psi.signature.clone(), CMatrix::outer(&psi.amplitudes, &psi.amplitudes))
}

/// Trace out every subsystem not listed in `keep`.
///
/// The result lists the kept subsystems in their original relative order,
/// regardless of the order in `keep`.
pub fn partial_trace<T: Real>(rho: &DensityOperator<T>, keep: &[usize]) -> Result<DensityOperator<T>> {
    let sig = &rho.signature;
    if keep.is_empty() {
        return Err(Error::validation("subsystem index", "keep set is empty"));
    }
    let mut mask = vec![false; sig.len()];
    for &k in keep {
        sig.check_index(k)?;
        if std::mem::replace(&mut mask[k], true) {
            return Err(Error::validation("subsystem index", format!("subsystem {k} listed twice")));
        }
    }
    if mask.iter().all(|&m| m) {
        return Ok(rho.clone());
    }
    let kept: Vec<usize> = (0..sig.len()).filter(|&s| mask[s]).collect();
    let traced: Vec<usize> = (0..sig.len()).filter(|&s| !mask[s]).collect();
    let kept_sig = sig.select(&kept);
    let traced_sig = sig.select(&traced);

    // bucket full indices by their traced label
    let mut buckets: Vec<Vec<(usize, usize)>> = vec![Vec::new(); traced_sig.total()];
    for flat in 0..sig.total() {
        let digits = sig.digits(flat);
        let k: Vec<usize> = kept.iter().map(|&s| digits[s]).collect();
        let t: Vec<usize> = traced.iter().map(|&s| digits[s]).collect();
        buckets[traced_sig.flatten(&t)].push((kept_sig.flatten(&k), flat));
    }
    let mut out = CMatrix::zeros(kept_sig.total());
    for bucket in &buckets {
        for &(kr, fr) in bucket {
            for &(kc, fc) in bucket {
                out[(kr, kc)] = out[(kr, kc)] + rho.matrix[(fr, fc)];
            }
        }
    }
    Ok(DensityOperator::from_parts_unchecked(kept_sig, out))
}

/// `Tr rho^2`.
pub fn purity<T: Real>(rho: &DensityOperator<T>) -> T {
    // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho
    rho.matrix.norm_sqr()
}

/// `1 - Tr rho^2`.
pub fn linear_entropy<T: Real>(rho: &DensityOperator<T>) -> T {
    T::one() - purity(rho)
}

/// Von Neumann entropy in nats.
pub fn von_neumann_entropy<T: Real>(rho: &DensityOperator<T>) -> Result<T> {
    let spec = rho.spectrum()?;
    Ok(entropy_of(&spec.eigenvalues))
}

/// Shannon entropy (nats) of a probability vector.
pub(crate) fn entropy_of<T: Real>(probs: &[T]) -> T {
    -probs.iter().map(|&p| xlnx(p)).sum::<T>()
}

/// Diagonal part of `rho` in the computational basis.
pub fn dephased<T: Real>(rho: &DensityOperator<T>) -> DensityOperator<T> {
    DensityOperator::from_parts_unchecked(rho.signature.clone(), CMatrix::from_diagonal(&rho.populations()))
}

/// Purification `sum_k sqrt(lambda_k) |v_k> (x) |k>` on the system plus an
/// ancilla whose dimension equals the numerical rank.
pub fn purify<T: Real>(rho: &DensityOperator<T>) -> Result<PureState<T>> {
    purify_with(rho, &T::default_tolerances())
}

pub fn purify_with<T: Real>(rho: &DensityOperator<T>, tol: &Tolerances) -> Result<PureState<T>> {
    let spec = rho.spectrum_with(tol)?;
    let cut = T::lit(tol.rank);
    let rank = spec.eigenvalues.iter().filter(|&&l| l > cut).count().max(1);
    let d = rho.dim();
    if d.saturating_mul(rank) > tol.max_dimension {
        return Err(Error::Capacity { requested: d * rank, limit: tol.max_dimension });
    }
    let mut amps = vec![czero(); d * rank];
    for k in 0..rank {
        let w = spec.eigenvalues[k].max(T::zero()).sqrt();
        for i in 0..d {
            amps[i * rank + k] = spec.eigenvectors[(i, k)].scale(w);
        }
    }
    let norm: T = amps.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt();
    for a in &mut amps {
        *a = a.unscale(norm);
    }
    let mut dims = rho.signature.dims().to_vec();
    dims.push(rank);
    Ok(PureState::from_parts_unchecked(DimensionSignature::new_allow_trivial(dims), amps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(d: &[usize]) -> DimensionSignature {
        DimensionSignature::new(d.to_vec()).unwrap()
    }

    fn c(re: f64) -> C<f64> {
        C::new(re, 0.0)
    }

    fn proj(d: usize, i: usize) -> DensityOperator<f64> {
        density_from_pure(&PureState::basis(sig(&[d]), &[i]).unwrap())
    }

    fn bell() -> PureState<f64> {
        let h = 0.5f64.sqrt();
        PureState::new(sig(&[2, 2]), vec![c(h), c(0.0), c(0.0), c(h)]).unwrap()
    }

    #[test]
    fn product_of_ground_states() {
        let p = tensor_product(&[proj(2, 0), proj(2, 0)]).unwrap();
        assert_eq!(p.signature().dims(), &[2, 2]);
        let mut expected = CMatrix::zeros(4);
        expected[(0, 0)] = c(1.0);
        assert_eq!(p.matrix(), &expected);
    }

    #[test]
    fn product_of_maximally_mixed() {
        let half = DensityOperator::<f64>::maximally_mixed(sig(&[2]));
        let p = tensor_product(&[half.clone(), half]).unwrap();
        assert!(p.matrix().max_abs_diff(&CMatrix::from_diagonal(&[0.25; 4])) < 1e-15);
    }

    #[test]
    fn capacity_error() {
        let small = Tolerances::default().with_max_dimension(4);
        let r = tensor_product_with(&[proj(2, 0), proj(2, 0), proj(2, 0)], &small);
        assert_eq!(r.unwrap_err(), Error::Capacity { requested: 8, limit: 4 });
        assert!(tensor_product::<f64>(&[]).is_err());
    }

    #[test]
    fn pure_state_validation() {
        assert_eq!(
            PureState::new(sig(&[2]), vec![c(1.0), c(1.0)]).unwrap_err().invariant(),
            Some("normalization")
        );
        assert_eq!(PureState::new(sig(&[2]), vec![c(1.0)]).unwrap_err().invariant(), Some("shape"));
    }

    #[test]
    fn bell_density_and_reductions() {
        let rho = bell().into_density();
        assert!((purity(&rho) - 1.0).abs() < 1e-12);
        let nonzero = rho.matrix().as_slice().iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nonzero, 4);
        let a = partial_trace(&rho, &[0]).unwrap();
        assert!(a.matrix().max_abs_diff(&CMatrix::from_diagonal(&[0.5, 0.5])) < 1e-15);
    }

    #[test]
    fn product_reduction() {
        let rho = density_from_pure(&PureState::<f64>::basis(sig(&[2, 2]), &[0, 1]).unwrap());
        assert_eq!(partial_trace(&rho, &[0]).unwrap().matrix(), proj(2, 0).matrix());
        assert_eq!(partial_trace(&rho, &[1]).unwrap().matrix(), proj(2, 1).matrix());
    }

    #[test]
    fn partial_trace_errors_and_order() {
        let rho = bell().into_density();
        assert!(partial_trace(&rho, &[]).is_err());
        assert!(partial_trace(&rho, &[2]).is_err());
        assert!(partial_trace(&rho, &[0, 0]).is_err());
        // keep order does not matter
        assert_eq!(partial_trace(&rho, &[1, 0]).unwrap(), rho);
    }

    #[test]
    fn density_validation_names_invariant() {
        let m = CMatrix::from_diagonal(&[0.5, 0.4]);
        assert_eq!(DensityOperator::new(sig(&[2]), m).unwrap_err().invariant(), Some("trace"));
        let m = CMatrix::from_diagonal(&[1.2, -0.2]);
        assert_eq!(
            DensityOperator::new(sig(&[2]), m).unwrap_err().invariant(),
            Some("positive semidefinite")
        );
        let mut m = CMatrix::from_diagonal(&[0.5, 0.5]);
        m[(0, 1)] = c(0.1);
        assert_eq!(DensityOperator::new(sig(&[2]), m).unwrap_err().invariant(), Some("hermitian"));
        // tiny negative eigenvalue inside the clamp window is accepted
        let m = CMatrix::from_diagonal(&[1.0 + 5e-13, -5e-13]);
        let rho = DensityOperator::new(sig(&[2]), m).unwrap();
        assert_eq!(rho.spectrum().unwrap().eigenvalues, vec![1.0 + 5e-13, 0.0]);
    }

    #[test]
    fn purity_and_entropies() {
        let mixed = DensityOperator::<f64>::maximally_mixed(sig(&[3]));
        assert!((purity(&mixed) - 1.0 / 3.0).abs() < 1e-15);
        assert!((linear_entropy(&mixed) - 2.0 / 3.0).abs() < 1e-15);
        assert!((von_neumann_entropy(&mixed).unwrap() - 3f64.ln()).abs() < 1e-14);
        assert!(von_neumann_entropy(&proj(2, 1)).unwrap().abs() < 1e-15);
        assert!(von_neumann_entropy(&bell().into_density()).unwrap().abs() < 1e-12);
    }

    #[test]
    fn dephasing() {
        let h = 0.5f64.sqrt();
        let plus = PureState::new(sig(&[2]), vec![c(h), c(h)]).unwrap().into_density();
        assert!(dephased(&plus).matrix().max_abs_diff(&CMatrix::from_diagonal(&[0.5, 0.5])) < 1e-15);
        let diag = DensityOperator::new(sig(&[2]), CMatrix::from_diagonal(&[0.3, 0.7])).unwrap();
        assert_eq!(dephased(&diag), diag);
    }

    #[test]
    fn purify_pure_state_uses_trivial_ancilla() {
        let rho = proj(2, 1);
        let psi = purify(&rho).unwrap();
        assert_eq!(psi.signature().dims(), &[2, 1]);
        let back = partial_trace(&psi.into_density(), &[0]).unwrap();
        assert!(back.matrix().max_abs_diff(rho.matrix()) < 1e-12);
    }

    #[test]
    fn purify_maximally_mixed_qubit() {
        let rho = DensityOperator::<f64>::maximally_mixed(sig(&[2]));
        let psi = purify(&rho).unwrap();
        assert_eq!(psi.signature().dims(), &[2, 2]);
        let full = psi.into_density();
        let back = partial_trace(&full, &[0]).unwrap();
        assert!(back.matrix().max_abs_diff(rho.matrix()) < 1e-12);
        // maximally entangled: the ancilla marginal is maximally mixed too
        let anc = partial_trace(&full, &[1]).unwrap();
        assert!((purity(&anc) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn permute_subsystems_swaps_labels() {
        let rho = density_from_pure(&PureState::<f64>::basis(sig(&[2, 3]), &[1, 2]).unwrap());
        let swapped = rho.permute_subsystems(&[1, 0]).unwrap();
        assert_eq!(swapped.signature().dims(), &[3, 2]);
        let expected = density_from_pure(&PureState::basis(sig(&[3, 2]), &[2, 1]).unwrap());
        assert_eq!(swapped, expected);
        assert!(rho.permute_subsystems(&[0, 0]).is_err());
    }
}
