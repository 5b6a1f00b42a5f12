//! Complete complementarity relations for a single subsystem.
//!
//! For a globally pure state the predictability, local coherence and a
//! correlation term of a subsystem add up to a dimension-dependent constant.
//! Each report carries the three terms, their sum, the constant and the
//! residual `sum - bound` (negative means missing information).

use std::fmt;

use crate::error::{Error, Result};
use crate::measures::{
    coherence_hs, coherence_re, hs_bound, nonlocal_direct_sum, predictability_hs, predictability_vn,
    require_pure, MeasureKind, MeasureValue,
};
use crate::scalar::Real;
use crate::tensor::{linear_entropy, partial_trace, von_neumann_entropy, DensityOperator};
use crate::tolerance::Tolerances;

/// Which relation a report instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CcrFlavor {
    /// `P_hs + C_hs + C^nl_hs = (d-1)/d` for globally pure states.
    HsPure,
    /// `C_re + P_vn + S_vn = ln d` for globally pure states.
    VnPure,
    /// `P_hs + C_hs + S_l = (d-1)/d`, an identity for any state.
    HsMixedness,
}

impl CcrFlavor {
    pub fn name(self) -> &'static str {
        match self {
            CcrFlavor::HsPure => "hs_pure",
            CcrFlavor::VnPure => "vn_pure_bipartite",
            CcrFlavor::HsMixedness => "hs_mixedness",
        }
    }
}

impl fmt::Display for CcrFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CcrReport<T> {
    pub target: usize,
    pub predictability: MeasureValue<T>,
    pub local_coherence: MeasureValue<T>,
    pub correlation_term: MeasureValue<T>,
    pub sum: T,
    pub bound: T,
    pub residual: T,
    pub flavor: CcrFlavor,
}

impl<T: Real> CcrReport<T> {
    fn assemble(
        target: usize,
        flavor: CcrFlavor,
        predictability: MeasureValue<T>,
        local_coherence: MeasureValue<T>,
        correlation_term: MeasureValue<T>,
        bound: T,
    ) -> Self {
        let sum = predictability.value + local_coherence.value + correlation_term.value;
        Self { target, predictability, local_coherence, correlation_term, sum, bound, residual: sum - bound, flavor }
    }
}

fn reduced_target<T: Real>(rho: &DensityOperator<T>, target: usize) -> Result<DensityOperator<T>> {
    rho.signature().check_index(target)?;
    partial_trace(rho, &[target])
}

/// Hilbert-Schmidt relation with the direct non-local coherence sum.
pub fn ccr_hs<T: Real>(rho_full: &DensityOperator<T>, target: usize) -> Result<CcrReport<T>> {
    ccr_hs_with(rho_full, target, &T::default_tolerances())
}

pub fn ccr_hs_with<T: Real>(rho_full: &DensityOperator<T>, target: usize, tol: &Tolerances) -> Result<CcrReport<T>> {
    let reduced = reduced_target(rho_full, target)?;
    require_pure(rho_full, tol, "ccr_hs (use ccr_mixedness for mixed states)")?;
    let d = reduced.dim();
    let nl = MeasureValue::new(MeasureKind::NonlocalCoherenceHs, nonlocal_direct_sum(rho_full, target)?, hs_bound(d));
    Ok(CcrReport::assemble(
        target,
        CcrFlavor::HsPure,
        predictability_hs(&reduced),
        coherence_hs(&reduced),
        nl,
        hs_bound(d),
    ))
}

/// Entropic relation with the entanglement entropy of the target as the
/// correlation term.
pub fn ccr_vn<T: Real>(rho_full: &DensityOperator<T>, target: usize) -> Result<CcrReport<T>> {
    ccr_vn_with(rho_full, target, &T::default_tolerances())
}

pub fn ccr_vn_with<T: Real>(rho_full: &DensityOperator<T>, target: usize, tol: &Tolerances) -> Result<CcrReport<T>> {
    let reduced = reduced_target(rho_full, target)?;
    require_pure(rho_full, tol, "ccr_vn")?;
    let ln_d = T::from_usize(reduced.dim()).expect("dimension fits the scalar").ln();
    let s = MeasureValue::new(MeasureKind::VonNeumannEntropy, von_neumann_entropy(&reduced)?, ln_d);
    Ok(CcrReport::assemble(
        target,
        CcrFlavor::VnPure,
        predictability_vn(&reduced),
        coherence_re(&reduced)?,
        s,
        ln_d,
    ))
}

/// Mixedness relation: holds for pure and mixed global states alike.
pub fn ccr_mixedness<T: Real>(rho_any: &DensityOperator<T>, target: usize) -> Result<CcrReport<T>> {
    let reduced = reduced_target(rho_any, target)?;
    let d = reduced.dim();
    let s = MeasureValue::new(MeasureKind::LinearEntropy, linear_entropy(&reduced), hs_bound(d));
    Ok(CcrReport::assemble(
        target,
        CcrFlavor::HsMixedness,
        predictability_hs(&reduced),
        coherence_hs(&reduced),
        s,
        hs_bound(d),
    ))
}

/// `(d-1)/d - [P_hs + C_hs + direct non-local sum]` on an arbitrary global
/// state. Zero for pure states, non-negative otherwise.
pub fn ccr_inequality_gap<T: Real>(rho_mixed_global: &DensityOperator<T>, target: usize) -> Result<T> {
    let reduced = reduced_target(rho_mixed_global, target)?;
    let terms = predictability_hs(&reduced).value
        + coherence_hs(&reduced).value
        + nonlocal_direct_sum(rho_mixed_global, target)?;
    Ok(hs_bound::<T>(reduced.dim()) - terms)
}

/// Run a flavour by value.
pub fn ccr<T: Real>(rho: &DensityOperator<T>, target: usize, flavor: CcrFlavor, tol: &Tolerances) -> Result<CcrReport<T>> {
    match flavor {
        CcrFlavor::HsPure => ccr_hs_with(rho, target, tol),
        CcrFlavor::VnPure => ccr_vn_with(rho, target, tol),
        CcrFlavor::HsMixedness => ccr_mixedness(rho, target),
    }
}

/// Reports for every subsystem of a state with at least two subsystems.
pub fn ccr_all_targets<T: Real>(rho: &DensityOperator<T>, flavor: CcrFlavor, tol: &Tolerances) -> Result<Vec<CcrReport<T>>> {
    let n = rho.signature().len();
    if n < 2 {
        return Err(Error::validation("signature", "a complementarity audit needs at least two subsystems"));
    }
    (0..n).map(|t| ccr(rho, t, flavor, tol)).collect()
}
