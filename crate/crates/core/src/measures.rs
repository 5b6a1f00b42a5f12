//! Predictability, coherence and correlation quantifiers.
//!
//! Every single-system measure reads the density matrix in the computational
//! basis, so all coherence values are basis dependent by construction.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{xlnx, Real, C};
use crate::tensor::{dephased, linear_entropy, partial_trace, purity, von_neumann_entropy, DensityOperator};
use crate::tolerance::Tolerances;

/// Which quantity a [`MeasureValue`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureKind {
    PredictabilityHs,
    PredictabilityVn,
    PredictabilityL1,
    CoherenceHs,
    CoherenceRe,
    CoherenceL1,
    NonlocalCoherenceHs,
    CorrelatedCoherence,
    Concurrence,
    VonNeumannEntropy,
    LinearEntropy,
}

impl MeasureKind {
    pub fn label(self) -> &'static str {
        match self {
            MeasureKind::PredictabilityHs => "P_hs",
            MeasureKind::PredictabilityVn => "P_vn",
            MeasureKind::PredictabilityL1 => "P_l1",
            MeasureKind::CoherenceHs => "C_hs",
            MeasureKind::CoherenceRe => "C_re",
            MeasureKind::CoherenceL1 => "C_l1",
            MeasureKind::NonlocalCoherenceHs => "C_nl_hs",
            MeasureKind::CorrelatedCoherence => "C_corr",
            MeasureKind::Concurrence => "concurrence",
            MeasureKind::VonNeumannEntropy => "S_vn",
            MeasureKind::LinearEntropy => "S_l",
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Coherence family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoherenceKind {
    HilbertSchmidt,
    RelativeEntropy,
    L1Norm,
}

/// A non-negative measure together with its maximum for the given dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureValue<T> {
    pub value: T,
    pub bound: T,
    pub kind: MeasureKind,
}

/// Rounding noise below this magnitude is reported as an exact zero.
const NEGATIVE_NOISE: f64 = 1e-10;

impl<T: Real> MeasureValue<T> {
    /// Values in `[-1e-10, 0)` are treated as rounding noise and set to zero;
    /// anything more negative is kept so invariant checks can see it.
    pub fn new(kind: MeasureKind, value: T, bound: T) -> Self {
        let value = if value < T::zero() && value >= -T::lit(NEGATIVE_NOISE) { T::zero() } else { value };
        Self { value, bound, kind }
    }

    pub fn within_bound(&self, slack: T) -> bool {
        self.value >= T::zero() && self.value <= self.bound + slack
    }
}

fn dim_of<T: Real>(rho: &DensityOperator<T>) -> T {
    T::from_usize(rho.dim()).expect("dimension fits the scalar")
}

/// `(d - 1) / d`.
pub fn hs_bound<T: Real>(d: usize) -> T {
    let d = T::from_usize(d).expect("dimension fits the scalar");
    (d - T::one()) / d
}

/// `sum_i rho_ii^2 - 1/d`.
pub fn predictability_hs<T: Real>(rho: &DensityOperator<T>) -> MeasureValue<T> {
    let d = dim_of(rho);
    let v = rho.populations().iter().map(|&p| p * p).sum::<T>() - T::one() / d;
    MeasureValue::new(MeasureKind::PredictabilityHs, v, hs_bound(rho.dim()))
}

/// `ln d + sum_i rho_ii ln rho_ii`.
pub fn predictability_vn<T: Real>(rho: &DensityOperator<T>) -> MeasureValue<T> {
    let ln_d = dim_of(rho).ln();
    let v = ln_d + rho.populations().into_iter().map(xlnx).sum::<T>();
    MeasureValue::new(MeasureKind::PredictabilityVn, v, ln_d)
}

/// `d - 1 - sum_{j != k} sqrt(rho_jj rho_kk)`.
pub fn predictability_l1<T: Real>(rho: &DensityOperator<T>) -> MeasureValue<T> {
    let d = dim_of(rho);
    let pops: Vec<T> = rho.populations().into_iter().map(|p| p.max(T::zero())).collect();
    let mut cross = T::zero();
    for (j, &pj) in pops.iter().enumerate() {
        for (k, &pk) in pops.iter().enumerate() {
            if j != k {
                cross = cross + (pj * pk).sqrt();
            }
        }
    }
    MeasureValue::new(MeasureKind::PredictabilityL1, d - T::one() - cross, d - T::one())
}

fn off_diagonal_sum<T: Real>(rho: &DensityOperator<T>, f: impl Fn(C<T>) -> T) -> T {
    let n = rho.dim();
    let mut s = T::zero();
    for i in 0..n {
        for k in 0..n {
            if i != k {
                s = s + f(rho.get(i, k));
            }
        }
    }
    s
}

/// Hilbert-Schmidt coherence `sum_{i != k} |rho_ik|^2`.
pub fn coherence_hs<T: Real>(rho: &DensityOperator<T>) -> MeasureValue<T> {
    let v = off_diagonal_sum(rho, |z| z.norm_sqr());
    MeasureValue::new(MeasureKind::CoherenceHs, v, hs_bound(rho.dim()))
}

/// l1-norm coherence `sum_{i != k} |rho_ik|`.
pub fn coherence_l1<T: Real>(rho: &DensityOperator<T>) -> MeasureValue<T> {
    let v = off_diagonal_sum(rho, |z| z.norm());
    MeasureValue::new(MeasureKind::CoherenceL1, v, dim_of(rho) - T::one())
}

/// Relative entropy of coherence `S(rho_diag) - S(rho)`.
pub fn coherence_re<T: Real>(rho: &DensityOperator<T>) -> Result<MeasureValue<T>> {
    let diag_entropy = von_neumann_entropy(&dephased(rho))?;
    let v = diag_entropy - von_neumann_entropy(rho)?;
    Ok(MeasureValue::new(MeasureKind::CoherenceRe, v, dim_of(rho).ln()))
}

/// Dispatch on the coherence family.
pub fn coherence<T: Real>(rho: &DensityOperator<T>, kind: CoherenceKind) -> Result<MeasureValue<T>> {
    match kind {
        CoherenceKind::HilbertSchmidt => Ok(coherence_hs(rho)),
        CoherenceKind::L1Norm => Ok(coherence_l1(rho)),
        CoherenceKind::RelativeEntropy => coherence_re(rho),
    }
}

pub(crate) fn require_pure<T: Real>(rho: &DensityOperator<T>, tol: &Tolerances, what: &str) -> Result<()> {
    let deficit = T::one() - purity(rho);
    if deficit.abs() > T::lit(tol.purity) {
        return Err(Error::Precondition(format!(
            "{what} requires a globally pure state (1 - Tr rho^2 = {deficit})"
        )));
    }
    Ok(())
}

/// Lookup `table[i][r]` = flat index of the label with `target` digit `i` and
/// remaining digits `r` (row-major over the other subsystems).
fn split_index_table<T: Real>(rho: &DensityOperator<T>, target: usize) -> Vec<Vec<usize>> {
    let sig = rho.signature();
    let dt = sig.dim(target);
    let rest = rho.dim() / dt;
    let mut table = vec![vec![0usize; rest]; dt];
    for flat in 0..rho.dim() {
        let digits = sig.digits(flat);
        let mut r = 0;
        for (s, (&digit, &d)) in digits.iter().zip(sig.dims()).enumerate() {
            if s != target {
                r = r * d + digit;
            }
        }
        table[digits[target]][r] = flat;
    }
    table
}

/// The index-partition sum defining the non-local coherence of `target`,
/// evaluated on any state without checking purity.
///
/// `sum_{i != j} sum_{r != r'} ( |rho_{ir,jr'}|^2 - rho_{ir,jr} conj(rho_{ir',jr'}) )`
/// where `i, j` label the target and `r, r'` the remaining subsystems.
pub fn nonlocal_direct_sum<T: Real>(rho: &DensityOperator<T>, target: usize) -> Result<T> {
    rho.signature().check_index(target)?;
    let table = split_index_table(rho, target);
    let dt = table.len();
    let rest = table[0].len();
    let mut acc = C::new(T::zero(), T::zero());
    for i in 0..dt {
        for j in 0..dt {
            if i == j {
                continue;
            }
            for r in 0..rest {
                let same_r = rho.get(table[i][r], table[j][r]);
                for rp in 0..rest {
                    if r == rp {
                        continue;
                    }
                    let cross = rho.get(table[i][r], table[j][rp]);
                    let same_rp = rho.get(table[i][rp], table[j][rp]);
                    acc = acc + C::new(cross.norm_sqr(), T::zero()) - same_r * same_rp.conj();
                }
            }
        }
    }
    // imaginary parts cancel between (r, r') and (r', r)
    Ok(acc.re)
}

/// Non-local Hilbert-Schmidt coherence of `target` from the explicit index sum.
pub fn nonlocal_coherence_hs_direct<T: Real>(rho_full: &DensityOperator<T>, target: usize) -> Result<MeasureValue<T>> {
    nonlocal_coherence_hs_direct_with(rho_full, target, &T::default_tolerances())
}

pub fn nonlocal_coherence_hs_direct_with<T: Real>(
    rho_full: &DensityOperator<T>,
    target: usize,
    tol: &Tolerances,
) -> Result<MeasureValue<T>> {
    rho_full.signature().check_index(target)?;
    require_pure(rho_full, tol, "non-local coherence")?;
    let v = nonlocal_direct_sum(rho_full, target)?;
    Ok(MeasureValue::new(MeasureKind::NonlocalCoherenceHs, v, hs_bound(rho_full.signature().dim(target))))
}

/// Non-local Hilbert-Schmidt coherence of `target` as the linear entropy of
/// its reduced state.
pub fn nonlocal_coherence_hs_via_entropy<T: Real>(
    rho_full: &DensityOperator<T>,
    target: usize,
) -> Result<MeasureValue<T>> {
    nonlocal_coherence_hs_via_entropy_with(rho_full, target, &T::default_tolerances())
}

pub fn nonlocal_coherence_hs_via_entropy_with<T: Real>(
    rho_full: &DensityOperator<T>,
    target: usize,
    tol: &Tolerances,
) -> Result<MeasureValue<T>> {
    rho_full.signature().check_index(target)?;
    require_pure(rho_full, tol, "non-local coherence")?;
    let reduced = partial_trace(rho_full, &[target])?;
    Ok(MeasureValue::new(
        MeasureKind::NonlocalCoherenceHs,
        linear_entropy(&reduced),
        hs_bound(reduced.dim()),
    ))
}

/// A split of the subsystems into two disjoint, jointly exhaustive groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Bipartition {
    pub fn new(left: impl Into<Vec<usize>>, right: impl Into<Vec<usize>>) -> Self {
        Self { left: left.into(), right: right.into() }
    }

    /// `target` against every other subsystem.
    pub fn isolate(target: usize, n: usize) -> Self {
        Self { left: vec![target], right: (0..n).filter(|&s| s != target).collect() }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.left.is_empty() || self.right.is_empty() {
            return Err(Error::validation("bipartition", "both sides must be nonempty"));
        }
        validate_partition(&[self.left.as_slice(), self.right.as_slice()], n)
    }
}

fn validate_partition(parts: &[&[usize]], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for part in parts {
        if part.is_empty() {
            return Err(Error::validation("bipartition", "empty part"));
        }
        for &s in *part {
            if s >= n {
                return Err(Error::validation("bipartition", format!("subsystem {s} out of range")));
            }
            if std::mem::replace(&mut seen[s], true) {
                return Err(Error::validation("bipartition", format!("subsystem {s} appears twice")));
            }
        }
    }
    if let Some(missing) = seen.iter().position(|&b| !b) {
        return Err(Error::validation("bipartition", format!("subsystem {missing} is not assigned")));
    }
    Ok(())
}

/// `C(rho) - C(rho_left) - C(rho_right)`. May be negative for the
/// Hilbert-Schmidt family.
pub fn correlated_coherence<T: Real>(
    rho_joint: &DensityOperator<T>,
    bipartition: &Bipartition,
    kind: CoherenceKind,
) -> Result<T> {
    bipartition.validate(rho_joint.signature().len())?;
    correlated_coherence_parts(rho_joint, &[&bipartition.left, &bipartition.right], kind)
}

/// `C(rho) - sum_parts C(rho_part)` for any partition of the subsystems.
pub fn correlated_coherence_parts<T: Real>(
    rho_joint: &DensityOperator<T>,
    parts: &[&[usize]],
    kind: CoherenceKind,
) -> Result<T> {
    validate_partition(parts, rho_joint.signature().len())?;
    let mut v = coherence(rho_joint, kind)?.value;
    for part in parts {
        v = v - coherence(&partial_trace(rho_joint, part)?, kind)?.value;
    }
    Ok(v)
}

/// Generalised concurrence `sqrt(2 (1 - Tr rho^2))` of a reduced state.
pub fn concurrence_generalized<T: Real>(rho_reduced: &DensityOperator<T>) -> MeasureValue<T> {
    let two = T::lit(2.0);
    let v = (two * linear_entropy(rho_reduced).max(T::zero())).sqrt();
    MeasureValue::new(MeasureKind::Concurrence, v, (two * hs_bound::<T>(rho_reduced.dim())).sqrt())
}

/// Whether the reduced off-diagonal elements factorise as
/// `|sum_j rho_{ij,kj}|^2 = sum_j |rho_{ij,kj}|^2` for every `i != k`, and
/// the mirrored condition for the right group.
pub fn satisfies_offdiag_conditions<T: Real>(rho_full: &DensityOperator<T>, bipartition: &Bipartition) -> Result<bool> {
    satisfies_offdiag_conditions_with(rho_full, bipartition, &T::default_tolerances())
}

pub fn satisfies_offdiag_conditions_with<T: Real>(
    rho_full: &DensityOperator<T>,
    bipartition: &Bipartition,
    tol: &Tolerances,
) -> Result<bool> {
    let n = rho_full.signature().len();
    bipartition.validate(n)?;
    let order: Vec<usize> = bipartition.left.iter().chain(&bipartition.right).copied().collect();
    let rho = rho_full.permute_subsystems(&order)?;
    let da: usize = bipartition.left.iter().map(|&s| rho_full.signature().dim(s)).product();
    let db = rho.dim() / da;
    let at = |i: usize, j: usize, k: usize, l: usize| rho.get(i * db + j, k * db + l);
    let eps = T::lit(tol.offdiag);

    let check = |outer: usize, inner: usize, entry: &dyn Fn(usize, usize, usize) -> C<T>| {
        for i in 0..outer {
            for k in 0..outer {
                if i == k {
                    continue;
                }
                let mut total = C::new(T::zero(), T::zero());
                let mut squares = T::zero();
                for j in 0..inner {
                    let z = entry(i, k, j);
                    total = total + z;
                    squares = squares + z.norm_sqr();
                }
                if (total.norm_sqr() - squares).abs() > eps {
                    return false;
                }
            }
        }
        true
    };
    let left_ok = check(da, db, &|i, k, j| at(i, j, k, j));
    let right_ok = check(db, da, &|j, l, i| at(i, j, i, l));
    Ok(left_ok && right_ok)
}

/// `sum_{j != target} C^c_hs(rho_{target, j})` over the two-body marginals.
pub fn pairwise_correlated_coherence<T: Real>(
    rho_full: &DensityOperator<T>,
    target: usize,
    kind: CoherenceKind,
) -> Result<T> {
    let n = rho_full.signature().len();
    rho_full.signature().check_index(target)?;
    let mut total = T::zero();
    for other in (0..n).filter(|&s| s != target) {
        let pair = partial_trace(rho_full, &[target, other])?;
        // the pair keeps original relative order
        let (a, b) = if target < other { (0, 1) } else { (1, 0) };
        total = total + correlated_coherence(&pair, &Bipartition::new(vec![a], vec![b]), kind)?;
    }
    Ok(total)
}
