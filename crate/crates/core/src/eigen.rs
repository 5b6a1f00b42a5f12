//! Cyclic Jacobi eigensolver for small Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the classical real symmetric Jacobi rotation to the
//! resulting real 2x2 block. The accumulated unitary holds the eigenvectors.

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{Real, C};
use crate::tolerance::Tolerances;

/// Eigen-decomposition `A = V diag(lambda) V^dagger` of a Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    /// Real eigenvalues sorted descending.
    pub eigenvalues: Vec<T>,
    /// Unitary whose column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: CMatrix<T>,
}

impl<T: Real> Spectrum<T> {
    /// Column `k` of the eigenvector matrix.
    pub fn eigenvector(&self, k: usize) -> Vec<C<T>> {
        let n = self.eigenvectors.dim();
        (0..n).map(|i| self.eigenvectors[(i, k)]).collect()
    }

    /// Rebuild `V diag(lambda) V^dagger`.
    pub fn reconstruct(&self) -> CMatrix<T> {
        let v = &self.eigenvectors;
        let d = CMatrix::from_diagonal(&self.eigenvalues);
        &(v * &d) * &v.adjoint()
    }
}

/// Diagonalise a Hermitian matrix with cyclic Jacobi sweeps.
///
/// No clamping is applied here; see [`crate::DensityOperator::spectrum`] for
/// the density-operator flavour that enforces positivity.
pub fn hermitian_spectrum<T: Real>(a: &CMatrix<T>, tol: &Tolerances) -> Result<Spectrum<T>> {
    let n = a.dim();
    let defect = a.hermiticity_defect();
    let scale = a.norm_sqr().sqrt().max(T::one());
    if defect > T::lit(tol.hermitian) * scale {
        return Err(Error::validation(
            "hermitian",
            format!("matrix is not Hermitian (defect {defect})"),
        ));
    }

    let mut m = a.clone();
    // symmetrise so rounding noise in the input cannot stall convergence
    for i in 0..n {
        m[(i, i)] = C::new(m[(i, i)].re, T::zero());
        for j in (i + 1)..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()).scale(T::lit(0.5));
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
    let mut v = CMatrix::identity(n);
    let target = T::lit(tol.jacobi_off_diagonal);
    let target_sqr = target * target;

    let mut converged = m.off_diagonal_norm_sqr() < target_sqr;
    let mut sweeps = 0;
    while !converged {
        if sweeps == tol.jacobi_max_sweeps {
            return Err(Error::Numeric(format!(
                "Jacobi did not converge after {sweeps} sweeps (off-diagonal norm {})",
                m.off_diagonal_norm_sqr().sqrt()
            )));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        converged = m.off_diagonal_norm_sqr() < target_sqr;
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag = m.diagonal_real();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap_or(std::cmp::Ordering::Equal));
    let eigenvalues = order.iter().map(|&k| diag[k]).collect();
    let eigenvectors = CMatrix::from_fn(n, |i, k| v[(i, order[k])]);
    Ok(Spectrum { eigenvalues, eigenvectors })
}

/// Annihilate `m[(p, q)]` with `m <- U^dagger m U`, accumulating `v <- v U`.
fn rotate<T: Real>(m: &mut CMatrix<T>, v: &mut CMatrix<T>, p: usize, q: usize) {
    let apq = m[(p, q)];
    let g = apq.norm();
    if g <= T::min_positive_value() {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // phase such that e^{-i phi} a_pq = |a_pq|
    let phase = apq.unscale(g).conj();

    let theta = (aqq - app) / (T::lit(2.0) * g);
    let t = if theta.is_infinite() {
        T::zero()
    } else {
        let sign = if theta >= T::zero() { T::one() } else { -T::one() };
        sign / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    // U restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
    let upp = C::new(c, T::zero());
    let upq = C::new(s, T::zero());
    let uqp = phase.scale(-s);
    let uqq = phase.scale(c);

    let n = m.dim();
    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * upp + akq * uqp;
        m[(k, q)] = akp * upq + akq * uqq;
    }
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
        m[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
    }
    m[(p, q)] = C::new(T::zero(), T::zero());
    m[(q, p)] = C::new(T::zero(), T::zero());
    m[(p, p)] = C::new(m[(p, p)].re, T::zero());
    m[(q, q)] = C::new(m[(q, q)].re, T::zero());

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * upp + vkq * uqp;
        v[(k, q)] = vkp * upq + vkq * uqq;
    }
}
