//! Named example states and a Haar-random pure state sampler.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{creal, czero, Real, C};
use crate::signature::DimensionSignature;
use crate::tensor::{density_from_pure, DensityOperator, PureState};

/// Parameters of the example state families.
#[derive(Debug, Clone, PartialEq)]
pub enum FactoryParams<T> {
    /// `w |psi><psi| + (1-w)/2 I` with `|psi> = x|0> + sqrt(1-x^2)|1>`.
    WernerLike { w: T, x: T },
    /// `x|0,1> + sqrt(1-x^2)|1,0>`.
    BipartiteX { x: T },
    /// Two qutrits, `x/sqrt2 (|0,0> + |1,1>) + sqrt(1-x^2)|2,2>`.
    QutritJb { x: T },
    /// `a000|0,0,0> + a111|1,1,1>`, rescaled to unit norm.
    Ghz { a000: C<T>, a111: C<T> },
    /// `sqrt(1-p)|0,0,1> + sqrt(p/2)|0,1,0> + sqrt(p/2)|1,0,0>`.
    WState { p: T },
    /// Amplitudes on `|000>, |001>, |010>, |100>, |111>`, rescaled to unit norm.
    FiveTerm { lambda: [C<T>; 5] },
    /// Amplitudes on `|000>, |011>, |100>, |111>`, rescaled to unit norm.
    Acin { lambda: [C<T>; 4] },
}

impl<T> FactoryParams<T> {
    /// Command-line name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            FactoryParams::WernerLike { .. } => "werner",
            FactoryParams::BipartiteX { .. } => "bipartite-x",
            FactoryParams::QutritJb { .. } => "qutrit-jb",
            FactoryParams::Ghz { .. } => "ghz",
            FactoryParams::WState { .. } => "w",
            FactoryParams::FiveTerm { .. } => "five-term",
            FactoryParams::Acin { .. } => "acin",
        }
    }
}

/// Every factory variant name accepted on the command line.
pub const FACTORY_NAMES: [&str; 7] = ["werner", "bipartite-x", "qutrit-jb", "ghz", "w", "five-term", "acin"];

/// Output of [`build`]: the mixed Werner-like family is the only non-pure one.
#[derive(Debug, Clone, PartialEq)]
pub enum BuiltState<T> {
    Pure(PureState<T>),
    Mixed(DensityOperator<T>),
}

impl<T: Real> BuiltState<T> {
    pub fn density(&self) -> DensityOperator<T> {
        match self {
            BuiltState::Pure(psi) => density_from_pure(psi),
            BuiltState::Mixed(rho) => rho.clone(),
        }
    }

    pub fn as_pure(&self) -> Option<&PureState<T>> {
        match self {
            BuiltState::Pure(psi) => Some(psi),
            BuiltState::Mixed(_) => None,
        }
    }

    pub fn signature(&self) -> &DimensionSignature {
        match self {
            BuiltState::Pure(psi) => psi.signature(),
            BuiltState::Mixed(rho) => rho.signature(),
        }
    }
}

fn unit_interval<T: Real>(name: &'static str, v: T) -> Result<T> {
    if v >= T::zero() && v <= T::one() {
        Ok(v)
    } else {
        Err(Error::validation("parameter range", format!("{name} = {v} is outside [0, 1]")))
    }
}

fn sparse_pure<T: Real>(dims: &[usize], terms: &[(&[usize], C<T>)]) -> Result<PureState<T>> {
    let sig = DimensionSignature::new(dims.to_vec())?;
    let mut amps = vec![czero(); sig.total()];
    for (digits, a) in terms {
        amps[sig.flatten(digits)] = *a;
    }
    PureState::normalized(sig, amps)
}

/// Build the requested example state in the computational basis.
pub fn build<T: Real>(params: &FactoryParams<T>) -> Result<BuiltState<T>> {
    let one = T::one();
    let sqrt = |v: T| creal(v.max(T::zero()).sqrt());
    match params {
        FactoryParams::WernerLike { w, x } => {
            let w = unit_interval("w", *w)?;
            let x = unit_interval("x", *x)?;
            let psi = [creal(x), sqrt(one - x * x)];
            let proj = CMatrix::outer(&psi, &psi);
            let half_mix = (one - w) / T::lit(2.0);
            let m = CMatrix::from_fn(2, |i, j| {
                let noise = if i == j { creal(half_mix) } else { czero() };
                proj[(i, j)].scale(w) + noise
            });
            Ok(BuiltState::Mixed(DensityOperator::new(DimensionSignature::new(vec![2])?, m)?))
        }
        FactoryParams::BipartiteX { x } => {
            let x = unit_interval("x", *x)?;
            sparse_pure(&[2, 2], &[(&[0, 1], creal(x)), (&[1, 0], sqrt(one - x * x))]).map(BuiltState::Pure)
        }
        FactoryParams::QutritJb { x } => {
            let x = unit_interval("x", *x)?;
            let a = creal(x / T::SQRT_2());
            sparse_pure(&[3, 3], &[(&[0, 0], a), (&[1, 1], a), (&[2, 2], sqrt(one - x * x))]).map(BuiltState::Pure)
        }
        FactoryParams::Ghz { a000, a111 } => {
            sparse_pure(&[2, 2, 2], &[(&[0, 0, 0], *a000), (&[1, 1, 1], *a111)]).map(BuiltState::Pure)
        }
        FactoryParams::WState { p } => {
            let p = unit_interval("p", *p)?;
            let half = sqrt(p / T::lit(2.0));
            sparse_pure(&[2, 2, 2], &[(&[0, 0, 1], sqrt(one - p)), (&[0, 1, 0], half), (&[1, 0, 0], half)])
                .map(BuiltState::Pure)
        }
        FactoryParams::FiveTerm { lambda: l } => sparse_pure(
            &[2, 2, 2],
            &[(&[0, 0, 0], l[0]), (&[0, 0, 1], l[1]), (&[0, 1, 0], l[2]), (&[1, 0, 0], l[3]), (&[1, 1, 1], l[4])],
        )
        .map(BuiltState::Pure),
        FactoryParams::Acin { lambda: l } => sparse_pure(
            &[2, 2, 2],
            &[(&[0, 0, 0], l[0]), (&[0, 1, 1], l[1]), (&[1, 0, 0], l[2]), (&[1, 1, 1], l[3])],
        )
        .map(BuiltState::Pure),
    }
}

/// Seeded request for a stream of Haar-random pure states.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomSpec {
    pub signature: DimensionSignature,
    pub seed: u64,
    pub count: usize,
}

/// Deterministic iterator of Haar-random pure states.
///
/// Amplitudes are i.i.d. standard complex Gaussians (Box-Muller on a
/// ChaCha8 stream seeded from the 64-bit seed), then normalised.
pub struct HaarStream<T> {
    signature: DimensionSignature,
    rng: ChaCha8Rng,
    remaining: usize,
    _scalar: std::marker::PhantomData<T>,
}

/// Norms below this are redrawn before normalising.
const MIN_DRAW_NORM: f64 = 1e-6;

pub fn haar_random_pure<T: Real>(spec: &RandomSpec) -> HaarStream<T> {
    HaarStream {
        signature: spec.signature.clone(),
        rng: ChaCha8Rng::seed_from_u64(spec.seed),
        remaining: spec.count,
        _scalar: std::marker::PhantomData,
    }
}

/// One standard complex Gaussian: real and imaginary parts each `N(0, 1)`.
fn complex_gaussian(rng: &mut impl Rng) -> (f64, f64) {
    // u1 in (0, 1] keeps the logarithm finite
    let u1 = 1.0 - rng.random::<f64>();
    let u2 = rng.random::<f64>();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = std::f64::consts::TAU * u2;
    (r * theta.cos(), r * theta.sin())
}

impl<T: Real> HaarStream<T> {
    fn draw(&mut self) -> PureState<T> {
        let d = self.signature.total();
        loop {
            let raw: Vec<(f64, f64)> = (0..d).map(|_| complex_gaussian(&mut self.rng)).collect();
            let norm = raw.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
            if norm < MIN_DRAW_NORM {
                continue;
            }
            let amps: Vec<C<T>> = raw.iter().map(|&(a, b)| C::new(T::lit(a / norm), T::lit(b / norm))).collect();
            // renormalise in the working precision
            let n: T = amps.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt();
            let amps = amps.into_iter().map(|a| a.unscale(n)).collect();
            return PureState::from_parts_unchecked(self.signature.clone(), amps);
        }
    }
}

impl<T: Real> Iterator for HaarStream<T> {
    type Item = PureState<T>;

    fn next(&mut self) -> Option<PureState<T>> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        Some(self.draw())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl<T: Real> ExactSizeIterator for HaarStream<T> {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{partial_trace, purity};

    fn c(re: f64) -> C<f64> {
        C::new(re, 0.0)
    }

    #[test]
    fn werner_at_zero_weight_is_maximally_mixed() {
        for &x in &[0.0, 0.37, 1.0] {
            let rho = build(&FactoryParams::WernerLike { w: 0.0, x }).unwrap().density();
            assert!(rho.matrix().max_abs_diff(&CMatrix::from_diagonal(&[0.5, 0.5])) < 1e-15);
        }
    }

    #[test]
    fn w_state_limit() {
        let psi = build(&FactoryParams::WState { p: 1.0 }).unwrap();
        let psi = psi.as_pure().unwrap();
        let h = 0.5f64.sqrt();
        assert!((psi.amplitude(&[0, 1, 0]) - c(h)).norm() < 1e-15);
        assert!((psi.amplitude(&[1, 0, 0]) - c(h)).norm() < 1e-15);
        assert_eq!(psi.amplitude(&[0, 0, 1]), c(0.0));
    }

    #[test]
    fn qutrit_jb_limit() {
        let built = build(&FactoryParams::QutritJb { x: 1.0 }).unwrap();
        let psi = built.as_pure().unwrap();
        assert_eq!(psi.signature().dims(), &[3, 3]);
        let h = 0.5f64.sqrt();
        assert!((psi.amplitude(&[0, 0]) - c(h)).norm() < 1e-15);
        assert!((psi.amplitude(&[1, 1]) - c(h)).norm() < 1e-15);
        assert_eq!(psi.amplitude(&[2, 2]), c(0.0));
    }

    #[test]
    fn out_of_range_parameters() {
        let e = build(&FactoryParams::WState { p: 1.5 }).unwrap_err();
        assert_eq!(e.invariant(), Some("parameter range"));
        assert!(build(&FactoryParams::WernerLike { w: -0.1, x: 0.5 }).is_err());
        assert!(build(&FactoryParams::BipartiteX { x: f64::NAN }).is_err());
        assert!(build(&FactoryParams::<f64>::Ghz { a000: c(0.0), a111: c(0.0) }).is_err());
    }

    #[test]
    fn lambda_sets_are_normalised() {
        let built = build(&FactoryParams::Acin { lambda: [c(1.0), c(1.0), c(1.0), c(1.0)] }).unwrap();
        let psi = built.as_pure().unwrap();
        assert!((psi.amplitude(&[0, 1, 1]) - c(0.5)).norm() < 1e-15);
        let ghz = build(&FactoryParams::Ghz { a000: c(0.7), a111: c(0.7) }).unwrap();
        assert!((purity(&ghz.density()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn werner_family_is_valid_on_grid() {
        for i in 0..=10 {
            for j in 0..=10 {
                let p = FactoryParams::WernerLike { w: i as f64 / 10.0, x: j as f64 / 10.0 };
                assert!(build(&p).is_ok(), "{p:?}");
            }
        }
    }

    #[test]
    fn haar_stream_is_deterministic_and_normalised() {
        let spec = RandomSpec { signature: DimensionSignature::new(vec![2, 2]).unwrap(), seed: 9, count: 50 };
        let a: Vec<_> = haar_random_pure::<f64>(&spec).collect();
        let b: Vec<_> = haar_random_pure::<f64>(&spec).collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 50);
        for psi in &a {
            let n: f64 = psi.amplitudes().iter().map(|z| z.norm_sqr()).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
        let other: Vec<_> = haar_random_pure::<f64>(&RandomSpec { seed: 10, ..spec }).collect();
        assert_ne!(a, other);
    }

    #[test]
    fn ghz_reduced_state_is_diagonal() {
        let h = 0.5f64.sqrt();
        let rho = build(&FactoryParams::Ghz { a000: c(h), a111: c(h) }).unwrap().density();
        let b = partial_trace(&rho, &[1]).unwrap();
        assert!(b.matrix().max_abs_diff(&CMatrix::from_diagonal(&[0.5, 0.5])) < 1e-15);
    }
}
