//! Wave-particle complementarity for multipartite qudit states.
//!
//! The crate computes predictability, coherence and correlation measures of a
//! subsystem and assembles them into complete complementarity relations
//! (CCRs): for a globally pure state, predictability + local coherence +
//! correlation term equals a constant fixed by the subsystem dimension.
//!
//! All numerics are generic over a [`Real`] scalar (`f32` or `f64`). The
//! `*64` / `*32` aliases below pin the common choices.
//!
//! ```
//! use ccrkit::{build, ccr_hs, FactoryParams};
//!
//! let w = build(&FactoryParams::WState { p: 0.4_f64 }).unwrap().density();
//! let report = ccr_hs(&w, 0).unwrap();
//! assert!(report.residual.abs() < 1e-12);
//! ```

pub mod ccr;
pub mod eigen;
pub mod error;
pub mod matrix;
pub mod measures;
pub mod scalar;
pub mod signature;
pub mod states;
pub mod tensor;
pub mod tolerance;

pub use ccr::{
    ccr, ccr_all_targets, ccr_hs, ccr_hs_with, ccr_inequality_gap, ccr_mixedness, ccr_vn, ccr_vn_with, CcrFlavor,
    CcrReport,
};
pub use eigen::{hermitian_spectrum, Spectrum};
pub use error::{Error, Result};
pub use matrix::CMatrix;
pub use measures::{
    coherence, coherence_hs, coherence_l1, coherence_re, concurrence_generalized, correlated_coherence,
    correlated_coherence_parts, hs_bound, nonlocal_coherence_hs_direct, nonlocal_coherence_hs_direct_with,
    nonlocal_coherence_hs_via_entropy, nonlocal_coherence_hs_via_entropy_with, nonlocal_direct_sum,
    pairwise_correlated_coherence, predictability_hs, predictability_l1, predictability_vn,
    satisfies_offdiag_conditions, satisfies_offdiag_conditions_with, Bipartition, CoherenceKind, MeasureKind,
    MeasureValue,
};
pub use scalar::{Real, C};
pub use signature::DimensionSignature;
pub use states::{build, haar_random_pure, BuiltState, FactoryParams, HaarStream, RandomSpec, FACTORY_NAMES};
pub use tensor::{
    density_from_pure, dephased, linear_entropy, partial_trace, purify, purify_with, purity, tensor_product,
    tensor_product_with, von_neumann_entropy, DensityOperator, PureState,
};
pub use tolerance::Tolerances;

pub type Complex64 = C<f64>;
pub type Complex32 = C<f32>;
pub type CMatrix64 = CMatrix<f64>;
pub type CMatrix32 = CMatrix<f32>;
pub type PureState64 = PureState<f64>;
pub type PureState32 = PureState<f32>;
pub type DensityOperator64 = DensityOperator<f64>;
pub type DensityOperator32 = DensityOperator<f32>;
pub type Spectrum64 = Spectrum<f64>;
pub type MeasureValue64 = MeasureValue<f64>;
pub type CcrReport64 = CcrReport<f64>;
pub type FactoryParams64 = FactoryParams<f64>;
