//! Linear canonical wavelet transform toolkit.
//!
//! The crate implements a discrete linear canonical transform (LCT) engine,
//! construction of admissible analyzing wavelets in the LCT domain, the
//! forward/inverse wavelet transform over scale/shift grids, reproducing
//! kernel evaluation, and a verification harness for the concentration and
//! dispersion inequalities the transform satisfies.
//!
//! All numerics are generic over the scalar type through [`LcFloat`];
//! concrete aliases for the common instantiations are exported below.

pub mod canonical;
pub mod error;
pub mod float;
pub mod grid;
pub mod interp;
pub mod lct;
pub mod transform;
pub mod wavelet;

pub use canonical::{inner_product, CanonicalMatrix, SampledSignal};
pub use error::{LcwtError, Result};
pub use float::LcFloat;
pub use grid::{PlaneMeasureSet, ScaleShiftGrid};
pub use transform::{
    default_grid, default_grid_for_family, elementary_properties_check,
    inner_product_relation_check, lcwt_direct, lcwt_fast, reconstruct, reconstruct_onto,
    reproducing_kernel, ElementaryPropertiesReport, Reconstruction, ReproducingKernelValue,
    Scalogram,
};
pub use wavelet::{
    admissibility_constant, pair_admissibility, DaughterWavelet, LcWavelet, WaveletGridParams,
    WindowGeometry,
};
pub use lct::{
    ilct_fast, lct_b_zero, lct_direct, lct_fast, lct_kernel, parseval_check, LctSpectrum,
};

/// `f64` instantiations, the precision the verification suites run at.
pub type Matrix64 = CanonicalMatrix<f64>;
pub type Signal64 = SampledSignal<f64>;
pub type Spectrum64 = LctSpectrum<f64>;
pub type Grid64 = ScaleShiftGrid<f64>;

/// `f32` instantiations for storage- or throughput-bound callers.
pub type Matrix32 = CanonicalMatrix<f32>;
pub type Signal32 = SampledSignal<f32>;
pub type Spectrum32 = LctSpectrum<f32>;
pub type Grid32 = ScaleShiftGrid<f32>;
