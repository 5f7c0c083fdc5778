//! Finite-dimensional Hopf *-algebras given by structure constants.

mod algebra;
mod blocks;
mod dual;
mod groups;
mod haar;

pub use algebra::{flip, middle_swap, FiniteHopfStarAlgebra};
pub use blocks::{block_decompose, block_residuals, Block, BlockResiduals, BlockStructure, DEFAULT_SEED};
pub use dual::{
    dual, dual_right_haar, dual_right_invariance_residual, fourier, fourier_inv, group_like_residual,
    group_like_unitaries, plancherel_residual, DualAlgebra,
};
pub use groups::{function_algebra, group_algebra, FiniteGroup};
pub use haar::{
    haar_left, left_integral, left_invariance_residual, modular_residual, normalization_residual, HaarData,
    Normalization,
};
