//! Classic and sloped (chaotic) Haar wavelets.

mod functions;
mod matrix;
mod transform;

pub use functions::{phi, project_1d, psi, sloped_coeffs, trapezoid_piecewise, SlopedCoeffs};
pub use matrix::{
    build_level_matrix, classic_haar_matrix, level_matrix_from_lambdas, level_slot_count, pyramid_matrix_from_lambdas,
    pyramid_slot_count, HaarMatrix, Normalization, MAX_REDRAWS, MIN_ABS_DET,
};
pub use transform::{
    decompose, forward_2d, inverse_2d, level_matrices, merge_subbands, reconstruct, rescale_to_gray, split_subbands,
    Decomposition, SubBands,
};
