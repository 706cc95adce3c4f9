//! Exact transition matrices, dense eigendecomposition and the relaxation
//! time comparisons between the switch, edge-switch and Curveball chains.

pub mod compare;
pub mod dense;
pub mod eigen;
pub mod johnson;
pub mod props;
pub mod tensor;
pub mod transition;

pub use compare::{
    check_heatbath_condition, ktv_block_bound, ktv_block_min_eigenvalue, verify_edge_comparison,
    verify_k_curveball_bounds, verify_ktv_nonneg, verify_regular_bounds, verify_relaxation_comparison, BlockSpectrum,
    ComparisonReport, FrameworkCase, Inequality,
};
pub use dense::DenseMatrix;
pub use eigen::{eigendecompose_symmetric, eigenvalues_symmetric, psd_check, EigenDecomposition, Spectrum};
pub use johnson::{johnson_adjacency, johnson_min_bound, johnson_spectrum, JohnsonSpectrum};
pub use props::{
    dirichlet_equivalence_check, eigen_difference_check, lazy_relaxation_check, random_reversible_chain,
    DirichletVerdict, EigenDifferenceVerdict, LazyVerdict,
};
pub use tensor::{kappa_block_matrix, tensor_block_matrix, tensor_block_spectrum};
pub use transition::{
    build_heat_bath, build_transition, decompose_edge_switch, decompose_switch, row_pair_partitions, SwitchBlock,
    SwitchDecomposition, TransitionMatrix, MAX_KCURVEBALL_ROWS,
};

use crate::error::Result;

/// Tolerance for eigenvalue comparisons and the symmetry precondition.
pub const EIGEN_TOL: f64 = 1e-9;

/// Relative tolerance for the theorem inequalities.
pub const CHECK_TOL: f64 = 1e-9;

/// Eigenvalues and relaxation data of a symmetric stochastic matrix.
pub fn spectral_report(p: &TransitionMatrix) -> Result<Spectrum> {
    dense_report(&p.to_dense())
}

pub fn dense_report(p: &DenseMatrix) -> Result<Spectrum> {
    let e = eigendecompose_symmetric(p, EIGEN_TOL)?;
    Ok(Spectrum::from_eigenvalues(e.values, e.residual))
}
