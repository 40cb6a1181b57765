//! Dynamics of the map `a -> f(a)`: functional graph and cycles, periods of
//! the sequence `a_n = f^(n)(a_0)`, the order of A(f), and diagonalization
//! of A(f) over an extension field.

mod diagonal;
mod graph;
mod period;

pub use diagonal::{
    char_poly, diagonalize, eigen_residual_check, eigenvalues_in_base, eigenvector_rank,
    extension_for_cycles, Diagonalization, EigenOrigin, EigenPair,
};
pub use graph::{CycleDecomposition, FunctionalGraph};
pub use period::{
    global_period, matrix_order, matrix_order_within, sequence_period,
    sequence_period_by_iteration, sequence_period_in, SequenceAnalysis,
};
