//! Tensor commutation matrices `U_{n⊗p}` and rectangular Gell-Mann systems.
//!
//! `U_{n⊗p}` is built three ways (column-stepping rule, sum of elementary
//! Kronecker products, rectangular Gell-Mann expansion) and every identity
//! relating them is checked mechanically by [`report::full_report`].

pub mod bench;
pub mod cli;
pub mod error;
pub mod gellmann;
pub mod io;
pub mod matrix;
pub mod report;
pub mod structure;
pub mod tcm;

pub use error::{Error, Result};
pub use gellmann::{padded_identity, rect_gellmann, square_gellmann, GellMannSystem, Orientation};
pub use matrix::{Complex, ComplexMatrix, DEFAULT_TOL};
pub use report::{full_report, Record, Status, VerificationReport};
pub use structure::{
    check_prop4, decompose_traceless_hermitian, gram, structure_constants, StructureConstants,
};
pub use tcm::{
    apply_swap, commutation_matrix, tail_identity, tcm_by_elementary, tcm_by_gellmann, tcm_by_rule,
    tcm_index, Method, PermutationSpec,
};
