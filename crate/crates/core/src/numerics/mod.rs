//! Special functions, the dense symmetric eigensolver and a 1-D line search.

mod eigen;
mod optimize;
mod special;

pub use eigen::{sym_eigh, sym_eigvals, EigDecomposition, SymmetricMatrix};
pub use optimize::{golden_section_max, golden_section_min};
pub(crate) use special::laguerre_scaled;
pub use special::{laguerre_assoc, log_factorial, INDEX_CEILING};
