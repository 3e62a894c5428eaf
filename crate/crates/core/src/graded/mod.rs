//! Free graded k[t]-modules and homogeneous linear algebra.

pub mod basis;
pub mod echelon;
pub mod element;
pub mod matrix;
pub mod snf;
pub mod sparse;

pub use basis::GradedBasis;
pub use echelon::{free_kernel, membership, normal_form, row_echelon, solve, Echelon};
pub use element::HomogeneousElement;
pub use matrix::GradedMatrix;
pub use snf::{graded_snf, SnfResult};
