//! Exact linear algebra: scalar fields, dense matrices and integer Smith forms.

pub mod field;
pub mod matrix;
pub mod snf;

pub use field::{Field, Scalar};
pub use matrix::{rank_of_vectors, Echelon, Matrix};
pub use snf::{kernel_order_mod, smith_normal_form, IntMatrix, Smith};
