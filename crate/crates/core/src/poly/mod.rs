//! Polynomials and forms over an arbitrary [`Field`](crate::Field), exact
//! 3x3 linear algebra, resultants and discriminants.

mod binary;
mod linalg;
mod macaulay;
mod resultant;
mod ternary;
mod uni;

pub use binary::{binary_discriminant_factor, discriminant_binary, discriminant_classical, squarefree_form, BinaryForm};
pub use linalg::{determinant, invert3, Matrix3};
pub use macaulay::{
    disc_ternary_quartic, macaulay_resultant, macaulay_resultant_cubics, partials_resultant, partials_resultant_euler, DISC_NORMALIZATION_POWER_OF_FOUR,
    MACAULAY_RETRIES,
};
pub use resultant::{homogeneous_resultant, resultant, sylvester_determinant};
pub use ternary::TernaryForm;
pub use uni::UniPoly;
