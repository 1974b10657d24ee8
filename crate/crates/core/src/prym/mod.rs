//! The constructions: validation of `C : y^4 - h y^2 + f g = 0`, the split
//! into the genus-1 quotient `D` and the genus-2 curve `X`, the singular
//! model `q2^2 = q1 q3` with its double cover, the Gram pencil sextic and the
//! deformation to a smooth unramified double cover.

mod bruin;
mod curve;
mod split;

pub use bruin::{deform, pencil_sextic, singular_model, BruinCover, DeformationPencil, SingularModel, TernaryQuadratic};
pub use curve::{validate, BiellipticQuartic, Check, ValidationReport, VALIDATION_SEED};
pub use split::{genus_one_model, split, GenusOneModel, SplitResult};
