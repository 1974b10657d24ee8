use alloc::string::String;
use alloc::vec::Vec;

use crate::prym::Check;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operation needs a finite field")]
    UnsupportedField,
    #[error("matrix is singular (det = {det})")]
    SingularMatrix { det: String },
    #[error("resultant of two zero polynomials is undefined")]
    UndefinedResultant,
    #[error("form of degree {degree} is too small (need at least {min})")]
    Degree { degree: usize, min: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("input rejected by validation: {}", join_checks(.failed))]
    Rejected { failed: Vec<Check> },
    #[error("model error: {0}")]
    Model(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("inconsistent point counts: {0}")]
    InconsistentCounts(String),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

fn join_checks(failed: &[Check]) -> String {
    let mut out = String::new();
    for (i, c) in failed.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(c.name());
    }
    out
}
