//! Sylvester resultants.
//!
//! Convention: the Sylvester matrix of `p` (formal degree `m`) and `q`
//! (formal degree `n`) has `n` shifted rows of `p` above `m` shifted rows of
//! `q`, coefficients highest degree first, so `Res(x - a, x - b) = a - b`.

use alloc::vec;
use alloc::vec::Vec;

use super::{determinant, BinaryForm, UniPoly};
use crate::field::Field;
use crate::{Error, Result};

/// Determinant of the Sylvester matrix of two coefficient vectors given
/// highest degree first. Leading zeros are kept, so this is the homogeneous
/// resultant of the corresponding binary forms.
pub fn sylvester_determinant<F: Field>(p_high: &[F::Elem], q_high: &[F::Elem], field: &F) -> F::Elem {
    let m = p_high.len().saturating_sub(1);
    let n = q_high.len().saturating_sub(1);
    let size = m + n;
    if size == 0 {
        return field.one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![field.zero(); size];
        row[i..i + p_high.len()].clone_from_slice(p_high);
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![field.zero(); size];
        row[i..i + q_high.len()].clone_from_slice(q_high);
        rows.push(row);
    }
    determinant(rows, field)
}

/// `Res(p, q)` for univariate polynomials at their actual degrees.
///
/// A zero argument gives 0 unless the other one is a nonzero constant, in
/// which case the empty Sylvester matrix gives 1.
pub fn resultant<F: Field>(p: &UniPoly<F::Elem>, q: &UniPoly<F::Elem>, field: &F) -> Result<F::Elem> {
    match (p.degree(), q.degree()) {
        (None, None) => Err(Error::UndefinedResultant),
        (None, Some(0)) | (Some(0), None) => Ok(field.one()),
        (None, _) | (_, None) => Ok(field.zero()),
        _ => {
            let ph: Vec<F::Elem> = p.coeffs().iter().rev().cloned().collect();
            let qh: Vec<F::Elem> = q.coeffs().iter().rev().cloned().collect();
            Ok(sylvester_determinant(&ph, &qh, field))
        }
    }
}

/// Resultant of two binary forms at their formal degrees.
pub fn homogeneous_resultant<F: Field>(p: &BinaryForm<F::Elem>, q: &BinaryForm<F::Elem>, field: &F) -> F::Elem {
    sylvester_determinant(p.coeffs(), q.coeffs(), field)
}
