use crate::field::Field;
use crate::poly::{invert3, squarefree_form, BinaryForm, Matrix3, UniPoly};
use crate::{Error, Result};

use super::curve::BiellipticQuartic;

/// The genus-1 quotient `D' : Y^2 = s(x, z)`, `s = h^2 - 4fg`, `Y = 2y^2 - h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusOneModel<E> {
    pub s: BinaryForm<E>,
}

pub fn genus_one_model<F: Field>(curve: &BiellipticQuartic<F>) -> GenusOneModel<F::Elem> {
    GenusOneModel { s: curve.s() }
}

/// Output of [`split`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult<E> {
    pub a_matrix: Matrix3<E>,
    pub det_a: E,
    pub a_inverse: Matrix3<E>,
    /// `a = a1 + 2 a2 x + a3 x^2` from the first column of `A^{-1}`.
    pub a: UniPoly<E>,
    pub b: UniPoly<E>,
    pub c: UniPoly<E>,
    /// `F = b (b^2 - a c)`; the genus-2 curve is `X : y^2 = F(x)` in `P(1,3,1)`.
    pub sextic: UniPoly<E>,
    pub genus_one: GenusOneModel<E>,
    /// Whether `F`, read as a binary sextic, has distinct roots in `P^1`.
    pub x_squarefree: bool,
    /// Whether the hypotheses were checked (and passed) before splitting.
    pub validated: bool,
}

impl<E: Clone + PartialEq> SplitResult<E> {
    /// Degree-6 homogenization of the sextic.
    pub fn sextic_form<F: Field<Elem = E>>(&self, field: &F) -> Option<BinaryForm<E>> {
        BinaryForm::homogenize(&self.sextic, 6, field)
    }
}

fn column_poly<F: Field>(inv: &Matrix3<F::Elem>, col: usize, field: &F) -> UniPoly<F::Elem> {
    let two = field.from_i64(2);
    UniPoly::new(
        alloc::vec![inv.get(0, col).clone(), field.mul(&two, inv.get(1, col)), inv.get(2, col).clone()],
        field,
    )
}

/// Computes `D` and `X` from `C`.
///
/// With `skip_validation` the hypotheses are not checked; `A` must still be
/// invertible.
pub fn split<F: Field>(curve: &BiellipticQuartic<F>, skip_validation: bool) -> Result<SplitResult<F::Elem>> {
    let k = &curve.field;
    if !skip_validation {
        let report = curve.validate()?;
        if !report.passed() {
            return Err(Error::Rejected { failed: report.failed_checks() });
        }
    }
    let a_matrix = curve.coefficient_matrix();
    let det_a = a_matrix.det(k);
    let a_inverse = invert3(&a_matrix, k)?;
    let a = column_poly(&a_inverse, 0, k);
    let b = column_poly(&a_inverse, 1, k);
    let c = column_poly(&a_inverse, 2, k);
    let disc_part = b.mul(&b, k).sub(&a.mul(&c, k), k);
    let sextic = b.mul(&disc_part, k);
    let expanded = b.pow(3, k).sub(&a.mul(&b, k).mul(&c, k), k);
    if expanded != sextic {
        return Err(Error::InternalContradiction("b(b^2 - ac) != b^3 - abc".into()));
    }
    let x_squarefree = match BinaryForm::homogenize(&sextic, 6, k) {
        Some(form) if !form.is_zero(k) => squarefree_form(&form, k)?,
        _ => false,
    };
    if !skip_validation && sextic.degree().map_or(true, |d| d < 5) {
        return Err(Error::InternalContradiction("validated curve produced a sextic of degree < 5".into()));
    }
    Ok(SplitResult {
        a_matrix,
        det_a,
        a_inverse,
        a,
        b,
        c,
        sextic,
        genus_one: genus_one_model(curve),
        x_squarefree,
        validated: !skip_validation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn identity_matrix_example() {
        let q = Rationals;
        let c = BiellipticQuartic::from_ints(q, [1, 0, 0], [0, 0, 1], [0, 1, 0]).unwrap();
        let r = split(&c, true).unwrap();
        // a = 1, b = 2x, c = x^2: F = 2x(4x^2 - x^2) = 6x^3
        assert_eq!(r.a, UniPoly::from_ints(&[1], &q));
        assert_eq!(r.b, UniPoly::from_ints(&[0, 2], &q));
        assert_eq!(r.c, UniPoly::from_ints(&[0, 0, 1], &q));
        assert_eq!(r.sextic, UniPoly::from_ints(&[0, 0, 0, 6], &q));
        assert!(!r.x_squarefree);
        assert!(matches!(split(&c, false), Err(Error::Rejected { .. })));
    }

    #[test]
    fn worked_rational_example() {
        let q = Rationals;
        let c = BiellipticQuartic::from_ints(q, [0, 1, 0], [1, 1, 1], [1, 0, -1]).unwrap();
        let r = split(&c, false).unwrap();
        // A^{-1} = [[-1/2, 1/2, 1/2], [1, 0, 0], [-1/2, -1/2, 1/2]]
        let half = |n: i64| num_rational::BigRational::new(n.into(), 2.into());
        assert_eq!(r.a, UniPoly::new(alloc::vec![half(-1), q.from_i64(2), half(-1)], &q));
        assert_eq!(r.b, UniPoly::new(alloc::vec![half(1), q.zero(), half(-1)], &q));
        assert_eq!(r.c, UniPoly::new(alloc::vec![half(1), q.zero(), half(1)], &q));
        assert_eq!(r.sextic.degree(), Some(6));
        assert!(r.x_squarefree);
    }

    #[test]
    fn singular_matrix_is_an_error_even_unvalidated() {
        let c = BiellipticQuartic::from_ints(Rationals, [0, 1, 0], [1, 1, 1], [1, 2, 1]).unwrap();
        assert!(matches!(split(&c, true), Err(Error::SingularMatrix { .. })));
    }
}
