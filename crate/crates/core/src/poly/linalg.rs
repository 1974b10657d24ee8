use alloc::vec::Vec;

use crate::field::Field;
use crate::{Error, Result};

/// A 3x3 matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix3<E> {
    pub rows: [[E; 3]; 3],
}

impl<E: Clone + PartialEq> Matrix3<E> {
    pub fn new(rows: [[E; 3]; 3]) -> Self {
        Matrix3 { rows }
    }

    pub fn from_ints<F: Field<Elem = E>>(rows: [[i64; 3]; 3], field: &F) -> Self {
        Matrix3 { rows: rows.map(|r| r.map(|x| field.from_i64(x))) }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F) -> Self {
        Matrix3 {
            rows: core::array::from_fn(|i| core::array::from_fn(|j| if i == j { field.one() } else { field.zero() })),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> Self {
        Matrix3 { rows: core::array::from_fn(|i| core::array::from_fn(|j| self.rows[j][i].clone())) }
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        Matrix3 {
            rows: core::array::from_fn(|i| {
                core::array::from_fn(|j| {
                    (0..3).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(&self.rows[i][k], &other.rows[k][j])))
                })
            }),
        }
    }

    pub fn apply<F: Field<Elem = E>>(&self, v: &[E; 3], field: &F) -> [E; 3] {
        core::array::from_fn(|i| (0..3).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(&self.rows[i][k], &v[k]))))
    }

    fn minor<F: Field<Elem = E>>(&self, r0: usize, r1: usize, c0: usize, c1: usize, field: &F) -> E {
        let m = &self.rows;
        field.sub(&field.mul(&m[r0][c0], &m[r1][c1]), &field.mul(&m[r0][c1], &m[r1][c0]))
    }

    /// Cofactor `(-1)^{i+j}` times the complementary 2x2 minor.
    fn cofactor<F: Field<Elem = E>>(&self, i: usize, j: usize, field: &F) -> E {
        let (r0, r1) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let (c0, c1) = match j {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let m = self.minor(r0, r1, c0, c1, field);
        if (i + j) % 2 == 0 {
            m
        } else {
            field.neg(&m)
        }
    }

    pub fn det<F: Field<Elem = E>>(&self, field: &F) -> E {
        (0..3).fold(field.zero(), |acc, j| field.add(&acc, &field.mul(&self.rows[0][j], &self.cofactor(0, j, field))))
    }

    pub fn adjugate<F: Field<Elem = E>>(&self, field: &F) -> Self {
        Matrix3 { rows: core::array::from_fn(|i| core::array::from_fn(|j| self.cofactor(j, i, field))) }
    }

    pub fn map<F2: Field>(&self, f: impl Fn(&E) -> F2::Elem) -> Matrix3<F2::Elem> {
        Matrix3 { rows: core::array::from_fn(|i| core::array::from_fn(|j| f(&self.rows[i][j]))) }
    }
}

/// Inverse through the adjugate. The result is checked against both
/// `A A^-1 = I` and `A^-1 A = I`.
pub fn invert3<F: Field>(a: &Matrix3<F::Elem>, field: &F) -> Result<Matrix3<F::Elem>> {
    let det = a.det(field);
    let det_inv = field.inv(&det).ok_or_else(|| Error::SingularMatrix { det: field.render(&det) })?;
    let adj = a.adjugate(field);
    let inv = Matrix3 { rows: adj.rows.map(|r| r.map(|x| field.mul(&x, &det_inv))) };
    let id = Matrix3::identity(field);
    if a.mul(&inv, field) != id || inv.mul(a, field) != id {
        return Err(Error::InternalContradiction("adjugate inverse failed the round-trip check".into()));
    }
    Ok(inv)
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn determinant<F: Field>(mut m: Vec<Vec<F::Elem>>, field: &F) -> F::Elem {
    let n = m.len();
    let mut det = field.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !field.is_zero(&m[r][col])) else {
            return field.zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = field.neg(&det);
        }
        let pv = m[col][col].clone();
        det = field.mul(&det, &pv);
        let pinv = field.inv(&pv).expect("nonzero pivot");
        for r in col + 1..n {
            if field.is_zero(&m[r][col]) {
                continue;
            }
            let factor = field.mul(&m[r][col], &pinv);
            let (top, bottom) = m.split_at_mut(r);
            let pivot_row = &top[col];
            for (x, pvx) in bottom[0][col..].iter_mut().zip(&pivot_row[col..]) {
                *x = field.sub(x, &field.mul(&factor, pvx));
            }
        }
    }
    det
}
