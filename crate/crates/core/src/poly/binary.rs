use alloc::vec::Vec;

use super::{homogeneous_resultant, UniPoly};
use crate::field::Field;
use crate::{Error, Result};

/// Homogeneous form of degree `n` in `(x, z)`: `sum c_i x^{n-i} z^i`.
///
/// The coefficient vector always has length `n + 1`. Vanishing leading
/// coefficients are meaningful: they are roots at `z = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> BinaryForm<E> {
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<E>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn from_ints<F: Field<Elem = E>>(coeffs: &[i64], field: &F) -> Self {
        Self::new(coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero<F: Field<Elem = E>>(degree: usize, field: &F) -> Self {
        Self::new(alloc::vec![field.zero(); degree + 1])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `c_0 .. c_n`, `c_0` the coefficient of `x^n`.
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degrees");
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| field.add(a, b)).collect())
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        assert_eq!(self.degree(), other.degree(), "subtracting forms of different degrees");
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| field.sub(a, b)).collect())
    }

    pub fn scale<F: Field<Elem = E>>(&self, s: &E, field: &F) -> Self {
        Self::new(self.coeffs.iter().map(|c| field.mul(c, s)).collect())
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        let mut out = alloc::vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Self::new(out)
    }

    pub fn eval<F: Field<Elem = E>>(&self, x: &E, z: &E, field: &F) -> E {
        let n = self.degree() as u64;
        self.coeffs.iter().enumerate().fold(field.zero(), |acc, (i, c)| {
            let term = field.mul(c, &field.mul(&field.pow(x, n - i as u64), &field.pow(z, i as u64)));
            field.add(&acc, &term)
        })
    }

    /// `F(x, 1)`.
    pub fn dehomogenize<F: Field<Elem = E>>(&self, field: &F) -> UniPoly<E> {
        UniPoly::new(self.coeffs.iter().rev().cloned().collect(), field)
    }

    /// `z^n p(x/z)`; `None` if `deg p > n`.
    pub fn homogenize<F: Field<Elem = E>>(p: &UniPoly<E>, n: usize, field: &F) -> Option<Self> {
        if p.degree().is_some_and(|d| d > n) {
            return None;
        }
        Some(Self::new((0..=n).map(|i| p.coeff(n - i, field)).collect()))
    }

    /// `dF/dx`, a form of degree `n - 1`.
    pub fn partial_x<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let n = self.degree();
        if n == 0 {
            return Self::zero(0, field);
        }
        Self::new((0..n).map(|i| field.mul(&self.coeffs[i], &field.from_i64((n - i) as i64))).collect())
    }

    /// `dF/dz`, a form of degree `n - 1`.
    pub fn partial_z<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let n = self.degree();
        if n == 0 {
            return Self::zero(0, field);
        }
        Self::new((0..n).map(|j| field.mul(&self.coeffs[j + 1], &field.from_i64((j + 1) as i64))).collect())
    }

    pub fn map<F2: Field>(&self, f: impl Fn(&E) -> F2::Elem) -> BinaryForm<F2::Elem> {
        BinaryForm::new(self.coeffs.iter().map(f).collect())
    }
}

/// `Res(dF/dx, dF/dz)` of the two degree-`(n-1)` partials, as the
/// determinant of their full-length Sylvester matrix.
///
/// Vanishes iff `F` has a repeated root in `P^1`, as long as the
/// characteristic does not divide `n`.
pub fn discriminant_binary<F: Field>(form: &BinaryForm<F::Elem>, field: &F) -> Result<F::Elem> {
    let n = form.degree();
    if n < 2 {
        return Err(Error::Degree { degree: n, min: 2 });
    }
    Ok(homogeneous_resultant(&form.partial_x(field), &form.partial_z(field), field))
}

/// The integer `c_n` with `Res(dF/dx, dF/dz) = c_n * Disc(F)`, where `Disc`
/// is the classical discriminant `(-1)^{n(n-1)/2} Res(f, f') / lc(f)` of the
/// dehomogenization: `c_n = (-1)^{n(n-1)/2} n^{n-2}`.
pub fn binary_discriminant_factor(n: usize) -> i64 {
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    sign * (n as i64).pow(n.saturating_sub(2) as u32)
}

/// The classical discriminant, normalized from [`discriminant_binary`] by
/// [`binary_discriminant_factor`]. Needs the characteristic not to divide `n`.
pub fn discriminant_classical<F: Field>(form: &BinaryForm<F::Elem>, field: &F) -> Result<F::Elem> {
    let raw = discriminant_binary(form, field)?;
    let c = field.from_i64(binary_discriminant_factor(form.degree()));
    field
        .div(&raw, &c)
        .ok_or_else(|| Error::InvalidArgument("characteristic divides the degree; classical normalization undefined".into()))
}

/// No repeated root in `P^1`: `gcd(F(x,1), F'(x,1))` is constant and the
/// root at infinity, if any, is simple (`c_0 != 0` or `c_1 != 0`).
///
/// Unlike the discriminant this is valid in every characteristic.
pub fn squarefree_form<F: Field>(form: &BinaryForm<F::Elem>, field: &F) -> Result<bool> {
    if form.is_zero(field) {
        return Err(Error::DegenerateInput("zero binary form".into()));
    }
    let c = form.coeffs();
    if form.degree() >= 2 && field.is_zero(&c[0]) && field.is_zero(&c[1]) {
        return Ok(false);
    }
    let p = form.dehomogenize(field);
    let g = p.gcd(&p.derivative(field), field);
    Ok(g.degree() == Some(0))
}
