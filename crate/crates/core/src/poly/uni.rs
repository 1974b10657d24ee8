use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

/// Dense univariate polynomial, constant term first, no trailing zeros.
///
/// The zero polynomial has no coefficients and [`degree`](Self::degree)
/// `None`, standing in for `-inf` so that `deg(pq) = deg p + deg q` holds
/// formally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> UniPoly<E> {
    pub fn new<F: Field<Elem = E>>(mut coeffs: Vec<E>, field: &F) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant<F: Field<Elem = E>>(c: E, field: &F) -> Self {
        Self::new(vec![c], field)
    }

    /// The monomial `x`.
    pub fn x<F: Field<Elem = E>>(field: &F) -> Self {
        UniPoly { coeffs: vec![field.zero(), field.one()] }
    }

    pub fn from_ints<F: Field<Elem = E>>(coeffs: &[i64], field: &F) -> Self {
        Self::new(coeffs.iter().map(|&c| field.from_i64(c)).collect(), field)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff<F: Field<Elem = E>>(&self, i: usize, field: &F) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| field.add(&self.coeff(i, field), &other.coeff(i, field))).collect();
        Self::new(c, field)
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| field.sub(&self.coeff(i, field), &other.coeff(i, field))).collect();
        Self::new(c, field)
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| field.neg(c)).collect() }
    }

    pub fn scale<F: Field<Elem = E>>(&self, s: &E, field: &F) -> Self {
        Self::new(self.coeffs.iter().map(|c| field.mul(c, s)).collect(), field)
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Self::new(out, field)
    }

    pub fn pow<F: Field<Elem = E>>(&self, e: u32, field: &F) -> Self {
        (0..e).fold(Self::constant(field.one(), field), |acc, _| acc.mul(self, field))
    }

    pub fn eval<F: Field<Elem = E>>(&self, x: &E, field: &F) -> E {
        self.coeffs.iter().rev().fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    pub fn derivative<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| field.mul(c, &field.from_i64(i as i64))).collect();
        Self::new(c, field)
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem<F: Field<Elem = E>>(&self, divisor: &Self, field: &F) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead_inv = field.inv(divisor.leading()?)?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![field.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = field.mul(&rem[top], &lead_inv);
            let shift = top - dd;
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = field.sub(&rem[shift + j], &field.mul(&c, dj));
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|x| field.is_zero(x)) {
                rem.pop();
            }
        }
        Some((Self::new(quot, field), Self::new(rem, field)))
    }

    pub fn monic<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.leading().and_then(|l| field.inv(l)) {
            Some(li) => self.scale(&li, field),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b, field).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(field)
    }

    pub fn map<F2: Field>(&self, f: impl Fn(&E) -> F2::Elem, target: &F2) -> UniPoly<F2::Elem> {
        UniPoly::new(self.coeffs.iter().map(f).collect(), target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaloisField, Rationals};

    #[test]
    fn degree_sentinel_is_additive() {
        let q = Rationals;
        let z = UniPoly::zero();
        let p = UniPoly::from_ints(&[1, 2, 3], &q);
        assert_eq!(z.degree(), None);
        assert!(p.mul(&z, &q).is_zero());
        assert_eq!(p.mul(&p, &q).degree(), Some(4));
        assert_eq!(UniPoly::from_ints(&[1, 0, 0], &q).degree(), Some(0));
    }

    #[test]
    fn division_and_gcd() {
        let f = GaloisField::prime(7).unwrap();
        let a = UniPoly::from_ints(&[-1, 0, 1], &f); // (x-1)(x+1)
        let b = UniPoly::from_ints(&[-1, 1], &f);
        let (quot, r) = a.div_rem(&b, &f).unwrap();
        assert!(r.is_zero());
        assert_eq!(quot, UniPoly::from_ints(&[1, 1], &f));
        let c = UniPoly::from_ints(&[-2, 1], &f);
        assert_eq!(a.gcd(&c, &f), UniPoly::constant(f.one(), &f));
        assert_eq!(a.gcd(&a.mul(&c, &f), &f), a);
    }

    #[test]
    fn derivative_in_small_characteristic() {
        let f = GaloisField::prime(5).unwrap();
        let p = UniPoly::from_ints(&[1, 0, 0, 0, 0, 1], &f); // x^5 + 1
        assert!(p.derivative(&f).is_zero());
    }
}
