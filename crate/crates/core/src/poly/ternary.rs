use alloc::vec;
use alloc::vec::Vec;

use super::Matrix3;
use crate::field::Field;

/// Homogeneous form of degree `d` in `(x1, x2, x3)`, stored densely.
///
/// Monomial `x1^i x2^j x3^k` sits at index `a(a+1)/2 + k` with `a = j + k`,
/// i.e. graded by decreasing power of `x1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernaryForm<E> {
    degree: usize,
    coeffs: Vec<E>,
}

#[inline]
fn index(e: [usize; 3]) -> usize {
    let a = e[1] + e[2];
    a * (a + 1) / 2 + e[2]
}

impl<E: Clone + PartialEq> TernaryForm<E> {
    pub fn zero<F: Field<Elem = E>>(degree: usize, field: &F) -> Self {
        TernaryForm { degree, coeffs: vec![field.zero(); (degree + 1) * (degree + 2) / 2] }
    }

    /// Sum of `coeff * x1^i x2^j x3^k` over the given terms (repeats add up).
    pub fn from_terms<F: Field<Elem = E>>(degree: usize, terms: &[([usize; 3], E)], field: &F) -> Self {
        let mut out = Self::zero(degree, field);
        for (e, c) in terms {
            assert_eq!(e.iter().sum::<usize>(), degree, "monomial of the wrong degree");
            let i = index(*e);
            out.coeffs[i] = field.add(&out.coeffs[i], c);
        }
        out
    }

    pub fn from_int_terms<F: Field<Elem = E>>(degree: usize, terms: &[([usize; 3], i64)], field: &F) -> Self {
        let t: Vec<_> = terms.iter().map(|(e, c)| (*e, field.from_i64(*c))).collect();
        Self::from_terms(degree, &t, field)
    }

    /// The monomial `x_var`.
    pub fn variable<F: Field<Elem = E>>(var: usize, field: &F) -> Self {
        let mut e = [0; 3];
        e[var] = 1;
        Self::from_terms(1, &[(e, field.one())], field)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Exponent vectors in storage order.
    pub fn monomials(degree: usize) -> impl Iterator<Item = [usize; 3]> {
        (0..=degree).flat_map(move |a| (0..=a).map(move |k| [degree - a, a - k, k]))
    }

    pub fn monomial_index(e: [usize; 3]) -> usize {
        index(e)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff(&self, e: [usize; 3]) -> &E {
        &self.coeffs[index(e)]
    }

    /// `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn terms<'a, F: Field<Elem = E>>(&'a self, field: &'a F) -> impl Iterator<Item = ([usize; 3], &'a E)> + 'a {
        Self::monomials(self.degree).zip(&self.coeffs).filter(move |(_, c)| !field.is_zero(c))
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        assert_eq!(self.degree, other.degree);
        TernaryForm { degree: self.degree, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| field.add(a, b)).collect() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        assert_eq!(self.degree, other.degree);
        TernaryForm { degree: self.degree, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| field.sub(a, b)).collect() }
    }

    pub fn scale<F: Field<Elem = E>>(&self, s: &E, field: &F) -> Self {
        TernaryForm { degree: self.degree, coeffs: self.coeffs.iter().map(|c| field.mul(c, s)).collect() }
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        let mut out = Self::zero(self.degree + other.degree, field);
        for (ea, a) in self.terms(field) {
            for (eb, b) in other.terms(field) {
                let i = index([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]]);
                out.coeffs[i] = field.add(&out.coeffs[i], &field.mul(a, b));
            }
        }
        out
    }

    pub fn pow<F: Field<Elem = E>>(&self, e: usize, field: &F) -> Self {
        let mut acc = TernaryForm { degree: 0, coeffs: vec![field.one()] };
        for _ in 0..e {
            acc = acc.mul(self, field);
        }
        acc
    }

    /// `x^shift * self`.
    pub fn shift<F: Field<Elem = E>>(&self, shift: [usize; 3], field: &F) -> Self {
        let d = shift.iter().sum::<usize>();
        let mut out = Self::zero(self.degree + d, field);
        for (e, c) in Self::monomials(self.degree).zip(&self.coeffs) {
            out.coeffs[index([e[0] + shift[0], e[1] + shift[1], e[2] + shift[2]])] = c.clone();
        }
        out
    }

    pub fn partial<F: Field<Elem = E>>(&self, var: usize, field: &F) -> Self {
        if self.degree == 0 {
            return Self::zero(0, field);
        }
        let mut out = Self::zero(self.degree - 1, field);
        for (e, c) in Self::monomials(self.degree).zip(&self.coeffs) {
            if e[var] == 0 {
                continue;
            }
            let mut le = e;
            le[var] -= 1;
            out.coeffs[index(le)] = field.mul(c, &field.from_i64(e[var] as i64));
        }
        out
    }

    pub fn eval<F: Field<Elem = E>>(&self, point: &[E; 3], field: &F) -> E {
        let pows: [Vec<E>; 3] = core::array::from_fn(|v| {
            let mut p = vec![field.one()];
            for _ in 0..self.degree {
                let next = field.mul(p.last().unwrap(), &point[v]);
                p.push(next);
            }
            p
        });
        Self::monomials(self.degree).zip(&self.coeffs).fold(field.zero(), |acc, (e, c)| {
            if field.is_zero(c) {
                return acc;
            }
            let t = field.mul(c, &field.mul(&pows[0][e[0]], &field.mul(&pows[1][e[1]], &pows[2][e[2]])));
            field.add(&acc, &t)
        })
    }

    /// `F(T x)`: each variable `x_i` becomes `sum_j T[i][j] x_j`.
    pub fn substitute<F: Field<Elem = E>>(&self, t: &Matrix3<E>, field: &F) -> Self {
        let lin: [Self; 3] = core::array::from_fn(|i| {
            let terms: Vec<_> = (0..3)
                .map(|j| {
                    let mut e = [0; 3];
                    e[j] = 1;
                    (e, t.rows[i][j].clone())
                })
                .collect();
            Self::from_terms(1, &terms, field)
        });
        let pows: [Vec<Self>; 3] = core::array::from_fn(|v| {
            let mut p = vec![TernaryForm { degree: 0, coeffs: vec![field.one()] }];
            for _ in 0..self.degree {
                let next = p.last().unwrap().mul(&lin[v], field);
                p.push(next);
            }
            p
        });
        let mut out = Self::zero(self.degree, field);
        for (e, c) in self.terms(field) {
            let term = pows[0][e[0]].mul(&pows[1][e[1]], field).mul(&pows[2][e[2]], field).scale(c, field);
            out = out.add(&term, field);
        }
        out
    }

    /// Renames variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute<F: Field<Elem = E>>(&self, perm: [usize; 3], field: &F) -> Self {
        let mut out = Self::zero(self.degree, field);
        for (e, c) in Self::monomials(self.degree).zip(&self.coeffs) {
            let mut ne = [0; 3];
            for i in 0..3 {
                ne[perm[i]] = e[i];
            }
            out.coeffs[index(ne)] = c.clone();
        }
        out
    }

    pub fn map<F2: Field>(&self, f: impl Fn(&E) -> F2::Elem) -> TernaryForm<F2::Elem> {
        TernaryForm { degree: self.degree, coeffs: self.coeffs.iter().map(f).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaloisField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn monomial_order_is_a_bijection() {
        for d in 0..8 {
            let all: Vec<_> = TernaryForm::<i64>::monomials(d).collect();
            assert_eq!(all.len(), (d + 1) * (d + 2) / 2);
            for (i, e) in all.iter().enumerate() {
                assert_eq!(index(*e), i);
                assert_eq!(e.iter().sum::<usize>(), d);
            }
        }
    }

    #[test]
    fn euler_identity() {
        // sum x_i dF/dx_i = d F
        let f = GaloisField::prime(13).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let terms: Vec<_> = TernaryForm::<crate::Gf>::monomials(4).map(|e| (e, f.sample(&mut rng))).collect();
        let form = TernaryForm::from_terms(4, &terms, &f);
        let mut lhs = TernaryForm::zero(4, &f);
        for v in 0..3 {
            lhs = lhs.add(&form.partial(v, &f).mul(&TernaryForm::variable(v, &f), &f), &f);
        }
        assert_eq!(lhs, form.scale(&f.from_i64(4), &f));
    }

    #[test]
    fn substitution_commutes_with_evaluation() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let terms: Vec<_> = TernaryForm::<num_rational::BigRational>::monomials(3).map(|e| (e, q.sample(&mut rng))).collect();
        let form = TernaryForm::from_terms(3, &terms, &q);
        let t = Matrix3::new(core::array::from_fn(|_| core::array::from_fn(|_| q.sample(&mut rng))));
        let sub = form.substitute(&t, &q);
        for _ in 0..10 {
            let pt: [_; 3] = core::array::from_fn(|_| q.sample(&mut rng));
            assert_eq!(sub.eval(&pt, &q), form.eval(&t.apply(&pt, &q), &q));
        }
    }
}
