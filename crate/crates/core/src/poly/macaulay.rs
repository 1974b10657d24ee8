//! Resultants of three ternary forms by Macaulay's quotient formula, and the
//! discriminant of a plane quartic built on it.
//!
//! At degree `t = d1 + d2 + d3 - 2` every monomial `m` of degree `t` is
//! divisible by some `x_i^{d_i}`; taking the first such `i`, the row of `m` is
//! `(m / x_i^{d_i}) f_i`. The monomials divisible by two or more of the
//! `x_i^{d_i}` index the extraneous minor, and
//! `Res = det(M) / det(minor)` whenever the minor is invertible. The result is
//! normalized by `Res(x1^{d1}, x2^{d2}, x3^{d3}) = 1`.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{determinant, homogeneous_resultant, BinaryForm, Matrix3, TernaryForm};
use crate::field::Field;
use crate::{Error, Result};

/// Coordinate changes tried before giving up on a singular minor.
pub const MACAULAY_RETRIES: u32 = 8;

/// `Res(dF/dx1, dF/dx2, dF/dx3) = 4^7 Disc(F)` for plane quartics, with
/// `Disc` normalized to be a primitive integer polynomial in the
/// coefficients (so `Disc(x1^4 - x2^4 + x3^4) = -2^40`).
pub const DISC_NORMALIZATION_POWER_OF_FOUR: u32 = 7;

/// Rows of the Macaulay matrix (columns are the degree-`t` monomials in
/// [`TernaryForm::monomials`] order) and the indices of the extraneous minor.
fn macaulay_system<F: Field>(forms: [&TernaryForm<F::Elem>; 3], field: &F) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let d = forms.map(|f| f.degree());
    let t = d[0] + d[1] + d[2] - 2;
    let mut rows = Vec::new();
    let mut extraneous = Vec::new();
    for (r, m) in TernaryForm::<F::Elem>::monomials(t).enumerate() {
        let divisible: Vec<usize> = (0..3).filter(|&i| m[i] >= d[i]).collect();
        let i = divisible[0];
        if divisible.len() >= 2 {
            extraneous.push(r);
        }
        let mut shift = m;
        shift[i] -= d[i];
        rows.push(forms[i].shift(shift, field).coeffs().to_vec());
    }
    (rows, extraneous)
}

fn submatrix<E: Clone>(rows: &[Vec<E>], idx: &[usize]) -> Vec<Vec<E>> {
    idx.iter().map(|&r| idx.iter().map(|&c| rows[r][c].clone()).collect()).collect()
}

fn macaulay_quotient<F: Field>(forms: [&TernaryForm<F::Elem>; 3], field: &F) -> Option<F::Elem> {
    let (rows, extraneous) = macaulay_system(forms, field);
    let det_minor = determinant(submatrix(&rows, &extraneous), field);
    if field.is_zero(&det_minor) {
        return None;
    }
    let det_full = determinant(rows, field);
    field.div(&det_full, &det_minor)
}

/// `det(s I - M)`, constant term first, via reduction to Hessenberg form.
fn charpoly<F: Field>(mut h: Vec<Vec<F::Elem>>, field: &F) -> Vec<F::Elem> {
    let n = h.len();
    for m in 1..n {
        let j = m - 1;
        let Some(piv) = (m..n).find(|&i| !field.is_zero(&h[i][j])) else { continue };
        if piv != m {
            h.swap(piv, m);
            for row in h.iter_mut() {
                row.swap(piv, m);
            }
        }
        let inv = field.inv(&h[m][j]).expect("pivot is nonzero");
        for i in m + 1..n {
            if field.is_zero(&h[i][j]) {
                continue;
            }
            let u = field.mul(&h[i][j], &inv);
            for c in 0..n {
                let v = field.mul(&u, &h[m][c]);
                h[i][c] = field.sub(&h[i][c], &v);
            }
            for r in 0..n {
                let v = field.mul(&u, &h[r][i]);
                h[r][m] = field.add(&h[r][m], &v);
            }
        }
    }
    // p_k = det(s I - H_k) for the leading k x k block
    let mut p: Vec<Vec<F::Elem>> = alloc::vec![alloc::vec![field.one()]];
    for k in 0..n {
        let mut next = alloc::vec![field.zero(); k + 2];
        for (i, c) in p[k].iter().enumerate() {
            next[i + 1] = field.add(&next[i + 1], c);
            next[i] = field.sub(&next[i], &field.mul(&h[k][k], c));
        }
        let mut prod = field.one();
        for i in 1..=k {
            prod = field.mul(&prod, &h[k - i + 1][k - i]);
            let coef = field.mul(&h[k - i][k], &prod);
            for (e, c) in p[k - i].iter().enumerate() {
                next[e] = field.sub(&next[e], &field.mul(&coef, c));
            }
        }
        p.push(next);
    }
    p.pop().expect("nonempty")
}

/// `det(M - s I)` from `det(s I - M)`.
fn shifted_det<F: Field>(m: Vec<Vec<F::Elem>>, field: &F) -> Vec<F::Elem> {
    let n = m.len();
    let p = charpoly(m, field);
    if n % 2 == 0 { p } else { p.iter().map(|c| field.neg(c)).collect() }
}

/// Resultant through the perturbation `f_i - s x_i^{d_i}`, which turns the
/// Macaulay matrix into `M - s I` and the minor into `E - s I`. Their
/// quotient is `Res(f_i - s x_i^{d_i})`, a polynomial in `s`, so its value
/// at `s = 0` is the ratio of the lowest coefficients at the order of the
/// minor's determinant.
fn perturbed_resultant<F: Field>(forms: [&TernaryForm<F::Elem>; 3], field: &F) -> F::Elem {
    let (rows, extraneous) = macaulay_system(forms, field);
    let minor = shifted_det(submatrix(&rows, &extraneous), field);
    let full = shifted_det(rows, field);
    let b = minor.iter().position(|c| !field.is_zero(c)).expect("E - sI has a nonzero leading coefficient");
    field.div(&full[b], &minor[b]).expect("nonzero")
}

/// Resultant of three ternary forms of positive degree.
///
/// When the extraneous minor vanishes, the forms are composed with a random
/// invertible `T` and the answer is divided by `det(T)^{d1 d2 d3}`; if that
/// keeps failing (systems such as `f1 = f2` are singular for every `T`) the
/// perturbed system decides.
pub fn macaulay_resultant<F: Field, R: Rng + ?Sized>(
    forms: [&TernaryForm<F::Elem>; 3],
    field: &F,
    rng: &mut R,
    retries: u32,
) -> Result<F::Elem> {
    if let Some(f) = forms.iter().find(|f| f.degree() == 0) {
        return Err(Error::Degree { degree: f.degree(), min: 1 });
    }
    if let Some(r) = macaulay_quotient(forms, field) {
        return Ok(r);
    }
    let weight = forms.iter().map(|f| f.degree() as u64).product::<u64>();
    for _ in 0..retries {
        let t = Matrix3::new(core::array::from_fn(|_| core::array::from_fn(|_| field.sample(rng))));
        let det = t.det(field);
        if field.is_zero(&det) {
            continue;
        }
        let moved = forms.map(|f| f.substitute(&t, field));
        if let Some(r) = macaulay_quotient([&moved[0], &moved[1], &moved[2]], field) {
            let scale = field.pow(&det, weight);
            return Ok(field.div(&r, &scale).expect("det(T) is nonzero"));
        }
    }
    Ok(perturbed_resultant(forms, field))
}

/// [`macaulay_resultant`] restricted to three cubics (36 x 36 matrix).
pub fn macaulay_resultant_cubics<F: Field>(forms: [&TernaryForm<F::Elem>; 3], field: &F, seed: u64) -> Result<F::Elem> {
    if let Some(f) = forms.iter().find(|f| f.degree() != 3) {
        return Err(Error::InvalidArgument(alloc::format!("expected cubics, got degree {}", f.degree())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    macaulay_resultant(forms, field, &mut rng, MACAULAY_RETRIES)
}

/// `Res(dF/dx1, dF/dx2, dF/dx3)` for a form of degree `d >= 2`.
pub fn partials_resultant<F: Field>(form: &TernaryForm<F::Elem>, field: &F, seed: u64) -> Result<F::Elem> {
    if form.degree() < 2 {
        return Err(Error::Degree { degree: form.degree(), min: 2 });
    }
    let partials: [TernaryForm<F::Elem>; 3] = core::array::from_fn(|v| form.partial(v, field));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    macaulay_resultant([&partials[0], &partials[1], &partials[2]], field, &mut rng, MACAULAY_RETRIES)
}

/// The same quantity computed through Euler's relation
/// `x1 F_1 + x2 F_2 + x3 F_3 = d F`:
/// `Res(F_1, F_2, F_3) = d^{(d-1)^2} Res(F, F_2, F_3) / Res(F_2|x1=0, F_3|x1=0)`.
///
/// `None` if the two restrictions to the line `x1 = 0` share a root.
pub fn partials_resultant_euler<F: Field>(form: &TernaryForm<F::Elem>, field: &F, seed: u64) -> Result<Option<F::Elem>> {
    let d = form.degree();
    if d < 2 {
        return Err(Error::Degree { degree: d, min: 2 });
    }
    let f2 = form.partial(1, field);
    let f3 = form.partial(2, field);
    let restrict = |g: &TernaryForm<F::Elem>| BinaryForm::new((0..=d - 1).map(|i| g.coeff([0, d - 1 - i, i]).clone()).collect());
    let line = homogeneous_resultant(&restrict(&f2), &restrict(&f3), field);
    if field.is_zero(&line) {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mixed = macaulay_resultant([form, &f2, &f3], field, &mut rng, MACAULAY_RETRIES)?;
    let factor = field.pow(&field.from_i64(d as i64), ((d - 1) * (d - 1)) as u64);
    Ok(field.div(&field.mul(&factor, &mixed), &line))
}

/// Discriminant of a plane quartic: zero iff the curve is singular.
/// Normalized as `Res(partials) / 4^7`.
pub fn disc_ternary_quartic<F: Field>(form: &TernaryForm<F::Elem>, field: &F, seed: u64) -> Result<F::Elem> {
    if form.degree() != 4 {
        return Err(Error::InvalidArgument(alloc::format!("expected a quartic, got degree {}", form.degree())));
    }
    let raw = partials_resultant(form, field, seed)?;
    let norm = field.pow(&field.from_i64(4), DISC_NORMALIZATION_POWER_OF_FOUR as u64);
    field.div(&raw, &norm).ok_or_else(|| Error::InvalidField("4 is not invertible".into()))
}
