use alloc::vec::Vec;

use crate::field::Field;
use crate::poly::{disc_ternary_quartic, invert3, squarefree_form, BinaryForm, Matrix3, TernaryForm, UniPoly};
use crate::{Error, Result};

use super::curve::{BiellipticQuartic, VALIDATION_SEED};

/// A ternary quadratic form stored as its symmetric Gram matrix `M`, so that
/// `Q(v) = v^T M v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryQuadratic<E> {
    gram: Matrix3<E>,
}

impl<E: Clone + PartialEq> TernaryQuadratic<E> {
    /// Rejects non-symmetric matrices.
    pub fn from_gram(gram: Matrix3<E>) -> Option<Self> {
        let symmetric = (0..3).all(|i| (0..i).all(|j| gram.get(i, j) == gram.get(j, i)));
        symmetric.then_some(TernaryQuadratic { gram })
    }

    pub fn gram(&self) -> &Matrix3<E> {
        &self.gram
    }

    pub fn zero<F: Field<Elem = E>>(field: &F) -> Self {
        TernaryQuadratic { gram: Matrix3::new(core::array::from_fn(|_| core::array::from_fn(|_| field.zero()))) }
    }

    pub fn from_form<F: Field<Elem = E>>(form: &TernaryForm<E>, field: &F) -> Result<Self> {
        if form.degree() != 2 {
            return Err(Error::Model("expected a ternary quadratic".into()));
        }
        let half = field.inv(&field.from_i64(2)).ok_or(Error::UnsupportedField)?;
        let gram = core::array::from_fn(|i| {
            core::array::from_fn(|j| {
                let mut e = [0usize; 3];
                e[i] += 1;
                e[j] += 1;
                let c = form.coeff(e).clone();
                if i == j { c } else { field.mul(&half, &c) }
            })
        });
        Ok(TernaryQuadratic { gram: Matrix3::new(gram) })
    }

    pub fn to_form<F: Field<Elem = E>>(&self, field: &F) -> TernaryForm<E> {
        let mut terms = Vec::new();
        for i in 0..3 {
            for j in i..3 {
                let mut e = [0usize; 3];
                e[i] += 1;
                e[j] += 1;
                let c = self.gram.get(i, j).clone();
                terms.push((e, if i == j { c } else { field.add(&c, &c) }));
            }
        }
        TernaryForm::from_terms(2, &terms, field)
    }

    pub fn eval<F: Field<Elem = E>>(&self, v: &[E; 3], field: &F) -> E {
        let mv = self.gram.apply(v, field);
        (0..3).fold(field.zero(), |acc, i| field.add(&acc, &field.mul(&v[i], &mv[i])))
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        self.combine(other, field, |a, b| field.add(a, b))
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, field: &F) -> Self {
        self.combine(other, field, |a, b| field.sub(a, b))
    }

    pub fn scale<F: Field<Elem = E>>(&self, s: &E, field: &F) -> Self {
        TernaryQuadratic { gram: self.gram.map::<F>(|a| field.mul(s, a)) }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        (0..3).all(|i| (0..3).all(|j| field.is_zero(self.gram.get(i, j))))
    }

    pub fn map<F2: Field>(&self, f: impl Fn(&E) -> F2::Elem) -> TernaryQuadratic<F2::Elem> {
        TernaryQuadratic { gram: self.gram.map::<F2>(f) }
    }

    fn combine<F: Field<Elem = E>>(&self, other: &Self, _field: &F, op: impl Fn(&E, &E) -> E) -> Self {
        let gram = core::array::from_fn(|i| core::array::from_fn(|j| op(self.gram.get(i, j), other.gram.get(i, j))));
        TernaryQuadratic { gram: Matrix3::new(gram) }
    }
}

/// `q2^2 = q1 q3` with its cover `q1 = u^2, q2 = uv, q3 = v^2`, where
/// `(q1, q2, q3)^T = A^{-1} (x1 x2, x2^2 + x1 x3, x2 x3)^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularModel<E> {
    pub quadrics: [TernaryQuadratic<E>; 3],
}

impl<E: Clone + PartialEq> SingularModel<E> {
    /// The singular quartic `q2^2 - q1 q3`.
    pub fn quartic<F: Field<Elem = E>>(&self, field: &F) -> TernaryForm<E> {
        base_quartic(&self.quadrics, field)
    }
}

fn base_quartic<F: Field>(q: &[TernaryQuadratic<F::Elem>; 3], field: &F) -> TernaryForm<F::Elem> {
    let [q1, q2, q3] = q.clone().map(|t| t.to_form(field));
    q2.mul(&q2, field).sub(&q1.mul(&q3, field), field)
}

/// `(x1 x2, x2^2 + x1 x3, x2 x3)`.
fn target_monomials<F: Field>(field: &F) -> [TernaryForm<F::Elem>; 3] {
    [
        TernaryForm::from_int_terms(2, &[([1, 1, 0], 1)], field),
        TernaryForm::from_int_terms(2, &[([0, 2, 0], 1), ([1, 0, 1], 1)], field),
        TernaryForm::from_int_terms(2, &[([0, 1, 1], 1)], field),
    ]
}

pub fn singular_model<F: Field>(curve: &BiellipticQuartic<F>) -> Result<SingularModel<F::Elem>> {
    let k = &curve.field;
    let a = curve.coefficient_matrix();
    let inv = invert3(&a, k)?;
    let half = k.inv(&k.from_i64(2)).ok_or(Error::UnsupportedField)?;
    let quadrics: [TernaryQuadratic<F::Elem>; 3] = core::array::from_fn(|i| {
        let (ai, bi, ci) = (inv.get(i, 0), inv.get(i, 1), inv.get(i, 2));
        let (ah, bh, ch) = (k.mul(&half, ai), k.mul(&half, bi), k.mul(&half, ci));
        let z = k.zero();
        TernaryQuadratic {
            gram: Matrix3::new([[z.clone(), ah.clone(), bh.clone()], [ah, bi.clone(), ch.clone()], [bh, ch, z]]),
        }
    });
    let forms = quadrics.clone().map(|q| q.to_form(k));
    let targets = target_monomials(k);
    for (j, target) in targets.iter().enumerate() {
        let mut lhs = TernaryForm::zero(2, k);
        for (i, form) in forms.iter().enumerate() {
            lhs = lhs.add(&form.scale(a.get(j, i), k), k);
        }
        if &lhs != target {
            return Err(Error::InternalContradiction("A (q1, q2, q3) does not reproduce the monomial vector".into()));
        }
    }
    Ok(SingularModel { quadrics })
}

/// `-det(M1 + 2x M2 + x^2 M3)` on Gram matrices.
pub fn pencil_sextic<F: Field>(q: [&TernaryQuadratic<F::Elem>; 3], field: &F) -> UniPoly<F::Elem> {
    let two = field.from_i64(2);
    let entry = |i: usize, j: usize| {
        UniPoly::new(
            alloc::vec![q[0].gram.get(i, j).clone(), field.mul(&two, q[1].gram.get(i, j)), q[2].gram.get(i, j).clone()],
            field,
        )
    };
    let m: [[UniPoly<F::Elem>; 3]; 3] = core::array::from_fn(|i| core::array::from_fn(|j| entry(i, j)));
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        m[r1][c1].mul(&m[r2][c2], field).sub(&m[r1][c2].mul(&m[r2][c1], field), field)
    };
    let det = m[0][0]
        .mul(&minor(1, 2, 1, 2), field)
        .sub(&m[0][1].mul(&minor(1, 2, 0, 2), field), field)
        .add(&m[0][2].mul(&minor(1, 2, 0, 1), field), field);
    det.neg(field)
}

/// The line `Q_i(eps) = q_i + eps q_i'` through the singular model, with
/// directions `q1' = (x2^2 + x3^2) - q1`, `q2' = x1^2 - q2`,
/// `q3' = (x2^2 - x3^2) - q3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationPencil<F: Field> {
    pub field: F,
    pub base: [TernaryQuadratic<F::Elem>; 3],
    pub directions: [TernaryQuadratic<F::Elem>; 3],
}

impl<F: Field> DeformationPencil<F> {
    pub fn new(field: F, base: [TernaryQuadratic<F::Elem>; 3]) -> Self {
        let k = &field;
        let endpoint = [
            TernaryForm::from_int_terms(2, &[([0, 2, 0], 1), ([0, 0, 2], 1)], k),
            TernaryForm::from_int_terms(2, &[([2, 0, 0], 1)], k),
            TernaryForm::from_int_terms(2, &[([0, 2, 0], 1), ([0, 0, 2], -1)], k),
        ]
        .map(|f| TernaryQuadratic::from_form(&f, k).expect("odd characteristic"));
        let directions = core::array::from_fn(|i| endpoint[i].sub(&base[i], k));
        DeformationPencil { field, base, directions }
    }

    pub fn from_curve(curve: &BiellipticQuartic<F>) -> Result<Self> {
        Ok(Self::new(curve.field.clone(), singular_model(curve)?.quadrics))
    }

    pub fn quadrics_at(&self, eps: &F::Elem) -> [TernaryQuadratic<F::Elem>; 3] {
        let k = &self.field;
        core::array::from_fn(|i| self.base[i].add(&self.directions[i].scale(eps, k), k))
    }

    pub fn fiber(&self, eps: &F::Elem) -> Result<BruinCover<F>> {
        BruinCover::new(self.field.clone(), self.quadrics_at(eps))
    }
}

/// The genus-3 base `Z : Q2^2 = Q1 Q3`, its double cover
/// `Y : Q1 = u^2, Q2 = uv, Q3 = v^2` in `P^4`, and `H : y^2 = P(x)` with
/// `P` the pencil sextic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruinCover<F: Field> {
    pub field: F,
    pub quadrics: [TernaryQuadratic<F::Elem>; 3],
    pub quartic: TernaryForm<F::Elem>,
    pub quartic_discriminant: F::Elem,
    pub quartic_smooth: bool,
    pub sextic: UniPoly<F::Elem>,
    pub sextic_squarefree: bool,
}

impl<F: Field> BruinCover<F> {
    pub fn new(field: F, quadrics: [TernaryQuadratic<F::Elem>; 3]) -> Result<Self> {
        Self::with_seed(field, quadrics, VALIDATION_SEED)
    }

    pub fn with_seed(field: F, quadrics: [TernaryQuadratic<F::Elem>; 3], seed: u64) -> Result<Self> {
        let k = &field;
        let quartic = base_quartic(&quadrics, k);
        let quartic_discriminant = if quartic.is_zero(k) { k.zero() } else { disc_ternary_quartic(&quartic, k, seed)? };
        let quartic_smooth = !k.is_zero(&quartic_discriminant);
        let sextic = pencil_sextic([&quadrics[0], &quadrics[1], &quadrics[2]], k);
        let sextic_squarefree = match BinaryForm::homogenize(&sextic, 6, k) {
            Some(form) if !form.is_zero(k) => squarefree_form(&form, k)?,
            _ => false,
        };
        Ok(BruinCover { field, quadrics, quartic, quartic_discriminant, quartic_smooth, sextic, sextic_squarefree })
    }

    /// Both hypotheses needed for the Prym of `Y/Z` to be `Jac(H)`.
    pub fn is_smooth(&self) -> bool {
        self.quartic_smooth && self.sextic_squarefree
    }
}

/// The fiber of the deformation pencil of `C` at `eps`.
pub fn deform<F: Field>(curve: &BiellipticQuartic<F>, eps: &F::Elem) -> Result<BruinCover<F>> {
    DeformationPencil::from_curve(curve)?.fiber(eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaloisField, Rationals};
    use crate::prym::split;
    use crate::sample::random_validated_curve;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gram_round_trip() {
        let q = Rationals;
        let form = TernaryForm::from_int_terms(2, &[([2, 0, 0], 3), ([1, 1, 0], 5), ([0, 1, 1], -1), ([0, 0, 2], 2)], &q);
        let t = TernaryQuadratic::from_form(&form, &q).unwrap();
        assert_eq!(t.to_form(&q), form);
        let v = [q.from_i64(2), q.from_i64(-1), q.from_i64(3)];
        assert_eq!(t.eval(&v, &q), form.eval(&v, &q));
        assert!(TernaryQuadratic::from_gram(Matrix3::from_ints([[0, 1, 0], [0, 0, 0], [0, 0, 0]], &q)).is_none());
    }

    #[test]
    fn identity_matrix_singular_model() {
        let q = Rationals;
        let c = BiellipticQuartic::from_ints(q, [1, 0, 0], [0, 0, 1], [0, 1, 0]).unwrap();
        let model = singular_model(&c).unwrap();
        let forms = model.quadrics.clone().map(|t| t.to_form(&q));
        assert_eq!(forms, target_monomials(&q));
        // -det {0, 1/2, x; 1/2, 2x, x^2/2; x, x^2/2, 0} = 3/2 x^3
        let p = pencil_sextic([&model.quadrics[0], &model.quadrics[1], &model.quadrics[2]], &q);
        let three_halves = num_rational::BigRational::new(3.into(), 2.into());
        assert_eq!(p, UniPoly::new(alloc::vec![q.zero(), q.zero(), q.zero(), three_halves], &q));
    }

    #[test]
    fn zero_forms_give_zero_sextic() {
        let q = Rationals;
        let z = TernaryQuadratic::zero(&q);
        assert!(pencil_sextic([&z, &z, &z], &q).is_zero());
    }

    #[test]
    fn singular_matrix_propagates() {
        let c = BiellipticQuartic::from_ints(Rationals, [0, 1, 0], [1, 1, 1], [0, 1, 0]).unwrap();
        assert!(matches!(singular_model(&c), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn smooth_endpoint_from_zero_base() {
        let q = Rationals;
        let z = TernaryQuadratic::zero(&q);
        let pencil = DeformationPencil::new(q, [z.clone(), z.clone(), z]);
        let cover = pencil.fiber(&q.one()).unwrap();
        let fermat = TernaryForm::from_int_terms(4, &[([4, 0, 0], 1), ([0, 4, 0], -1), ([0, 0, 4], 1)], &q);
        assert_eq!(cover.quartic, fermat);
        assert_eq!(cover.quartic_discriminant, q.from_i64(-(1i64 << 40)));
        // Grams diag(0,1,1), diag(1,0,0), diag(0,1,-1):
        // -det diag(2x, 1 + x^2, 1 - x^2) = -2x(1 - x^4)
        assert_eq!(cover.sextic, UniPoly::from_ints(&[0, -2, 0, 0, 0, 2], &q));
        assert!(cover.sextic_squarefree);
        assert!(cover.is_smooth());
    }

    #[test]
    fn pencil_matches_split_and_special_fiber_is_singular() {
        let k = GaloisField::prime(11).unwrap();
        let four = k.from_i64(4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let c = random_validated_curve(&k, &mut rng, 1000).unwrap();
            let s = split(&c, false).unwrap();
            let model = singular_model(&c).unwrap();
            let p = pencil_sextic([&model.quadrics[0], &model.quadrics[1], &model.quadrics[2]], &k);
            assert_eq!(p.scale(&four, &k), s.sextic);
            let special = deform(&c, &k.zero()).unwrap();
            assert_eq!(special.quadrics, model.quadrics);
            assert!(!special.quartic_smooth);
        }
    }

    #[test]
    fn most_fibers_are_smooth() {
        // The discriminant restricted to the pencil line is a polynomial in
        // eps of degree at most 27, so over F_101 most fibers are smooth.
        let k = GaloisField::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = random_validated_curve(&k, &mut rng, 1000).unwrap();
        let pencil = DeformationPencil::from_curve(&c).unwrap();
        let singular = k.elements().filter(|e| !pencil.fiber(e).unwrap().quartic_smooth).count();
        assert!((1..=27).contains(&singular), "{singular}");
    }
}
