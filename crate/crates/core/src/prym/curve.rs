use alloc::vec::Vec;

use crate::field::Field;
use crate::poly::{disc_ternary_quartic, squarefree_form, BinaryForm, Matrix3, TernaryForm};
use crate::{Error, Result};

/// Seed for the coordinate changes of the discriminant cross-check.
pub const VALIDATION_SEED: u64 = 0x5052_594d;

/// `C : y^4 - h(x,z) y^2 + f(x,z) g(x,z) = 0` with `f, g, h` binary quadratics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiellipticQuartic<F: Field> {
    pub field: F,
    pub f: BinaryForm<F::Elem>,
    pub g: BinaryForm<F::Elem>,
    pub h: BinaryForm<F::Elem>,
}

impl<F: Field> BiellipticQuartic<F> {
    pub fn new(field: F, f: BinaryForm<F::Elem>, g: BinaryForm<F::Elem>, h: BinaryForm<F::Elem>) -> Result<Self> {
        for (name, form) in [("f", &f), ("g", &g), ("h", &h)] {
            if form.degree() != 2 {
                return Err(Error::Model(alloc::format!("{name} must be a binary quadratic")));
            }
        }
        if field.characteristic() == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported".into()));
        }
        Ok(BiellipticQuartic { field, f, g, h })
    }

    /// Coefficient triples ordered `(x^2, xz, z^2)`.
    pub fn from_ints(field: F, f: [i64; 3], g: [i64; 3], h: [i64; 3]) -> Result<Self> {
        let (f, g, h) = (BinaryForm::from_ints(&f, &field), BinaryForm::from_ints(&g, &field), BinaryForm::from_ints(&h, &field));
        Self::new(field, f, g, h)
    }

    /// Rows `(f2, f1, f0)`, `(h2, h1, h0)`, `(g2, g1, g0)`.
    pub fn coefficient_matrix(&self) -> Matrix3<F::Elem> {
        let row = |form: &BinaryForm<F::Elem>| -> [F::Elem; 3] { core::array::from_fn(|i| form.coeffs()[i].clone()) };
        Matrix3::new([row(&self.f), row(&self.h), row(&self.g)])
    }

    pub fn fg(&self) -> BinaryForm<F::Elem> {
        self.f.mul(&self.g, &self.field)
    }

    /// `s = h^2 - 4 f g`.
    pub fn s(&self) -> BinaryForm<F::Elem> {
        let four = self.field.from_i64(4);
        self.h.mul(&self.h, &self.field).sub(&self.fg().scale(&four, &self.field), &self.field)
    }

    /// The plane quartic in variables `(x, y, z)`.
    pub fn plane_quartic(&self) -> TernaryForm<F::Elem> {
        let k = &self.field;
        let mut terms = Vec::new();
        terms.push(([0, 4, 0], k.one()));
        for (i, c) in self.h.coeffs().iter().enumerate() {
            terms.push(([2 - i, 2, i], k.neg(c)));
        }
        for (i, c) in self.fg().coeffs().iter().enumerate() {
            terms.push(([4 - i, 0, i], c.clone()));
        }
        TernaryForm::from_terms(4, &terms, k)
    }

    pub fn validate(&self) -> Result<ValidationReport<F::Elem>> {
        validate(self, VALIDATION_SEED)
    }
}

/// One hypothesis of the construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    /// `det A != 0`
    Invertible,
    /// `f g` has no repeated root in `P^1`
    FgSquarefree,
    /// `h^2 - 4 f g` has no repeated root in `P^1`
    SSquarefree,
    /// the plane-quartic discriminant agrees with the two squarefree checks
    DiscriminantAgreement,
    /// the base quartic of a Bruin cover has nonzero discriminant
    BaseQuarticSmooth,
    /// the pencil sextic of a Bruin cover has distinct roots
    PencilSquarefree,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Invertible => "det A != 0",
            Check::FgSquarefree => "fg squarefree",
            Check::SSquarefree => "h^2-4fg squarefree",
            Check::DiscriminantAgreement => "quartic discriminant cross-check",
            Check::BaseQuarticSmooth => "base quartic smooth",
            Check::PencilSquarefree => "pencil sextic squarefree",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport<E> {
    pub det_a: E,
    pub invertible: bool,
    pub fg_squarefree: bool,
    pub s_squarefree: bool,
    /// Present over `Q` and for `p > 13`.
    pub quartic_discriminant: Option<E>,
    pub discriminant_agrees: Option<bool>,
}

impl<E> ValidationReport<E> {
    pub fn smooth(&self) -> bool {
        self.fg_squarefree && self.s_squarefree
    }

    pub fn failed_checks(&self) -> Vec<Check> {
        let mut out = Vec::new();
        if !self.invertible {
            out.push(Check::Invertible);
        }
        if !self.fg_squarefree {
            out.push(Check::FgSquarefree);
        }
        if !self.s_squarefree {
            out.push(Check::SSquarefree);
        }
        if self.discriminant_agrees == Some(false) {
            out.push(Check::DiscriminantAgreement);
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.failed_checks().is_empty()
    }
}

/// Checks the hypotheses: `det A != 0`, and smoothness of `C`, which for this
/// family is equivalent to `fg` and `s = h^2 - 4fg` both being squarefree.
///
/// A singular point with `y != 0` forces a repeated root of `s` (the quartic
/// is a quadratic in `y^2` with discriminant `s`); one with `y = 0` forces a
/// repeated root of `fg`. Over `Q` and for `p > 13` the plane-quartic
/// discriminant is computed as well and must agree.
pub fn validate<F: Field>(curve: &BiellipticQuartic<F>, seed: u64) -> Result<ValidationReport<F::Elem>> {
    let k = &curve.field;
    if curve.f.is_zero(k) || curve.g.is_zero(k) {
        return Err(Error::DegenerateInput("f and g must be nonzero".into()));
    }
    let det_a = curve.coefficient_matrix().det(k);
    let invertible = !k.is_zero(&det_a);
    let fg_squarefree = squarefree_form(&curve.fg(), k)?;
    let s = curve.s();
    let s_squarefree = !s.is_zero(k) && squarefree_form(&s, k)?;
    let p = k.characteristic();
    let (quartic_discriminant, discriminant_agrees) = if p == 0 || p > 13 {
        let disc = disc_ternary_quartic(&curve.plane_quartic(), k, seed)?;
        let agrees = !k.is_zero(&disc) == (fg_squarefree && s_squarefree);
        (Some(disc), Some(agrees))
    } else {
        (None, None)
    };
    Ok(ValidationReport { det_a, invertible, fg_squarefree, s_squarefree, quartic_discriminant, discriminant_agrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaloisField, Rationals};
    use crate::sample::random_curve;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn visible_double_roots_fail() {
        let c = BiellipticQuartic::from_ints(Rationals, [1, 0, 0], [0, 0, 1], [0, 1, 0]).unwrap();
        let r = c.validate().unwrap();
        assert!(!r.fg_squarefree);
        assert!(r.failed_checks().contains(&Check::FgSquarefree));
    }

    #[test]
    fn worked_rational_example() {
        // f = xz, g = x^2 + xz + z^2, h = x^2 - z^2
        let q = Rationals;
        let c = BiellipticQuartic::from_ints(q, [0, 1, 0], [1, 1, 1], [1, 0, -1]).unwrap();
        let r = c.validate().unwrap();
        // rows (0,1,0), (1,0,-1), (1,1,1): det = -(1*1 - (-1)*1) = -2
        assert_eq!(r.det_a, q.from_i64(-2));
        assert!(r.invertible);
        // fg = x^3 z + x^2 z^2 + x z^3 = xz(x^2 + xz + z^2): distinct roots over C
        assert!(r.fg_squarefree);
        // s = (x^2 - z^2)^2 - 4xz(x^2+xz+z^2) = x^4 - 4x^3 z - 6x^2 z^2 - 4x z^3 + z^4
        assert_eq!(c.s(), BinaryForm::from_ints(&[1, -4, -6, -4, 1], &q));
        assert!(r.s_squarefree);
        assert_eq!(r.discriminant_agrees, Some(true));
        assert!(r.passed());
    }

    #[test]
    fn dependent_rows_fail_invertibility() {
        // h = f + g
        let c = BiellipticQuartic::from_ints(Rationals, [0, 1, 0], [1, 1, 1], [1, 2, 1]).unwrap();
        let r = c.validate().unwrap();
        assert!(!r.invertible);
        assert_eq!(r.failed_checks()[0], Check::Invertible);
    }

    #[test]
    fn zero_forms_are_degenerate() {
        let c = BiellipticQuartic::from_ints(Rationals, [0, 0, 0], [1, 1, 1], [1, 0, 1]).unwrap();
        assert!(matches!(c.validate(), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn smoothness_criterion_matches_discriminant_mod_large_primes() {
        for p in [17u32, 19, 23, 101] {
            let field = GaloisField::prime(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
            let mut singular = 0;
            for _ in 0..60 {
                let c = random_curve(&field, &mut rng);
                if c.f.is_zero(&field) || c.g.is_zero(&field) {
                    continue;
                }
                let r = c.validate().unwrap();
                assert_eq!(r.discriminant_agrees, Some(true), "{c:?}");
                if !r.smooth() {
                    singular += 1;
                }
            }
            let _ = singular;
        }
    }

    #[test]
    fn smoothness_criterion_matches_singular_point_search() {
        // Brute-force search for singular points of the plane quartic over
        // F_{p^2}: the quartic is singular iff F and its partials vanish at a
        // common point over the algebraic closure; F_{p^2} catches most.
        for p in [5u32, 7] {
            let base = GaloisField::prime(p).unwrap();
            let big = GaloisField::extension(p, 2).unwrap();
            let emb = crate::field::Embedding::new(&base, &big).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(50 + p as u64);
            for _ in 0..40 {
                let c = random_curve(&base, &mut rng);
                if c.f.is_zero(&base) || c.g.is_zero(&base) {
                    continue;
                }
                let r = c.validate().unwrap();
                let quartic = c.plane_quartic().map::<GaloisField>(|&e| emb.map(e));
                let partials: [_; 3] = core::array::from_fn(|v| quartic.partial(v, &big));
                let mut found = false;
                let pts = big.elements().flat_map(|x| big.elements().map(move |y| [x, y, crate::Gf::ONE]));
                let at_infinity = big.elements().map(|x| [x, crate::Gf::ONE, crate::Gf::ZERO]).chain([[crate::Gf::ONE, crate::Gf::ZERO, crate::Gf::ZERO]]);
                for pt in pts.chain(at_infinity) {
                    if quartic.eval(&pt, &big) == big.zero() && partials.iter().all(|d| d.eval(&pt, &big) == big.zero()) {
                        found = true;
                        break;
                    }
                }
                // A singular point found over F_{p^2} must be flagged.
                if found {
                    assert!(!r.smooth(), "{c:?}");
                }
            }
        }
    }
}
