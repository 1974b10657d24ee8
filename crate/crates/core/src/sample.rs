//! Seeded random instances.

use rand::Rng;

use crate::field::Field;
use crate::poly::BinaryForm;
use crate::prym::BiellipticQuartic;
use crate::{Error, Result};

fn random_quadratic<F: Field, R: Rng + ?Sized>(field: &F, rng: &mut R) -> BinaryForm<F::Elem> {
    BinaryForm::new((0..3).map(|_| field.sample(rng)).collect())
}

/// Uniform `f, g, h` (small integers over `Q`), not validated.
pub fn random_curve<F: Field, R: Rng + ?Sized>(field: &F, rng: &mut R) -> BiellipticQuartic<F> {
    let f = random_quadratic(field, rng);
    let g = random_quadratic(field, rng);
    let h = random_quadratic(field, rng);
    BiellipticQuartic { field: field.clone(), f, g, h }
}

/// Draws curves until one passes validation.
pub fn random_validated_curve<F: Field, R: Rng + ?Sized>(field: &F, rng: &mut R, max_attempts: u32) -> Result<BiellipticQuartic<F>> {
    for _ in 0..max_attempts {
        let c = random_curve(field, rng);
        if c.f.is_zero(field) || c.g.is_zero(field) {
            continue;
        }
        match c.validate() {
            Ok(r) if r.passed() => return Ok(c),
            Ok(_) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ResourceLimit(alloc::format!("no validated curve in {max_attempts} draws")))
}
