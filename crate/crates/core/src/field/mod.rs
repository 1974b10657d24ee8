//! Exact arithmetic over `Q` and over finite fields of odd characteristic.
//!
//! Fields are context objects: elements are plain values and every operation
//! goes through the field, in the style of `field.mul(&a, &b)`.

mod galois;
mod rational;

use alloc::string::String;
use core::fmt::Debug;

use rand::Rng;

pub use galois::{build_extension, is_irreducible, is_prime, Embedding, GaloisField, Gf, MAX_FIELD_ORDER};
pub use rational::Rationals;

/// Which field a computation lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    Finite(FiniteFieldDescriptor),
}

/// `F_{p^k}` presented as `F_p[t] / (modulus)`.
///
/// `modulus` is monic of degree `k`, stored constant term first, and is absent
/// for prime fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteFieldDescriptor {
    pub p: u32,
    pub k: u32,
    pub modulus: Option<alloc::vec::Vec<u32>>,
}

impl FiniteFieldDescriptor {
    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }
}

pub trait Field: Clone + Debug {
    type Elem: Clone + PartialEq + Eq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// 0 for `Q`.
    fn characteristic(&self) -> u64;
    fn descriptor(&self) -> FieldDescriptor;
    /// Human-readable canonical form: `"n"` / `"n/d"` over `Q`, the residue
    /// over `F_p`, `"[c0,c1,..]"` over `F_{p^k}`.
    fn render(&self, a: &Self::Elem) -> String;
    /// A random element; over `Q` a small integer.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }
}
