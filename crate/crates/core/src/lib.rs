//! Explicit genus-2 factor of a bielliptic plane quartic.
//!
//! A smooth plane quartic `C : y^4 - h(x,z) y^2 + f(x,z) g(x,z) = 0` over a field of
//! odd characteristic is a double cover of the genus-1 curve
//! `D : y^2 - h y + f g = 0`. This crate computes the genus-2 curve
//! `X : y^2 = b (b^2 - a c)` with `Jac(C) ~ Jac(D) x Jac(X)` and checks that
//! relation by exhaustive point counting over finite fields: the
//! L-polynomial of `C` must equal the product of those of `D` and `X`.
//!
//! Everything here is `no_std` with `alloc`. IO, file formats, threading and
//! the command-line tool live in the companion `prym` crate.
//!
//! Layout:
//! - [`field`]: rationals and table-driven finite fields `F_{p^k}`.
//! - [`poly`]: univariate polynomials, binary and ternary forms, 3x3 linear
//!   algebra, Sylvester and Macaulay resultants, discriminants.
//! - [`prym`]: validation, the split `C -> (D, X)`, the singular model, the
//!   Gram pencil and the deformation to a smooth unramified double cover.
//! - [`counting`]: exact point counts for plane quartics, weighted
//!   hyperelliptic models and the genus-5 double cover.
//! - [`zeta`]: L-polynomials from counts and the two end-to-end checks.
//! - [`sample`]: seeded random instances.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod counting;
mod error;
pub mod field;
pub mod poly;
pub mod prym;
pub mod sample;
pub mod zeta;

pub use error::{Error, Result};
pub use field::{build_extension, FieldDescriptor, FiniteFieldDescriptor, Field, GaloisField, Gf, Rationals};
