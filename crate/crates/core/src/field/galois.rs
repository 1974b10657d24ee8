//! Finite fields `F_{p^k}` with `p` odd, backed by Zech-logarithm tables.
//!
//! Nonzero elements are stored as discrete logarithms with respect to a fixed
//! primitive element `g`, so multiplication is an addition of exponents and
//! addition goes through the Zech table `Z(d) = log(1 + g^d)`. The tables are
//! built once per field and shared by every clone.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use super::{Field, FieldDescriptor, FiniteFieldDescriptor};
use crate::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 22;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p, constant term first, used only to build tables
// and to test irreducibility.

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (j, &mj) in m.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * mj % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), m, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

/// Irreducibility of a polynomial over `F_p` (coefficients constant first,
/// nonzero leading coefficient): `gcd(m, x^{p^i} - x) = 1` for `i <= deg/2`.
pub fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let p = p as u64;
    let mut m: Vec<u64> = modulus.iter().map(|&c| c as u64 % p).collect();
    trim(&mut m);
    if m.len() < 2 {
        return false;
    }
    let k = m.len() - 1;
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=k / 2 {
        xp = poly_powmod(&xp, p, &m, p);
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if poly_gcd(&m, &diff, p).len() > 1 {
            return false;
        }
    }
    true
}

/// Describes `F_{p^k}`, choosing the first monic irreducible modulus in the
/// order `x^k + c`, then `x^k + x + c`, ... (lowest coefficient varying fastest).
pub fn build_extension(p: u32, k: u32) -> Result<FiniteFieldDescriptor> {
    if p == 2 {
        return Err(Error::InvalidField("characteristic 2 is not supported".into()));
    }
    if !is_prime(p as u64) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::InvalidField("extension degree must be at least 1".into()));
    }
    let order = (p as u64)
        .checked_pow(k)
        .filter(|&q| q <= u32::MAX as u64)
        .ok_or_else(|| Error::InvalidField(format!("{p}^{k} is too large")))?;
    if k == 1 {
        return Ok(FiniteFieldDescriptor { p, k, modulus: None });
    }
    for n in 0..order {
        let mut coeffs = Vec::with_capacity(k as usize + 1);
        let mut rest = n;
        for _ in 0..k {
            coeffs.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        coeffs.push(1);
        if is_irreducible(p, &coeffs) {
            return Ok(FiniteFieldDescriptor { p, k, modulus: Some(coeffs) });
        }
    }
    Err(Error::InternalContradiction(format!("no irreducible polynomial of degree {k} over F_{p}")))
}

/// An element of a [`GaloisField`]: 0 is zero, `n >= 1` is `g^(n-1)`.
///
/// The raw index doubles as an enumeration of the field: `Gf(0..q)` lists
/// every element exactly once.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Gf(pub u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    pub fn index(self) -> u32 {
        self.0
    }
}

struct Tables {
    desc: FiniteFieldDescriptor,
    p: u32,
    q: u32,
    /// `q - 1`
    n: u32,
    half: u32,
    modulus: Vec<u64>,
    /// packed coefficients of `g^i`
    exp: Vec<u32>,
    /// inverse of `exp`, indexed by packed coefficients
    log: Vec<u32>,
    /// element representing `1 + g^d`
    zech: Vec<u32>,
}

impl Tables {
    fn unpack(&self, mut v: u32) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.desc.k as usize);
        for _ in 0..self.desc.k {
            out.push((v % self.p) as u64);
            v /= self.p;
        }
        out
    }

    fn pack(&self, coeffs: &[u64]) -> u32 {
        coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + (c % self.p as u64) as u32)
    }

    fn mul_packed(&self, a: u32, b: u32) -> u32 {
        let prod = poly_mul(&self.unpack(a), &self.unpack(b), self.p as u64);
        let r = if self.desc.k == 1 { poly_rem(&prod, &[0, 1], self.p as u64) } else { poly_rem(&prod, &self.modulus, self.p as u64) };
        self.pack(&r)
    }

    fn pow_packed(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_packed(acc, base);
            }
            base = self.mul_packed(base, base);
            e >>= 1;
        }
        acc
    }
}

/// The finite field `F_{p^k}`, `p` odd.
#[derive(Clone)]
pub struct GaloisField {
    t: Arc<Tables>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.t.p, self.t.desc.k)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t) || self.t.desc == other.t.desc
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    pub fn new(desc: FiniteFieldDescriptor) -> Result<Self> {
        let FiniteFieldDescriptor { p, k, .. } = desc;
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported".into()));
        }
        if !is_prime(p as u64) || k == 0 {
            return Err(Error::InvalidField(format!("F_{p}^{k} is not a field")));
        }
        let order = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if order > MAX_FIELD_ORDER {
            return Err(Error::ResourceLimit(format!("field order {p}^{k} exceeds {MAX_FIELD_ORDER}")));
        }
        let modulus: Vec<u64> = match (&desc.modulus, k) {
            (None, 1) => vec![0, 1],
            (Some(m), _) => {
                if m.len() != k as usize + 1 || m[k as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidField("modulus must be monic of degree k with reduced coefficients".into()));
                }
                if !is_irreducible(p, m) {
                    return Err(Error::InvalidField("modulus is reducible".into()));
                }
                m.iter().map(|&c| c as u64).collect()
            }
            (None, _) => return Err(Error::InvalidField("extension field needs a modulus".into())),
        };
        let q = order as u32;
        let n = q - 1;
        let mut t = Tables { desc, p, q, n, half: n / 2, modulus, exp: Vec::new(), log: Vec::new(), zech: Vec::new() };

        let factors = prime_factors(n as u64);
        let generator = (1..q)
            .find(|&c| factors.iter().all(|&r| t.pow_packed(c, n as u64 / r) != 1))
            .ok_or_else(|| Error::InternalContradiction("no primitive element".into()))?;

        let mut exp = vec![0u32; n as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = 1u32;
        for i in 0..n {
            exp[i as usize] = cur;
            log[cur as usize] = i;
            cur = t.mul_packed(cur, generator);
        }
        debug_assert_eq!(cur, 1);
        let mut zech = vec![0u32; n as usize];
        for d in 0..n as usize {
            let v = exp[d];
            let low = v % p;
            let w = v - low + (low + 1) % p;
            zech[d] = if w == 0 { 0 } else { log[w as usize] + 1 };
        }
        t.exp = exp;
        t.log = log;
        t.zech = zech;
        Ok(GaloisField { t: Arc::new(t) })
    }

    /// `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(build_extension(p, 1)?)
    }

    /// `F_{p^k}` with the canonical modulus of [`build_extension`].
    pub fn extension(p: u32, k: u32) -> Result<Self> {
        Self::new(build_extension(p, k)?)
    }

    pub fn p(&self) -> u32 {
        self.t.p
    }

    pub fn degree(&self) -> u32 {
        self.t.desc.k
    }

    pub fn order(&self) -> u64 {
        self.t.q as u64
    }

    pub fn finite_descriptor(&self) -> &FiniteFieldDescriptor {
        &self.t.desc
    }

    /// Every element, each exactly once.
    pub fn elements(&self) -> impl Iterator<Item = Gf> + Clone {
        (0..self.t.q).map(Gf)
    }

    /// The primitive element used for the logarithm tables.
    pub fn generator(&self) -> Gf {
        if self.t.q == 1 { Gf::ONE } else { Gf(2.min(self.t.q - 1)) }
    }

    /// Coefficients over `F_p` (constant first, length `k`).
    pub fn coefficients(&self, a: Gf) -> Vec<u32> {
        let packed = if a.0 == 0 { 0 } else { self.t.exp[(a.0 - 1) as usize] };
        self.t.unpack(packed).into_iter().map(|c| c as u32).collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Gf {
        let c: Vec<u64> = coeffs.iter().map(|&c| c as u64).collect();
        let mut packed_coeffs = c;
        // Reduce anything longer than k via the modulus.
        if packed_coeffs.len() > self.t.desc.k as usize {
            let m = self.t.modulus.clone();
            packed_coeffs = poly_rem(&packed_coeffs, &m, self.t.p as u64);
        }
        let packed = self.t.pack(&packed_coeffs);
        self.from_packed(packed)
    }

    fn from_packed(&self, packed: u32) -> Gf {
        if packed == 0 { Gf::ZERO } else { Gf(self.t.log[packed as usize] + 1) }
    }

    /// `1` for nonzero squares, `-1` for non-squares, `0` for zero.
    ///
    /// Agrees with Euler's criterion `a^((q-1)/2)`: with `a = g^i` for a
    /// primitive `g`, that power is `(-1)^i`.
    #[inline]
    pub fn quadratic_character(&self, a: Gf) -> i8 {
        if a.0 == 0 {
            0
        } else if (a.0 - 1) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[inline]
    pub fn is_square(&self, a: Gf) -> bool {
        a.0 == 0 || (a.0 - 1) % 2 == 0
    }

    /// A square root, if one exists.
    pub fn sqrt(&self, a: Gf) -> Option<Gf> {
        if a.0 == 0 {
            return Some(a);
        }
        let i = a.0 - 1;
        if i % 2 == 1 {
            return None;
        }
        Some(Gf(i / 2 + 1))
    }
}

impl Field for GaloisField {
    type Elem = Gf;

    #[inline]
    fn zero(&self) -> Gf {
        Gf::ZERO
    }

    #[inline]
    fn one(&self) -> Gf {
        Gf::ONE
    }

    fn from_i64(&self, n: i64) -> Gf {
        let r = n.rem_euclid(self.t.p as i64) as u32;
        self.from_packed(r)
    }

    #[inline]
    fn add(&self, a: &Gf, b: &Gf) -> Gf {
        let (a, b) = (a.0, b.0);
        if a == 0 {
            return Gf(b);
        }
        if b == 0 {
            return Gf(a);
        }
        let t = &*self.t;
        let (i, j) = (a - 1, b - 1);
        let d = if j >= i { j - i } else { j + t.n - i };
        let z = t.zech[d as usize];
        if z == 0 {
            return Gf::ZERO;
        }
        let mut s = i + z - 1;
        if s >= t.n {
            s -= t.n;
        }
        Gf(s + 1)
    }

    #[inline]
    fn sub(&self, a: &Gf, b: &Gf) -> Gf {
        self.add(a, &self.neg(b))
    }

    #[inline]
    fn neg(&self, a: &Gf) -> Gf {
        if a.0 == 0 {
            return *a;
        }
        let mut s = a.0 - 1 + self.t.half;
        if s >= self.t.n {
            s -= self.t.n;
        }
        Gf(s + 1)
    }

    #[inline]
    fn mul(&self, a: &Gf, b: &Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf::ZERO;
        }
        let mut s = a.0 - 1 + b.0 - 1;
        if s >= self.t.n {
            s -= self.t.n;
        }
        Gf(s + 1)
    }

    fn inv(&self, a: &Gf) -> Option<Gf> {
        if a.0 == 0 {
            return None;
        }
        let i = a.0 - 1;
        Some(Gf(if i == 0 { 0 } else { self.t.n - i } + 1))
    }

    fn characteristic(&self) -> u64 {
        self.t.p as u64
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Finite(self.t.desc.clone())
    }

    fn render(&self, a: &Gf) -> String {
        let c = self.coefficients(*a);
        if self.t.desc.k == 1 {
            format!("{}", c[0])
        } else {
            let parts: Vec<String> = c.iter().map(|x| format!("{x}")).collect();
            format!("[{}]", parts.join(","))
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Gf {
        Gf(rng.random_range(0..self.t.q))
    }

    #[inline]
    fn is_zero(&self, a: &Gf) -> bool {
        a.0 == 0
    }
}

/// The inclusion `F_{p^k} -> F_{p^{km}}`, tabulated.
#[derive(Clone, Debug)]
pub struct Embedding {
    table: Vec<Gf>,
}

impl Embedding {
    /// Sends the base field's polynomial generator to the first root of the
    /// base modulus found in `target`.
    pub fn new(base: &GaloisField, target: &GaloisField) -> Result<Self> {
        if base.p() != target.p() || target.degree() % base.degree() != 0 {
            return Err(Error::InvalidField(format!("{base:?} does not embed in {target:?}")));
        }
        let image = if base.degree() == 1 {
            Gf::ZERO
        } else {
            let modulus = base.t.modulus.clone();
            target
                .elements()
                .find(|&x| {
                    let v = modulus.iter().rev().fold(Gf::ZERO, |acc, &c| target.add(&target.mul(&acc, &x), &target.from_i64(c as i64)));
                    v == Gf::ZERO
                })
                .ok_or_else(|| Error::InternalContradiction("base modulus has no root in the extension".into()))?
        };
        let table = base
            .elements()
            .map(|e| {
                let c = base.coefficients(e);
                if base.degree() == 1 {
                    target.from_i64(c[0] as i64)
                } else {
                    c.iter().rev().fold(Gf::ZERO, |acc, &ci| target.add(&target.mul(&acc, &image), &target.from_i64(ci as i64)))
                }
            })
            .collect();
        Ok(Embedding { table })
    }

    #[inline]
    pub fn map(&self, e: Gf) -> Gf {
        self.table[e.0 as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_descriptor_has_no_modulus() {
        let d = build_extension(7, 1).unwrap();
        assert_eq!(d, FiniteFieldDescriptor { p: 7, k: 1, modulus: None });
    }

    #[test]
    fn quadratic_extension_of_f5() {
        let d = build_extension(5, 2).unwrap();
        let m = d.modulus.clone().unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m[2], 1);
        // no root among the five elements of F_5
        for x in 0..5u32 {
            let v = (m[0] + m[1] * x + m[2] * x * x) % 5;
            assert_ne!(v, 0, "root {x}");
        }
        // x^2 + 2 is the first in scan order (x^2, x^2+1 = (x-2)(x+2) reduce)
        assert_eq!(m, vec![2, 0, 1]);
    }

    #[test]
    fn characteristic_two_and_composites_rejected() {
        assert!(matches!(build_extension(2, 3), Err(Error::InvalidField(_))));
        assert!(matches!(build_extension(9, 1), Err(Error::InvalidField(_))));
        assert!(matches!(build_extension(3, 0), Err(Error::InvalidField(_))));
    }

    #[test]
    fn character_small_cases() {
        let f7 = GaloisField::prime(7).unwrap();
        assert_eq!(f7.quadratic_character(f7.from_i64(0)), 0);
        assert_eq!(f7.quadratic_character(f7.from_i64(4)), 1);
        assert_eq!(f7.quadratic_character(f7.from_i64(3)), -1);
        // squares mod 7 are {1, 2, 4}
        for n in 1..7 {
            let expect = if [1, 2, 4].contains(&n) { 1 } else { -1 };
            assert_eq!(f7.quadratic_character(f7.from_i64(n)), expect);
        }
    }

    fn exhaustive_fields() -> Vec<GaloisField> {
        let mut out = Vec::new();
        for (p, k) in [(3, 1), (3, 2), (3, 3), (3, 5), (5, 1), (5, 2), (5, 3), (7, 1), (7, 2), (7, 3), (11, 2), (13, 2)] {
            out.push(GaloisField::extension(p, k).unwrap());
        }
        out
    }

    #[test]
    fn character_matches_euler_and_square_set() {
        for f in exhaustive_fields() {
            let q = f.order();
            let squares: Vec<Gf> = f.elements().map(|a| f.mul(&a, &a)).collect();
            let mut plus = 0;
            for a in f.elements() {
                let chi = f.quadratic_character(a);
                let euler = f.pow(&a, (q - 1) / 2);
                let expect = if a == Gf::ZERO {
                    0
                } else if euler == f.one() {
                    1
                } else {
                    assert_eq!(euler, f.neg(&f.one()));
                    -1
                };
                assert_eq!(chi, expect);
                assert_eq!(chi >= 0, squares.contains(&a));
                if chi == 1 {
                    plus += 1;
                }
            }
            assert_eq!(plus, (q - 1) / 2, "{f:?}");
        }
    }

    #[test]
    fn inverses_exhaustive() {
        for f in exhaustive_fields() {
            for a in f.elements().skip(1) {
                let b = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &b), f.one());
            }
            assert_eq!(f.inv(&Gf::ZERO), None);
        }
    }

    #[test]
    fn arithmetic_matches_polynomial_representation() {
        // Independent route: multiply packed coefficient vectors modulo the modulus.
        for f in exhaustive_fields() {
            let mut rng = ChaCha8Rng::seed_from_u64(f.order());
            for _ in 0..500 {
                let a = f.sample(&mut rng);
                let b = f.sample(&mut rng);
                let (ca, cb) = (f.coefficients(a), f.coefficients(b));
                let p = f.p();
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                assert_eq!(f.coefficients(f.add(&a, &b)), sum);
                let prod = f.t.mul_packed(f.t.pack(&ca.iter().map(|&c| c as u64).collect::<Vec<_>>()), f.t.pack(&cb.iter().map(|&c| c as u64).collect::<Vec<_>>()));
                assert_eq!(f.coefficients(f.mul(&a, &b)), f.t.unpack(prod).into_iter().map(|c| c as u32).collect::<Vec<_>>());
                assert_eq!(f.add(&a, &f.neg(&a)), Gf::ZERO);
            }
        }
    }

    #[test]
    fn field_axioms_random() {
        for f in exhaustive_fields() {
            let mut rng = ChaCha8Rng::seed_from_u64(7 + f.order());
            for _ in 0..300 {
                let (a, b, c) = (f.sample(&mut rng), f.sample(&mut rng), f.sample(&mut rng));
                assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
                assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            }
        }
    }

    #[test]
    fn character_is_multiplicative() {
        let f = GaloisField::extension(7, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let a = f.sample(&mut rng);
            let b = f.sample(&mut rng);
            if a == Gf::ZERO || b == Gf::ZERO {
                continue;
            }
            assert_eq!(f.quadratic_character(f.mul(&a, &b)), f.quadratic_character(a) * f.quadratic_character(b));
        }
    }

    #[test]
    fn embedding_is_a_ring_map() {
        for (p, k, m) in [(3, 1, 5), (5, 2, 2), (3, 2, 3), (7, 1, 3)] {
            let base = GaloisField::extension(p, k).unwrap();
            let top = GaloisField::extension(p, k * m).unwrap();
            let e = Embedding::new(&base, &top).unwrap();
            for a in base.elements() {
                for b in base.elements().step_by(3) {
                    assert_eq!(e.map(base.add(&a, &b)), top.add(&e.map(a), &e.map(b)));
                    assert_eq!(e.map(base.mul(&a, &b)), top.mul(&e.map(a), &e.map(b)));
                }
            }
        }
    }

    #[test]
    fn sqrt_roundtrip() {
        let f = GaloisField::extension(3, 3).unwrap();
        for a in f.elements() {
            match f.sqrt(a) {
                Some(r) => assert_eq!(f.mul(&r, &r), a),
                None => assert_eq!(f.quadratic_character(a), -1),
            }
        }
    }
}
