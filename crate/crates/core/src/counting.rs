//! Exhaustive point counts over `F_{q^m}`: plane quartics in `P^2`, models
//! `y^2 = F(x, z)` in `P(1, g+1, 1)`, and the genus-5 cover `Y -> Z` counted
//! fiber by fiber over `Z`.
//!
//! Work is split into rows of the outer enumeration axis and handed to a
//! [`Counter`], which decides how rows are scheduled; the totals are plain
//! sums, so the result does not depend on the schedule.

use alloc::vec::Vec;
use core::ops::Range;
use core::time::Duration;

use crate::field::{Embedding, Field, GaloisField, Gf};
use crate::poly::{TernaryForm, UniPoly};
use crate::prym::TernaryQuadratic;
use crate::{Error, Result};

/// Per-row partial sums; the meaning of each slot depends on the count.
pub type Tally = [u64; 3];

/// Schedules row kernels and sums their tallies.
pub trait Counter: Sync {
    fn sum_rows(&self, rows: u32, kernel: &(dyn Fn(Range<u32>) -> Tally + Sync)) -> Tally;

    /// Runs `f`, reporting wall time when a clock is available.
    fn timed<T>(&self, f: impl FnOnce() -> T) -> (T, Option<Duration>)
    where
        Self: Sized,
    {
        (f(), None)
    }
}

impl<C: Counter> Counter for &C {
    fn sum_rows(&self, rows: u32, kernel: &(dyn Fn(Range<u32>) -> Tally + Sync)) -> Tally {
        (**self).sum_rows(rows, kernel)
    }

    fn timed<T>(&self, f: impl FnOnce() -> T) -> (T, Option<Duration>) {
        (**self).timed(f)
    }
}

/// Runs every row on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Serial;

impl Counter for Serial {
    fn sum_rows(&self, rows: u32, kernel: &(dyn Fn(Range<u32>) -> Tally + Sync)) -> Tally {
        kernel(0..rows)
    }
}

pub fn add_tally(a: Tally, b: Tally) -> Tally {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelTag {
    PlaneQuartic,
    WeightedHyperelliptic,
    BruinCover,
}

impl ModelTag {
    pub fn name(self) -> &'static str {
        match self {
            ModelTag::PlaneQuartic => "plane-quartic",
            ModelTag::WeightedHyperelliptic => "weighted-hyperelliptic",
            ModelTag::BruinCover => "bruin-cover",
        }
    }
}

/// One exact count. Equality ignores `elapsed`.
#[derive(Clone, Debug)]
pub struct CountRecord {
    /// Size of the field the curve is defined over.
    pub q: u64,
    pub m: u32,
    pub count: u64,
    pub model: ModelTag,
    pub elapsed: Option<Duration>,
}

impl PartialEq for CountRecord {
    fn eq(&self, other: &Self) -> bool {
        (self.q, self.m, self.count, self.model) == (other.q, other.m, other.count, other.model)
    }
}

impl Eq for CountRecord {}

/// `|N - (Q + 1)| <= 2 g sqrt(Q)`, checked in integers.
pub fn within_weil_bound(count: u64, field_size: u64, genus: u32) -> bool {
    let d = count as i128 - field_size as i128 - 1;
    d * d <= 4 * (genus as i128).pow(2) * field_size as i128
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountLimits {
    /// Largest `q^m` enumerated along one axis.
    pub max_axis: u64,
    /// Largest number of point evaluations for a `P^2` count.
    pub max_plane_evals: u64,
}

impl Default for CountLimits {
    fn default() -> Self {
        CountLimits { max_axis: 30_000, max_plane_evals: 250_000_000 }
    }
}

impl CountLimits {
    fn check_axis(&self, q: u64) -> Result<()> {
        if q > self.max_axis {
            return Err(Error::ResourceLimit(alloc::format!("field of size {q} exceeds the axis cap {}", self.max_axis)));
        }
        Ok(())
    }

    fn check_plane(&self, q: u64) -> Result<()> {
        self.check_axis(q)?;
        let evals = q * q + q + 1;
        if evals > self.max_plane_evals {
            return Err(Error::ResourceLimit(alloc::format!("{evals} plane evaluations exceed the cap {}", self.max_plane_evals)));
        }
        Ok(())
    }
}

/// `F_{q^m}` for `m = 1..=max_m` over a base `F_q`, with the inclusions.
#[derive(Clone, Debug)]
pub struct ExtensionTower {
    base: GaloisField,
    levels: Vec<(GaloisField, Embedding)>,
}

impl ExtensionTower {
    pub fn new(base: &GaloisField, max_m: u32) -> Result<Self> {
        let mut levels = Vec::new();
        for m in 1..=max_m {
            let field = if m == 1 { base.clone() } else { GaloisField::extension(base.p(), base.degree() * m)? };
            let emb = Embedding::new(base, &field)?;
            levels.push((field, emb));
        }
        Ok(ExtensionTower { base: base.clone(), levels })
    }

    pub fn base(&self) -> &GaloisField {
        &self.base
    }

    pub fn max_m(&self) -> u32 {
        self.levels.len() as u32
    }

    pub fn level(&self, m: u32) -> Result<(&GaloisField, &Embedding)> {
        let (f, e) = self
            .levels
            .get((m as usize).wrapping_sub(1))
            .ok_or_else(|| Error::InvalidArgument(alloc::format!("extension degree {m} outside the tower")))?;
        Ok((f, e))
    }
}

fn check_odd(field: &GaloisField) -> Result<()> {
    if field.p() == 2 {
        return Err(Error::UnsupportedField);
    }
    Ok(())
}

/// Rows `0..q` are `(x : r : 1)`, row `q` is `(x : 1 : 0)` plus `(1 : 0 : 0)`.
fn row_point(r: u32, q: u32) -> (Gf, Gf) {
    if r < q { (Gf(r), Gf::ONE) } else { (Gf::ONE, Gf::ZERO) }
}

/// Projective points of a plane curve `P(x, y, z) = 0`.
pub fn count_plane_curve<C: Counter>(form: &TernaryForm<Gf>, field: &GaloisField, counter: &C, limits: &CountLimits) -> Result<u64> {
    check_odd(field)?;
    let q = field.order();
    limits.check_plane(q)?;
    let k = field;
    let d = form.degree();
    let terms: Vec<([usize; 3], Gf)> = form.terms(k).map(|(e, c)| (e, *c)).collect();
    let q32 = q as u32;
    let kernel = |rows: Range<u32>| -> Tally {
        let mut n = 0u64;
        let mut coeffs = alloc::vec![Gf::ZERO; d + 1];
        for r in rows {
            let (y, z) = row_point(r, q32);
            coeffs.iter_mut().for_each(|c| *c = Gf::ZERO);
            for (e, c) in &terms {
                let t = k.mul(&k.mul(c, &k.pow(&y, e[1] as u64)), &k.pow(&z, e[2] as u64));
                coeffs[e[0]] = k.add(&coeffs[e[0]], &t);
            }
            for x in 0..q32 {
                let x = Gf(x);
                let mut v = coeffs[d];
                for c in coeffs[..d].iter().rev() {
                    v = k.add(&k.mul(&v, &x), c);
                }
                if v == Gf::ZERO {
                    n += 1;
                }
            }
            if r == q32 && coeffs[d] == Gf::ZERO {
                n += 1;
            }
        }
        [n, 0, 0]
    };
    Ok(counter.sum_rows(q32 + 1, &kernel)[0])
}

/// Projective points of a plane quartic over `field`.
pub fn count_plane_quartic<C: Counter>(form: &TernaryForm<Gf>, field: &GaloisField, counter: &C, limits: &CountLimits) -> Result<u64> {
    if form.degree() != 4 {
        return Err(Error::Model("expected a ternary quartic".into()));
    }
    count_plane_curve(form, field, counter, limits)
}

/// Points of `y^2 = F~(x, z)` in `P(1, g+1, 1)`, `F~` the degree `2g+2`
/// homogenization of `F`.
///
/// The chart `z = 1` contributes `1 + chi(F(x))` per `x`; the point `z = 0`
/// contributes `1 + chi(c)` with `c` the coefficient of `x^{2g+2}`.
pub fn count_weighted<C: Counter>(f: &UniPoly<Gf>, genus: u32, field: &GaloisField, counter: &C, limits: &CountLimits) -> Result<u64> {
    check_odd(field)?;
    let top = 2 * genus as usize + 2;
    if f.degree().is_some_and(|d| d > top) {
        return Err(Error::Model(alloc::format!("degree {} exceeds 2g+2 = {top}", f.degree().unwrap_or(0))));
    }
    let q = field.order();
    limits.check_axis(q)?;
    let k = field;
    let coeffs = f.coeffs();
    let kernel = |rows: Range<u32>| -> Tally {
        let mut n = 0u64;
        for x in rows {
            let x = Gf(x);
            let v = coeffs.iter().rev().fold(Gf::ZERO, |acc, c| k.add(&k.mul(&acc, &x), c));
            n += (1 + k.quadratic_character(v) as i64) as u64;
        }
        [n, 0, 0]
    };
    let affine = counter.sum_rows(q as u32, &kernel)[0];
    let c = f.coeff(top, k);
    Ok(affine + (1 + k.quadratic_character(c) as i64) as u64)
}

/// `N_Z`, `N_Y` and the number of points of `Z` where all three `Q_i` vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruinCount {
    pub n_z: u64,
    pub n_y: u64,
    pub ramified: u64,
}

/// Coefficients of `x1^2, x1x2, x1x3, x2^2, x2x3, x3^2`.
fn quadratic_coeffs(t: &TernaryQuadratic<Gf>, k: &GaloisField) -> [Gf; 6] {
    let g = t.gram();
    let dbl = |a: &Gf| k.add(a, a);
    [*g.get(0, 0), dbl(g.get(0, 1)), dbl(g.get(0, 2)), *g.get(1, 1), dbl(g.get(1, 2)), *g.get(2, 2)]
}

fn eval_quadratic(c: &[Gf; 6], x: Gf, y: Gf, z: Gf, k: &GaloisField) -> Gf {
    // ((c0 x + c1 y + c2 z) x + (c3 y + c4 z) y + c5 z^2
    let l1 = k.add(&k.add(&k.mul(&c[0], &x), &k.mul(&c[1], &y)), &k.mul(&c[2], &z));
    let l2 = k.add(&k.mul(&c[3], &y), &k.mul(&c[4], &z));
    k.add(&k.add(&k.mul(&l1, &x), &k.mul(&l2, &y)), &k.mul(&c[5], &k.mul(&z, &z)))
}

/// Counts `Z : Q2^2 = Q1 Q3` in `P^2` and `Y : Q1 = u^2, Q2 = uv, Q3 = v^2`
/// in `P^4` by summing fiber sizes over `Z`.
///
/// Every point of `Y` has `x != 0`, so `Y -> Z` is defined everywhere. Over
/// a point of `Z` where the `Q_i` all vanish the fiber is the single point
/// `u = v = 0`. Otherwise, scaling `x` by `lambda` scales `(u, v)` by
/// `lambda`, so the fiber is the set of `(u, v)` solving the equations at a
/// fixed representative: if `Q1 != 0` then `u = ±sqrt(Q1)` and `v = Q2/u`
/// (with `v^2 = Q3` automatic on `Z`), giving `1 + chi(Q1)`; if `Q1 = 0` then
/// `Q2 = 0` on `Z`, `u = 0`, and `v^2 = Q3 != 0` gives `1 + chi(Q3)`.
pub fn count_bruin_cover<C: Counter>(
    quadrics: [&TernaryQuadratic<Gf>; 3],
    field: &GaloisField,
    counter: &C,
    limits: &CountLimits,
) -> Result<BruinCount> {
    check_odd(field)?;
    let k = field;
    if quadrics.iter().all(|t| t.is_zero(k)) {
        return Err(Error::DegenerateInput("all three quadrics vanish".into()));
    }
    let q = field.order();
    limits.check_plane(q)?;
    let c = quadrics.map(|t| quadratic_coeffs(t, k));
    let q32 = q as u32;
    let fiber = |x: Gf, y: Gf, z: Gf| -> Option<(u64, bool)> {
        let v1 = eval_quadratic(&c[0], x, y, z, k);
        let v2 = eval_quadratic(&c[1], x, y, z, k);
        let v3 = eval_quadratic(&c[2], x, y, z, k);
        if k.mul(&v2, &v2) != k.mul(&v1, &v3) {
            return None;
        }
        Some(if v1 == Gf::ZERO && v2 == Gf::ZERO && v3 == Gf::ZERO {
            (1, true)
        } else if v1 != Gf::ZERO {
            ((1 + k.quadratic_character(v1)) as u64, false)
        } else {
            ((1 + k.quadratic_character(v3)) as u64, false)
        })
    };
    let kernel = |rows: Range<u32>| -> Tally {
        let mut t = [0u64; 3];
        let mut visit = |x: Gf, y: Gf, z: Gf| {
            if let Some((size, ramified)) = fiber(x, y, z) {
                t[0] += 1;
                t[1] += size;
                t[2] += ramified as u64;
            }
        };
        for r in rows {
            let (y, z) = row_point(r, q32);
            for x in 0..q32 {
                visit(Gf(x), y, z);
            }
            if r == q32 {
                visit(Gf::ONE, Gf::ZERO, Gf::ZERO);
            }
        }
        t
    };
    let [n_z, n_y, ramified] = counter.sum_rows(q32 + 1, &kernel);
    Ok(BruinCount { n_z, n_y, ramified })
}

/// A curve model over a finite base field, ready to be counted over any
/// level of an [`ExtensionTower`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveInstance {
    PlaneQuartic(TernaryForm<Gf>),
    Weighted { f: UniPoly<Gf>, genus: u32 },
    BruinCover([TernaryQuadratic<Gf>; 3]),
}

impl CurveInstance {
    pub fn tag(&self) -> ModelTag {
        match self {
            CurveInstance::PlaneQuartic(_) => ModelTag::PlaneQuartic,
            CurveInstance::Weighted { .. } => ModelTag::WeightedHyperelliptic,
            CurveInstance::BruinCover(_) => ModelTag::BruinCover,
        }
    }

    pub fn genus(&self) -> u32 {
        match self {
            CurveInstance::PlaneQuartic(_) => 3,
            CurveInstance::Weighted { genus, .. } => *genus,
            CurveInstance::BruinCover(_) => 5,
        }
    }

    /// Counts over `F_{q^m}`; for the Bruin cover the record holds `N_Y`.
    pub fn count<C: Counter>(&self, tower: &ExtensionTower, m: u32, counter: &C, limits: &CountLimits) -> Result<CountRecord> {
        let (field, emb) = tower.level(m)?;
        let (count, elapsed) = counter.timed(|| -> Result<u64> {
            match self {
                CurveInstance::PlaneQuartic(form) => {
                    count_plane_quartic(&form.map::<GaloisField>(|&c| emb.map(c)), field, counter, limits)
                }
                CurveInstance::Weighted { f, genus } => count_weighted(&f.map(|&c| emb.map(c), field), *genus, field, counter, limits),
                CurveInstance::BruinCover(qs) => {
                    let lifted = qs.clone().map(|t| t.map::<GaloisField>(|&c| emb.map(c)));
                    Ok(count_bruin_cover([&lifted[0], &lifted[1], &lifted[2]], field, counter, limits)?.n_y)
                }
            }
        });
        Ok(CountRecord { q: tower.base().order(), m, count: count?, model: self.tag(), elapsed })
    }
}
