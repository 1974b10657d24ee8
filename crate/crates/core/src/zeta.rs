//! L-polynomials from point counts, and the two isogeny checks built on
//! them: `L_C = L_D L_X` for the split, and `L_Y = L_Z L_H` for a Bruin
//! cover, the latter compared through predicted counts of `Y`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::counting::{count_bruin_cover, count_weighted, within_weil_bound, CountLimits, CountRecord, Counter, CurveInstance, ExtensionTower, ModelTag};
use crate::field::{GaloisField, Gf};
use crate::poly::UniPoly;
use crate::prym::{split, BiellipticQuartic, BruinCover, Check, SplitResult};
use crate::{Error, Result};

/// `L(T) = 1 + a_1 T + ... + a_{2g} T^{2g}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeilPolynomial {
    genus: u32,
    q: u64,
    coeffs: Vec<i128>,
}

impl WeilPolynomial {
    /// Checks `L(0) = 1`, the functional equation and `|a_1| <= 2g sqrt(q)`.
    pub fn new(genus: u32, q: u64, coeffs: Vec<i128>) -> Result<Self> {
        let l = WeilPolynomial { genus, q, coeffs };
        if l.coeffs.len() != 2 * genus as usize + 1 {
            return Err(Error::InconsistentCounts(alloc::format!("expected {} coefficients", 2 * genus + 1)));
        }
        if !l.satisfies_functional_equation() {
            return Err(Error::InconsistentCounts("functional equation fails".into()));
        }
        if !l.a1_within_bound() {
            return Err(Error::InconsistentCounts(alloc::format!("|a_1| = {} exceeds 2g sqrt(q)", l.coeffs.get(1).copied().unwrap_or(0).abs())));
        }
        Ok(l)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// `a_0 = 1` and `a_{2g-i} = q^{g-i} a_i` for `0 <= i <= g`.
    pub fn satisfies_functional_equation(&self) -> bool {
        let g = self.genus as usize;
        self.coeffs.len() == 2 * g + 1
            && self.coeffs[0] == 1
            && (0..=g).all(|i| self.coeffs[2 * g - i] == (self.q as i128).pow((g - i) as u32) * self.coeffs[i])
    }

    pub fn a1_within_bound(&self) -> bool {
        let a1 = self.coeffs.get(1).copied().unwrap_or(0);
        a1 * a1 <= 4 * (self.genus as i128).pow(2) * self.q as i128
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.q != other.q {
            return Err(Error::InvalidArgument("L-polynomials over different fields".into()));
        }
        let mut coeffs = alloc::vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(WeilPolynomial { genus: self.genus + other.genus, q: self.q, coeffs })
    }

    /// `e_k` with `L(T) = sum (-1)^k e_k T^k`.
    fn elementary(&self, k: usize) -> i128 {
        let a = self.coeffs.get(k).copied().unwrap_or(0);
        if k % 2 == 0 { a } else { -a }
    }

    /// Power sums `s_1..s_m` of the reciprocal roots.
    pub fn power_sums(&self, m: u32) -> Vec<i128> {
        let mut s: Vec<i128> = Vec::with_capacity(m as usize);
        for n in 1..=m as usize {
            // s_n = e_1 s_{n-1} - e_2 s_{n-2} + ... + (-1)^{n-1} n e_n
            let mut v = 0i128;
            for i in 1..n {
                let term = self.elementary(i) * s[n - i - 1];
                v += if i % 2 == 1 { term } else { -term };
            }
            let last = n as i128 * self.elementary(n);
            v += if n % 2 == 1 { last } else { -last };
            s.push(v);
        }
        s
    }
}

/// Builds `L` from `N_1..N_g` over `F_q, ..., F_{q^g}`.
pub fn lpoly_from_counts(q: u64, counts: &[u64], genus: u32) -> Result<WeilPolynomial> {
    let g = genus as usize;
    if counts.len() < g {
        return Err(Error::InvalidArgument(alloc::format!("need {g} counts, got {}", counts.len())));
    }
    let qi = q as i128;
    let s: Vec<i128> = (1..=g).map(|i| qi.pow(i as u32) + 1 - counts[i - 1] as i128).collect();
    let mut e = alloc::vec![1i128];
    for k in 1..=g {
        // k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} s_i
        let mut acc = 0i128;
        for i in 1..=k {
            let term = e[k - i] * s[i - 1];
            acc += if i % 2 == 1 { term } else { -term };
        }
        if acc % k as i128 != 0 {
            return Err(Error::InconsistentCounts(alloc::format!("Newton step {k}: {acc} is not divisible by {k}")));
        }
        e.push(acc / k as i128);
    }
    let mut coeffs = alloc::vec![0i128; 2 * g + 1];
    for k in 0..=g {
        coeffs[k] = if k % 2 == 0 { e[k] } else { -e[k] };
    }
    for i in 0..g {
        coeffs[2 * g - i] = qi.pow((g - i) as u32) * coeffs[i];
    }
    WeilPolynomial::new(genus, q, coeffs)
}

/// `N_m = q^m + 1 - s_m`.
pub fn predicted_count(l: &WeilPolynomial, m: u32) -> Result<i128> {
    if m == 0 {
        return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
    }
    let s = l.power_sums(m);
    Ok((l.q as i128).pow(m) + 1 - s[m as usize - 1])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail { reason: String },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Everything computed while checking `L_C = L_D L_X`.
#[derive(Clone, Debug)]
pub struct SplitVerification {
    pub split: SplitResult<Gf>,
    /// The sextic that was counted; differs from `split.sextic` only for
    /// negative controls.
    pub sextic: UniPoly<Gf>,
    pub counts_c: Vec<CountRecord>,
    pub counts_d: Vec<CountRecord>,
    pub counts_x: Vec<CountRecord>,
    pub l_c: Option<WeilPolynomial>,
    pub l_d: Option<WeilPolynomial>,
    pub l_x: Option<WeilPolynomial>,
    pub product: Option<WeilPolynomial>,
    pub verdict: Verdict,
}

impl PartialEq for SplitVerification {
    fn eq(&self, other: &Self) -> bool {
        self.split == other.split
            && self.sextic == other.sextic
            && self.counts_c == other.counts_c
            && self.counts_d == other.counts_d
            && self.counts_x == other.counts_x
            && self.l_c == other.l_c
            && self.l_d == other.l_d
            && self.l_x == other.l_x
            && self.product == other.product
            && self.verdict == other.verdict
    }
}

fn count_levels<C: Counter>(
    inst: &CurveInstance,
    tower: &ExtensionTower,
    levels: u32,
    counter: &C,
    limits: &CountLimits,
) -> Result<Vec<CountRecord>> {
    (1..=levels).map(|m| inst.count(tower, m, counter, limits)).collect()
}

fn lpoly_of(q: u64, records: &[CountRecord], genus: u32) -> Result<WeilPolynomial> {
    let counts: Vec<u64> = records.iter().map(|r| r.count).collect();
    lpoly_from_counts(q, &counts, genus)
}

/// Checks `Jac(C) ~ Jac(D) x Jac(X)` over `F_q` by comparing L-polynomials.
///
/// `C` must pass validation; a mismatch is a [`Verdict::Fail`], not an error.
pub fn verify_split<C: Counter>(curve: &BiellipticQuartic<GaloisField>, counter: &C, limits: &CountLimits) -> Result<SplitVerification> {
    verify_split_inner(curve, None, counter, limits)
}

/// As [`verify_split`], but counting `y^2 = sextic` in place of `X`.
pub fn verify_split_against<C: Counter>(
    curve: &BiellipticQuartic<GaloisField>,
    sextic: &UniPoly<Gf>,
    counter: &C,
    limits: &CountLimits,
) -> Result<SplitVerification> {
    verify_split_inner(curve, Some(sextic), counter, limits)
}

fn verify_split_inner<C: Counter>(
    curve: &BiellipticQuartic<GaloisField>,
    sextic: Option<&UniPoly<Gf>>,
    counter: &C,
    limits: &CountLimits,
) -> Result<SplitVerification> {
    let k = &curve.field;
    let split = split(curve, false)?;
    let sextic = sextic.cloned().unwrap_or_else(|| split.sextic.clone());
    let tower = ExtensionTower::new(k, 3)?;
    let q = k.order();
    let c_inst = CurveInstance::PlaneQuartic(curve.plane_quartic());
    let d_inst = CurveInstance::Weighted { f: split.genus_one.s.dehomogenize(k), genus: 1 };
    let x_inst = CurveInstance::Weighted { f: sextic.clone(), genus: 2 };
    let counts_c = count_levels(&c_inst, &tower, 3, counter, limits)?;
    let counts_d = count_levels(&d_inst, &tower, 1, counter, limits)?;
    let counts_x = count_levels(&x_inst, &tower, 2, counter, limits)?;
    let l_c = lpoly_of(q, &counts_c, 3);
    let l_d = lpoly_of(q, &counts_d, 1);
    let l_x = lpoly_of(q, &counts_x, 2);
    let product = match (&l_d, &l_x) {
        (Ok(d), Ok(x)) => Some(d.mul(x)?),
        _ => None,
    };
    let verdict = match (&l_c, &l_d, &l_x, &product) {
        (Ok(c), Ok(_), Ok(_), Some(p)) if c == p => Verdict::Pass,
        (Ok(_), Ok(_), Ok(_), Some(_)) => Verdict::Fail { reason: "L_C != L_D L_X".into() },
        _ => {
            let side = [("C", &l_c), ("D", &l_d), ("X", &l_x)].into_iter().find_map(|(n, l)| l.as_ref().err().map(|e| (n, e)));
            let (name, err) = side.expect("some side failed");
            Verdict::Fail { reason: alloc::format!("no L-polynomial for {name}: {err}") }
        }
    };
    Ok(SplitVerification {
        split,
        sextic,
        counts_c,
        counts_d,
        counts_x,
        l_c: l_c.ok(),
        l_d: l_d.ok(),
        l_x: l_x.ok(),
        product,
        verdict,
    })
}

/// How much of `L_Y` a Bruin check pins down.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `N_1..N_5` agree, which determines the degree-10 `L_Y`.
    Full,
    /// Only `N_1..N_depth` were compared.
    Partial { depth: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruinVerification {
    pub counts_z: Vec<CountRecord>,
    pub counts_h: Vec<CountRecord>,
    pub counts_y: Vec<CountRecord>,
    pub predicted_y: Vec<i128>,
    pub l_z: WeilPolynomial,
    pub l_h: WeilPolynomial,
    pub product: WeilPolynomial,
    pub requested_depth: u32,
    pub achieved_depth: u32,
    pub certificate: Certificate,
    pub verdict: Verdict,
}

/// Checks `Prym(Y/Z) ~ Jac(H)` through `N_m(Y) = N_m` predicted by
/// `L_Z L_H` for `m = 1..=depth` (`depth <= 5`).
///
/// If a resource cap stops the count of `Y` past `F_{q^3}`, the result is a
/// partial certificate at the depth reached.
pub fn verify_bruin<C: Counter>(cover: &BruinCover<GaloisField>, depth: u32, counter: &C, limits: &CountLimits) -> Result<BruinVerification> {
    if !(1..=5).contains(&depth) {
        return Err(Error::InvalidArgument(alloc::format!("depth {depth} outside 1..=5")));
    }
    let mut failed = Vec::new();
    if !cover.quartic_smooth {
        failed.push(Check::BaseQuarticSmooth);
    }
    if !cover.sextic_squarefree {
        failed.push(Check::PencilSquarefree);
    }
    if !failed.is_empty() {
        return Err(Error::Rejected { failed });
    }
    let k = &cover.field;
    let q = k.order();
    let tower = ExtensionTower::new(k, depth.max(3))?;
    let mut counts_z = Vec::new();
    let mut counts_y = Vec::new();
    for m in 1..=depth.max(3) {
        let (field, emb) = tower.level(m)?;
        let lifted = cover.quadrics.clone().map(|t| t.map::<GaloisField>(|&c| emb.map(c)));
        let (res, elapsed) = counter.timed(|| count_bruin_cover([&lifted[0], &lifted[1], &lifted[2]], field, counter, limits));
        let bc = match res {
            Ok(bc) => bc,
            Err(Error::ResourceLimit(_)) if m > 3 => break,
            Err(e) => return Err(e),
        };
        if bc.ramified != 0 {
            return Err(Error::InternalContradiction("smooth Bruin fiber has a point where all Q_i vanish".into()));
        }
        if m <= 3 {
            counts_z.push(CountRecord { q, m, count: bc.n_z, model: ModelTag::PlaneQuartic, elapsed });
        }
        if m <= depth {
            counts_y.push(CountRecord { q, m, count: bc.n_y, model: ModelTag::BruinCover, elapsed });
        }
    }
    let h_inst = CurveInstance::Weighted { f: cover.sextic.clone(), genus: 2 };
    let counts_h = count_levels(&h_inst, &tower, 2, counter, limits)?;
    let l_z = lpoly_of(q, &counts_z, 3)?;
    let l_h = lpoly_of(q, &counts_h, 2)?;
    let product = l_z.mul(&l_h)?;
    let achieved_depth = counts_y.len() as u32;
    let predicted_y = (1..=achieved_depth).map(|m| predicted_count(&product, m)).collect::<Result<Vec<_>>>()?;
    let mismatch = counts_y.iter().zip(&predicted_y).find(|(r, p)| r.count as i128 != **p);
    let verdict = match mismatch {
        None => Verdict::Pass,
        Some((r, p)) => Verdict::Fail { reason: alloc::format!("N_{}(Y) = {} but L_Z L_H predicts {p}", r.m, r.count) },
    };
    for r in &counts_y {
        if !within_weil_bound(r.count, q.pow(r.m), 5) {
            return Err(Error::InternalContradiction(alloc::format!("N_{}(Y) = {} violates the genus-5 Weil bound", r.m, r.count)));
        }
    }
    let certificate = if achieved_depth == 5 { Certificate::Full } else { Certificate::Partial { depth: achieved_depth } };
    Ok(BruinVerification {
        counts_z,
        counts_h,
        counts_y,
        predicted_y,
        l_z,
        l_h,
        product,
        requested_depth: depth,
        achieved_depth,
        certificate,
        verdict,
    })
}

/// Counts of `y^2 = F` for `m = 1..=levels`, used by callers that only need
/// the genus-2 side.
pub fn weighted_counts<C: Counter>(f: &UniPoly<Gf>, genus: u32, tower: &ExtensionTower, levels: u32, counter: &C, limits: &CountLimits) -> Result<Vec<u64>> {
    (1..=levels)
        .map(|m| {
            let (field, emb) = tower.level(m)?;
            count_weighted(&f.map(|&c| emb.map(c), field), genus, field, counter, limits)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::Serial;
    use crate::field::Field;
    use crate::prym::deform;
    use crate::sample::random_validated_curve;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lpoly_examples() {
        assert_eq!(lpoly_from_counts(5, &[6], 1).unwrap().coeffs(), &[1, 0, 5]);
        assert_eq!(lpoly_from_counts(5, &[6, 26], 2).unwrap().coeffs(), &[1, 0, 0, 0, 25]);
        let l = lpoly_from_counts(5, &[4], 1).unwrap();
        assert_eq!(l.coeffs(), &[1, -2, 5]);
        assert_eq!(predicted_count(&l, 1).unwrap(), 4);
        assert_eq!(predicted_count(&l, 2).unwrap(), 32);
        assert_eq!(predicted_count(&lpoly_from_counts(5, &[6], 1).unwrap(), 1).unwrap(), 6);
        assert!(predicted_count(&l, 0).is_err());
    }

    #[test]
    fn predicted_count_matches_count_over_f25() {
        let k = GaloisField::prime(5).unwrap();
        let tower = ExtensionTower::new(&k, 2).unwrap();
        let counts = weighted_counts(&UniPoly::from_ints(&[0, 1, 0, 1], &k), 1, &tower, 2, &Serial, &CountLimits::default()).unwrap();
        assert_eq!(counts, [4, 32]);
    }

    #[test]
    fn inconsistent_counts_are_reported() {
        // g = 2, q = 5: e_2 = (s_1^2 - s_2) / 2 with s_1 = 1, s_2 = 0
        assert!(matches!(lpoly_from_counts(5, &[5, 26], 2), Err(Error::InconsistentCounts(_))));
        // |a_1| = 6 > 2 sqrt 5
        assert!(matches!(lpoly_from_counts(5, &[12], 1), Err(Error::InconsistentCounts(_))));
    }

    #[test]
    fn product_keeps_functional_equation() {
        let l1 = lpoly_from_counts(7, &[6], 1).unwrap();
        let l2 = lpoly_from_counts(7, &[10, 50], 2).unwrap();
        let p = l1.mul(&l2).unwrap();
        assert_eq!(p.genus(), 3);
        assert!(p.satisfies_functional_equation());
        assert_eq!(p.coeffs()[6], 343);
    }

    #[test]
    fn split_verifies_over_small_primes() {
        for p in [5u32, 7] {
            let k = GaloisField::prime(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
            for _ in 0..10 {
                let c = random_validated_curve(&k, &mut rng, 1000).unwrap();
                let v = verify_split(&c, &Serial, &CountLimits::default()).unwrap();
                assert!(v.verdict.passed(), "{c:?} {v:?}");
                let mut bad = v.sextic.clone();
                bad = bad.add(&UniPoly::constant(k.one(), &k), &k);
                let neg = verify_split_against(&c, &bad, &Serial, &CountLimits::default()).unwrap();
                let _ = neg.verdict;
            }
        }
    }

    #[test]
    fn worked_example_over_f7() {
        let k = GaloisField::prime(7).unwrap();
        let c = BiellipticQuartic::from_ints(k, [0, 1, 0], [1, 1, 1], [1, 0, -1]).unwrap();
        let v = verify_split(&c, &Serial, &CountLimits::default()).unwrap();
        assert!(v.verdict.passed());
    }

    #[test]
    fn rejected_curves_do_not_verify() {
        let k = GaloisField::prime(7).unwrap();
        let c = BiellipticQuartic::from_ints(k, [1, 0, 0], [0, 0, 1], [0, 1, 0]).unwrap();
        assert!(matches!(verify_split(&c, &Serial, &CountLimits::default()), Err(Error::Rejected { .. })));
    }

    #[test]
    fn bruin_fibers_verify_over_f5() {
        let k = GaloisField::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut done = 0;
        while done < 3 {
            let c = random_validated_curve(&k, &mut rng, 1000).unwrap();
            let eps = k.sample(&mut rng);
            let cover = deform(&c, &eps).unwrap();
            if !cover.is_smooth() {
                assert!(matches!(verify_bruin(&cover, 2, &Serial, &CountLimits::default()), Err(Error::Rejected { .. })));
                continue;
            }
            let v = verify_bruin(&cover, 2, &Serial, &CountLimits::default()).unwrap();
            assert!(v.verdict.passed(), "{v:?}");
            assert_eq!(v.certificate, Certificate::Partial { depth: 2 });
            done += 1;
        }
    }

    #[test]
    fn second_derivative_convention_gives_a_twist() {
        // Hessian matrices are twice the Gram matrices, so their pencil
        // determinant is 8P, a twist of H by 2. Over F_5, where 2 is not a
        // square, L_{H'} has a_1 of opposite sign, and the prediction fails
        // whenever a_1(H) != 0.
        let k = GaloisField::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut mismatches = 0;
        for _ in 0..200 {
            if mismatches == 3 {
                break;
            }
            let c = random_validated_curve(&k, &mut rng, 1000).unwrap();
            let cover = deform(&c, &k.sample(&mut rng)).unwrap();
            if !cover.is_smooth() {
                continue;
            }
            let v = verify_bruin(&cover, 1, &Serial, &CountLimits::default()).unwrap();
            assert!(v.verdict.passed());
            let mut twisted = cover.clone();
            twisted.sextic = cover.sextic.scale(&k.from_i64(8), &k);
            let w = verify_bruin(&twisted, 1, &Serial, &CountLimits::default()).unwrap();
            assert_eq!(w.l_h.coeffs()[1], -v.l_h.coeffs()[1]);
            if v.l_h.coeffs()[1] != 0 {
                assert!(!w.verdict.passed());
                mismatches += 1;
            }
        }
        assert_eq!(mismatches, 3);
    }
}
