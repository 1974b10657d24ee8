use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use prym_core::counting::{count_plane_quartic, within_weil_bound, CountLimits, ExtensionTower, Serial};
use prym_core::poly::{discriminant_classical, squarefree_form, BinaryForm, TernaryForm};
use prym_core::prym::{deform, pencil_sextic, singular_model, split, BiellipticQuartic};
use prym_core::sample::random_validated_curve;
use prym_core::zeta::{lpoly_from_counts, predicted_count, weighted_counts};
use prym_core::{Field, GaloisField, Gf, Rationals};

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![5u32, 7, 11, 13])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pencil_times_four_is_the_sextic(p in prime(), seed in any::<u64>()) {
        let k = GaloisField::prime(p).unwrap();
        let c = random_validated_curve(&k, &mut ChaCha8Rng::seed_from_u64(seed), 1000).unwrap();
        let s = split(&c, false).unwrap();
        let m = singular_model(&c).unwrap();
        let pencil = pencil_sextic([&m.quadrics[0], &m.quadrics[1], &m.quadrics[2]], &k);
        prop_assert_eq!(pencil.scale(&k.from_i64(4), &k), s.sextic.clone());
        prop_assert!(s.x_squarefree);
        prop_assert!(matches!(s.sextic.degree(), Some(5) | Some(6)));
    }

    #[test]
    fn special_fiber_is_the_singular_model(p in prime(), seed in any::<u64>()) {
        let k = GaloisField::prime(p).unwrap();
        let c = random_validated_curve(&k, &mut ChaCha8Rng::seed_from_u64(seed), 1000).unwrap();
        let fiber = deform(&c, &k.zero()).unwrap();
        prop_assert_eq!(&fiber.quadrics, &singular_model(&c).unwrap().quadrics);
        prop_assert!(!fiber.quartic_smooth);
    }

    #[test]
    fn lpoly_round_trip_on_genuine_counts(p in prime(), seed in any::<u64>()) {
        let k = GaloisField::prime(p).unwrap();
        let c = random_validated_curve(&k, &mut ChaCha8Rng::seed_from_u64(seed), 1000).unwrap();
        let s = split(&c, false).unwrap();
        let tower = ExtensionTower::new(&k, 3).unwrap();
        let limits = CountLimits::default();
        for (f, g) in [(s.genus_one.s.dehomogenize(&k), 1u32), (s.sextic.clone(), 2)] {
            let counts = weighted_counts(&f, g, &tower, 3, &Serial, &limits).unwrap();
            for (m, n) in counts.iter().enumerate() {
                prop_assert!(within_weil_bound(*n, (p as u64).pow(m as u32 + 1), g));
            }
            let l = lpoly_from_counts(p as u64, &counts, g).unwrap();
            prop_assert!(l.satisfies_functional_equation());
            prop_assert_eq!(l.coeffs()[2 * g as usize], (p as i128).pow(g));
            for m in 1..=3u32 {
                prop_assert_eq!(predicted_count(&l, m).unwrap(), counts[m as usize - 1] as i128);
            }
        }
    }

    #[test]
    fn plane_count_is_invariant_under_coordinate_permutation(p in prime(), seed in any::<u64>()) {
        let k = GaloisField::prime(p).unwrap();
        let c = random_validated_curve(&k, &mut ChaCha8Rng::seed_from_u64(seed), 1000).unwrap();
        let quartic = c.plane_quartic();
        let limits = CountLimits::default();
        let n = count_plane_quartic(&quartic, &k, &Serial, &limits).unwrap();
        prop_assert!(within_weil_bound(n, p as u64, 3));
        for perm in [[2, 0, 1], [1, 0, 2]] {
            prop_assert_eq!(count_plane_quartic(&quartic.permute(perm, &k), &k, &Serial, &limits).unwrap(), n);
        }
    }
}

fn rat(n: i64) -> BigRational {
    Rationals.from_i64(n)
}

#[test]
fn discriminant_identity_ratio_is_four() {
    // f = xz, g = g2 x^2 + g1 xz + z^2, h random:
    // Disc(F) det(A)^18 = 4 g2 (g2 - g1^2/4)^2 Disc(s)
    let q = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut checked = 0;
    while checked < 12 {
        let g2 = rand::Rng::random_range(&mut rng, -6i64..=6);
        let g1 = rand::Rng::random_range(&mut rng, -6i64..=6);
        let h: [i64; 3] = core::array::from_fn(|_| rand::Rng::random_range(&mut rng, -6i64..=6));
        let c = BiellipticQuartic::from_ints(q, [0, 1, 0], [g2, g1, 1], h).unwrap();
        let Ok(s) = split(&c, false) else { continue };
        let sextic = BinaryForm::homogenize(&s.sextic, 6, &q).unwrap();
        let lhs = q.mul(&discriminant_classical(&sextic, &q).unwrap(), &q.pow(&s.det_a, 18));
        let inner = q.sub(&rat(g2), &q.div(&rat(g1 * g1), &rat(4)).unwrap());
        let rhs = q.mul(&q.mul(&rat(g2), &q.mul(&inner, &inner)), &discriminant_classical(&c.s(), &q).unwrap());
        assert_eq!(q.div(&lhs, &rhs).unwrap(), rat(4), "{c:?}");
        checked += 1;
    }
}

#[test]
fn validated_rational_curves_have_squarefree_sextic() {
    let q = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..15 {
        let c = random_validated_curve(&q, &mut rng, 1000).unwrap();
        let s = split(&c, false).unwrap();
        assert!(s.x_squarefree);
        assert!(squarefree_form(&BinaryForm::homogenize(&s.sextic, 6, &q).unwrap(), &q).unwrap());
    }
}

#[test]
fn fermat_quartic_over_extension_satisfies_weil() {
    let k = GaloisField::prime(3).unwrap();
    let tower = ExtensionTower::new(&k, 4).unwrap();
    let f = TernaryForm::from_int_terms(4, &[([4, 0, 0], 1), ([0, 4, 0], -1), ([0, 0, 4], 1)], &k);
    for m in 1..=4 {
        let (field, emb) = tower.level(m).unwrap();
        let lifted = f.map::<GaloisField>(|&c: &Gf| emb.map(c));
        let n = count_plane_quartic(&lifted, field, &Serial, &CountLimits::default()).unwrap();
        assert!(within_weil_bound(n, 3u64.pow(m), 3));
    }
}
