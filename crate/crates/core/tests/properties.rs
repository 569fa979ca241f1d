use dpff_core::cubic::lines::random_gl4;
use dpff_core::cubic::{classify_with, count_points, count_points_brute, CubicSurface};
use dpff_core::dp2::{classify_dp2, count_points_dp2, count_points_dp2_brute, ConicBundleSurface};
use dpff_core::ff::{Fe, FieldTower};
use dpff_core::weyl::{blowup_embed, e6, e7};
use dpff_core::Error;
use proptest::prelude::*;
use rand::SeedableRng;

fn cubic(q: u64, c: &[u64]) -> CubicSurface {
    CubicSurface::from_u64(q, &c.iter().map(|v| v % q).collect::<Vec<_>>()).unwrap()
}

prop_compose! {
    fn small_cubic()(q in prop::sample::select(vec![2u64, 3, 4, 5]), c in prop::collection::vec(0u64..25, 20)) -> (u64, Vec<u64>) {
        (q, c.iter().map(|v| v % q).collect())
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn frobenius_is_a_ring_map(q in prop::sample::select(vec![2u64, 3, 5, 7]), k in 1u32..6, a in any::<u64>(), b in any::<u64>()) {
        let t = FieldTower::over(q, k, 0).unwrap();
        let f = t.top();
        let (a, b) = (Fe(a % f.size()), Fe(b % f.size()));
        let fr = |x: Fe| t.frobenius(x, 1, 1);
        prop_assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
        prop_assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
        prop_assert_eq!(t.frobenius(a, 1, k), a);
    }

    #[test]
    fn chevalley_warning((q, c) in small_cubic()) {
        prop_assume!(c.iter().any(|&v| v != 0));
        let n = count_points(&cubic(q, &c), 1).unwrap();
        prop_assert!(n >= 1);
        let p = dpff_core::ff::prime::prime_power(q).unwrap().0;
        prop_assert_eq!(n % p, 1);
    }

    #[test]
    fn fiber_count_matches_enumeration((q, c) in small_cubic(), n in 1u32..4) {
        prop_assume!(c.iter().any(|&v| v != 0));
        prop_assume!(q.pow(3 * n) <= 1 << 16);
        let x = cubic(q, &c);
        prop_assert_eq!(count_points(&x, n).unwrap(), count_points_brute(&x, n).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lines_classes_and_counts_agree((q, c) in small_cubic(), seed in 0u64..1000) {
        let x = cubic(q, &c);
        let cl = match classify_with(&x, seed, 3) {
            Ok(cl) => cl,
            Err(Error::Singular) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let f = cl.lines.field();
        let inc = cl.lines.incidence();
        for (i, l) in cl.lines.lines.iter().enumerate() {
            prop_assert!(l.relation(f).is_zero());
            prop_assert_eq!(inc[i].iter().filter(|&&m| m).count(), 10);
            for j in 0..27 {
                let (fi, fj) = (cl.lines.frobenius[i] as usize, cl.lines.frobenius[j] as usize);
                prop_assert_eq!(inc[i][j], inc[fi][fj]);
            }
        }
        for pc in &cl.counts {
            let qn = q.pow(pc.n) as i64;
            prop_assert_eq!(pc.count as i64, qn * qn + qn * pc.trace + 1);
            prop_assert_eq!(Some(pc.trace), cl.class.trace(pc.n as u64));
        }
        // the class does not depend on coordinates
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let y = x.transform(&random_gl4(x.field(), &mut rng)).unwrap();
        prop_assert_eq!(&classify_with(&y, seed + 1, 1).unwrap().class.id, &cl.class.id);
    }

    #[test]
    fn conic_bundles_count_consistently(q in prop::sample::select(vec![3u64, 5, 7]), c in prop::collection::vec(0u64..7, 18)) {
        let c: Vec<u64> = c.iter().map(|v| v % q).collect();
        let x = ConicBundleSurface::from_u64(q, &c).unwrap();
        match classify_dp2(&x, 2) {
            Ok(cl) => {
                prop_assert_eq!(cl.eigenvalues.rank(), 8);
                prop_assert_eq!(cl.counts[0].count, count_points_dp2_brute(&x, 1, 1 << 20).unwrap());
                prop_assert_eq!(e7().geiser_twist(cl.twist).unwrap().id.as_str(), cl.class.id.as_str());
            }
            Err(Error::Singular | Error::Degenerate(_) | Error::AmbiguousClass(_)) => {
                // the fiberwise count still agrees when the discriminant is not identically zero
                if let Ok(n) = count_points_dp2(&x, 1) {
                    prop_assert_eq!(n, count_points_dp2_brute(&x, 1, 1 << 20).unwrap());
                }
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}

#[test]
fn geiser_twist_is_an_involution() {
    let t = e7();
    for c in &t.classes {
        let w = t.geiser_twist(c).unwrap();
        assert_eq!(t.geiser_twist(w).unwrap().id, c.id);
    }
}

#[test]
fn blowups_keep_the_order() {
    for c in &e6().classes {
        assert_eq!(blowup_embed(c).unwrap().order, c.order);
    }
}
