mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use smooshkit::bundle::{act, xy_from_z};
use smooshkit::checks::sample_grid;
use smooshkit::rational::{rat, ratio};
use smooshkit::*;

#[test]
fn double_point_fibers() {
    let m = ZModel::new(Arrangement::from_int_rows(1, &[&[1, 0]]).unwrap());
    let over_zero = m.fiber(&[rat(0)]).unwrap();
    assert_eq!(over_zero.len(), 2);
    assert!(!m.z_equal(&over_zero[0], &over_zero[1]));
    assert_eq!(m.fiber(&[ratio(1, 3)]).unwrap().len(), 1);
}

#[test]
fn concurrent_lines_origin_has_six_points() {
    let a = Arrangement::from_int_rows(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap();
    let m = ZModel::new(a);
    let fiber = m.fiber(&[rat(0), rat(0)]).unwrap();
    assert_eq!(fiber.len(), 6);
    let images: Vec<String> = fiber
        .iter()
        .map(|z| serde_json::to_string(&m.embed_d(z).unwrap()).unwrap())
        .collect();
    let mut dedup = images.clone();
    dedup.sort();
    dedup.dedup();
    assert_eq!(dedup.len(), 6);
}

#[test]
fn embedded_points_are_members_across_the_corpus() {
    for (name, a) in common::corpus() {
        let m = ZModel::new(a.clone());
        for q in sample_grid(&a).into_iter().step_by(5) {
            for z in m.fiber(&q).unwrap() {
                let r = m.d_image_membership(&m.embed_d(&z).unwrap());
                assert!(r.member, "{name}");
                let at_w = a.sign_vector(&r.witness.unwrap()).unwrap();
                let at_q = a.sign_vector(&q).unwrap();
                for j in 0..a.len() {
                    if at_q.0[j] == Sign::Zero {
                        assert_eq!(at_w.0[j], z.chart.0[j], "{name}");
                    }
                }
            }
        }
    }
}

#[test]
fn explicit_non_members() {
    let two = ZModel::new(Arrangement::from_int_rows(1, &[&[1, 0], &[1, -1]]).unwrap());
    let r = two.d_image_membership(&DPoint::parse(&["1", "1"]).unwrap());
    assert!(!r.member);
    assert_eq!(r.reason, Some(NonMember::NotInAffineImage));

    let tri =
        ZModel::new(Arrangement::from_int_rows(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap());
    for pattern in [["p", "p", "m"], ["m", "m", "p"]] {
        let r = tri.d_image_membership(&DPoint::parse(&pattern).unwrap());
        assert_eq!(r.reason, Some(NonMember::EmptySignRegion));
    }
    assert!(
        tri.d_image_membership(&DPoint::parse(&["p", "m", "p"]).unwrap())
            .member
    );
}

fn complex_coord() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, -3.0f64..3.0)
        .prop_filter("nonzero", |(a, b)| a.abs() + b.abs() > 1e-3)
        .prop_map(|(a, b)| Complex64::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_composes_and_keeps_real_parts(
        z in proptest::collection::vec(complex_coord(), 1..5),
        l1 in proptest::collection::vec(-4.0f64..4.0, 5),
        l2 in proptest::collection::vec(-4.0f64..4.0, 5),
    ) {
        let n = z.len();
        let z = CxVector::new(z).unwrap();
        let (l1, l2) = (&l1[..n], &l2[..n]);
        let sum: Vec<f64> = l1.iter().zip(l2).map(|(a, b)| a + b).collect();
        let once = act(&sum, &z).unwrap();
        let twice = act(l1, &act(l2, &z).unwrap()).unwrap();
        for j in 0..n {
            prop_assert_eq!(once.z[j].re, z.z[j].re);
            let scale = once.z[j].norm().max(1.0);
            prop_assert!((once.z[j] - twice.z[j]).norm() <= 1e-10 * scale);
        }
        prop_assert_eq!(act(&vec![0.0; n], &z).unwrap(), z.clone());
    }

    #[test]
    fn square_root_pair_reconstructs(z in complex_coord()) {
        let v = CxVector::new(vec![z]).unwrap();
        let xy = xy_from_z(&v).unwrap();
        let w = Complex64::new(xy.x[0], xy.y[0]);
        let back = Complex64::i() * w * w;
        prop_assert!((back - z).norm() <= 1e-14 * z.norm().max(1.0));
        prop_assert!(xy.x[0] >= 0.0);
    }

    #[test]
    fn fibers_match_conformal_chambers(a in common::small_arrangement(2, 4), i in 0usize..64) {
        let m = ZModel::new(a.clone());
        let grid = sample_grid(&a);
        let q = &grid[i % grid.len()];
        let s = a.sign_vector(q).unwrap();
        let fiber = m.fiber(q).unwrap();
        let conformal = m.chambers().iter().filter(|c| s.conforms_to(&c.signs)).count();
        prop_assert_eq!(fiber.len(), conformal);
        for z in &fiber {
            prop_assert_eq!(&m.canonicalize(&z.chart, &z.base).unwrap(), z);
            prop_assert!(m.d_image_membership(&m.embed_d(z).unwrap()).member);
        }
    }

    #[test]
    fn retraction_inverts_random_moves(a in common::small_arrangement(2, 4), seed in any::<u64>()) {
        use rand::SeedableRng;
        let b = Bundle::new(ZModel::new(a.clone()));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let m = smooshkit::checks::random_mpoint(&mut rng, &a);
        let lambda0 = smooshkit::checks::random_w_element(&mut rng, &b, 3.0);
        let z = act(&lambda0, &b.embed_m(&m).unwrap()).unwrap();
        let r = b.kempf_ness_retract(&z).unwrap();
        prop_assert!(r.diagnostics.grad_norm <= 1e-10);
        prop_assert!(r.m.max_abs_diff(&m) <= 1e-6 * (1.0 + m.max_abs()));
        prop_assert_eq!(b.smoosh(&r.m).map(|z| z.chart), b.smoosh(&m).map(|z| z.chart));
    }
}
