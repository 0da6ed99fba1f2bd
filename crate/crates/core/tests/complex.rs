mod common;

use proptest::prelude::*;
use smooshkit::cech::{build_full_complex, dump_complex};
use smooshkit::*;

#[test]
fn corpus_complexes_square_to_zero() {
    for (name, a) in common::corpus() {
        let d = a.dim();
        let cx = build_cech_complex(&ZModel::new(a), d + 1, CechOptions::default()).unwrap();
        assert!(cx.is_complex(), "{name}");
    }
}

#[test]
fn euler_characteristic_of_full_complexes() {
    for (name, a) in common::corpus() {
        let model = ZModel::new(a);
        if model.chambers().len() > 8 {
            continue;
        }
        let cx = build_full_complex(&model).unwrap();
        let alt = |v: Vec<usize>| {
            v.iter()
                .enumerate()
                .map(|(q, &x)| if q % 2 == 0 { x as i64 } else { -(x as i64) })
                .sum::<i64>()
        };
        assert_eq!(alt(cx.dims()), alt(cx.betti()), "{name}");
        let os = characteristic_and_poincare(model.arrangement())
            .unwrap()
            .poincare;
        let mut betti = cx.betti();
        while betti.last() == Some(&0) {
            betti.pop();
        }
        let os: Vec<usize> = os.coeffs().iter().map(|&c| c as usize).collect();
        assert_eq!(betti, os, "{name}");
    }
}

#[test]
fn degree_bounds_and_caps() {
    let model = ZModel::new(Arrangement::from_int_rows(1, &[&[1, 0]]).unwrap());
    assert!(matches!(
        build_cech_complex(&model, 4, CechOptions::default()),
        Err(Error::DegreeOutOfRange(4))
    ));
    let planes = ZModel::new(
        Arrangement::from_int_rows(
            3,
            &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 1, 0]],
        )
        .unwrap(),
    );
    assert!(matches!(
        build_cech_complex(&planes, 2, CechOptions { chamber_cap: 8 }),
        Err(Error::ChamberLimitExceeded(_))
    ));
}

#[test]
fn dump_lists_bases_and_sparse_entries() {
    let model = ZModel::new(Arrangement::from_int_rows(1, &[&[1, 0]]).unwrap());
    let cx = build_cech_complex(&model, 1, CechOptions::default()).unwrap();
    let v = dump_complex(&cx);
    assert_eq!(v["degrees"][0]["basis"].as_array().unwrap().len(), 2);
    assert_eq!(v["degrees"][1]["basis"].as_array().unwrap().len(), 2);
    assert_eq!(
        v["differentials"][0]["entries"].as_array().unwrap().len(),
        4
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cech_matches_orlik_solomon(a in common::small_arrangement(2, 4)) {
        let d = a.dim();
        let model = ZModel::new(a);
        let t = betti_compare(&model, d + 1, CechOptions::default()).unwrap();
        prop_assert!(t.matched, "cech {:?} os {:?}", t.cech, t.os);
        prop_assert_eq!(t.cech[0], 1);
    }
}
