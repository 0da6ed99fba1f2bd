#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;
use smooshkit::Arrangement;

pub fn corpus() -> Vec<(String, Arrangement)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    smooshkit::corpus::load_corpus(&dir).unwrap()
}

/// Small integer arrangements of full rank, as (dim, rows).
pub fn small_arrangement(max_dim: usize, max_n: usize) -> impl Strategy<Value = Arrangement> {
    (1..=max_dim)
        .prop_flat_map(move |d| {
            let row = proptest::collection::vec(-3i64..=3, d + 1);
            (Just(d), proptest::collection::vec(row, d..=max_n))
        })
        .prop_filter_map("degenerate", |(d, rows)| {
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            Arrangement::from_int_rows(d, &refs).ok()
        })
}
