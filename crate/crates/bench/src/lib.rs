//! Inputs shared by the benchmarks.

use std::sync::Arc;

use lochness_core::{AngleVector, IrrationalBasis};

pub fn polygon(symbols: &[&str], literals: &[&str]) -> AngleVector {
    let basis = Arc::new(IrrationalBasis::new(symbols.iter().copied()).expect("valid symbols"));
    AngleVector::parse(&basis, literals).expect("valid angles")
}

/// Integer matrix with entries in [−9, 9], deterministic in `seed`.
pub fn int_matrix(rows: usize, cols: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((x >> 33) % 19) as i64 - 9
                })
                .collect()
        })
        .collect()
}
