//! Fixtures shared by the benchmark targets.

use dimrep_core::{DimTuple, DimVector};

pub const PENDULUM: &str = include_str!("../../cli/corpus/example2_pendulum.dim");
pub const FIELD_ENERGY: &str = include_str!("../../cli/corpus/example5_field_energy.dim");
pub const TWO_BODY: &str = include_str!("../../cli/corpus/example6_two_body.dim");

/// A synthetic tuple that is larger than any worked example: `n` variables
/// plus a dependent entry over `m` base dimensions, entries in [-3, 3],
/// deterministic contents.
pub fn synthetic_tuple(m: usize, n: usize) -> DimTuple {
    let mut state = 0x243f_6a88u64;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % 7) as i64 - 3
    };
    let entries: Vec<(String, DimVector)> = (0..=n)
        .map(|i| {
            let dims: Vec<i64> = (0..m).map(|_| next()).collect();
            (format!("v{i}"), DimVector::from_i64(&dims))
        })
        .collect();
    DimTuple::new(m, entries, n).expect("synthetic tuple is well-formed")
}
