//! Property suite for the partition engine: subset-enumeration oracle
//! equivalence, cardinality and maximality of the results, invariance under
//! determinant-+-1 basis changes, and the no-duplicate rule.

mod common;

use dimrep_core::{
    adequate_partitions, is_independent, maximal_independent_subtuples, DimTuple, DimVector,
};
use rand::rngs::StdRng;
use rand::Rng;

fn random_tuple(rng: &mut StdRng) -> (DimTuple, Vec<Vec<i64>>) {
    let m = rng.random_range(1..=4);
    let n = rng.random_range(1..=7); // up to 6 variables plus the dependent entry
    let cols: Vec<Vec<i64>> = (0..n)
        .map(|_| (0..m).map(|_| rng.random_range(-3..=3)).collect())
        .collect();
    let entries: Vec<(String, DimVector)> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| (format!("v{i}"), DimVector::from_i64(c)))
        .collect();
    let dep = rng.random_range(0..n);
    (DimTuple::new(m, entries, dep).unwrap(), cols)
}

/// Filter-all-subsets oracle: every ascending index subset avoiding
/// `exclude` whose columns pass the minor test and whose size equals the
/// oracle rank of the whole tuple.
fn oracle_subtuples(cols: &[Vec<i64>], exclude: usize) -> Vec<Vec<usize>> {
    let n = cols.len();
    let r = common::rank_by_column_subsets(cols);
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if subset.len() != r || subset.contains(&exclude) {
            continue;
        }
        let chosen: Vec<Vec<i64>> = subset.iter().map(|&i| cols[i].clone()).collect();
        if common::independent_by_minors(&chosen) {
            out.push(subset);
        }
    }
    out.sort();
    out
}

#[test]
fn enumeration_matches_the_filter_all_subsets_oracle() {
    let mut rng = common::rng(0x21a);
    for _ in 0..300 {
        let (t, cols) = random_tuple(&mut rng);
        let exclude = rng.random_range(0..t.len());
        let got = maximal_independent_subtuples(&t, exclude).unwrap();
        let expected = oracle_subtuples(&cols, exclude);
        assert_eq!(got, expected);
        assert!(got.iter().all(|s| s.len() == t.rank()));
    }
}

#[test]
fn results_are_maximal_and_duplicate_free() {
    let mut rng = common::rng(0x21b);
    for _ in 0..200 {
        // tuples up to 8 entries; maximality is checked exhaustively
        let m = rng.random_range(1..=4);
        let n = rng.random_range(1..=8);
        let cols: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..m).map(|_| rng.random_range(-3..=3)).collect())
            .collect();
        let entries: Vec<(String, DimVector)> = cols
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("v{i}"), DimVector::from_i64(c)))
            .collect();
        let t = DimTuple::new(m, entries, rng.random_range(0..n)).unwrap();
        let exclude = rng.random_range(0..t.len());
        for subset in maximal_independent_subtuples(&t, exclude).unwrap() {
            // no two entries of an independent subtuple share a dimension
            for (i, &a) in subset.iter().enumerate() {
                for &b in &subset[i + 1..] {
                    assert_ne!(cols[a], cols[b]);
                }
            }
            // extending by any other non-excluded index breaks independence
            for extra in 0..t.len() {
                if extra == exclude || subset.contains(&extra) {
                    continue;
                }
                let mut extended: Vec<Vec<i64>> =
                    subset.iter().map(|&i| cols[i].clone()).collect();
                extended.push(cols[extra].clone());
                assert!(!common::independent_by_minors(&extended));
            }
        }
    }
}

#[test]
fn unimodular_basis_changes_leave_everything_unchanged() {
    let mut rng = common::rng(0x21c);
    for _ in 0..150 {
        let (t, cols) = random_tuple(&mut rng);
        let m = t.ambient();
        let u = common::random_unimodular(m, &mut rng);
        let mapped: Vec<Vec<i64>> = cols.iter().map(|c| common::mat_vec(&u, c)).collect();
        let entries: Vec<(String, DimVector)> = mapped
            .iter()
            .enumerate()
            .map(|(i, c)| (format!("v{i}"), DimVector::from_i64(c)))
            .collect();
        let t2 = DimTuple::new(m, entries, t.dependent_index()).unwrap();

        assert_eq!(t.rank(), t2.rank());
        let dims1: Vec<DimVector> = cols.iter().map(|c| DimVector::from_i64(c)).collect();
        let dims2: Vec<DimVector> = mapped.iter().map(|c| DimVector::from_i64(c)).collect();
        assert_eq!(is_independent(&dims1), is_independent(&dims2));
        assert_eq!(
            maximal_independent_subtuples(&t, t.dependent_index()).unwrap(),
            maximal_independent_subtuples(&t2, t2.dependent_index()).unwrap()
        );
        assert_eq!(adequate_partitions(&t).unwrap(), adequate_partitions(&t2).unwrap());
    }
}
