//! Shared helpers for the property suites: small-integer oracles that stay
//! independent of the engine's elimination code, plus deterministic random
//! generators.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Determinant by Laplace expansion along the first row. Exponentially slow
/// and deliberately so: it shares no code path with fraction-free
/// elimination. Fine for the sizes the oracles use (n <= 6).
pub fn det_laplace(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut acc = 0i64;
    for (j, &v) in m[0].iter().enumerate() {
        if v == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc += sign * v * det_laplace(&minor);
    }
    acc
}

/// Independence of column vectors via minors: some square row-selection must
/// have a nonzero Laplace determinant.
pub fn independent_by_minors(cols: &[Vec<i64>]) -> bool {
    let k = cols.len();
    if k == 0 {
        return true;
    }
    let m = cols[0].len();
    if k > m {
        return false;
    }
    let mut row_pick = Vec::with_capacity(k);
    pick_rows(m, k, 0, &mut row_pick, &mut |rows| {
        let square: Vec<Vec<i64>> = rows
            .iter()
            .map(|&r| cols.iter().map(|c| c[r]).collect())
            .collect();
        det_laplace(&square) != 0
    })
}

fn pick_rows(
    m: usize,
    k: usize,
    start: usize,
    pick: &mut Vec<usize>,
    test: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if pick.len() == k {
        return test(pick);
    }
    let needed = k - pick.len();
    let mut i = start;
    while i + needed <= m {
        pick.push(i);
        if pick_rows(m, k, i + 1, pick, test) {
            pick.pop();
            return true;
        }
        pick.pop();
        i += 1;
    }
    false
}

/// Matrix rank as the size of the largest independent column subset,
/// checked over all 2^n subsets.
pub fn rank_by_column_subsets(cols: &[Vec<i64>]) -> usize {
    let n = cols.len();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let subset: Vec<Vec<i64>> = (0..n)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| cols[i].clone())
            .collect();
        if subset.len() > best && independent_by_minors(&subset) {
            best = subset.len();
        }
    }
    best
}

/// A random m x m integer matrix with determinant +-1, built from elementary
/// row operations on the identity. Entries stay small enough for exact i64
/// arithmetic downstream.
pub fn random_unimodular(m: usize, rng: &mut StdRng) -> Vec<Vec<i64>> {
    let mut t: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
        .collect();
    if m < 2 {
        if m == 1 && rng.random_bool(0.5) {
            t[0][0] = -1;
        }
        return t;
    }
    for _ in 0..12 {
        match rng.random_range(0..4u8) {
            0 => {
                let i = rng.random_range(0..m);
                let mut j = rng.random_range(0..m);
                while j == i {
                    j = rng.random_range(0..m);
                }
                let f: i64 = rng.random_range(-2..=2);
                let src = t[i].clone();
                let dst = &mut t[j];
                if dst
                    .iter()
                    .zip(&src)
                    .all(|(d, s)| (d + f * s).abs() <= 40)
                {
                    for (d, s) in dst.iter_mut().zip(&src) {
                        *d += f * s;
                    }
                }
            }
            1 => {
                let i = rng.random_range(0..m);
                let j = rng.random_range(0..m);
                t.swap(i, j);
            }
            _ => {
                let i = rng.random_range(0..m);
                for v in &mut t[i] {
                    *v = -*v;
                }
            }
        }
    }
    t
}

pub fn mat_vec(t: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    t.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// All integer solutions of `sum_j w_j * basis_j = w0 * y` inside the box
/// `w0 in 1..=w0_max`, `|w_j| <= wj_bound`, in ascending `(w0, w)` order.
///
/// Exhaustive search with infeasibility pruning on partial sums; never
/// touches the engine's solver.
pub fn brute_force_distinguished(
    y: &[i64],
    basis: &[Vec<i64>],
    w0_max: i64,
    wj_bound: i64,
) -> Vec<(i64, Vec<i64>)> {
    let m = y.len();
    let r = basis.len();
    // remaining[j][i] = max contribution of factors j.. to coordinate i
    let mut remaining = vec![vec![0i64; m]; r + 1];
    for j in (0..r).rev() {
        for i in 0..m {
            remaining[j][i] = remaining[j + 1][i] + wj_bound * basis[j][i].abs();
        }
    }
    let mut found = Vec::new();
    for w0 in 1..=w0_max {
        let target: Vec<i64> = y.iter().map(|v| v * w0).collect();
        let mut partial = vec![0i64; m];
        let mut pick = Vec::with_capacity(r);
        search(
            basis,
            &target,
            &remaining,
            wj_bound,
            &mut partial,
            &mut pick,
            &mut |w| found.push((w0, w.to_vec())),
        );
    }
    found
}

fn search(
    basis: &[Vec<i64>],
    target: &[i64],
    remaining: &[Vec<i64>],
    wj_bound: i64,
    partial: &mut Vec<i64>,
    pick: &mut Vec<usize>,
    emit: &mut impl FnMut(&[i64]),
) {
    let j = pick.len();
    if j == basis.len() {
        if partial == target {
            let w: Vec<i64> = pick.iter().map(|&u| u as i64 - wj_bound).collect();
            emit(&w);
        }
        return;
    }
    if (0..target.len()).any(|i| (target[i] - partial[i]).abs() > remaining[j][i]) {
        return;
    }
    for raw in 0..=(2 * wj_bound) {
        let w = raw - wj_bound;
        for i in 0..target.len() {
            partial[i] += w * basis[j][i];
        }
        pick.push(raw as usize);
        search(basis, target, remaining, wj_bound, partial, pick, emit);
        pick.pop();
        for i in 0..target.len() {
            partial[i] -= w * basis[j][i];
        }
    }
}

/// Random independent columns: `r` vectors of length `m` with entries in
/// `[-3, 3]`, resampled until the minor oracle accepts them.
pub fn random_independent_columns(m: usize, r: usize, rng: &mut StdRng) -> Vec<Vec<i64>> {
    loop {
        let cols: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..m).map(|_| rng.random_range(-3..=3)).collect())
            .collect();
        if independent_by_minors(&cols) {
            return cols;
        }
    }
}
