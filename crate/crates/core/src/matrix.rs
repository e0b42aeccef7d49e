//! Exact integer matrices: fraction-free rank and exact linear solving.
//!
//! All elimination is Bareiss-style (fraction-free) on big integers, so rank
//! and solutions are exact at any magnitude. Pivoting is deterministic:
//! leftmost column with a nonzero entry, topmost such row.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::BigRat;

/// Dense integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        let expected = rows * cols;
        if entries.len() != expected {
            return Err(Error::MatrixShape {
                rows,
                cols,
                expected,
                got: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Test and fixture
    /// convenience; panics on ragged input.
    pub fn from_rows_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&v| BigInt::from(v)));
        }
        Self {
            rows: r,
            cols: c,
            entries,
        }
    }

    /// Builds an m x k matrix whose columns are the given length-m vectors.
    pub fn from_columns(columns: &[&[BigInt]]) -> Result<Self> {
        let k = columns.len();
        let m = columns.first().map_or(0, |c| c.len());
        for col in columns {
            if col.len() != m {
                return Err(Error::AmbientMismatch {
                    left: m,
                    right: col.len(),
                });
            }
        }
        let mut entries = vec![BigInt::zero(); m * k];
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                entries[i * k + j] = v.clone();
            }
        }
        Ok(Self {
            rows: m,
            cols: k,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    fn to_nested(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| self.entries[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect()
    }

    /// Rank over the rationals, by fraction-free (Bareiss) elimination.
    ///
    /// Equals the maximal number of linearly independent columns; the empty
    /// matrix has rank 0.
    pub fn exact_rank(&self) -> usize {
        let mut work = self.to_nested();
        bareiss_eliminate(&mut work, self.cols).len()
    }

    /// Solves `self * x = rhs` exactly over the rationals.
    ///
    /// Returns `Some(x)` for any consistent system (free variables, if any,
    /// are set to zero) and `None` for an inconsistent one. When the matrix
    /// has full column rank the solution is unique.
    pub fn solve_exact(&self, rhs: &[BigInt]) -> Result<Option<Vec<BigRat>>> {
        if rhs.len() != self.rows {
            return Err(Error::AmbientMismatch {
                left: self.rows,
                right: rhs.len(),
            });
        }
        // Augment with the right-hand side; eliminate on the coefficient
        // columns only.
        let mut work: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let mut row = self.entries[r * self.cols..(r + 1) * self.cols].to_vec();
                row.push(rhs[r].clone());
                row
            })
            .collect();
        let pivots = bareiss_eliminate(&mut work, self.cols);

        // Rows below the last pivot have an all-zero coefficient part; a
        // nonzero augmented entry there means the system is inconsistent.
        for row in work.iter().skip(pivots.len()) {
            if !row[self.cols].is_zero() {
                return Ok(None);
            }
        }

        let mut x = vec![BigRat::zero(); self.cols];
        for (row_idx, &col) in pivots.iter().enumerate().rev() {
            let row = &work[row_idx];
            let mut acc = BigRat::from_integer(row[self.cols].clone());
            for c in col + 1..self.cols {
                if !row[c].is_zero() {
                    acc -= BigRat::from_integer(row[c].clone()) * &x[c];
                }
            }
            x[col] = acc / BigRat::from_integer(row[col].clone());
        }
        Ok(Some(x))
    }
}

/// In-place fraction-free elimination over the first `elim_cols` columns.
///
/// Trailing columns (e.g. an augmented right-hand side) participate in the
/// row updates but are never chosen as pivots. Returns the pivot columns in
/// elimination order; their count is the rank of the eliminated block.
fn bareiss_eliminate(work: &mut [Vec<BigInt>], elim_cols: usize) -> Vec<usize> {
    let rows = work.len();
    let total_cols = work.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut row = 0;

    for col in 0..elim_cols {
        if row == rows {
            break;
        }
        let Some(pivot_row) = (row..rows).find(|&r| !work[r][col].is_zero()) else {
            continue;
        };
        work.swap(row, pivot_row);
        let (upper, lower) = work.split_at_mut(row + 1);
        let pivot_vals = &upper[row];
        let pivot = pivot_vals[col].clone();
        for r in lower.iter_mut() {
            let factor = std::mem::replace(&mut r[col], BigInt::zero());
            for (entry, above) in r[col + 1..total_cols]
                .iter_mut()
                .zip(&pivot_vals[col + 1..total_cols])
            {
                let num = &pivot * &*entry - &factor * above;
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                *entry = q;
            }
        }
        prev = pivot;
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Scales a rational tuple `(w0, w...)` to the unique proportional integer
/// tuple with positive first entry and overall gcd 1.
///
/// Clears denominators by their lcm, divides out the gcd of the numerators,
/// and flips the sign if the leading entry came out negative. Errors if
/// `w0 = 0`: such a tuple has no distinguished representative.
pub fn primitive_normalize(w0: &BigRat, w: &[BigRat]) -> Result<(BigInt, Vec<BigInt>)> {
    if w0.is_zero() {
        return Err(Error::ZeroLeadingExponent);
    }
    let mut denom_lcm = w0.denom().clone();
    for v in w {
        denom_lcm = denom_lcm.lcm(v.denom());
    }
    let scale_to_int = |v: &BigRat| -> BigInt { v.numer() * (&denom_lcm / v.denom()) };

    let mut lead = scale_to_int(w0);
    let mut rest: Vec<BigInt> = w.iter().map(scale_to_int).collect();

    let mut g = lead.abs();
    for v in &rest {
        g = g.gcd(v);
    }
    lead /= &g;
    for v in &mut rest {
        *v /= &g;
    }
    if lead.is_negative() {
        lead = -lead;
        for v in &mut rest {
            *v = -v.clone();
        }
    }
    Ok((lead, rest))
}
