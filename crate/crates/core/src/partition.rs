//! Dimension tuples and their adequate partitions.
//!
//! A dimension tuple is an ordered list of named dimension vectors with one
//! entry marked dependent. An adequate partition splits it into a maximal
//! independent subtuple `A` (a local dimensional basis), the remaining
//! entries `B`, and the dependent entry `C`. Enumerating all adequate
//! partitions for a fixed dependent entry is the combinatorial heart of the
//! analysis: each one yields its own representation equation.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::quantity::DimVector;

/// Hard cap on tuple size for subset enumeration. Instances of dimensional
/// analysis are tiny in practice; anything larger is almost certainly an
/// input mistake, and C(n, r) growth would make the scan hang silently.
pub const MAX_ENUMERABLE_VARS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleEntry {
    name: String,
    dim: DimVector,
}

impl TupleEntry {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }
}

/// An ordered dimension tuple with a designated dependent entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimTuple {
    ambient: usize,
    entries: Vec<TupleEntry>,
    dependent: usize,
}

impl DimTuple {
    pub fn new(
        ambient: usize,
        entries: Vec<(String, DimVector)>,
        dependent_index: usize,
    ) -> Result<Self> {
        if dependent_index >= entries.len() {
            return Err(Error::DependentOutOfRange {
                index: dependent_index,
                len: entries.len(),
            });
        }
        for (i, (name, dim)) in entries.iter().enumerate() {
            if dim.len() != ambient {
                return Err(Error::AmbientMismatch {
                    left: ambient,
                    right: dim.len(),
                });
            }
            if entries[..i].iter().any(|(other, _)| other == name) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        Ok(Self {
            ambient,
            entries: entries
                .into_iter()
                .map(|(name, dim)| TupleEntry { name, dim })
                .collect(),
            dependent: dependent_index,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[TupleEntry] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &TupleEntry {
        &self.entries[i]
    }

    pub fn dependent_index(&self) -> usize {
        self.dependent
    }

    pub fn dependent(&self) -> &TupleEntry {
        &self.entries[self.dependent]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.name == name)
    }

    /// The dimensional matrix: one column per entry, in tuple order.
    pub fn matrix(&self) -> IntMatrix {
        let cols: Vec<&[BigInt]> = self.entries.iter().map(|e| e.dim.exponents()).collect();
        IntMatrix::from_columns(&cols).expect("entries share the ambient length by construction")
    }

    /// Rank of the tuple: the common cardinality of all its maximal
    /// independent subtuples, which equals the rank of the dimensional
    /// matrix.
    pub fn rank(&self) -> usize {
        self.matrix().exact_rank()
    }
}

/// True iff the dimension vectors admit no nontrivial multiplicative
/// relation, i.e. the corresponding exponent columns are linearly
/// independent over the rationals. The empty list is vacuously independent.
pub fn is_independent(dims: &[DimVector]) -> bool {
    let cols: Vec<&[BigInt]> = dims.iter().map(|d| d.exponents()).collect();
    match IntMatrix::from_columns(&cols) {
        Ok(m) => m.exact_rank() == dims.len(),
        Err(_) => false,
    }
}

/// Split of a dimension tuple into a maximal independent subtuple `A`, the
/// leftover entries `B`, and the dependent entry `C`. Index lists are in
/// ascending original order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdequatePartition {
    pub a_indices: Vec<usize>,
    pub b_indices: Vec<usize>,
    pub c_index: usize,
}

/// Enumerates every maximal independent subtuple of `t` avoiding the entry
/// at `exclude`, as ascending index lists in lexicographic order.
///
/// All returned lists have length `t.rank()`; the result is empty when no
/// independent subtuple of full rank avoids `exclude`.
pub fn maximal_independent_subtuples(t: &DimTuple, exclude: usize) -> Result<Vec<Vec<usize>>> {
    if exclude >= t.len() {
        return Err(Error::DependentOutOfRange {
            index: exclude,
            len: t.len(),
        });
    }
    if t.len() > MAX_ENUMERABLE_VARS {
        return Err(Error::TooManyVariables {
            n: t.len(),
            max: MAX_ENUMERABLE_VARS,
        });
    }
    let r = t.rank();
    let candidates: Vec<usize> = (0..t.len()).filter(|&i| i != exclude).collect();
    let mut found = Vec::new();
    let mut pick = Vec::with_capacity(r);
    enumerate_combinations(&candidates, r, 0, &mut pick, &mut |subset| {
        let dims: Vec<DimVector> = subset.iter().map(|&i| t.entry(i).dim().clone()).collect();
        if is_independent(&dims) {
            found.push(subset.to_vec());
        }
    });
    Ok(found)
}

/// Enumerates every adequate partition of `t` with the dependent entry as
/// `C`, in the deterministic order of [`maximal_independent_subtuples`].
///
/// An empty result is meaningful: the dependent dimension is then not
/// spanned by any independent subtuple of the remaining entries.
pub fn adequate_partitions(t: &DimTuple) -> Result<Vec<AdequatePartition>> {
    let c_index = t.dependent_index();
    let subtuples = maximal_independent_subtuples(t, c_index)?;
    Ok(subtuples
        .into_iter()
        .map(|a_indices| {
            let b_indices = (0..t.len())
                .filter(|&i| i != c_index && !a_indices.contains(&i))
                .collect();
            AdequatePartition {
                a_indices,
                b_indices,
                c_index,
            }
        })
        .collect())
}

/// Visits all size-`k` subsets of `pool` (ascending, lexicographic order).
fn enumerate_combinations(
    pool: &[usize],
    k: usize,
    start: usize,
    pick: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if pick.len() == k {
        visit(pick);
        return;
    }
    let needed = k - pick.len();
    let mut i = start;
    while i + needed <= pool.len() {
        pick.push(pool[i]);
        enumerate_combinations(pool, k, i + 1, pick, visit);
        pick.pop();
        i += 1;
    }
}
