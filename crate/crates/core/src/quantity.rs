//! Quantity calculus over exact rationals.
//!
//! A dimension is an integer exponent vector over the ambient base
//! dimensions; the all-zeros vector is the identity dimension. A quantity is
//! an exact rational measure paired with a dimension, with measure 0 encoding
//! the zero quantity of that dimension. Everything here is an immutable value
//! and every operation is a pure function.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::scalar::{rat_pow, BigRat};

/// Element of the free abelian group of dimensions, as an exponent vector
/// over `m` base dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DimVector {
    exps: Vec<BigInt>,
}

impl DimVector {
    pub fn new(exps: Vec<BigInt>) -> Self {
        Self { exps }
    }

    pub fn from_i64(exps: &[i64]) -> Self {
        Self {
            exps: exps.iter().map(|&e| BigInt::from(e)).collect(),
        }
    }

    /// The identity dimension over `len` base dimensions.
    pub fn identity(len: usize) -> Self {
        Self {
            exps: vec![BigInt::zero(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// True for the identity dimension.
    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(Zero::is_zero)
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.exps
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::AmbientMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    /// Componentwise sum: the dimension of a product of quantities.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            exps: self.exps.iter().map(|e| -e).collect(),
        }
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        Self {
            exps: self.exps.iter().map(|e| e * k).collect(),
        }
    }
}

/// An exact quantity: rational measure times a power product of base
/// quantities, recorded as measure plus dimension vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quantity {
    measure: BigRat,
    dim: DimVector,
}

impl Quantity {
    pub fn new(measure: BigRat, dim: DimVector) -> Self {
        Self { measure, dim }
    }

    /// The multiplicative identity `1` over `ambient` base dimensions.
    pub fn one(ambient: usize) -> Self {
        Self {
            measure: BigRat::one(),
            dim: DimVector::identity(ambient),
        }
    }

    /// The zero quantity of the given dimension.
    pub fn zero(dim: DimVector) -> Self {
        Self {
            measure: BigRat::zero(),
            dim,
        }
    }

    pub fn measure(&self) -> &BigRat {
        &self.measure
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.measure.is_zero()
    }

    /// Quantity product: measures multiply, dimension vectors add.
    ///
    /// A zero factor yields the zero quantity of the product dimension; the
    /// product of non-zero quantities is non-zero.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            measure: &self.measure * &other.measure,
            dim: self.dim.add(&other.dim)?,
        })
    }

    /// Multiplicative inverse. A quantity is invertible iff it is non-zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroQuantityInverse);
        }
        Ok(Self {
            measure: self.measure.recip(),
            dim: self.dim.neg(),
        })
    }

    /// Integer power. `x^0 = 1` for every `x`, including zero quantities;
    /// a negative power of a zero quantity is an error.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(Self::one(self.dim.len()));
        }
        if k < 0 && self.is_zero() {
            return Err(Error::NegativePowerOfZero);
        }
        let k = BigInt::from(k);
        Ok(Self {
            measure: rat_pow(&self.measure, &k)?,
            dim: self.dim.scaled(&k),
        })
    }
}

/// The unique expansion of a quantity over a local basis:
/// `q = mu * prod_j e_j^(exps_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub mu: BigRat,
    pub exps: Vec<BigInt>,
}

/// An ordered tuple of non-zero quantities with linearly independent
/// dimension columns. The empty basis is allowed and spans exactly the
/// identity dimension.
#[derive(Debug, Clone)]
pub struct LocalBasis {
    ambient: usize,
    elements: Vec<Quantity>,
    columns: IntMatrix,
}

impl LocalBasis {
    pub fn new(ambient: usize, elements: Vec<Quantity>) -> Result<Self> {
        for e in &elements {
            if e.dim().len() != ambient {
                return Err(Error::AmbientMismatch {
                    left: ambient,
                    right: e.dim().len(),
                });
            }
            if e.is_zero() {
                return Err(Error::ZeroBasisElement);
            }
        }
        let cols: Vec<&[BigInt]> = elements.iter().map(|e| e.dim().exponents()).collect();
        let columns = if cols.is_empty() {
            IntMatrix::zero(ambient, 0)
        } else {
            IntMatrix::from_columns(&cols)?
        };
        if columns.exact_rank() != elements.len() {
            return Err(Error::BasisNotIndependent);
        }
        Ok(Self {
            ambient,
            elements,
            columns,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Quantity] {
        &self.elements
    }

    /// The ambient-by-rank matrix whose columns are the basis dimensions.
    pub fn dimension_columns(&self) -> &IntMatrix {
        &self.columns
    }

    /// Expands `q` over this basis: the unique `(mu, exps)` with
    /// `q = mu * prod_j e_j^(exps_j)` and integer `exps`; `mu = 0` iff `q`
    /// is a zero quantity.
    ///
    /// Distinguishes two failure modes: the dimension may lie outside the
    /// rational span of the basis entirely, or inside it but only with
    /// fractional exponents (no integer expansion exists either way).
    pub fn expand(&self, q: &Quantity) -> Result<Expansion> {
        if q.dim().len() != self.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: q.dim().len(),
            });
        }
        let solution = self
            .columns
            .solve_exact(q.dim().exponents())?
            .ok_or(Error::NotInBasisSpan)?;
        let mut exps = Vec::with_capacity(solution.len());
        for v in &solution {
            if !v.is_integer() {
                return Err(Error::FractionalExponents);
            }
            exps.push(v.to_integer());
        }
        let mut unit_measure = BigRat::one();
        for (e, exp) in self.elements.iter().zip(&exps) {
            unit_measure *= rat_pow(e.measure(), exp)?;
        }
        Ok(Expansion {
            mu: q.measure() / unit_measure,
            exps,
        })
    }

    /// Reassembles `mu * prod_j e_j^(exps_j)` through quantity products and
    /// powers; inverse of [`expand`].
    ///
    /// [`expand`]: LocalBasis::expand
    pub fn assemble(&self, mu: &BigRat, exps: &[BigInt]) -> Result<Quantity> {
        if exps.len() != self.elements.len() {
            return Err(Error::AmbientMismatch {
                left: self.elements.len(),
                right: exps.len(),
            });
        }
        let mut acc = Quantity::one(self.ambient);
        for (e, exp) in self.elements.iter().zip(exps) {
            let k = i64::try_from(exp).map_err(|_| Error::ExponentOverflow)?;
            acc = acc.mul(&e.pow(k)?)?;
        }
        Ok(Quantity::new(mu * acc.measure(), acc.dim().clone()))
    }
}

/// The basis-independent measure ratio `mu(yk) / mu(delta)` for two
/// quantities of one dimension, computed as the expansion measure of
/// `yk * delta^-1` (a dimensionless quantity) over the given basis.
///
/// `delta` must be non-zero; the result does not depend on the basis.
pub fn nu(yk: &Quantity, delta: &Quantity, basis: &LocalBasis) -> Result<BigRat> {
    if yk.dim() != delta.dim() {
        return Err(Error::DimensionMismatch);
    }
    if delta.is_zero() {
        return Err(Error::ZeroReference);
    }
    let ratio = yk.mul(&delta.inv()?)?;
    Ok(basis.expand(&ratio)?.mu)
}
