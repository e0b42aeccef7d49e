use thiserror::Error;

/// Errors produced by the exact-analysis engine.
///
/// Inconsistency of a linear system and the absence of adequate partitions
/// are *results*, not errors; they are reported through `Option` returns and
/// system diagnostics respectively.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix shape mismatch: {rows} rows x {cols} cols needs {expected} entries, got {got}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },

    #[error("ambient base-dimension count mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("a zero quantity has no inverse")]
    ZeroQuantityInverse,

    #[error("negative power of a zero quantity")]
    NegativePowerOfZero,

    #[error("basis element must be a non-zero quantity")]
    ZeroBasisElement,

    #[error("basis dimension columns are not linearly independent")]
    BasisNotIndependent,

    #[error("dimension is not in the rational span of the basis")]
    NotInBasisSpan,

    #[error("dimension is in the rational span of the basis but requires fractional exponents")]
    FractionalExponents,

    #[error("dimension mismatch: operands must share one dimension")]
    DimensionMismatch,

    #[error("reference quantity must be non-zero")]
    ZeroReference,

    #[error("leading exponent is zero: no distinguished tuple exists")]
    ZeroLeadingExponent,

    #[error("exponent row must have a positive leading entry and overall gcd 1")]
    InvalidExponentRow,

    #[error("exponent overflows the supported range")]
    ExponentOverflow,

    #[error("tuple entry names must be unique: `{0}` repeats")]
    DuplicateName(String),

    #[error("dependent index {index} out of range for a tuple of {len} entries")]
    DependentOutOfRange { index: usize, len: usize },

    #[error("tuple has {n} entries; subset enumeration is capped at {max}")]
    TooManyVariables { n: usize, max: usize },

    #[error("partition is not adequate for this tuple: subject dimension left the basis span")]
    PartitionNotAdequate,

    #[error("cannot normalize an empty equation system")]
    EmptySystem,

    #[error("symmetry swap names a variable not present in the tuple: `{0}`")]
    SwapNameNotFound(String),

    #[error("symmetry reduction needs a system of exactly two equations, got {0}")]
    SystemSizeNotTwo(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
