//! Exact scalar types: arbitrary-precision integers and rationals.
//!
//! Rationals are always kept in lowest terms with a positive denominator
//! (`num-rational` maintains that invariant on construction), so equality is
//! structural and arithmetic never rounds.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type BigRat = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat_int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

/// Raises a rational to an integer power, exactly.
///
/// `0^0 = 1`; a negative power of zero is an error.
pub fn rat_pow(base: &BigRat, exp: &BigInt) -> Result<BigRat> {
    if exp.is_zero() {
        return Ok(BigRat::one());
    }
    if base.is_zero() {
        if exp.is_negative() {
            return Err(Error::NegativePowerOfZero);
        }
        return Ok(BigRat::zero());
    }
    let mag = exp.magnitude();
    let mag = u64::try_from(mag).map_err(|_| Error::ExponentOverflow)?;
    let mut acc = BigRat::one();
    let mut sq = base.clone();
    let mut left = mag;
    while left > 0 {
        if left & 1 == 1 {
            acc *= &sq;
        }
        left >>= 1;
        if left > 0 {
            sq = &sq * &sq;
        }
    }
    if exp.is_negative() {
        acc = acc.recip();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_handles_signs_and_zero() {
        assert_eq!(rat_pow(&rat(2, 3), &BigInt::from(2)).unwrap(), rat(4, 9));
        assert_eq!(rat_pow(&rat(2, 3), &BigInt::from(-1)).unwrap(), rat(3, 2));
        assert_eq!(rat_pow(&rat_int(0), &BigInt::from(0)).unwrap(), rat_int(1));
        assert_eq!(rat_pow(&rat_int(0), &BigInt::from(3)).unwrap(), rat_int(0));
        assert_eq!(
            rat_pow(&rat_int(0), &BigInt::from(-2)),
            Err(Error::NegativePowerOfZero)
        );
    }
}
