//! Exact rational, polynomial and partition arithmetic.
//!
//! Everything downstream (series, counting, recursions) is built on the types
//! in this module. All arithmetic is exact; there is no floating point
//! anywhere in the crate.

mod partition;
mod poly;
mod ratfunc;

pub use partition::{partitions_of, Partition};
pub use poly::{binomial_poly, poly_interpolate, RatPoly};
pub use ratfunc::RatFunc;

use num::BigRational;

/// Exact rational scalar. `BigRational` keeps the fraction reduced with a
/// positive denominator, which is exactly the canonical form we need.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Classical Möbius function.
pub fn mobius(l: u64) -> Result<i64, crate::Error> {
    if l == 0 {
        return Err(crate::Error::InvalidInput("mobius requires l >= 1".into()));
    }
    let mut n = l;
    let mut factors = 0u32;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            factors += 1;
        }
        p += 1;
    }
    if n > 1 {
        factors += 1;
    }
    Ok(if factors % 2 == 0 { 1 } else { -1 })
}
