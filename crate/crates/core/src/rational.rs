//! Exact rational scalars.
//!
//! `Rat` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator (both invariants are maintained by `num`). Helpers
//! here cover the "p/q" string form used by the input format.

use num::bigint::BigInt;
use num::traits::{One, Zero};

use crate::{Error, Result};

pub type Rat = num::BigRational;

/// `n/d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Parses `"p"` or `"p/q"` with optional sign. A zero denominator is a
/// structural error, never a panic.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_s
        .parse()
        .map_err(|_| Error::Structural(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = match den_s {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Structural(format!("bad rational denominator in {s:?}")))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Structural(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(num, den))
}

/// Renders a rational as `"p"` or `"p/q"`, inverse to [`parse_rat`].
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
