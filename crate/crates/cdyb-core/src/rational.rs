//! Exact rationals.

use alloc::string::{String, ToString};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = num_rational::BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Parses `"3"`, `"-2/5"`.
pub fn parse(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Config(alloc::format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn render(q: &Rat) -> String {
    q.to_string()
}

/// Integer power with negative exponents allowed (q must be nonzero then).
pub fn pow(q: &Rat, e: i64) -> Rat {
    let mut base = if e < 0 { q.recip() } else { q.clone() };
    let mut e = e.unsigned_abs();
    let mut acc = one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

pub fn is_integer(q: &Rat) -> bool {
    q.denom().is_one()
}

pub fn abs(q: &Rat) -> Rat {
    q.abs()
}

pub fn to_i64(q: &Rat) -> Option<i64> {
    use num_traits::ToPrimitive;
    if is_integer(q) {
        q.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_pow() {
        assert_eq!(parse("-2/4").unwrap(), frac(-1, 2));
        assert_eq!(parse(" 7 ").unwrap(), int(7));
        assert!(parse("1/0").is_err());
        assert_eq!(pow(&frac(2, 3), -2), frac(9, 4));
        assert_eq!(pow(&int(5), 0), int(1));
    }
}
