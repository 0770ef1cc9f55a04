use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; always stored in lowest terms with a
/// positive denominator.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// `(-1)^k` as a rational.
pub fn sign(k: i64) -> Q {
    if k.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Formats as `p/q`, omitting the denominator when it is 1.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Q::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
    }
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}
