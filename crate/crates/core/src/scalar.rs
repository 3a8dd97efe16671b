//! Exact rational scalars.

use crate::error::{parse_err, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Reduced fraction with positive denominator.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"` or `"p/q"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| parse_err(s, "malformed rational numerator"))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| parse_err(s, "malformed rational denominator"))?;
    if d.is_zero() {
        return Err(parse_err(s, "zero denominator"));
    }
    Ok(Q::new(n, d))
}

pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn factorial(n: usize) -> Q {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Q::from_integer(acc)
}

/// k (k-1) ... (k-n+1), zero when n > k.
pub fn falling(k: usize, n: usize) -> Q {
    if n > k {
        return Q::zero();
    }
    let mut acc = BigInt::one();
    for t in 0..n {
        acc *= k - t;
    }
    Q::from_integer(acc)
}

pub fn binom(n: usize, k: usize) -> Q {
    if k > n {
        return Q::zero();
    }
    falling(n, k) / factorial(k)
}
