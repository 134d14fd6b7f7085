//! Exact rational scalars and the dense coordinate vectors built on them.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Always-reduced arbitrary-precision rational.
pub type Scalar = BigRational;

/// Coordinates of an element with respect to a fixed basis.
pub type Vector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"n"` or `"p/q"`. Surrounding whitespace is not accepted.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let bad = || Error::Malformed(format!("not a rational: {s:?}"));
    if s.is_empty() || s.trim() != s {
        return Err(bad());
    }
    match s.split_once('/') {
        None => BigInt::from_str(s).map(Scalar::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p).map_err(|_| bad())?;
            let q = BigInt::from_str(q).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Malformed(format!("zero denominator in {s:?}")));
            }
            Ok(Scalar::new(p, q))
        }
    }
}

/// Renders as `"n"` for integers and `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_vector(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// Human-readable linear combination such as `2*X - H + 1/2*Y`, or `0`.
pub fn format_combination(v: &[Scalar], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, label) in v.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format_scalar(&mag));
            out.push('*');
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}
