//! Exact rational arithmetic: scalars, homogeneous polynomials, dense and
//! sparse matrices, and a modular kernel solver.

mod matrix;
mod modular;
mod poly;
mod sparse;

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use matrix::ExactMatrix;
pub use poly::{monomials, poly_content_gcd, HomogeneousPoly};
pub use sparse::SparseMatrix;

/// An arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Scalar = BigRational;

/// A column vector of exact scalars.
pub type ExactVector = alloc::vec::Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),
    #[error("exponent vector {0} does not match the polynomial shape")]
    BadExponents(String),
    #[error("all inputs are zero")]
    AllZero,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// Builds the integer scalar `n`.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Builds the reduced fraction `num/den`. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` into a reduced scalar.
pub fn parse_scalar(s: &str) -> Result<Scalar, ExactError> {
    let t = s.trim();
    let bad = || ExactError::Parse(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Scalar::from_integer(p))
        }
    }
}

/// Formats a scalar as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

/// Scales a rational vector to a primitive integer vector (content 1).
/// The sign is left as produced by the scaling, which keeps signs of the
/// input. Returns all zeros for the zero vector.
pub fn primitive_integer_vector(v: &[Scalar]) -> alloc::vec::Vec<BigInt> {
    let mut den = BigInt::one();
    for x in v {
        den = den.lcm(x.denom());
    }
    let ints: alloc::vec::Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    make_primitive(ints)
}

/// Divides an integer vector by the gcd of its entries.
pub fn make_primitive(v: alloc::vec::Vec<BigInt>) -> alloc::vec::Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in &v {
        g = g.gcd(x);
        if g.is_one() {
            return v;
        }
    }
    if g.is_zero() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

/// Normalizes a nonzero vector to the canonical representative of its line:
/// integer entries with content 1 and first nonzero entry positive.
pub fn normalize_line(v: &[Scalar]) -> alloc::vec::Vec<BigInt> {
    let mut ints = primitive_integer_vector(v);
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -core::mem::take(x);
            }
        }
    }
    ints
}

/// Exact dot product.
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn to_scalars(v: &[BigInt]) -> ExactVector {
    v.iter().cloned().map(Scalar::from_integer).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_strings() {
        assert_eq!(format_scalar(&frac(6, -4)), "-3/2");
        assert_eq!(format_scalar(&int(5)), "5");
        assert_eq!(parse_scalar(" -3/2 ").unwrap(), frac(-3, 2));
        assert_eq!(parse_scalar("4/2").unwrap(), int(2));
        assert_eq!(parse_scalar("0/7").unwrap(), Scalar::zero());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("0.5").is_err());
    }

    #[test]
    fn line_normalization() {
        let v = [frac(-1, 2), int(0), frac(3, 4)];
        assert_eq!(
            normalize_line(&v),
            alloc::vec![BigInt::from(2), BigInt::from(0), BigInt::from(-3)]
        );
    }
}
