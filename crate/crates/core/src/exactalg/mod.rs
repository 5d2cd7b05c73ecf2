//! Exact arithmetic kernel: rationals, polynomials over the rationals, gcds and
//! resultants, real-root counting, and quotient rings with dynamic splitting.

mod gcd;
mod modular;
mod poly;
mod realroots;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use gcd::{
    interpolate, poly_gcd, power_part, resultant, resultant_euclid, squarefree_decompose,
    squarefree_part, sylvester_resultant, xgcd, SquarefreeDecomposition,
};
pub use modular::{
    crt_combine, explore, AlgebraicContext, Ctx, CtxPoly, InvertError, ModElement, SplitEvent,
};
pub use poly::{Degree, RatPoly};
pub use realroots::{
    cauchy_bound, descartes_bound, isolate_real_roots, power_of_two_root_bound, rational_roots,
    real_root_count, refine_root, Bound, RootInterval, SturmChain,
};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("zero polynomial input")]
    ZeroInput,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("elements belong to different contexts")]
    ContextMismatch,
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("modulus must be squarefree of degree at least one")]
    BadModulus,
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Lowest-terms `p/q` rendering; integers are written without `/1`.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p/q` or an integer, with optional sign and surrounding spaces.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Smallest integer not below `x`.
pub fn ceil_rational(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

pub mod serde_rational {
    //! Serialization of rationals as `p/q` strings and of polynomials as arrays.
    use super::{format_rational, parse_rational, RatPoly, Rational};
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }

    pub fn poly_to_strings(p: &RatPoly) -> Vec<String> {
        p.coeffs().iter().map(format_rational).collect()
    }

    pub fn poly_from_strings(v: &[String]) -> Option<RatPoly> {
        v.iter()
            .map(|s| parse_rational(s))
            .collect::<Option<Vec<_>>>()
            .map(RatPoly::from_coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(&rat(-4, 2)), "-2");
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(parse_rational(" -3/2 "), Some(rat(-3, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn zero_is_normalized() {
        let z = rat(0, 5);
        assert!(z.denom().is_one());
    }
}
