//! Dense univariate polynomials over the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactError, Rational};

/// Degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which compares below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial with rational coefficients, stored low power first.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The polynomial `t`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, power: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        RatPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    /// Builds a polynomial from `(numerator, denominator)` pairs, low power first.
    pub fn from_fracs(coeffs: &[(i64, i64)]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&(n, d)| Rational::new(n.into(), d.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `t^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Finite degree, or `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.degree().finite()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Leading coefficient, zero for the zero polynomial.
    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Multiplicity of `0` as a root. The zero polynomial reports 0.
    pub fn multiplicity_at_zero(&self) -> usize {
        self.coeffs
            .iter()
            .take_while(|c| c.is_zero())
            .count()
            .min(self.coeffs.len())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// `self(c * t)`.
    pub fn compose_scaled(&self, c: &Rational) -> Self {
        let mut pow = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Self::from_coeffs(out)
    }

    /// `self(t^k)`.
    pub fn compose_power(&self, k: usize) -> Self {
        assert!(k >= 1, "compose_power needs k >= 1");
        let mut out = vec![Rational::zero(); (self.coeffs.len().max(1) - 1) * k + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            out[i * k] = a.clone();
        }
        Self::from_coeffs(out)
    }

    /// `self(c * t^k)`, the compose-with-monomial operation.
    pub fn compose_monomial(&self, c: &Rational, k: usize) -> Self {
        self.compose_scaled(c).compose_power(k)
    }

    /// `self(t + s)`.
    pub fn shift(&self, s: &Rational) -> Self {
        let lin = RatPoly::from_coeffs(vec![s.clone(), Rational::one()]);
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &RatPoly::constant(c.clone());
        }
        acc
    }

    /// Multiplies by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RatPoly { coeffs }
    }

    /// Divides by `t^k`, discarding the low coefficients.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Coefficients in reverse order: `t^deg * self(1/t)`.
    pub fn reverse(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().rev().cloned().collect())
    }

    /// `self(-t)`.
    pub fn reflect(&self) -> Self {
        self.compose_scaled(&-Rational::one())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut result = RatPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn divrem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly), ExactError> {
        let dlen = divisor.coeffs.len();
        if dlen == 0 {
            return Err(ExactError::DivisionByZeroPoly);
        }
        if self.coeffs.len() < dlen {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let inv_lc = divisor.lc().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dlen - 1] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dlen - 1);
        Ok((RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &RatPoly) -> Result<RatPoly, ExactError> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Exact quotient, or `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &RatPoly) -> Result<Option<RatPoly>, ExactError> {
        let (q, r) = self.divrem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn divides(&self, other: &RatPoly) -> Result<bool, ExactError> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a` reduced modulo `b`.
    pub fn pseudo_rem(&self, divisor: &RatPoly) -> Result<RatPoly, ExactError> {
        let (Some(da), Some(db)) = (self.deg(), divisor.deg()) else {
            return if divisor.is_zero() {
                Err(ExactError::DivisionByZeroPoly)
            } else {
                Ok(RatPoly::zero())
            };
        };
        if da < db {
            return Ok(self.clone());
        }
        let factor = num_traits::pow(divisor.lc(), da - db + 1);
        self.scale(&factor).rem(divisor)
    }

    /// Primitive integer form: a positive rational `c` and integer coefficients
    /// with gcd 1 and positive leading coefficient, so that `self = c * sum`.
    pub fn primitive_integer(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for i in &ints {
            content = content.gcd(i);
        }
        if ints.last().is_some_and(|l| l.is_negative()) {
            content = -content;
        }
        let ints = ints.into_iter().map(|i| i / &content).collect();
        (Rational::new(content, den), ints)
    }

    /// Sign of the value at `x` as -1, 0 or 1.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        sign_of(&self.eval(x))
    }

    /// Sign as `t -> +inf` (`positive = true`) or `t -> -inf`.
    pub fn sign_at_infinity(&self, positive: bool) -> i32 {
        let Some(lc) = self.leading_coeff() else {
            return 0;
        };
        let s = sign_of(lc);
        if positive || self.coeffs.len() % 2 == 1 {
            s
        } else {
            -s
        }
    }

    /// Renders with the given variable name, highest power first.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }

    /// Lexicographic comparison on (degree, coefficients from the top).
    pub fn cmp_canonical(&self, other: &RatPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

pub(crate) fn sign_of(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        RatPoly::from_coeffs(out)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        self + &(-rhs)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly { (&self).$m(&rhs) }
        }
        impl $tr<&RatPoly> for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: &RatPoly) -> RatPoly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn derivative_power_rule() {
        let p = RatPoly::from_ints(&[0, 1, 1]);
        assert_eq!(p.derivative(), RatPoly::from_ints(&[1, 2]));
    }

    #[test]
    fn difference_of_squares() {
        let a = RatPoly::from_ints(&[-1, 1]);
        let b = RatPoly::from_ints(&[1, 1]);
        assert_eq!(&a * &b, RatPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn edge_derivative_at_minus_one() {
        // 8C^5 - 28C^3 + 46/3 C + 2
        let d = RatPoly::from_coeffs(vec![
            q(2, 1),
            q(46, 3),
            q(0, 1),
            q(-28, 1),
            q(0, 1),
            q(8, 1),
        ]);
        assert_eq!(d.eval(&q(-1, 1)), q(20, 3));
    }

    #[test]
    fn zero_polynomial_degree_is_sentinel() {
        let z = RatPoly::zero();
        assert_eq!(z.degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(z.deg(), None);
        assert_eq!(RatPoly::one().degree(), Degree::Finite(0));
    }

    #[test]
    fn divrem_by_zero_fails() {
        let p = RatPoly::x();
        assert!(matches!(
            p.divrem(&RatPoly::zero()),
            Err(ExactError::DivisionByZeroPoly)
        ));
    }

    #[test]
    fn divrem_reconstructs() {
        let a = RatPoly::from_fracs(&[(3, 1), (-1, 2), (0, 1), (7, 3), (1, 1)]);
        let b = RatPoly::from_fracs(&[(1, 1), (2, 5), (3, 1)]);
        let (qt, r) = a.divrem(&b).unwrap();
        assert!(r.deg().unwrap() < 2);
        assert_eq!(&(&qt * &b) + &r, a);
    }

    #[test]
    fn compose_and_shift() {
        let p = RatPoly::from_ints(&[1, 2, 3]);
        assert_eq!(
            p.compose_monomial(&q(2, 1), 2),
            RatPoly::from_ints(&[1, 0, 4, 0, 12])
        );
        assert_eq!(p.shift(&q(1, 1)), RatPoly::from_ints(&[6, 8, 3]));
        assert_eq!(p.reflect(), RatPoly::from_ints(&[1, -2, 3]));
        assert_eq!(p.reverse(), RatPoly::from_ints(&[3, 2, 1]));
    }

    #[test]
    fn primitive_integer_form() {
        let p = RatPoly::from_fracs(&[(-1, 3), (-1, 1), (2, 3)]);
        let (c, ints) = p.primitive_integer();
        assert_eq!(c, q(1, 3));
        assert_eq!(
            ints,
            vec![BigInt::from(-1), BigInt::from(-3), BigInt::from(2)]
        );
    }

    #[test]
    fn display_is_readable() {
        let p = RatPoly::from_fracs(&[(0, 1), (2, 1), (23, 3), (0, 1), (-7, 1)]);
        assert_eq!(p.display_with("C"), "-7*C^4 + 23/3*C^2 + 2*C");
    }
}
