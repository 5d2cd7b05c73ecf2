//! The equation document: JSON with exponents and three coefficient polynomials.

use abel_core::diagram::AbelEquation;
use abel_core::exactalg::serde_rational::poly_to_strings;
use abel_core::exactalg::{parse_rational, RatPoly, Rational};
use serde::{Deserialize, Serialize};

use crate::expr::parse_poly;
use crate::{InputError, ParseError};

/// A coefficient written either as an array (index = power) or as an expression in `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyInput {
    Array(Vec<Scalar>),
    Expr(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coefficients {
    #[serde(rename = "A1")]
    pub a1: PolyInput,
    #[serde(rename = "A2")]
    pub a2: PolyInput,
    #[serde(rename = "A3")]
    pub a3: PolyInput,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquationDocument {
    pub exponents: [usize; 3],
    pub coefficients: Coefficients,
}

impl EquationDocument {
    /// Canonical form: coefficient arrays of `p/q` strings.
    pub fn from_equation(eq: &AbelEquation) -> Self {
        let arr = |i| {
            PolyInput::Array(
                poly_to_strings(eq.coeff(i))
                    .into_iter()
                    .map(Scalar::Text)
                    .collect(),
            )
        };
        EquationDocument {
            exponents: eq.exponents(),
            coefficients: Coefficients {
                a1: arr(1),
                a2: arr(2),
                a3: arr(3),
            },
        }
    }

    /// Reads a document; `source` is the raw text, used to place expression errors.
    pub fn parse(source: &str) -> Result<(Self, AbelEquation), InputError> {
        let doc: EquationDocument = serde_json::from_str(source)
            .map_err(|e| ParseError::at(e.line(), e.column(), format!("invalid document: {e}")))?;
        let c = &doc.coefficients;
        let a = [("A1", &c.a1), ("A2", &c.a2), ("A3", &c.a3)]
            .map(|(name, p)| poly_from_input(p).map_err(|e| locate(source, name, p, e)));
        let [a1, a2, a3] = a;
        let eq = AbelEquation::new(doc.exponents, [a1?, a2?, a3?])
            .map_err(|e| InputError::Invalid(e.to_string()))?;
        Ok((doc, eq))
    }
}

pub fn poly_from_input(p: &PolyInput) -> Result<RatPoly, ParseError> {
    match p {
        PolyInput::Expr(s) => parse_poly(s),
        PolyInput::Array(v) => v
            .iter()
            .enumerate()
            .map(|(i, s)| match s {
                Scalar::Int(n) => Ok(Rational::from_integer((*n).into())),
                Scalar::Text(t) => parse_rational(t).ok_or_else(|| {
                    ParseError::at(1, i + 1, format!("entry {i}: bad rational {t:?}"))
                }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(RatPoly::from_coeffs),
    }
}

/// Moves an error inside the expression for `name` to document coordinates when
/// the literal can be found verbatim; otherwise keeps expression-local columns.
fn locate(source: &str, name: &str, p: &PolyInput, e: ParseError) -> ParseError {
    let prefix = format!("{name}: ");
    let PolyInput::Expr(s) = p else {
        return ParseError {
            message: format!("{prefix}{}", e.message),
            ..e
        };
    };
    let literal = format!("\"{s}\"");
    let key = format!("\"{name}\"");
    let found = source
        .find(&key)
        .and_then(|k| source[k..].find(&literal).map(|o| k + o + 1));
    match found {
        Some(offset) => {
            let before = &source[..offset];
            let line = before.matches('\n').count() + 1;
            let line_start = before.rfind('\n').map_or(0, |i| i + 1);
            let column = source[line_start..offset].chars().count() + e.column;
            ParseError::at(line, column, format!("{prefix}{}", e.message))
        }
        None => ParseError {
            message: format!("{prefix}{}", e.message),
            ..e
        },
    }
}
