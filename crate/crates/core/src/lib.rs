//! Rational solutions `x = 1/p(t)` of three-term generalized Abel equations
//! `x' = A3 x^n3 + A2 x^n2 + A1 x^n1` with polynomial coefficients.

pub mod diagram;
pub mod exactalg;
pub mod ndcheck;

pub mod construct;
pub mod generate;
pub mod puiseux;
pub mod solver;
pub mod structure;
