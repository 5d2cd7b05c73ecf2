//! Equations with prescribed rational solutions `1/p_j`.

use thiserror::Error;

use crate::diagram::{AbelEquation, DiagramError};
use crate::exactalg::{int, RatPoly, Rational};
use crate::solver::verify_rational;
use crate::structure::delta123;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("distinct solutions required")]
    NotDistinct,
    #[error("prescribed denominators must be nonconstant")]
    ConstantDenominator,
    #[error("p1^(n3-n2) and p2^(n3-n2) coincide")]
    DegenerateDenominator,
    #[error("the determinant of the 3x3 system vanishes")]
    SingularSystem,
    #[error("{which} is not a polynomial")]
    NonPolynomial { which: &'static str },
    #[error("constructed coefficients do not form a valid equation: {0}")]
    InvalidEquation(DiagramError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSolutionSpec {
    pub p1: RatPoly,
    pub p2: RatPoly,
    pub a1: RatPoly,
    pub exponents: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeSolutionSpec {
    pub p: [RatPoly; 3],
    pub exponents: [usize; 3],
}

fn exact(num: &RatPoly, den: &RatPoly, which: &'static str) -> Result<RatPoly, ConstructError> {
    num.exact_div(den)
        .expect("nonzero divisor")
        .ok_or(ConstructError::NonPolynomial { which })
}

fn check_inputs(ps: &[&RatPoly]) -> Result<(), ConstructError> {
    if ps.iter().any(|p| p.deg().unwrap_or(0) == 0) {
        return Err(ConstructError::ConstantDenominator);
    }
    for (i, p) in ps.iter().enumerate() {
        if ps[..i].contains(p) {
            return Err(ConstructError::NotDistinct);
        }
    }
    Ok(())
}

fn finish(n: [usize; 3], a: [RatPoly; 3], ps: &[&RatPoly]) -> Result<AbelEquation, ConstructError> {
    let eq = AbelEquation::new(n, a).map_err(ConstructError::InvalidEquation)?;
    for p in ps {
        assert!(
            verify_rational(&eq, p),
            "constructed equation does not admit 1/({p})"
        );
    }
    Ok(eq)
}

/// `A2` and `A3` from two solutions and a free `A1`.
pub fn from_two_solutions(spec: &TwoSolutionSpec) -> Result<AbelEquation, ConstructError> {
    let TwoSolutionSpec {
        p1,
        p2,
        a1,
        exponents: n,
    } = spec;
    check_inputs(&[p1, p2])?;
    let [n1, n2, n3] = *n;
    let k = n3 - n2;
    let (u1, u2) = (p1.pow(k), p2.pow(k));
    let den = &u1 - &u2;
    if den.is_zero() {
        return Err(ConstructError::DegenerateDenominator);
    }
    let m = n3 - n1;
    let inv = |x: usize| Rational::new(int(1).numer().clone(), x.into());
    let num2 = &(&p1.pow(n3 - 1) - &p2.pow(n3 - 1))
        .derivative()
        .scale(&inv(n3 - 1))
        + &(a1 * &(&p1.pow(m) - &p2.pow(m)));
    let a2 = -exact(&num2, &den, "A2")?;
    let uu = &u1 * &u2;
    let num3 = &(&uu
        * &(&p1.pow(n2 - 1) - &p2.pow(n2 - 1))
            .derivative()
            .scale(&inv(n2 - 1)))
        + &(&(a1 * &uu) * &(&p1.pow(n2 - n1) - &p2.pow(n2 - n1)));
    let a3 = exact(&num3, &den, "A3")?;
    finish(*n, [a1.clone(), a2, a3], &[p1, p2])
}

fn det3(m: [[&RatPoly; 3]; 3]) -> RatPoly {
    let minor = |a: &RatPoly, b: &RatPoly, c: &RatPoly, d: &RatPoly| &(a * d) - &(b * c);
    let t0 = m[0][0] * &minor(m[1][1], m[1][2], m[2][1], m[2][2]);
    let t1 = m[0][1] * &minor(m[1][0], m[1][2], m[2][0], m[2][2]);
    let t2 = m[0][2] * &minor(m[1][0], m[1][1], m[2][0], m[2][1]);
    &(&t0 - &t1) + &t2
}

/// All three coefficients from three solutions, by Cramer's rule.
pub fn from_three_solutions(spec: &ThreeSolutionSpec) -> Result<AbelEquation, ConstructError> {
    let n = spec.exponents;
    let p = &spec.p;
    check_inputs(&[&p[0], &p[1], &p[2]])?;
    let delta = delta123([&p[0], &p[1], &p[2]], n);
    if delta.is_zero() {
        return Err(ConstructError::SingularSystem);
    }
    let one = RatPoly::one();
    let u: Vec<RatPoly> = p.iter().map(|q| q.pow(n[2] - n[1])).collect();
    let v: Vec<RatPoly> = p.iter().map(|q| q.pow(n[2] - n[0])).collect();
    let w: Vec<RatPoly> = p
        .iter()
        .map(|q| -(&q.pow(n[2] - 2) * &q.derivative()))
        .collect();
    let rows = |col: usize| -> [[&RatPoly; 3]; 3] {
        std::array::from_fn(|j| {
            let mut row = [&one, &u[j], &v[j]];
            row[col] = &w[j];
            row
        })
    };
    let a3 = exact(&det3(rows(0)), &delta, "A3")?;
    let a2 = exact(&det3(rows(1)), &delta, "A2")?;
    let a1 = exact(&det3(rows(2)), &delta, "A1")?;
    finish(n, [a1, a2, a3], &[&p[0], &p[1], &p[2]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::fixtures::five_solution_equation;

    fn quad(c: Rational) -> RatPoly {
        RatPoly::monomial(c, 2)
    }

    #[test]
    fn two_solution_fixture() {
        let spec = TwoSolutionSpec {
            p1: quad(rat(-1, 2)),
            p2: quad(int(-1)),
            a1: RatPoly::monomial(rat(23, 3), 1),
            exponents: [2, 4, 6],
        };
        assert_eq!(from_two_solutions(&spec).unwrap(), five_solution_equation());
    }

    #[test]
    fn three_solution_fixture() {
        let spec = ThreeSolutionSpec {
            p: [quad(rat(-1, 2)), quad(int(-1)), quad(rat(2, 3))],
            exponents: [2, 4, 6],
        };
        assert_eq!(
            from_three_solutions(&spec).unwrap(),
            five_solution_equation()
        );
        let spec = ThreeSolutionSpec {
            p: [quad(int(-1)), quad(rat(2, 3)), quad(rat(-1, 2))],
            exponents: [2, 4, 6],
        };
        assert_eq!(
            from_three_solutions(&spec).unwrap(),
            five_solution_equation()
        );
    }

    #[test]
    fn degenerate_inputs() {
        let p = quad(int(1));
        let spec = TwoSolutionSpec {
            p1: p.clone(),
            p2: -p.clone(),
            a1: RatPoly::one(),
            exponents: [2, 4, 6],
        };
        assert_eq!(
            from_two_solutions(&spec),
            Err(ConstructError::DegenerateDenominator)
        );
        let spec = TwoSolutionSpec {
            p1: p.clone(),
            p2: p.clone(),
            a1: RatPoly::one(),
            exponents: [2, 4, 6],
        };
        assert_eq!(from_two_solutions(&spec), Err(ConstructError::NotDistinct));
        let spec = ThreeSolutionSpec {
            p: [p.clone(), p.clone(), quad(int(2))],
            exponents: [2, 4, 6],
        };
        assert_eq!(
            from_three_solutions(&spec),
            Err(ConstructError::NotDistinct)
        );
    }

    #[test]
    fn linear_pair_regression() {
        // subtracting the two identities: 2(t+1)^2 - 2t^2 + A2 = 0, then A3 = -2t^2 - A2 t
        let spec = TwoSolutionSpec {
            p1: RatPoly::x(),
            p2: RatPoly::from_ints(&[1, 1]),
            a1: RatPoly::one(),
            exponents: [2, 3, 4],
        };
        let eq = from_two_solutions(&spec).unwrap();
        assert_eq!(eq.coeff(2), &RatPoly::from_ints(&[-2, -4]));
        assert_eq!(eq.coeff(3), &RatPoly::from_ints(&[0, 2, 2]));
    }

    #[test]
    fn three_distinct_degrees_law() {
        // (1, 2, 3) with n = (2,3,4): when the output is polynomial its degrees are (2, 4, 5)
        let p = [
            RatPoly::from_ints(&[0, 1]),
            RatPoly::from_ints(&[0, 0, 1]),
            RatPoly::from_ints(&[0, 0, 0, 1]),
        ];
        match from_three_solutions(&ThreeSolutionSpec {
            p,
            exponents: [2, 3, 4],
        }) {
            Ok(eq) => assert_eq!([eq.a(1), eq.a(2), eq.a(3)], [2, 4, 5]),
            Err(e) => assert!(matches!(e, ConstructError::NonPolynomial { .. }), "{e}"),
        }
    }
}
