//! Randomized checks of the exact kernel, shared by the property tests and the
//! acceptance target.

#![allow(dead_code)]

use abel_core::exactalg::{
    crt_combine, descartes_bound, explore, isolate_real_roots, poly_gcd, power_part, rat,
    real_root_count, refine_root, resultant, squarefree_decompose, squarefree_part,
    sylvester_resultant, AlgebraicContext, Bound, InvertError, RatPoly, Rational,
};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 500;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(small_rational(), 1..=max_deg + 1).prop_map(RatPoly::from_coeffs)
}

pub fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = RatPoly> {
    poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

/// `lc * prod (t - root)^mult`, returned with its factor list.
pub fn linear_product() -> impl Strategy<Value = (RatPoly, Vec<(Rational, usize)>)> {
    (
        prop::collection::vec((-4i64..=4, 1i64..=2, 1usize..=3), 1..=4),
        small_rational().prop_filter("nonzero", |c| !c.is_zero()),
    )
        .prop_map(|(raw, lc)| {
            let mut factors: Vec<(Rational, usize)> = Vec::new();
            for (n, d, m) in raw {
                let root = rat(n, d);
                match factors.iter_mut().find(|(r, _)| *r == root) {
                    Some(f) => f.1 += m,
                    None => factors.push((root, m)),
                }
            }
            let p = factors.iter().fold(RatPoly::constant(lc), |acc, (r, m)| {
                &acc * &linear(r).pow(*m)
            });
            (p, factors)
        })
}

fn linear(root: &Rational) -> RatPoly {
    RatPoly::from_coeffs(vec![-root.clone(), Rational::one()])
}

/// Squarefree, nonconstant, with nonzero constant term.
pub fn squarefree_poly() -> impl Strategy<Value = RatPoly> {
    nonzero_poly(6)
        .prop_map(|p| {
            let s = squarefree_part(&p).unwrap();
            let z = s.multiplicity_at_zero();
            s.shift_down(z)
        })
        .prop_filter("nonconstant", |p| !p.is_constant())
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

pub fn resultant_gcd(a: &RatPoly, b: &RatPoly) -> Result<(), TestCaseError> {
    let r = resultant(a, b).unwrap();
    let g = poly_gcd(a, b).unwrap();
    check(r.is_zero() == !g.is_constant(), || {
        format!("res {r} vs gcd {g} for {a}, {b}")
    })?;
    let s = sylvester_resultant(a, b).unwrap();
    check(r == s, || {
        format!("subresultant {r} != sylvester {s} for {a}, {b}")
    })
}

pub fn squarefree_reconstruction(a: &RatPoly) -> Result<(), TestCaseError> {
    let sq = squarefree_decompose(a).unwrap();
    check(&sq.expand() == a, || format!("reconstruction of {a}"))?;
    for (i, (f, _)) in sq.parts.iter().enumerate() {
        check(poly_gcd(f, &f.derivative()).unwrap().is_constant(), || {
            format!("{f} not squarefree")
        })?;
        for (g, _) in &sq.parts[i + 1..] {
            check(poly_gcd(f, g).unwrap().is_constant(), || {
                format!("{f}, {g} not coprime")
            })?;
        }
    }
    Ok(())
}

pub fn power_part_divisibility(
    a: &RatPoly,
    roots: &[(Rational, usize)],
    k: usize,
) -> Result<(), TestCaseError> {
    let h = power_part(a, k).unwrap();
    let hk = h.pow(k);
    check(hk.divides(a).unwrap(), || {
        format!("power_part({a}, {k})^k does not divide")
    })?;
    // Every nonconstant monic divisor of a / h^k has a linear factor, so linear factors suffice.
    let rest = a.exact_div(&hk).unwrap().unwrap();
    for (r, _) in roots {
        let f = linear(r);
        if f.divides(&rest).unwrap() {
            let bigger = (&h * &f).pow(k);
            check(!bigger.divides(a).unwrap(), || {
                format!("power_part({a}, {k}) not maximal at {r}")
            })?;
        }
    }
    Ok(())
}

pub fn sturm_descartes(a: &RatPoly) -> Result<(), TestCaseError> {
    let (pos, neg) = descartes_bound(a).unwrap();
    let zero = Rational::zero();
    let n_pos = real_root_count(a, &Bound::Finite(zero.clone()), &Bound::PosInf).unwrap();
    let n_neg = real_root_count(a, &Bound::NegInf, &Bound::Finite(zero)).unwrap();
    check(n_pos + n_neg <= pos + neg, || {
        format!("count exceeds Descartes for {a}")
    })?;
    check(n_pos <= pos && (pos - n_pos).is_multiple_of(2), || {
        format!("positive parity for {a}")
    })?;
    check(n_neg <= neg && (neg - n_neg).is_multiple_of(2), || {
        format!("negative parity for {a}")
    })
}

pub fn isolation_brackets(a: &RatPoly, bits: u32) -> Result<(), TestCaseError> {
    let eps = Rational::new(1.into(), num_bigint::BigInt::from(2).pow(bits));
    let ivs = isolate_real_roots(a).unwrap();
    let all = real_root_count(a, &Bound::NegInf, &Bound::PosInf).unwrap();
    check(ivs.len() == all, || {
        format!("{} intervals, {all} roots for {a}", ivs.len())
    })?;
    for iv in ivs {
        let iv = refine_root(a, &iv, &eps);
        let ok = if iv.is_exact() {
            a.eval(&iv.lo).is_zero()
        } else {
            iv.width() < eps && a.sign_at(&iv.lo) * a.sign_at(&iv.hi) < 0
        };
        check(ok, || format!("bad interval {iv:?} for {a}"))?;
    }
    Ok(())
}

pub fn split_recombine(modulus: &RatPoly, x: &RatPoly) -> Result<(), TestCaseError> {
    let ctx = AlgebraicContext::new(modulus, "m").unwrap();
    let branches = explore(ctx.clone(), |c| match c.invert_raw(x) {
        Ok(inv) => Ok(Some(inv)),
        Err(InvertError::Split(s)) => {
            let product = s.left.modulus() * s.right.modulus();
            assert!(
                &product == c.modulus()
                    && !s.left.modulus().is_constant()
                    && !s.right.modulus().is_constant()
            );
            let whole = c.elem(x);
            let back = crt_combine(&whole.lift_to(&s.left), &whole.lift_to(&s.right), c).unwrap();
            assert_eq!(back, whole, "recombination");
            Err(s)
        }
        Err(_) => Ok(None),
    });
    let product = branches
        .iter()
        .fold(RatPoly::one(), |acc, (c, _)| &acc * c.modulus());
    check(&product == ctx.modulus(), || {
        format!("branches of {modulus} do not multiply back")
    })?;
    for (c, inv) in branches {
        match inv {
            Some(inv) => check(c.mul(x, &inv).is_one(), || {
                format!("x * x^-1 != 1 mod {}", c.modulus())
            })?,
            None => check(c.reduce(x).is_zero(), || {
                format!("{x} reported zero mod {}", c.modulus())
            })?,
        }
    }
    Ok(())
}

/// A squarefree modulus built from rational roots and an optional quadratic.
pub fn modulus_and_element() -> impl Strategy<Value = (RatPoly, RatPoly)> {
    (linear_product(), 0i64..=3, poly(3), prop::bool::ANY).prop_map(|((p, roots), q, x, share)| {
        let quad = if q == 0 {
            RatPoly::one()
        } else {
            RatPoly::from_ints(&[-q - 1, 0, 1])
        };
        let m = squarefree_part(&(&p * &quad)).unwrap();
        // Sharing a root makes x a zero divisor and forces a split.
        let x = if share { &x * &linear(&roots[0].0) } else { x };
        (m, x)
    })
}

/// Runs one named property for `CASES` cases; `Err` carries the failure.
pub fn run<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn all_properties() -> Vec<(&'static str, Result<(), String>)> {
    vec![
        (
            "resultant-gcd equivalence",
            run(
                (nonzero_poly(4), nonzero_poly(4), poly(2), prop::bool::ANY),
                |(a, b, c, share)| {
                    let (a, b) = if share && !c.is_zero() {
                        (&a * &c, &b * &c)
                    } else {
                        (a, b)
                    };
                    resultant_gcd(&a, &b)
                },
            ),
        ),
        (
            "squarefree reconstruction",
            run(linear_product().prop_map(|(p, _)| p), |a| {
                squarefree_reconstruction(&a)
            }),
        ),
        (
            "power_part divisibility",
            run((linear_product(), 1usize..=4), |((a, roots), k)| {
                power_part_divisibility(&a, &roots, k)
            }),
        ),
        (
            "Sturm vs Descartes",
            run(squarefree_poly(), |a| sturm_descartes(&a)),
        ),
        (
            "isolation brackets",
            run((squarefree_poly(), 1u32..=40), |(a, b)| {
                isolation_brackets(&a, b)
            }),
        ),
        (
            "split and recombine",
            run(modulus_and_element(), |(m, x)| split_recombine(&m, &x)),
        ),
    ]
}
