//! Nondegeneracy certificates: simple roots, no negative-integer derivative
//! values, and root-of-unity separation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{edge_profiles, AbelEquation, EdgeProfile, Term, TieKind, TieSet};
use crate::exactalg::{
    cauchy_bound, ceil_rational, int, interpolate, poly_gcd, rational_roots, resultant, RatPoly,
    Rational,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum FieldMode {
    Complex,
    #[default]
    Real,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Nd2Outcome {
    pub pass: bool,
    /// Smallest `m >= 1` with `P_r'(C) = -m` at some nonzero root.
    pub witness: Option<u64>,
    /// Upper bound on `|P_r'(C)|` over the nonzero roots; absent when vacuous.
    #[serde(serialize_with = "ser_opt_int")]
    pub bound: Option<BigInt>,
}

fn ser_opt_int<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_some(&b.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Nd3Outcome {
    pub pass: bool,
    /// `(m, k)`: a primitive `k`-th root of unity, `k | m`, relates two roots.
    pub witness: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeVerdict {
    pub r: usize,
    pub tie: TieSet,
    pub nd1: bool,
    pub nd2: Nd2Outcome,
    pub nd3: Nd3Outcome,
    pub table2_exclusion: Option<String>,
}

impl DegreeVerdict {
    pub fn holds(&self) -> bool {
        self.nd1 && self.nd2.pass && self.nd3.pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NDVerdict {
    pub mode: FieldMode,
    pub holds: bool,
    pub per_degree: BTreeMap<usize, DegreeVerdict>,
}

/// Simple nonzero roots: `Res(P~, P~') != 0`.
pub fn check_nd1(profile: &EdgeProfile) -> bool {
    let q = &profile.reduced;
    if q.is_constant() {
        return true;
    }
    !resultant(q, &q.derivative()).expect("nonzero").is_zero()
}

/// `prod (y - P_r'(theta))` up to a constant, over the roots of `P~` with multiplicity.
pub fn derivative_value_poly(profile: &EdgeProfile) -> RatPoly {
    let q = &profile.reduced;
    let d = q.deg().unwrap_or(0);
    let dp = profile.edge_poly.derivative().rem(q).expect("nonzero");
    let xs: Vec<Rational> = (0..=d as i64).map(int).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|y| {
            let b = &RatPoly::constant(y.clone()) - &dp;
            if b.is_zero() {
                Rational::zero()
            } else {
                resultant(q, &b).expect("nonzero")
            }
        })
        .collect();
    interpolate(&xs, &ys)
}

/// Cauchy-type bound on `|P_r'(C)|` over the nonzero roots.
pub fn nd2_bound(eq: &AbelEquation, profile: &EdgeProfile) -> BigInt {
    let big_r = cauchy_bound(&profile.reduced).expect("nonzero");
    let mut total = int(profile.r as i64);
    for t in profile.tie.terms().filter(|t| *t != Term::Partial) {
        let i = t.index();
        let n = eq.n(i);
        total += int(n as i64) * eq.alpha(i).abs() * num_traits::pow(big_r.clone(), n - 1);
    }
    ceil_rational(&total)
}

pub fn check_nd2(eq: &AbelEquation, profile: &EdgeProfile) -> Nd2Outcome {
    if !profile.has_partial() || profile.reduced.is_constant() {
        return Nd2Outcome {
            pass: true,
            witness: None,
            bound: None,
        };
    }
    let s = derivative_value_poly(profile);
    let bound = nd2_bound(eq, profile);
    let witness = rational_roots(&s)
        .expect("nonzero")
        .into_iter()
        .filter(|x| x.is_integer() && x.is_negative())
        .map(|x| u64::try_from(-x.to_integer()).expect("witness fits"))
        .min();
    if let Some(m) = witness {
        assert!(
            BigInt::from(m) <= bound,
            "negative-integer value beyond the derived bound"
        );
    }
    Nd2Outcome {
        pass: witness.is_none(),
        witness,
        bound: Some(bound),
    }
}

/// Direct scan of `Res(P~, P_r' + m)` for `m = 1..=limit`.
pub fn nd2_scan(profile: &EdgeProfile, limit: u64) -> Option<u64> {
    let dp = profile.edge_poly.derivative();
    (1..=limit).find(|&m| {
        let b = &dp + &RatPoly::constant(int(m as i64));
        resultant(&profile.reduced, &b).expect("nonzero").is_zero()
    })
}

/// `R(y) = Res_C(P~(C), y^d P~(C/y))`, whose roots are the ratios of roots.
pub fn ratio_resultant(reduced: &RatPoly) -> RatPoly {
    let d = reduced.deg().unwrap_or(0);
    let n = d * d;
    let xs: Vec<Rational> = (0..=n as i64).map(int).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|y| {
            let mut pow = Rational::one();
            let mut c = vec![Rational::zero(); d + 1];
            for j in (0..=d).rev() {
                c[j] = reduced.coeff(j) * &pow;
                pow *= y;
            }
            resultant(reduced, &RatPoly::from_coeffs(c)).expect("nonzero")
        })
        .collect();
    interpolate(&xs, &ys)
}

/// The `k`-th cyclotomic polynomial.
pub fn cyclotomic(k: usize) -> RatPoly {
    let mut p = &RatPoly::monomial(int(1), k) - &RatPoly::one();
    for j in 1..k {
        if k.is_multiple_of(j) {
            p = p
                .exact_div(&cyclotomic(j))
                .expect("nonzero")
                .expect("divides");
        }
    }
    p
}

/// `n3 - n2`, `n3 - n1`, `n3 - 1`.
pub fn separation_orders(eq: &AbelEquation) -> [usize; 3] {
    [eq.n(3) - eq.n(2), eq.n(3) - eq.n(1), eq.n(3) - 1]
}

pub fn check_nd3(profile: &EdgeProfile, eq: &AbelEquation, mode: FieldMode) -> Nd3Outcome {
    let ms = separation_orders(eq);
    if profile.reduced.deg().unwrap_or(0) < 2 {
        return Nd3Outcome {
            pass: true,
            witness: None,
        };
    }
    let r = ratio_resultant(&profile.reduced);
    match mode {
        FieldMode::Complex => {
            for m in ms.into_iter().filter(|m| *m >= 2) {
                let phi_m = RatPoly::from_coeffs(vec![Rational::one(); m]);
                let g = poly_gcd(&r, &phi_m).expect("nonzero");
                if g.is_constant() {
                    continue;
                }
                let k = (2..=m)
                    .filter(|k| m % k == 0)
                    .find(|&k| !poly_gcd(&g, &cyclotomic(k)).expect("nonzero").is_constant())
                    .expect("some cyclotomic factor divides");
                return Nd3Outcome {
                    pass: false,
                    witness: Some((m, k)),
                };
            }
            Nd3Outcome {
                pass: true,
                witness: None,
            }
        }
        FieldMode::Real => match ms.into_iter().find(|m| m % 2 == 0) {
            Some(m) if r.eval(&int(-1)).is_zero() => Nd3Outcome {
                pass: false,
                witness: Some((m, 2)),
            },
            _ => Nd3Outcome {
                pass: true,
                witness: None,
            },
        },
    }
}

/// Arithmetic incompatibility from the exponent pattern alone, if any.
pub fn table2_exclusions(tie: TieKind, n: [usize; 3], mode: FieldMode) -> Option<String> {
    let [n1, n2, n3] = n;
    let xs = [n3 - n2, n3 - n1, n3 - 1];
    let odd = |v: usize| v % 2 == 1;
    let some_x_even = xs.iter().any(|x| x % 2 == 0);
    let g = |a: usize, b: usize| a.gcd(&b);
    let (fires, label) = match (tie, mode) {
        (TieKind::T32, FieldMode::Complex) => (n3 - n2 > 1, "n3-n2 > 1".to_string()),
        (TieKind::T32, FieldMode::Real) => ((n3 - n2) % 2 == 0, "n3-n2 even".into()),
        (TieKind::T321, FieldMode::Complex) => {
            (g(n3 - n1, n2 - n1) > 1, "gcd(n3-n1, n2-n1) > 1".into())
        }
        (TieKind::T321, FieldMode::Real) => (
            (n3 - n1) % 2 == 0 && (n2 - n1) % 2 == 0,
            "n3-n1 and n2-n1 both even".into(),
        ),
        (TieKind::T32d, FieldMode::Complex) => {
            (g(n3 - 1, n2 - 1) > 1, "gcd(n3-1, n2-1) > 1".into())
        }
        (TieKind::T32d, FieldMode::Real) => (odd(n3) && odd(n2), "n3 and n2 odd".into()),
        (TieKind::T321d, FieldMode::Complex) => (
            g(g(n3 - 1, n2 - 1), n1 - 1) > 1,
            "gcd(n3-1, n2-1, n1-1) > 1".into(),
        ),
        (TieKind::T321d, FieldMode::Real) => {
            (odd(n1) && odd(n2) && odd(n3), "n1, n2, n3 all odd".into())
        }
        (TieKind::T31, FieldMode::Complex) => (n3 - n1 > 1, "n3-n1 > 1".into()),
        (TieKind::T31, FieldMode::Real) => ((n3 - n1) % 2 == 0, "n3-n1 even".into()),
        (TieKind::T31d, FieldMode::Complex) => {
            (g(n3 - 1, n1 - 1) > 1, "gcd(n3-1, n1-1) > 1".into())
        }
        (TieKind::T31d, FieldMode::Real) => (odd(n3) && odd(n1), "n3 and n1 odd".into()),
        (TieKind::T21, FieldMode::Complex) => (
            xs.iter().any(|&x| g(n2 - n1, x) > 1),
            "gcd(n2-n1, X) > 1".into(),
        ),
        (TieKind::T21, FieldMode::Real) => ((n2 - n1) % 2 == 0 && some_x_even, "n2-n1 even".into()),
        (TieKind::T21d, FieldMode::Complex) => (
            xs.iter().any(|&x| g(g(x, n2 - 1), n1 - 1) > 1),
            "gcd(X, n2-1, n1-1) > 1".into(),
        ),
        (TieKind::T21d, FieldMode::Real) => {
            (odd(n2) && odd(n1) && some_x_even, "n2 and n1 odd".into())
        }
        (TieKind::T3d, FieldMode::Complex) => (true, "always".into()),
        (TieKind::T3d, FieldMode::Real) => (odd(n3), "n3 odd".into()),
        (TieKind::T2d, FieldMode::Complex) => (
            xs.iter().any(|&x| g(n2 - 1, x) > 1),
            "gcd(n2-1, X) > 1".into(),
        ),
        (TieKind::T2d, FieldMode::Real) => (odd(n2) && some_x_even, "n2 odd".into()),
        (TieKind::T1d, FieldMode::Complex) => (
            xs.iter().any(|&x| g(n1 - 1, x) > 1),
            "gcd(n1-1, X) > 1".into(),
        ),
        (TieKind::T1d, FieldMode::Real) => (odd(n1) && some_x_even, "n1 odd".into()),
    };
    fires.then(|| format!("{tie}: {label}"))
}

pub fn check_profile(eq: &AbelEquation, profile: &EdgeProfile, mode: FieldMode) -> DegreeVerdict {
    let kind = TieKind::from_tie(profile.tie).expect("admissible tie");
    DegreeVerdict {
        r: profile.r,
        tie: profile.tie,
        nd1: check_nd1(profile),
        nd2: check_nd2(eq, profile),
        nd3: check_nd3(profile, eq, mode),
        table2_exclusion: table2_exclusions(kind, eq.exponents(), mode),
    }
}

pub fn check_nd(eq: &AbelEquation, mode: FieldMode) -> NDVerdict {
    let per_degree: BTreeMap<usize, DegreeVerdict> = edge_profiles(eq)
        .iter()
        .map(|p| (p.r, check_profile(eq, p, mode)))
        .collect();
    let holds = per_degree.values().all(DegreeVerdict::holds);
    NDVerdict {
        mode,
        holds,
        per_degree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::edge_profile;
    use crate::exactalg::rat;
    use crate::fixtures::five_solution_equation;

    fn profile_with_reduced(reduced: RatPoly, tie: TieSet) -> EdgeProfile {
        EdgeProfile {
            r: 1,
            order: 0,
            tie,
            phi: [0; 4],
            edge_poly: reduced.shift_up(1),
            e_r: 1,
            reduced,
        }
    }

    #[test]
    fn nd1_cases() {
        let eq = five_solution_equation();
        assert!(check_nd1(&edge_profile(&eq, 2).unwrap()));
        let t = TieKind::T32.tie_set();
        assert!(!check_nd1(&profile_with_reduced(
            RatPoly::from_ints(&[1, -2, 1]),
            t
        )));
        assert!(check_nd1(&profile_with_reduced(
            RatPoly::from_ints(&[-1, -3, 2]),
            t
        )));
    }

    #[test]
    fn nd2_on_five_solution_equation() {
        let eq = five_solution_equation();
        let p = edge_profile(&eq, 2).unwrap();
        let out = check_nd2(&eq, &p);
        assert!(out.pass);
        let s = derivative_value_poly(&p).monic();
        // values -182/3, 20/3, -35/4 and 51/8 -+ 47 sqrt(17)/24
        for v in [rat(-182, 3), rat(20, 3), rat(-35, 4)] {
            assert!(s.eval(&v).is_zero());
        }
        let q = &RatPoly::from_fracs(&[(-51, 8), (1, 1)]).pow(2)
            - &RatPoly::constant(rat(47 * 47 * 17, 24 * 24));
        assert!(q.divides(&s).unwrap());
        assert!(nd2_scan(&p, 100).is_none());
    }

    #[test]
    fn nd2_binomial_fails_at_resonance() {
        // T = {3, d}: P = a3 C^n3 + r C, n = (2,3,4), a3 = 5 = (n3-1) r - 1 with r = 2
        let eq = AbelEquation::new(
            [2, 3, 4],
            [
                RatPoly::from_ints(&[1]),
                RatPoly::from_ints(&[1]),
                RatPoly::monomial(int(-3), 5),
            ],
        )
        .unwrap();
        let p = edge_profile(&eq, 2).unwrap();
        assert_eq!(p.tie, TieKind::T3d.tie_set());
        let out = check_nd2(&eq, &p);
        assert!(!out.pass);
        assert_eq!(out.witness, Some(6));
        assert_eq!(nd2_scan(&p, 20), Some(6));
    }

    #[test]
    fn nd2_vacuous_without_partial() {
        let eq = five_solution_equation();
        let p = profile_with_reduced(RatPoly::from_ints(&[1, 1]), TieKind::T32.tie_set());
        let out = check_nd2(&eq, &p);
        assert!(out.pass && out.bound.is_none());
    }

    #[test]
    fn nd3_cases() {
        let eq = five_solution_equation();
        let p = edge_profile(&eq, 2).unwrap();
        assert!(check_nd3(&p, &eq, FieldMode::Real).pass);
        // alpha3 C^2 + alpha2: single orbit under mu_2
        let binom = profile_with_reduced(RatPoly::from_ints(&[3, 0, 1]), TieKind::T32.tie_set());
        let out = check_nd3(&binom, &eq, FieldMode::Complex);
        assert_eq!(
            out,
            Nd3Outcome {
                pass: false,
                witness: Some((2, 2))
            }
        );
        let pm = profile_with_reduced(RatPoly::from_ints(&[-1, 0, 1]), TieKind::T32.tie_set());
        assert!(!check_nd3(&pm, &eq, FieldMode::Real).pass);
    }

    #[test]
    fn ratio_resultant_vanishes_at_one() {
        let r = ratio_resultant(&RatPoly::from_fracs(&[
            (2, 1),
            (23, 3),
            (0, 1),
            (-7, 1),
            (0, 1),
            (4, 3),
        ]));
        assert!(r.eval(&int(1)).is_zero());
        assert_eq!(r.deg(), Some(25));
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic(1), RatPoly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic(4), RatPoly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), RatPoly::from_ints(&[1, -1, 1]));
    }

    #[test]
    fn table2_rows() {
        assert!(table2_exclusions(TieKind::T3d, [2, 4, 6], FieldMode::Complex).is_some());
        assert!(table2_exclusions(TieKind::T321d, [2, 4, 6], FieldMode::Real).is_none());
        assert!(table2_exclusions(TieKind::T32, [2, 4, 5], FieldMode::Complex).is_none());
        assert!(table2_exclusions(TieKind::T32, [2, 3, 5], FieldMode::Complex).is_some());
    }

    #[test]
    fn aggregate_verdicts() {
        assert!(check_nd(&five_solution_equation(), FieldMode::Real).holds);
        let empty =
            AbelEquation::new([2, 3, 4], [RatPoly::one(), RatPoly::one(), RatPoly::one()]).unwrap();
        let v = check_nd(&empty, FieldMode::Complex);
        assert!(v.holds && v.per_degree.is_empty());
    }

    #[test]
    fn double_root_equation_fails_nd1() {
        // T = {3,2,1} at r = 1 with n = (2,3,4): P~ = C^2 - 2C + 1
        let eq = AbelEquation::new(
            [2, 3, 4],
            [
                RatPoly::from_ints(&[0, 0, 1]),
                RatPoly::from_ints(&[0, 0, 0, -2]),
                RatPoly::from_ints(&[0, 0, 0, 0, 1]),
            ],
        )
        .unwrap();
        let v = check_nd(&eq, FieldMode::Complex);
        assert!(!v.holds);
        assert!(!v.per_degree[&1].nd1);
    }
}
