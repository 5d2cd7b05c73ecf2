//! Random instances with known solutions, for testing and benchmarking.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::construct::{
    from_three_solutions, from_two_solutions, ThreeSolutionSpec, TwoSolutionSpec,
};
use crate::diagram::{edge_profile, AbelEquation, Term, TieSet};
use crate::exactalg::{int, rat, RatPoly, Rational};

pub fn small_rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rational {
    loop {
        let q = rat(rng.gen_range(-num..=num), rng.gen_range(1..=den));
        if !q.is_integer() || q != int(0) {
            return q;
        }
    }
}

/// `c * prod (t - rho_j)` with small rational `rho_j` and `c`.
pub fn linear_product<R: Rng>(rng: &mut R, degree: usize) -> RatPoly {
    let mut p = RatPoly::constant(small_rational(rng, 3, 2));
    for _ in 0..degree {
        let rho = rat(rng.gen_range(-2..=2), rng.gen_range(1..=2));
        p = &p * &RatPoly::from_coeffs(vec![-rho, int(1)]);
    }
    p
}

pub fn small_poly<R: Rng>(rng: &mut R, degree: usize) -> RatPoly {
    loop {
        let p = RatPoly::from_coeffs(
            (0..=degree)
                .map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)))
                .collect(),
        );
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn exponents<R: Rng>(rng: &mut R) -> [usize; 3] {
    let n1 = rng.gen_range(2..=4);
    let n2 = n1 + rng.gen_range(1..=2);
    let n3 = n2 + rng.gen_range(1..=2);
    [n1, n2, n3]
}

/// `p2 = lambda p1`: both quotients are always polynomial.
pub fn scaling_pair<R: Rng>(rng: &mut R) -> TwoSolutionSpec {
    let n = exponents(rng);
    let p1 = {
        let d = rng.gen_range(1..=2);
        linear_product(rng, d)
    };
    let k = n[2] - n[1];
    let lambda = loop {
        let l = small_rational(rng, 3, 2);
        if l.pow(k as i32) != int(1) {
            break l;
        }
    };
    let a1 = {
        let d = rng.gen_range(0..=2);
        small_poly(rng, d)
    };
    TwoSolutionSpec {
        p2: p1.scale(&lambda),
        p1,
        a1,
        exponents: n,
    }
}

/// `t -> lambda t + mu` applied to every denominator.
fn affine<R: Rng>(rng: &mut R, ps: &mut [RatPoly]) {
    if rng.gen_bool(0.5) {
        let lambda = small_rational(rng, 2, 2);
        let mu = rat(rng.gen_range(-2..=2), rng.gen_range(1..=2));
        for p in ps {
            *p = p.compose_scaled(&lambda).shift(&(&mu / &lambda));
        }
    }
}

/// Degrees 1 < 2 < 3 from `(a t, a t + b t^2, a t - (b^2/a) t^3)`, with
/// `n = (n1, n1+1, n1+2)`, up to an affine change of variable.
pub fn three_degree_spec<R: Rng>(rng: &mut R) -> ThreeSolutionSpec {
    let n1 = rng.gen_range(3..=5);
    let a = small_rational(rng, 3, 2);
    let b = small_rational(rng, 3, 2);
    let mut p = [
        RatPoly::monomial(a.clone(), 1),
        RatPoly::from_coeffs(vec![int(0), a.clone(), b.clone()]),
        RatPoly::from_coeffs(vec![int(0), a.clone(), int(0), -(&b * &b) / &a]),
    ];
    affine(rng, &mut p);
    ThreeSolutionSpec {
        p,
        exponents: [n1, n1 + 1, n1 + 2],
    }
}

/// Two of the three solutions of a three-degree instance, with its `A1`.
pub fn pair_from_three<R: Rng>(rng: &mut R) -> Option<TwoSolutionSpec> {
    let spec = three_degree_spec(rng);
    let eq = from_three_solutions(&spec).ok()?;
    let mut idx = [0, 1, 2];
    idx.shuffle(rng);
    Some(TwoSolutionSpec {
        p1: spec.p[idx[0]].clone(),
        p2: spec.p[idx[1]].clone(),
        a1: eq.coeff(1).clone(),
        exponents: spec.exponents,
    })
}

/// Random products of linear factors; equal degrees get distinct leading
/// coefficients. No acceptance check.
pub fn random_pair<R: Rng>(rng: &mut R) -> TwoSolutionSpec {
    let n = exponents(rng);
    let d1 = rng.gen_range(1..=2);
    let d2 = rng.gen_range(1..=d1);
    let p1 = linear_product(rng, d1);
    let p2 = loop {
        let p2 = linear_product(rng, d2);
        if d1 != d2 || p2.lc() != p1.lc() {
            break p2;
        }
    };
    let d = rng.gen_range(0..=3);
    TwoSolutionSpec {
        p1,
        p2,
        a1: small_poly(rng, d),
        exponents: n,
    }
}

/// Two-solution instance, rejecting constructions that fail.
pub fn two_solution_instance<R: Rng>(rng: &mut R) -> (AbelEquation, TwoSolutionSpec) {
    loop {
        let spec = match rng.gen_range(0..3) {
            0 => scaling_pair(rng),
            1 => match pair_from_three(rng) {
                Some(s) => s,
                None => continue,
            },
            _ => random_pair(rng),
        };
        if let Ok(eq) = from_two_solutions(&spec) {
            return (eq, spec);
        }
    }
}

/// Equation whose tie at `r` is exactly `{i, ∂}`, with monomial coefficients.
pub fn binomial_partial_instance<R: Rng>(rng: &mut R, term: Term) -> (AbelEquation, usize) {
    loop {
        let n = exponents(rng);
        let r = rng.gen_range(1..=3);
        let i = term.index();
        let mut deg = [0usize; 3];
        for j in 1..=3 {
            let tie_degree = (n[j - 1] - 1) * r - 1;
            deg[j - 1] = if j == i {
                tie_degree
            } else if j == 3 {
                // keep r below r0 while staying off the tie
                let lo = (n[2] - n[1]) * r;
                if lo >= tie_degree {
                    usize::MAX
                } else {
                    rng.gen_range(lo..tie_degree)
                }
            } else if tie_degree == 0 {
                usize::MAX
            } else {
                rng.gen_range(0..tie_degree)
            };
        }
        if deg.contains(&usize::MAX) || (i != 3 && deg[2] < (n[2] - n[1]) * r) {
            continue;
        }
        let a = deg.map(|d| RatPoly::monomial(small_rational(rng, 5, 3), d));
        let Ok(eq) = AbelEquation::new(n, a) else {
            continue;
        };
        let want = TieSet::from_terms(&[term, Term::Partial]);
        if edge_profile(&eq, r).is_ok_and(|p| p.tie == want) {
            return (eq, r);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::verify_rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn three_degree_family_is_polynomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let spec = three_degree_spec(&mut rng);
            let eq = from_three_solutions(&spec).unwrap();
            assert!(spec.p.iter().all(|p| verify_rational(&eq, p)));
        }
    }

    #[test]
    fn binomial_instances_have_requested_tie() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for term in [Term::Three, Term::Two, Term::One] {
            let (eq, r) = binomial_partial_instance(&mut rng, term);
            assert_eq!(edge_profile(&eq, r).unwrap().tie.len(), 2);
        }
    }
}
