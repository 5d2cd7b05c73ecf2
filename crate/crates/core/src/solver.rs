//! End-to-end enumeration: candidate degrees, leading roots, series,
//! reconstruction and exact verification, with an independent divisor-based
//! oracle and the scaling orbit of a solution.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::diagram::{
    candidate_degrees, edge_profile, edge_profiles, AbelEquation, EdgeProfile, TieSet,
};
use crate::exactalg::{
    explore, int, isolate_real_roots, poly_gcd, power_part, rational_roots, squarefree_part,
    AlgebraicContext, Ctx, CtxPoly, InvertError, ModElement, RatPoly, Rational, RootInterval,
    SplitEvent,
};
use crate::ndcheck::{check_nd, FieldMode, NDVerdict};
use crate::puiseux::{
    leading_roots, reciprocal_in_parameter, reconstruct_in, series_in_context, series_in_parameter,
    Reconstruction,
};

/// `x = 1/p(t)`, reported once per context; each root of the context
/// modulus gives one solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSolution {
    pub r: usize,
    pub context: Ctx,
    pub denominator: CtxPoly,
    pub real_roots: Vec<RootInterval>,
}

impl RationalSolution {
    fn new(r: usize, context: Ctx, denominator: CtxPoly) -> Self {
        let real_roots = isolate_real_roots(context.modulus()).expect("squarefree modulus");
        RationalSolution {
            r,
            context,
            denominator,
            real_roots,
        }
    }

    /// Number of complex solutions represented.
    pub fn count(&self) -> usize {
        self.context.degree()
    }

    pub fn real_embeddings(&self) -> usize {
        self.real_roots.len()
    }

    /// The denominator as a rational polynomial when the context is rational.
    pub fn rational_denominator(&self) -> Option<RatPoly> {
        if self.context.degree() == 1 {
            self.denominator.to_rat()
        } else {
            None
        }
    }

    pub fn leading_coeff(&self) -> ModElement {
        self.denominator.coeff(self.r)
    }

    /// `prod (y - lc(p))` over the represented solutions.
    pub fn lc_charpoly(&self) -> RatPoly {
        self.leading_coeff().charpoly()
    }

    fn sort_key(&self, o: &Self) -> Ordering {
        self.r
            .cmp(&o.r)
            .then(self.context.degree().cmp(&o.context.degree()))
            .then_with(|| {
                match (
                    self.leading_coeff().as_rational(),
                    o.leading_coeff().as_rational(),
                ) {
                    (Some(a), Some(b)) if self.context.degree() == 1 => a.cmp(&b),
                    _ => self.context.modulus().cmp_canonical(o.context.modulus()),
                }
            })
    }
}

/// How much the returned list can be trusted to be every solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    /// Nondegeneracy holds: every leading root was decided by the unique series.
    Certified,
    /// Nondegeneracy fails, but no branch stopped at a resonance before `c_r`.
    Exhaustive,
    /// Some branch was undetermined; the divisor oracle supplied the answer.
    OracleBackstop,
    /// Some branch was undetermined and the oracle does not apply.
    Incomplete,
}

/// What happened to one leading-root branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchOutcome {
    Accepted,
    NotRational {
        index: usize,
    },
    FailedDivisibility,
    FailedVerification,
    /// Resonance at `n` with `H_n != 0`: no solution here.
    Obstructed {
        n: usize,
    },
    /// Resonance at `n` with `H_n = 0`: passed over when `n > r`, undecided otherwise.
    Resonant {
        n: usize,
    },
    /// Resonance at `n <= r` with `c_n` left free; `found` solutions share this leading root.
    Continued {
        n: usize,
        found: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchReport {
    pub context: Ctx,
    pub outcome: BranchOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub profile: EdgeProfile,
    pub series_order: usize,
    pub branches: Vec<BranchReport>,
    pub count_complex: usize,
    pub count_real: usize,
}

impl DegreeReport {
    pub fn undetermined(&self) -> bool {
        self.branches
            .iter()
            .any(|b| matches!(b.outcome, BranchOutcome::Resonant { n } if n <= self.profile.r))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleComparison {
    pub applicable: bool,
    /// Same solutions; in the backstop case, every series solution is among the oracle's.
    pub agree: Option<bool>,
    /// The oracle's list replaced an undecided series result.
    pub backstop: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub solutions: Vec<RationalSolution>,
    pub gamma: Vec<usize>,
    pub gamma_sol: Vec<usize>,
    pub count_complex: usize,
    pub count_real: usize,
    pub nd: NDVerdict,
    pub completeness: Completeness,
    pub degrees: Vec<DegreeReport>,
    pub oracle: Option<OracleComparison>,
}

impl SolutionSet {
    pub fn count(&self, mode: FieldMode) -> usize {
        match mode {
            FieldMode::Complex => self.count_complex,
            FieldMode::Real => self.count_real,
        }
    }

    /// Per realized degree, the product of the leading-coefficient polynomials.
    pub fn signature(&self) -> BTreeMap<usize, RatPoly> {
        signature_of(&self.solutions)
    }

    /// Rational denominators, for solutions in linear contexts.
    pub fn rational_denominators(&self) -> Vec<RatPoly> {
        self.solutions
            .iter()
            .filter_map(RationalSolution::rational_denominator)
            .collect()
    }

    /// Whether the solution `1/p` is represented, up to the choice of context.
    pub fn contains(&self, p: &RatPoly) -> bool {
        self.solutions.iter().any(|s| {
            let Some(d) = p.deg() else { return false };
            if d != s.r {
                return false;
            }
            // p is a specialization of s when lc(p) is a root of the lc charpoly and the
            // coefficient differences vanish on that branch
            let lc = p.lc();
            if !s.lc_charpoly().eval(&lc).is_zero() {
                return false;
            }
            let target = CtxPoly::from_rat(&s.context, p);
            let diff = s.denominator.sub(&target);
            let branches = explore(s.context.clone(), |c| diff.lift_to(c).zero_test());
            branches.iter().any(|(_, z)| *z)
        })
    }
}

/// Equal counts and signatures, and every rational denominator on one side
/// is a solution found on the other.
fn same_solutions(a: &[RationalSolution], b: &[RationalSolution]) -> bool {
    let count = |v: &[RationalSolution]| v.iter().map(RationalSolution::count).sum::<usize>();
    count(a) == count(b) && signature_of(a) == signature_of(b) && covers(a, b) && covers(b, a)
}

/// Every rational denominator of `part` appears in `all`, and every
/// leading-coefficient factor of `part` divides that of `all`.
fn covers(all: &[RationalSolution], part: &[RationalSolution]) -> bool {
    let rational = |v: &[RationalSolution]| {
        v.iter()
            .filter_map(RationalSolution::rational_denominator)
            .collect::<Vec<_>>()
    };
    let whole = rational(all);
    let sig = signature_of(all);
    rational(part).iter().all(|p| whole.contains(p))
        && signature_of(part)
            .iter()
            .all(|(r, f)| sig.get(r).is_some_and(|g| f.divides(g) == Ok(true)))
}

pub fn signature_of(sols: &[RationalSolution]) -> BTreeMap<usize, RatPoly> {
    let mut sig: BTreeMap<usize, RatPoly> = BTreeMap::new();
    for s in sols {
        let e = sig.entry(s.r).or_insert_with(RatPoly::one);
        *e = &*e * &s.lc_charpoly();
    }
    sig
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub mode: FieldMode,
    /// Last series index computed; at least `2r + 1`. Defaults to `2r + 2`.
    pub max_series_order: Option<usize>,
    /// Always run the divisor oracle and compare.
    pub oracle: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            mode: FieldMode::Real,
            max_series_order: None,
            oracle: false,
        }
    }
}

/// `p^(n3-2) p' + A3 + A2 p^(n3-n2) + A1 p^(n3-n1)`.
pub fn identity_residual(eq: &AbelEquation, p: &CtxPoly) -> CtxPoly {
    let ctx = p.context();
    let n3 = eq.n(3);
    let k = n3 - eq.n(2);
    let m = n3 - eq.n(1);
    let pk = p.pow(k);
    let pm = if m.is_multiple_of(k) { pk.pow(m / k) } else { p.pow(m) };
    let a = |i| CtxPoly::from_rat(ctx, eq.coeff(i));
    let pn = if (n3 - 2).is_multiple_of(k) {
        pk.pow((n3 - 2) / k)
    } else {
        p.pow(n3 - 2)
    };
    pn.mul(&p.derivative())
        .add(&a(3))
        .add(&a(2).mul(&pk))
        .add(&a(1).mul(&pm))
}

fn verify_in(eq: &AbelEquation, p: &CtxPoly) -> Result<bool, SplitEvent> {
    identity_residual(eq, p).zero_test()
}

/// Exact check of the solution identity, one verdict per branch of the context.
pub fn verify_solution(eq: &AbelEquation, p: &CtxPoly) -> Vec<(Ctx, bool)> {
    explore(p.context().clone(), |c| verify_in(eq, &p.lift_to(c)))
}

/// Exact check for a rational denominator.
pub fn verify_rational(eq: &AbelEquation, p: &RatPoly) -> bool {
    if p.deg().unwrap_or(0) == 0 {
        return false;
    }
    let ctx = AlgebraicContext::rational(&Rational::zero(), "q");
    identity_residual(eq, &CtxPoly::from_rat(&ctx, p)).is_zero()
}

/// `p^k | A3` in the context; the leading coefficient of `p` must be a unit.
fn divides_a3(eq: &AbelEquation, p: &CtxPoly) -> Result<bool, SplitEvent> {
    let ctx = p.context();
    let k = eq.n(3) - eq.n(2);
    let pk = p.pow(k);
    let mut rem = CtxPoly::from_rat(ctx, eq.coeff(3));
    let d = pk.deg().expect("nonconstant");
    let inv = match pk.coeff(d).invert() {
        Ok(v) => v,
        Err(InvertError::Split(s)) => return Err(s),
        Err(_) => return Ok(false),
    };
    while let Some(rd) = rem.deg() {
        if rd < d {
            break;
        }
        let q = rem.coeff(rd).mul(&inv).expect("same context");
        let shift = CtxPoly::new(ctx, {
            let mut v = vec![RatPoly::zero(); rd - d];
            v.push(q.value().clone());
            v
        });
        rem = rem.sub(&shift.mul(&pk));
    }
    rem.zero_test()
}

type Found = Vec<(Ctx, CtxPoly)>;

fn decide(
    eq: &AbelEquation,
    profile: &EdgeProfile,
    ctx: &Ctx,
    m: usize,
) -> Result<(BranchOutcome, Found), SplitEvent> {
    let r = profile.r;
    let pre = series_in_context(eq, profile, ctx, branch_order(profile, ctx, m))?;
    match pre.resonant_at {
        Some(n) if pre.obstructed => return Ok((BranchOutcome::Obstructed { n }, vec![])),
        Some(n) if n <= r => return Ok(continue_past_resonance(eq, profile, ctx, &pre.coeffs, n)),
        _ => {}
    }
    let p = match reconstruct_in(ctx, &pre.coeffs, r)? {
        Reconstruction::NotRational { index } => {
            return Ok((BranchOutcome::NotRational { index }, vec![]))
        }
        Reconstruction::Candidate(p) => p,
    };
    if !divides_a3(eq, &p)? {
        return Ok((BranchOutcome::FailedDivisibility, vec![]));
    }
    if !verify_in(eq, &p)? {
        return Ok((BranchOutcome::FailedVerification, vec![]));
    }
    Ok((BranchOutcome::Accepted, vec![(ctx.clone(), p)]))
}

/// Polynomials in `t` with coefficients in `Q[u]`, low degree first.
mod tpoly {
    use crate::exactalg::RatPoly;

    pub fn trim(mut a: Vec<RatPoly>) -> Vec<RatPoly> {
        while a.last().is_some_and(RatPoly::is_zero) {
            a.pop();
        }
        a
    }

    pub fn add(a: &[RatPoly], b: &[RatPoly]) -> Vec<RatPoly> {
        let n = a.len().max(b.len());
        let z = RatPoly::zero();
        trim(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(a: &[RatPoly], b: &[RatPoly]) -> Vec<RatPoly> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![RatPoly::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        trim(out)
    }

    pub fn pow(a: &[RatPoly], e: usize) -> Vec<RatPoly> {
        (0..e).fold(vec![RatPoly::one()], |acc, _| mul(&acc, a))
    }

    pub fn derivative(a: &[RatPoly]) -> Vec<RatPoly> {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&crate::exactalg::int(i as i64)))
                .collect(),
        )
    }

    pub fn constant_coeffs(p: &RatPoly) -> Vec<RatPoly> {
        trim(
            p.coeffs()
                .iter()
                .map(|c| RatPoly::constant(c.clone()))
                .collect(),
        )
    }
}

/// A rational leading root whose series meets an unobstructed resonance at
/// `n <= r`. With `∂` in the tie, `c_n = u` is free, every later coefficient is
/// a polynomial in `u`, and the solution identity cuts out the admissible `u`.
/// Without `∂` the same works when only the constant term of `p` is unknown.
fn continue_past_resonance(
    eq: &AbelEquation,
    profile: &EdgeProfile,
    ctx: &Ctx,
    prefix: &[RatPoly],
    n: usize,
) -> (BranchOutcome, Found) {
    let undecided = (BranchOutcome::Resonant { n }, vec![]);
    let Some(rho) = ctx.rational_root() else {
        return undecided;
    };
    let r = profile.r;
    let b = if profile.has_partial() {
        let Some(coeffs) = series_in_parameter(eq, profile, &rho, n, r) else {
            return undecided;
        };
        reciprocal_in_parameter(&coeffs)
    } else if n == r {
        let mut b = reciprocal_in_parameter(
            &prefix
                .iter()
                .map(|c| RatPoly::constant(c.coeff(0)))
                .collect::<Vec<_>>(),
        );
        b.push(RatPoly::x());
        b
    } else {
        return undecided;
    };
    let p: Vec<RatPoly> = (0..=r).map(|i| b[r - i].clone()).collect();
    match solve_in_parameter(eq, &p, ctx.label()) {
        Some(found) => (
            BranchOutcome::Continued {
                n,
                found: found.iter().map(|(c, _)| c.degree()).sum(),
            },
            found,
        ),
        None => undecided,
    }
}

/// Values of `u` for which `p(t; u)` satisfies the identity, one context per
/// rational value and one for the rest; `None` if every `u` works.
fn solve_in_parameter(eq: &AbelEquation, p: &[RatPoly], label: &str) -> Option<Found> {
    let n3 = eq.n(3);
    let k = n3 - eq.n(2);
    let m = n3 - eq.n(1);
    let a = |i| tpoly::constant_coeffs(eq.coeff(i));
    let mut e = tpoly::mul(&tpoly::pow(p, n3 - 2), &tpoly::derivative(p));
    e = tpoly::add(&e, &a(3));
    e = tpoly::add(&e, &tpoly::mul(&a(2), &tpoly::pow(p, k)));
    e = tpoly::add(&e, &tpoly::mul(&a(1), &tpoly::pow(p, m)));
    let mut g = RatPoly::zero();
    for c in e.iter().filter(|c| !c.is_zero()) {
        g = if g.is_zero() {
            c.monic()
        } else {
            poly_gcd(&g, c).expect("nonzero")
        };
    }
    if g.is_zero() {
        return None;
    }
    let mut found = Vec::new();
    if g.is_constant() {
        return Some(found);
    }
    let g = squarefree_part(&g).expect("nonzero");
    let mut rest = g.clone();
    let mut contexts = Vec::new();
    for (idx, u) in rational_roots(&g).expect("nonzero").into_iter().enumerate() {
        rest = rest
            .exact_div(&RatPoly::from_coeffs(vec![-u.clone(), int(1)]))
            .expect("nonzero")
            .expect("root");
        contexts.push(AlgebraicContext::rational(&u, format!("{label}.u{idx}")));
    }
    if !rest.is_constant() {
        contexts.push(AlgebraicContext::new(&rest, format!("{label}.u")).expect("squarefree"));
    }
    for kctx in contexts {
        let den = CtxPoly::new(&kctx, p.iter().map(|c| kctx.reduce(c)).collect());
        for (c, ok) in verify_solution(eq, &den) {
            assert!(ok, "parameter value does not satisfy the identity");
            found.push((c.clone(), den.lift_to(&c)));
        }
    }
    Some(found)
}

/// Farthest resonance the series is stretched to reach.
const RESONANCE_REACH: usize = 64;

/// Default window `2r + 2`, or the requested order.
fn series_order(profile: &EdgeProfile, requested: Option<usize>) -> usize {
    requested
        .unwrap_or(2 * profile.r + 2)
        .max(2 * profile.r + 1)
}

/// For a rational root with `P_r'(C) = -N`, the window is stretched to `N`
/// so that the resonance is observed.
fn branch_order(profile: &EdgeProfile, ctx: &Ctx, base: usize) -> usize {
    let Some(c) = ctx.rational_root().filter(|_| profile.has_partial()) else {
        return base;
    };
    let d = -profile.edge_poly.derivative().eval(&c);
    match d.is_integer().then(|| usize::try_from(d.to_integer())) {
        Some(Ok(n)) if n <= RESONANCE_REACH => base.max(n),
        _ => base,
    }
}

fn solve_degree(
    eq: &AbelEquation,
    profile: &EdgeProfile,
    opts: &SolveOptions,
) -> (DegreeReport, Vec<RationalSolution>) {
    let m = series_order(profile, opts.max_series_order);
    let mut branches = Vec::new();
    let mut sols = Vec::new();
    for root in leading_roots(profile, opts.mode) {
        for (ctx, (outcome, found)) in explore(root.context.clone(), |c| decide(eq, profile, c, m))
        {
            for (c, p) in found {
                sols.push(RationalSolution::new(profile.r, c, p));
            }
            branches.push(BranchReport {
                context: ctx,
                outcome,
            });
        }
    }
    let count_complex = sols.iter().map(RationalSolution::count).sum();
    let count_real = sols.iter().map(RationalSolution::real_embeddings).sum();
    (
        DegreeReport {
            profile: profile.clone(),
            series_order: m,
            branches,
            count_complex,
            count_real,
        },
        sols,
    )
}

pub fn solve(eq: &AbelEquation, mode: FieldMode) -> SolutionSet {
    solve_with(
        eq,
        &SolveOptions {
            mode,
            ..SolveOptions::default()
        },
    )
}

pub fn solve_with(eq: &AbelEquation, opts: &SolveOptions) -> SolutionSet {
    let gamma = candidate_degrees(eq).gamma;
    let nd = check_nd(eq, opts.mode);
    let mut degrees = Vec::new();
    let mut solutions = Vec::new();
    for profile in edge_profiles(eq) {
        let (rep, sols) = solve_degree(eq, &profile, opts);
        degrees.push(rep);
        solutions.extend(sols);
    }
    let undetermined = degrees.iter().any(DegreeReport::undetermined);
    let mut completeness = if undetermined {
        Completeness::Incomplete
    } else if nd.holds {
        Completeness::Certified
    } else {
        Completeness::Exhaustive
    };
    let mut oracle = None;
    if opts.oracle || undetermined {
        match divisor_oracle(eq) {
            Ok(found) => {
                let agree = if undetermined {
                    covers(&found, &solutions)
                } else {
                    same_solutions(&found, &solutions)
                };
                if undetermined {
                    completeness = Completeness::OracleBackstop;
                    solutions = found;
                }
                oracle = Some(OracleComparison {
                    applicable: true,
                    agree: Some(agree),
                    backstop: undetermined,
                });
            }
            Err(OracleInapplicable) => {
                oracle = Some(OracleComparison {
                    applicable: false,
                    agree: None,
                    backstop: false,
                })
            }
        }
    }
    solutions.sort_by(RationalSolution::sort_key);
    let mut gamma_sol: Vec<usize> = solutions.iter().map(|s| s.r).collect();
    gamma_sol.dedup();
    let count_complex = solutions.iter().map(RationalSolution::count).sum();
    let count_real = solutions
        .iter()
        .map(RationalSolution::real_embeddings)
        .sum();
    let set = SolutionSet {
        solutions,
        gamma,
        gamma_sol,
        count_complex,
        count_real,
        nd,
        completeness,
        degrees,
        oracle,
    };
    if set.nd.holds {
        assert_structural_claims(&set);
    }
    set
}

/// Consequences of the theory that hold under nondegeneracy; a failure is a bug.
fn assert_structural_claims(set: &SolutionSet) {
    for rep in &set.degrees {
        let tie: TieSet = rep.profile.tie;
        assert!(
            rep.count_complex <= rep.profile.nonzero_root_bound(),
            "complex count above nonzero root count at r = {}",
            rep.profile.r
        );
        assert!(
            rep.count_real <= 2 * (tie.len() - 1),
            "real count above 2(|T|-1) at r = {}",
            rep.profile.r
        );
    }
    for (r, sig) in set.signature() {
        assert!(
            squarefree_part(&sig).expect("nonzero").deg() == sig.deg(),
            "two solutions of degree {r} share a leading coefficient"
        );
    }
    if set.count_complex >= 3 {
        assert!(set.gamma_sol.len() <= 3, "more than three realized degrees");
    }
}

/// Marker for inputs where the divisor oracle cannot enumerate every candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleInapplicable;

/// Rational roots with multiplicities, when `h` splits over the rationals.
fn rational_linear_split(h: &RatPoly) -> Option<Vec<(Rational, usize)>> {
    let mut rest = h.clone();
    let mut out = Vec::new();
    for rho in rational_roots(h).expect("nonzero") {
        let lin = RatPoly::from_coeffs(vec![-rho.clone(), int(1)]);
        let mut mult = 0;
        while let Some(q) = rest.exact_div(&lin).expect("nonzero") {
            rest = q;
            mult += 1;
        }
        out.push((rho, mult));
    }
    rest.is_constant().then_some(out)
}

fn monic_divisors(factors: &[(Rational, usize)], degree: usize) -> Vec<RatPoly> {
    let mut out = Vec::new();
    let mut exps = vec![0usize; factors.len()];
    fn rec(
        i: usize,
        left: usize,
        f: &[(Rational, usize)],
        exps: &mut Vec<usize>,
        out: &mut Vec<RatPoly>,
    ) {
        if i == f.len() {
            if left == 0 {
                let p = f
                    .iter()
                    .zip(exps.iter())
                    .fold(RatPoly::one(), |acc, ((rho, _), e)| {
                        &acc * &RatPoly::from_coeffs(vec![-rho.clone(), int(1)]).pow(*e)
                    });
                out.push(p);
            }
            return;
        }
        for e in 0..=f[i].1.min(left) {
            exps[i] = e;
            rec(i + 1, left - e, f, exps, out);
        }
        exps[i] = 0;
    }
    rec(0, degree, factors, &mut exps, &mut out);
    out
}

/// Solutions `p = beta d` for a fixed monic shape `d`: the t-coefficients of the
/// identity are polynomials in `beta`, and their gcd holds every admissible `beta`.
fn beta_polynomial(eq: &AbelEquation, d: &RatPoly) -> RatPoly {
    let n3 = eq.n(3);
    let k = n3 - eq.n(2);
    let m = n3 - eq.n(1);
    let u = &d.pow(n3 - 2) * &d.derivative();
    let v = eq.coeff(2) * &d.pow(k);
    let w = eq.coeff(1) * &d.pow(m);
    let a3 = eq.coeff(3);
    let top = [&u, &v, &w, a3]
        .iter()
        .filter_map(|p| p.deg())
        .max()
        .unwrap_or(0);
    let mut g = RatPoly::zero();
    for j in 0..=top {
        let mut c = vec![Rational::zero(); n3];
        c[n3 - 1] += u.coeff(j);
        c[k] += v.coeff(j);
        c[m] += w.coeff(j);
        c[0] += a3.coeff(j);
        let pj = RatPoly::from_coeffs(c);
        if pj.is_zero() {
            continue;
        }
        g = if g.is_zero() {
            pj.monic()
        } else {
            poly_gcd(&g, &pj).expect("nonzero")
        };
        if g.is_one() {
            break;
        }
    }
    g
}

/// Independent enumeration through `p^(n3-n2) | A3`, valid when the power part
/// of `A3` splits into rational linear factors.
pub fn divisor_oracle(eq: &AbelEquation) -> Result<Vec<RationalSolution>, OracleInapplicable> {
    let k = eq.n(3) - eq.n(2);
    let h = power_part(eq.coeff(3), k).expect("nonzero");
    let factors = rational_linear_split(&h).ok_or(OracleInapplicable)?;
    let mut out = Vec::new();
    for r in candidate_degrees(eq).gamma {
        for (di, d) in monic_divisors(&factors, r).into_iter().enumerate() {
            let g = beta_polynomial(eq, &d);
            if g.is_constant() {
                continue;
            }
            let g = squarefree_part(&g.shift_down(g.multiplicity_at_zero())).expect("nonzero");
            if g.is_constant() {
                continue;
            }
            let mut rest = g.clone();
            let mut idx = 0;
            for beta in rational_roots(&g).expect("nonzero") {
                rest = rest
                    .exact_div(&RatPoly::from_coeffs(vec![-beta.clone(), int(1)]))
                    .expect("nonzero")
                    .expect("root");
                let ctx = AlgebraicContext::rational(&beta, format!("o{r}.{di}.{idx}"));
                idx += 1;
                let p = CtxPoly::from_rat(&ctx, &d.scale(&beta));
                out.push(RationalSolution::new(r, ctx, p));
            }
            if !rest.is_constant() {
                let ctx =
                    AlgebraicContext::new(&rest, format!("o{r}.{di}.{idx}")).expect("squarefree");
                let p = CtxPoly::from_rat(&ctx, &d).scale(&ctx.gen());
                out.push(RationalSolution::new(r, ctx, p));
            }
        }
    }
    out.sort_by(RationalSolution::sort_key);
    Ok(out)
}

/// Scalars `alpha` with `alpha x` again a solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingOrbit {
    /// Rational members, ascending; always contains 1.
    pub rational: Vec<Rational>,
    /// Members found as elements of the solution's context.
    pub algebraic: Vec<ModElement>,
    /// The part of the orbit polynomial without rational roots.
    pub residual: RatPoly,
}

impl ScalingOrbit {
    pub fn len(&self) -> usize {
        self.rational.len() + self.algebraic.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Members of the orbit of `sol` among the rationals and the context of `sol`.
pub fn scaling_orbit(eq: &AbelEquation, sol: &RationalSolution) -> ScalingOrbit {
    let ctx = &sol.context;
    let n = eq.exponents();
    let k = n[2] - n[1];
    let m = n[2] - n[0];
    let p = &sol.denominator;
    let b2 = CtxPoly::from_rat(ctx, eq.coeff(2)).mul(&p.pow(k));
    let b1 = CtxPoly::from_rat(ctx, eq.coeff(1)).mul(&p.pow(m));
    let a3 = eq.coeff(3);
    let top = [b2.deg(), b1.deg(), a3.deg()]
        .into_iter()
        .flatten()
        .max()
        .unwrap_or(0);
    // (alpha^(n3-1) - 1) A3 + (alpha^(n2-1) - 1) A2 p^k + (alpha^(n1-1) - 1) A1 p^m, expanded over the basis
    let mut g = RatPoly::zero();
    for j in 0..=top {
        for basis in 0..ctx.degree() {
            let mut c = vec![Rational::zero(); n[2]];
            let x3 = if basis == 0 {
                a3.coeff(j)
            } else {
                Rational::zero()
            };
            let x2 = b2.coeff(j).value().coeff(basis);
            let x1 = b1.coeff(j).value().coeff(basis);
            c[n[2] - 1] += &x3;
            c[n[1] - 1] += &x2;
            c[n[0] - 1] += &x1;
            c[0] -= x3 + x2 + x1;
            let pj = RatPoly::from_coeffs(c);
            if !pj.is_zero() {
                g = if g.is_zero() {
                    pj.monic()
                } else {
                    poly_gcd(&g, &pj).expect("nonzero")
                };
            }
        }
    }
    let g = squarefree_part(&g.shift_down(g.multiplicity_at_zero())).expect("nonzero");
    let rational = rational_roots(&g).expect("nonzero");
    let mut residual = g.clone();
    for a in &rational {
        residual = residual
            .exact_div(&RatPoly::from_coeffs(vec![-a.clone(), int(1)]))
            .expect("nonzero")
            .expect("root");
    }
    let mut algebraic = Vec::new();
    if ctx.degree() > 1 {
        if let Ok(profile) = edge_profile(eq, sol.r) {
            let inv_c = ctx.gen().invert().ok();
            for rho in rational_roots(&profile.reduced).expect("nonzero") {
                let Some(inv_c) = &inv_c else { break };
                let alpha = inv_c.mul(&ctx.constant(&rho)).expect("same context");
                let scaled = p.scale(&alpha.invert().expect("nonzero root ratio"));
                if verify_in(eq, &scaled) == Ok(true) {
                    algebraic.push(alpha);
                }
            }
        }
    }
    let orbit = ScalingOrbit {
        rational,
        algebraic,
        residual,
    };
    assert!(orbit.len() < n[2], "scaling orbit larger than n3 - 1");
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::fixtures::five_solution_equation;

    #[test]
    fn five_solutions_recovered() {
        let eq = five_solution_equation();
        let set = solve(&eq, FieldMode::Real);
        assert_eq!(set.count_real, 5);
        assert_eq!(set.count_complex, 5);
        assert_eq!(set.gamma_sol, vec![2]);
        assert_eq!(set.completeness, Completeness::Certified);
        let dens = set.rational_denominators();
        assert_eq!(
            dens,
            vec![
                RatPoly::monomial(rat(-1, 1), 2),
                RatPoly::monomial(rat(-1, 2), 2),
                RatPoly::monomial(rat(2, 3), 2),
            ]
        );
        let quad = set.solutions.iter().find(|s| s.count() == 2).unwrap();
        assert_eq!(quad.real_embeddings(), 2);
        assert_eq!(
            quad.context.modulus(),
            &RatPoly::from_fracs(&[(-1, 2), (-3, 2), (1, 1)])
        );
    }

    #[test]
    fn verification_examples() {
        let eq = five_solution_equation();
        assert!(verify_rational(&eq, &RatPoly::monomial(rat(-1, 2), 2)));
        assert!(!verify_rational(&eq, &RatPoly::monomial(int(1), 2)));
    }

    #[test]
    fn empty_candidate_set() {
        let eq =
            AbelEquation::new([2, 3, 4], [RatPoly::one(), RatPoly::one(), RatPoly::one()]).unwrap();
        let set = solve(&eq, FieldMode::Complex);
        assert!(set.solutions.is_empty() && set.gamma.is_empty());
    }

    #[test]
    fn oracle_agrees_on_five_solution_equation() {
        let eq = five_solution_equation();
        let found = divisor_oracle(&eq).unwrap();
        assert_eq!(
            signature_of(&found),
            solve(&eq, FieldMode::Real).signature()
        );
        let set = solve_with(
            &eq,
            &SolveOptions {
                oracle: true,
                ..SolveOptions::default()
            },
        );
        assert_eq!(
            set.oracle,
            Some(OracleComparison {
                applicable: true,
                agree: Some(true),
                backstop: false
            })
        );
    }

    #[test]
    fn oracle_applicability() {
        // A3 squarefree with n3 - n2 = 2: h = 1, nothing to enumerate
        let eq = AbelEquation::new(
            [2, 3, 5],
            [
                RatPoly::one(),
                RatPoly::one(),
                RatPoly::from_ints(&[-1, 0, 0, 1]),
            ],
        )
        .unwrap();
        assert_eq!(divisor_oracle(&eq).map(|v| v.len()), Ok(0));
        let a3 = RatPoly::from_ints(&[1, 0, 1]).pow(2);
        let eq = AbelEquation::new([2, 3, 5], [RatPoly::one(), RatPoly::one(), a3]).unwrap();
        assert_eq!(divisor_oracle(&eq), Err(OracleInapplicable));
    }

    #[test]
    fn scaling_orbit_of_minus_one_over_t_squared() {
        let eq = five_solution_equation();
        let set = solve(&eq, FieldMode::Real);
        let sol = set
            .solutions
            .iter()
            .find(|s| s.rational_denominator() == Some(RatPoly::monomial(int(-1), 2)))
            .unwrap();
        let orbit = scaling_orbit(&eq, sol);
        assert_eq!(orbit.rational, vec![rat(-3, 2), int(1), int(2)]);
        assert_eq!(orbit.residual.deg(), Some(2));
        assert!(set.contains(&RatPoly::monomial(rat(-1, 2), 2)));
    }

    #[test]
    fn scaling_orbit_in_quadratic_context() {
        let eq = five_solution_equation();
        let set = solve(&eq, FieldMode::Real);
        let sol = set.solutions.iter().find(|s| s.count() == 2).unwrap();
        let orbit = scaling_orbit(&eq, sol);
        // alpha C must be a root; the three rational roots give three context members
        assert_eq!(orbit.rational, vec![int(1)]);
        assert_eq!(orbit.algebraic.len(), 3);
    }

    #[test]
    fn binomial_tie_can_carry_a_solution_without_nd2() {
        // x' = -t^3 x^5 - t x^4 + x^3 has tie {3,∂} at r = 1 and the solution 1/t
        let eq = AbelEquation::new(
            [3, 4, 5],
            [
                RatPoly::from_ints(&[1]),
                RatPoly::from_ints(&[0, -1]),
                RatPoly::monomial(rat(-1, 1), 3),
            ],
        )
        .unwrap();
        let prof = edge_profile(&eq, 1).unwrap();
        assert_eq!(prof.tie.len(), 2);
        assert!(prof.has_partial());
        let set = solve(&eq, FieldMode::Complex);
        assert!(!set.nd.holds);
        assert!(set.contains(&RatPoly::from_ints(&[0, 1])));
    }

    #[test]
    fn contains_checks_specializations() {
        let eq = five_solution_equation();
        let set = solve(&eq, FieldMode::Real);
        assert!(set.contains(&RatPoly::monomial(rat(2, 3), 2)));
        assert!(!set.contains(&RatPoly::monomial(rat(1, 1), 2)));
    }
}
