//! Leading coefficients, the Laurent-series recursion at infinity, and
//! reconstruction of a candidate denominator from a truncated series.
//!
//! A solution of degree `r` is written `x = t^-r X(s)` with `s = 1/t` and
//! `X = c_0 + c_1 s + ...`. Then `F(x) = x' - sum A_i x^n_i = t^-O G(s)` and the
//! coefficient of `s^N` in `G` is `H_N - (P_r'(C) + N [∂ in T]) c_N`.

use thiserror::Error;

use crate::diagram::{AbelEquation, EdgeProfile, Term};
use crate::exactalg::{
    int, isolate_real_roots, rational_roots, squarefree_decompose, AlgebraicContext, Ctx, CtxPoly,
    InvertError, ModElement, RatPoly, Rational, RootInterval, SplitEvent,
};
use crate::ndcheck::FieldMode;

/// A squarefree factor of `P~_r` whose roots are candidate values of `C = 1/lc(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingRoot {
    pub context: Ctx,
    /// Multiplicity of these roots in `P~_r`.
    pub multiplicity: usize,
    /// Isolating intervals of the real roots of the modulus.
    pub real_roots: Vec<RootInterval>,
}

impl LeadingRoot {
    pub fn element(&self) -> ModElement {
        self.context.gen()
    }

    pub fn real_embeddings(&self) -> usize {
        self.real_roots.len()
    }

    /// Flagged in real mode when no root is real.
    pub fn has_no_real_embedding(&self) -> bool {
        self.real_roots.is_empty()
    }
}

/// Splits `P~_r` into contexts: each rational root gets its own linear
/// context, the remaining part of each squarefree factor one more.
pub fn leading_roots(profile: &EdgeProfile, _mode: FieldMode) -> Vec<LeadingRoot> {
    let mut out = Vec::new();
    if profile.reduced.is_constant() {
        return out;
    }
    let sq = squarefree_decompose(&profile.reduced).expect("nonzero");
    let mut idx = 0;
    for (f, mult) in &sq.parts {
        let mut rest = f.clone();
        for rho in rational_roots(f).expect("nonzero") {
            let lin = RatPoly::from_coeffs(vec![-rho.clone(), int(1)]);
            rest = rest
                .exact_div(&lin)
                .expect("nonzero")
                .expect("root divides");
            let ctx = AlgebraicContext::rational(&rho, format!("r{}.{idx}", profile.r));
            idx += 1;
            out.push(LeadingRoot {
                context: ctx,
                multiplicity: *mult,
                real_roots: vec![RootInterval {
                    lo: rho.clone(),
                    hi: rho,
                }],
            });
        }
        if !rest.is_constant() {
            let ctx = AlgebraicContext::new(&rest, format!("r{}.{idx}", profile.r))
                .expect("squarefree factor");
            idx += 1;
            let real_roots = isolate_real_roots(ctx.modulus()).expect("squarefree");
            out.push(LeadingRoot {
                context: ctx,
                multiplicity: *mult,
                real_roots,
            });
        }
    }
    out
}

/// A truncated Laurent series `c_0 t^-r + c_1 t^(-r-1) + ...` in one context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPrefix {
    pub r: usize,
    pub context: Ctx,
    /// Residues of `c_0, c_1, ...`; stops before a resonance.
    pub coeffs: Vec<RatPoly>,
    pub resonant_at: Option<usize>,
    /// At a resonance, whether `H_N` is nonzero, which rules out any solution.
    pub obstructed: bool,
}

impl LaurentPrefix {
    pub fn coefficient(&self, i: usize) -> Option<ModElement> {
        self.coeffs.get(i).map(|c| self.context.elem(c))
    }
}

/// Coefficient arithmetic for the recursion: a context, or polynomials in a
/// free parameter when the series is continued past a resonance.
trait SeriesRing {
    fn reduce(&self, a: &RatPoly) -> RatPoly;
    fn invert(&self, a: &RatPoly) -> Result<RatPoly, SplitEvent>;
    fn zero_test(&self, a: &RatPoly) -> Result<bool, SplitEvent>;

    fn mul(&self, a: &RatPoly, b: &RatPoly) -> RatPoly {
        self.reduce(&(a * b))
    }

    fn pow(&self, a: &RatPoly, e: usize) -> RatPoly {
        (0..e).fold(RatPoly::one(), |acc, _| self.mul(&acc, a))
    }
}

impl SeriesRing for Ctx {
    fn reduce(&self, a: &RatPoly) -> RatPoly {
        AlgebraicContext::reduce(self, a)
    }

    fn invert(&self, a: &RatPoly) -> Result<RatPoly, SplitEvent> {
        match self.invert_raw(a) {
            Ok(v) => Ok(v),
            Err(InvertError::Split(s)) => Err(s),
            Err(e) => unreachable!("inverting a unit: {e:?}"),
        }
    }

    fn zero_test(&self, a: &RatPoly) -> Result<bool, SplitEvent> {
        AlgebraicContext::zero_test(self, a)
    }
}

/// `Q[u]`; only nonzero constants are ever inverted.
struct FreeParameter;

impl SeriesRing for FreeParameter {
    fn reduce(&self, a: &RatPoly) -> RatPoly {
        a.clone()
    }

    fn invert(&self, a: &RatPoly) -> Result<RatPoly, SplitEvent> {
        assert!(
            a.is_constant() && !a.is_zero(),
            "only constants are inverted in Q[u]"
        );
        Ok(RatPoly::constant(a.coeff(0).recip()))
    }

    fn zero_test(&self, a: &RatPoly) -> Result<bool, SplitEvent> {
        Ok(a.is_zero())
    }
}

struct Recursion {
    r: usize,
    /// `(delta_i, n_i, Ã_i)` for the three power terms.
    terms: Vec<(usize, usize, Vec<RatPoly>)>,
    delta_d: usize,
}

impl Recursion {
    fn new(eq: &AbelEquation, profile: &EdgeProfile) -> Self {
        let o = profile.order;
        let terms = [Term::Three, Term::Two, Term::One]
            .into_iter()
            .map(|t| {
                let i = t.index();
                let a = eq.a(i);
                let delta = (profile.phi[3 - i] - o) as usize;
                let tilde = (0..=a)
                    .map(|j| RatPoly::constant(eq.coeff(i).coeff(a - j)))
                    .collect();
                (delta, eq.n(i), tilde)
            })
            .collect();
        let delta_d = (profile.phi[3] - o) as usize;
        Recursion {
            r: profile.r,
            terms,
            delta_d,
        }
    }
}

fn sc(k: i64) -> RatPoly {
    RatPoly::constant(int(k))
}

struct RawSeries {
    coeffs: Vec<RatPoly>,
    resonant_at: Option<usize>,
    obstructed: bool,
}

/// The recursion from `c_0`; at the resonance index in `forced`, the given value
/// is used for `c_N` when `H_N` vanishes.
fn run_series<R: SeriesRing>(
    eq: &AbelEquation,
    profile: &EdgeProfile,
    ring: &R,
    c0: RatPoly,
    forced: Option<(usize, RatPoly)>,
    m: usize,
) -> Result<RawSeries, SplitEvent> {
    let rec = Recursion::new(eq, profile);
    let inv_c0 = ring.invert(&c0)?;
    let mut c = vec![c0.clone()];
    // powers Y_i = X^n_i, coefficients up to the current index
    let mut ys: Vec<Vec<RatPoly>> = rec
        .terms
        .iter()
        .map(|(_, n, _)| vec![ring.pow(&c0, *n)])
        .collect();
    debug_assert!(
        g_coeff(&rec, ring, &c, &ys, 0).is_zero(),
        "leading balance must vanish"
    );
    // divisor base P_r'(C)
    let dp = eval_poly_at(&profile.edge_poly.derivative(), &c0, ring);
    let partial = profile.has_partial();
    for n in 1..=m {
        // provisional Y_i[n] with c_n = 0, by the J.C.P. Miller recurrence
        for (k, (_, ni, _)) in rec.terms.iter().enumerate() {
            let y = &ys[k];
            let mut acc = RatPoly::zero();
            for j in 1..n {
                let w = ((*ni as i64 + 1) * j as i64) - n as i64;
                if w == 0 || c[j].is_zero() {
                    continue;
                }
                acc = &acc + &ring.mul(&c[j], &y[n - j]).scale(&int(w));
            }
            let val = ring
                .mul(&acc, &inv_c0)
                .scale(&crate::exactalg::rat(1, n as i64));
            ys[k].push(val);
        }
        c.push(RatPoly::zero());
        let h = g_coeff(&rec, ring, &c, &ys, n);
        let div = if partial {
            &dp + &sc(n as i64)
        } else {
            dp.clone()
        };
        let cn = if ring.zero_test(&div)? {
            let obstructed = !ring.zero_test(&h)?;
            match &forced {
                Some((at, value)) if *at == n && !obstructed => value.clone(),
                _ => {
                    c.pop();
                    return Ok(RawSeries {
                        coeffs: c,
                        resonant_at: Some(n),
                        obstructed,
                    });
                }
            }
        } else {
            ring.mul(&h, &ring.invert(&div)?)
        };
        for (k, (_, ni, _)) in rec.terms.iter().enumerate() {
            let fix = ring
                .mul(&ring.pow(&c0, ni - 1), &cn)
                .scale(&int(*ni as i64));
            ys[k][n] = &ys[k][n] + &fix;
        }
        c[n] = cn;
    }
    Ok(RawSeries {
        coeffs: c,
        resonant_at: None,
        obstructed: false,
    })
}

/// Runs the recursion for `c_1..c_m` in one context; a zero divisor aborts with a split.
pub fn series_in_context(
    eq: &AbelEquation,
    profile: &EdgeProfile,
    ctx: &Ctx,
    m: usize,
) -> Result<LaurentPrefix, SplitEvent> {
    let c0 = SeriesRing::reduce(ctx, &RatPoly::x());
    let raw = run_series(eq, profile, ctx, c0, None, m)?;
    Ok(LaurentPrefix {
        r: profile.r,
        context: ctx.clone(),
        coeffs: raw.coeffs,
        resonant_at: raw.resonant_at,
        obstructed: raw.obstructed,
    })
}

/// Series for the rational leading root `c0` continued past an unobstructed
/// resonance at `n` with `c_n` set to `value`, computed in `ctx`.
pub fn series_with_free_coefficient(
    eq: &AbelEquation,
    profile: &EdgeProfile,
    ctx: &Ctx,
    c0: &Rational,
    n: usize,
    value: &RatPoly,
    m: usize,
) -> Result<Vec<RatPoly>, SplitEvent> {
    let raw = run_series(
        eq,
        profile,
        ctx,
        RatPoly::constant(c0.clone()),
        Some((n, value.clone())),
        m,
    )?;
    Ok(raw.coeffs)
}

/// The same continuation with `c_n = u` kept symbolic: coefficients in `Q[u]`.
pub fn series_in_parameter(
    eq: &AbelEquation,
    profile: &EdgeProfile,
    c0: &Rational,
    n: usize,
    m: usize,
) -> Option<Vec<RatPoly>> {
    let raw = run_series(
        eq,
        profile,
        &FreeParameter,
        RatPoly::constant(c0.clone()),
        Some((n, RatPoly::x())),
        m,
    )
    .ok()?;
    (raw.resonant_at.is_none()).then_some(raw.coeffs)
}

fn eval_poly_at<R: SeriesRing>(p: &RatPoly, x: &RatPoly, ring: &R) -> RatPoly {
    let mut acc = RatPoly::zero();
    for a in p.coeffs().iter().rev() {
        acc = &ring.mul(&acc, x) + &RatPoly::constant(a.clone());
    }
    acc
}

/// Coefficient of `s^n` in `G`, from the stored coefficients of `X` and its powers.
fn g_coeff<R: SeriesRing>(
    rec: &Recursion,
    ring: &R,
    c: &[RatPoly],
    ys: &[Vec<RatPoly>],
    n: usize,
) -> RatPoly {
    let mut total = RatPoly::zero();
    if n >= rec.delta_d {
        let m = n - rec.delta_d;
        total = &total - &c[m].scale(&int((rec.r + m) as i64));
    }
    for (k, (delta, _, tilde)) in rec.terms.iter().enumerate() {
        if n < *delta {
            continue;
        }
        let top = n - delta;
        for (j, a) in tilde.iter().enumerate().take(top + 1) {
            if a.is_zero() {
                continue;
            }
            total = &total - &ring.mul(a, &ys[k][top - j]);
        }
    }
    ring.reduce(&total)
}

/// `b_0..b_(len-1)` of `1/X` in `Q[u]`, where `c_0` is a nonzero constant.
pub fn reciprocal_in_parameter(coeffs: &[RatPoly]) -> Vec<RatPoly> {
    let inv = RatPoly::constant(coeffs[0].coeff(0).recip());
    let mut b = vec![inv.clone()];
    for k in 1..coeffs.len() {
        let mut acc = RatPoly::zero();
        for j in 1..=k {
            acc = &acc + &(&coeffs[j] * &b[k - j]);
        }
        b.push(&(-acc) * &inv);
    }
    b
}

/// Series for every branch of the root's context, up to `c_m`.
pub fn extend_series(
    eq: &AbelEquation,
    profile: &EdgeProfile,
    root: &LeadingRoot,
    m: usize,
) -> Vec<LaurentPrefix> {
    crate::exactalg::explore(root.context.clone(), |ctx| {
        series_in_context(eq, profile, ctx, m)
    })
    .into_iter()
    .map(|(_, p)| p)
    .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PuiseuxError {
    #[error("need at least {needed} series coefficients, have {have}")]
    InsufficientPrefix { needed: usize, have: usize },
    #[error("series stops at a resonance")]
    Resonant,
}

/// Result of inverting a series prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reconstruction {
    /// `p^` of degree `r` with leading coefficient `1/c_0`.
    Candidate(CtxPoly),
    /// A coefficient of a negative power of `t` in `1/x` is nonzero.
    NotRational { index: usize },
}

/// Inverts `c_0..c_k` in one context: `p^ = sum_{k<=r} b_k t^(r-k)` and the
/// coefficients `b_{r+1}..` must vanish.
pub fn reconstruct_in(
    ctx: &Ctx,
    coeffs: &[RatPoly],
    r: usize,
) -> Result<Reconstruction, SplitEvent> {
    let c0 = ctx.reduce(&coeffs[0]);
    let inv = match ctx.invert_raw(&c0) {
        Ok(v) => v,
        Err(InvertError::Split(s)) => return Err(s),
        Err(_) => unreachable!("leading coefficient is nonzero"),
    };
    let mut b = vec![inv.clone()];
    for k in 1..coeffs.len() {
        let mut acc = RatPoly::zero();
        for j in 1..=k {
            acc = &acc + &ctx.mul(&coeffs[j], &b[k - j]);
        }
        let bk = ctx.mul(&-acc, &inv);
        if k > r && !ctx.zero_test(&bk)? {
            return Ok(Reconstruction::NotRational { index: k });
        }
        b.push(bk);
    }
    let mut p = vec![RatPoly::zero(); r + 1];
    for (k, bk) in b.iter().enumerate().take(r + 1) {
        p[r - k] = bk.clone();
    }
    Ok(Reconstruction::Candidate(CtxPoly::new(ctx, p)))
}

/// Reconstruction for every branch of the prefix context.
pub fn reciprocal_candidate(
    prefix: &LaurentPrefix,
) -> Result<Vec<(Ctx, Reconstruction)>, PuiseuxError> {
    if prefix.resonant_at.is_some() {
        return Err(PuiseuxError::Resonant);
    }
    let needed = 2 * prefix.r + 2;
    if prefix.coeffs.len() < needed {
        return Err(PuiseuxError::InsufficientPrefix {
            needed,
            have: prefix.coeffs.len(),
        });
    }
    Ok(crate::exactalg::explore(prefix.context.clone(), |ctx| {
        reconstruct_in(ctx, &prefix.coeffs, prefix.r)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::edge_profile;
    use crate::exactalg::{rat, Rational};
    use crate::fixtures::five_solution_equation;

    fn rational_ctx(v: Rational) -> Ctx {
        AlgebraicContext::rational(&v, "t")
    }

    #[test]
    fn roots_of_five_solution_profile() {
        let eq = five_solution_equation();
        let p = edge_profile(&eq, 2).unwrap();
        let roots = leading_roots(&p, FieldMode::Real);
        let moduli: Vec<RatPoly> = roots.iter().map(|l| l.context.modulus().clone()).collect();
        assert_eq!(
            moduli,
            vec![
                RatPoly::from_ints(&[2, 1]),
                RatPoly::from_ints(&[1, 1]),
                RatPoly::from_fracs(&[(-3, 2), (1, 1)]),
                RatPoly::from_fracs(&[(-1, 2), (-3, 2), (1, 1)]),
            ]
        );
        assert_eq!(
            roots
                .iter()
                .map(LeadingRoot::real_embeddings)
                .sum::<usize>(),
            5
        );
    }

    #[test]
    fn roots_without_real_embeddings_are_kept() {
        let profile = EdgeProfile {
            r: 1,
            order: 0,
            tie: crate::diagram::TieKind::T32.tie_set(),
            phi: [0; 4],
            edge_poly: RatPoly::from_ints(&[0, 0, 1, 0, 1]),
            e_r: 2,
            reduced: RatPoly::from_ints(&[1, 0, 1]),
        };
        let roots = leading_roots(&profile, FieldMode::Real);
        assert_eq!(roots.len(), 1);
        assert!(roots[0].has_no_real_embedding());
        let profile = EdgeProfile {
            reduced: RatPoly::from_ints(&[-5, 1]),
            ..profile
        };
        let roots = leading_roots(&profile, FieldMode::Real);
        assert_eq!(roots[0].context.rational_root(), Some(int(5)));
    }

    #[test]
    fn exact_solution_has_trivial_tail() {
        let eq = five_solution_equation();
        let p = edge_profile(&eq, 2).unwrap();
        let ctx = rational_ctx(int(-2));
        let pre = series_in_context(&eq, &p, &ctx, 4).unwrap();
        assert_eq!(pre.coeffs.len(), 5);
        assert_eq!(pre.coeffs[0], RatPoly::constant(int(-2)));
        assert!(pre.coeffs[1..].iter().all(RatPoly::is_zero));
    }

    #[test]
    fn reciprocal_examples() {
        let ctx = rational_ctx(int(-2));
        let coeffs: Vec<RatPoly> = [-2, 0, 0, 0, 0, 0].iter().map(|&v| sc(v)).collect();
        let pre = LaurentPrefix {
            r: 2,
            context: ctx.clone(),
            coeffs,
            resonant_at: None,
            obstructed: false,
        };
        let out = reciprocal_candidate(&pre).unwrap();
        let Reconstruction::Candidate(p) = &out[0].1 else {
            panic!()
        };
        assert_eq!(p.to_rat().unwrap(), RatPoly::monomial(rat(-1, 2), 2));

        let ctx1 = rational_ctx(int(1));
        let coeffs: Vec<RatPoly> = [1, -1, 1, -1, 1, -1].iter().map(|&v| sc(v)).collect();
        let pre = LaurentPrefix {
            r: 2,
            context: ctx1.clone(),
            coeffs,
            resonant_at: None,
            obstructed: false,
        };
        let Reconstruction::Candidate(p) = &reciprocal_candidate(&pre).unwrap()[0].1 else {
            panic!()
        };
        assert_eq!(p.to_rat().unwrap(), RatPoly::from_ints(&[0, 1, 1]));

        let coeffs: Vec<RatPoly> = [1, 0, 0, 0, 1, 0].iter().map(|&v| sc(v)).collect();
        let pre = LaurentPrefix {
            r: 2,
            context: ctx1.clone(),
            coeffs,
            resonant_at: None,
            obstructed: false,
        };
        assert!(matches!(
            reciprocal_candidate(&pre).unwrap()[0].1,
            Reconstruction::NotRational { .. }
        ));

        let pre = LaurentPrefix {
            r: 2,
            context: ctx1,
            coeffs: vec![sc(1); 5],
            resonant_at: None,
            obstructed: false,
        };
        assert_eq!(
            reciprocal_candidate(&pre),
            Err(PuiseuxError::InsufficientPrefix { needed: 6, have: 5 })
        );
    }

    #[test]
    fn series_matches_geometric_expansion() {
        // x = 1/(t^2 + t) solves x' = A3 x^4 + A2 x^3 + A1 x^2 for A1 = 1, A2 = 1, A3 = -(p^2 p' + p + p^2)
        let p = RatPoly::from_ints(&[0, 1, 1]);
        let a3 = -(&(&(&p.pow(2) * &p.derivative()) + &p) + &p.pow(2));
        let eq = AbelEquation::new([2, 3, 4], [RatPoly::one(), RatPoly::one(), a3]).unwrap();
        let prof = edge_profile(&eq, 2).unwrap();
        let pre = series_in_context(&eq, &prof, &rational_ctx(int(1)), 5).unwrap();
        let want: Vec<RatPoly> = [1, -1, 1, -1, 1, -1].iter().map(|&v| sc(v)).collect();
        assert_eq!(pre.coeffs, want);
    }

    #[test]
    fn binomial_partial_tie_resonates() {
        // T = {3, ∂} at r = 2 for n = (2,3,4): resonance at N = 3 r = 6
        let eq = AbelEquation::new(
            [2, 3, 4],
            [
                RatPoly::from_ints(&[1]),
                RatPoly::from_ints(&[2]),
                RatPoly::monomial(int(-3), 5),
            ],
        )
        .unwrap();
        let prof = edge_profile(&eq, 2).unwrap();
        let roots = leading_roots(&prof, FieldMode::Complex);
        for root in &roots {
            for pre in extend_series(&eq, &prof, root, 10) {
                assert_eq!(pre.resonant_at, Some(6));
                assert_eq!(pre.coeffs.len(), 6);
            }
        }
    }
}
