//! Reduced Newton diagram at infinity: order functions, ties, candidate degrees
//! and edge polynomials.

use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{int, RatPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("exponents must satisfy 1 < n1 < n2 < n3, got ({0}, {1}, {2})")]
    InvalidExponents(usize, usize, usize),
    #[error("coefficient A{0} must be a nonzero polynomial")]
    ZeroCoefficient(usize),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// `x' = A3 x^n3 + A2 x^n2 + A1 x^n1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelEquation {
    n: [usize; 3],
    coeffs: [RatPoly; 3],
}

impl AbelEquation {
    /// `n = [n1, n2, n3]`, `a = [A1, A2, A3]`.
    pub fn new(n: [usize; 3], a: [RatPoly; 3]) -> Result<Self, DiagramError> {
        if !(1 < n[0] && n[0] < n[1] && n[1] < n[2]) {
            return Err(DiagramError::InvalidExponents(n[0], n[1], n[2]));
        }
        for (i, p) in a.iter().enumerate() {
            if p.is_zero() {
                return Err(DiagramError::ZeroCoefficient(i + 1));
            }
        }
        Ok(AbelEquation { n, coeffs: a })
    }

    /// Exponent `n_i`, `i` in 1..=3.
    pub fn n(&self, i: usize) -> usize {
        self.n[i - 1]
    }

    pub fn exponents(&self) -> [usize; 3] {
        self.n
    }

    /// Coefficient `A_i`, `i` in 1..=3.
    pub fn coeff(&self, i: usize) -> &RatPoly {
        &self.coeffs[i - 1]
    }

    pub fn coeffs(&self) -> &[RatPoly; 3] {
        &self.coeffs
    }

    /// Degree `a_i`.
    pub fn a(&self, i: usize) -> usize {
        self.coeffs[i - 1].deg().expect("coefficients are nonzero")
    }

    /// Leading coefficient `alpha_i`.
    pub fn alpha(&self, i: usize) -> Rational {
        self.coeffs[i - 1].lc()
    }

    /// Multiplies every coefficient by `lambda`.
    pub fn scaled(&self, lambda: &Rational) -> Self {
        AbelEquation {
            n: self.n,
            coeffs: self.coeffs.clone().map(|p| p.scale(lambda)),
        }
    }

    /// `(a_l, n_l)` with the convention `a_d = -1`, `n_d = 1`.
    pub fn vertex(&self, t: Term) -> (i64, i64) {
        match t {
            Term::Partial => (-1, 1),
            _ => (self.a(t.index()) as i64, self.n(t.index()) as i64),
        }
    }
}

/// One of the four monomials of the leading balance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Three,
    Two,
    One,
    Partial,
}

impl Term {
    pub const ALL: [Term; 4] = [Term::Three, Term::Two, Term::One, Term::Partial];

    /// Coefficient index 3, 2, 1; the derivative term maps to 0.
    pub fn index(self) -> usize {
        match self {
            Term::Three => 3,
            Term::Two => 2,
            Term::One => 1,
            Term::Partial => 0,
        }
    }

    fn bit(self) -> u8 {
        match self {
            Term::Three => 1,
            Term::Two => 2,
            Term::One => 4,
            Term::Partial => 8,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Term::Three => "3",
            Term::Two => "2",
            Term::One => "1",
            Term::Partial => "∂",
        }
    }
}

/// A subset of `{3, 2, 1, ∂}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct TieSet(u8);

impl TieSet {
    pub fn from_terms(terms: &[Term]) -> Self {
        TieSet(terms.iter().fold(0, |acc, t| acc | t.bit()))
    }

    pub fn contains(self, t: Term) -> bool {
        self.0 & t.bit() != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn terms(self) -> impl Iterator<Item = Term> {
        Term::ALL.into_iter().filter(move |t| self.contains(*t))
    }

    pub fn intersect(self, o: TieSet) -> TieSet {
        TieSet(self.0 & o.0)
    }

    /// Parses labels such as `{3,2,1,d}` or `3,2,∂`.
    pub fn parse(s: &str) -> Option<Self> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut terms = Vec::new();
        for part in inner.split(',') {
            terms.push(match part.trim() {
                "3" => Term::Three,
                "2" => Term::Two,
                "1" => Term::One,
                "∂" | "d" | "D" => Term::Partial,
                _ => return None,
            });
        }
        Some(Self::from_terms(&terms))
    }
}

impl fmt::Display for TieSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.terms().map(Term::symbol).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for TieSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TieSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        TieSet::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad tie set {s:?}")))
    }
}

/// `Phi_l(r) = n_l r - a_l`, and `Phi_d(r) = r + 1`.
pub fn phi(eq: &AbelEquation, ell: Term, r: i64) -> i64 {
    let (a, n) = eq.vertex(ell);
    n * r - a
}

/// `D_l = a_l + (n3 - n_l) r`.
pub fn d_ell(eq: &AbelEquation, ell: Term, r: i64) -> i64 {
    let (a, n) = eq.vertex(ell);
    a + (eq.n(3) as i64 - n) * r
}

/// The four order values in the order `3, 2, 1, ∂`.
pub fn phis(eq: &AbelEquation, r: i64) -> [i64; 4] {
    Term::ALL.map(|t| phi(eq, t, r))
}

/// `r_ij = (a_i - a_j) / (n_i - n_j)`.
pub fn ratio(eq: &AbelEquation, i: Term, j: Term) -> Rational {
    let (ai, ni) = eq.vertex(i);
    let (aj, nj) = eq.vertex(j);
    Rational::new((ai - aj).into(), (ni - nj).into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateDegrees {
    pub r32: Rational,
    pub r31: Rational,
    pub r21: Rational,
    pub r3d: Rational,
    pub r2d: Rational,
    pub r1d: Rational,
    pub r0: Rational,
    /// Positive integers among the six ratios that do not exceed `r0`, ascending.
    pub gamma: Vec<usize>,
}

impl CandidateDegrees {
    pub fn ratios(&self) -> [&Rational; 6] {
        [
            &self.r32, &self.r31, &self.r21, &self.r3d, &self.r2d, &self.r1d,
        ]
    }
}

pub fn candidate_degrees(eq: &AbelEquation) -> CandidateDegrees {
    use Term::*;
    let r0 = Rational::new((eq.a(3) as i64).into(), ((eq.n(3) - eq.n(2)) as i64).into());
    let mut cd = CandidateDegrees {
        r32: ratio(eq, Three, Two),
        r31: ratio(eq, Three, One),
        r21: ratio(eq, Two, One),
        r3d: ratio(eq, Three, Partial),
        r2d: ratio(eq, Two, Partial),
        r1d: ratio(eq, One, Partial),
        r0,
        gamma: Vec::new(),
    };
    let mut gamma: Vec<usize> = cd
        .ratios()
        .into_iter()
        .filter(|x| x.is_integer() && x.is_positive() && *x <= &cd.r0)
        .map(|x| x.to_integer().try_into().expect("degree fits"))
        .collect();
    gamma.sort_unstable();
    gamma.dedup();
    cd.gamma = gamma;
    cd
}

/// Data attached to an edge-admissible degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeProfile {
    pub r: usize,
    /// The minimal order `O_r`.
    pub order: i64,
    pub tie: TieSet,
    pub phi: [i64; 4],
    /// `P_r(C)`.
    pub edge_poly: RatPoly,
    /// Multiplicity of `0` as a root of `P_r`.
    pub e_r: usize,
    /// `P_r / C^e_r`.
    pub reduced: RatPoly,
}

impl EdgeProfile {
    pub fn has_partial(&self) -> bool {
        self.tie.contains(Term::Partial)
    }

    /// `deg P_r - mult_0 P_r`, the number of nonzero roots with multiplicity.
    pub fn nonzero_root_bound(&self) -> usize {
        self.reduced.deg().unwrap_or(0)
    }

    /// `2(|T_r| - 1)`.
    pub fn real_root_bound(&self) -> usize {
        2 * (self.tie.len() - 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotEdgeAdmissible {
    pub r: usize,
    pub phi: [i64; 4],
}

pub fn edge_profile(eq: &AbelEquation, r: usize) -> Result<EdgeProfile, NotEdgeAdmissible> {
    let ri = r as i64;
    let phi = phis(eq, ri);
    let order = *phi.iter().min().unwrap();
    let terms: Vec<Term> = Term::ALL
        .into_iter()
        .zip(phi)
        .filter(|(_, v)| *v == order)
        .map(|(t, _)| t)
        .collect();
    if terms.len() < 2 {
        return Err(NotEdgeAdmissible { r, phi });
    }
    let tie = TieSet::from_terms(&terms);
    let mut edge_poly = RatPoly::zero();
    for t in tie.terms() {
        let mono = match t {
            Term::Partial => RatPoly::monomial(int(ri), 1),
            _ => RatPoly::monomial(eq.alpha(t.index()), eq.n(t.index())),
        };
        edge_poly = &edge_poly + &mono;
    }
    let e_r = edge_poly.multiplicity_at_zero();
    let reduced = edge_poly.shift_down(e_r);
    Ok(EdgeProfile {
        r,
        order,
        tie,
        phi,
        edge_poly,
        e_r,
        reduced,
    })
}

/// Profiles of the edge-admissible members of the candidate set, ascending in `r`.
pub fn edge_profiles(eq: &AbelEquation) -> Vec<EdgeProfile> {
    candidate_degrees(eq)
        .gamma
        .into_iter()
        .filter_map(|r| edge_profile(eq, r).ok())
        .collect()
}

/// The eleven tie configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TieKind {
    T32,
    T321,
    T32d,
    T321d,
    T31,
    T31d,
    T21,
    T21d,
    T3d,
    T2d,
    T1d,
}

impl TieKind {
    pub fn tie_set(self) -> TieSet {
        use Term::*;
        let terms: &[Term] = match self {
            TieKind::T32 => &[Three, Two],
            TieKind::T321 => &[Three, Two, One],
            TieKind::T32d => &[Three, Two, Partial],
            TieKind::T321d => &[Three, Two, One, Partial],
            TieKind::T31 => &[Three, One],
            TieKind::T31d => &[Three, One, Partial],
            TieKind::T21 => &[Two, One],
            TieKind::T21d => &[Two, One, Partial],
            TieKind::T3d => &[Three, Partial],
            TieKind::T2d => &[Two, Partial],
            TieKind::T1d => &[One, Partial],
        };
        TieSet::from_terms(terms)
    }

    pub const ALL: [TieKind; 11] = [
        TieKind::T32,
        TieKind::T321,
        TieKind::T32d,
        TieKind::T321d,
        TieKind::T31,
        TieKind::T31d,
        TieKind::T21,
        TieKind::T21d,
        TieKind::T3d,
        TieKind::T2d,
        TieKind::T1d,
    ];

    pub fn from_tie(tie: TieSet) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.tie_set() == tie)
    }

    /// Pure binomial ties with the derivative term.
    pub fn is_binomial_partial(self) -> bool {
        matches!(self, TieKind::T3d | TieKind::T2d | TieKind::T1d)
    }
}

impl fmt::Display for TieKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.tie_set().fmt(f)
    }
}

/// Labels the tie and re-verifies the dominance relations behind it.
pub fn classify_tie(eq: &AbelEquation, profile: &EdgeProfile) -> Result<TieKind, DiagramError> {
    let bad = |msg: String| Err(DiagramError::InternalInconsistency(msg));
    let r = profile.r as i64;
    let phi = phis(eq, r);
    if phi != profile.phi {
        return bad(format!("stale order values at r = {r}"));
    }
    for i in profile.tie.terms() {
        for k in Term::ALL.into_iter().filter(|k| !profile.tie.contains(*k)) {
            if phi_of(&phi, i) >= phi_of(&phi, k) {
                return bad(format!("{i:?} does not dominate {k:?} at r = {r}"));
            }
        }
        for j in profile.tie.terms().filter(|j| j > &i) {
            if ratio(eq, i, j) != int(r) {
                return bad(format!("r_({i:?},{j:?}) differs from r = {r}"));
            }
        }
    }
    let cd = candidate_degrees(eq);
    if !convex(&cd) {
        return bad("r31 outside [r32, r21]".into());
    }
    TieKind::from_tie(profile.tie).ok_or_else(|| {
        DiagramError::InternalInconsistency(format!("tie {} has fewer than two terms", profile.tie))
    })
}

fn phi_of(phi: &[i64; 4], t: Term) -> i64 {
    phi[Term::ALL.iter().position(|x| *x == t).unwrap()]
}

/// `min(r32, r21) <= r31 <= max(r32, r21)`.
pub fn convex(cd: &CandidateDegrees) -> bool {
    let lo = (&cd.r32).min(&cd.r21);
    let hi = (&cd.r32).max(&cd.r21);
    lo <= &cd.r31 && &cd.r31 <= hi
}

/// Scans `r = 1..=floor(r0)` for edge-admissible degrees; a test oracle for the
/// closed-form candidate set.
pub fn scan_admissible(eq: &AbelEquation) -> Vec<usize> {
    let cd = candidate_degrees(eq);
    let top = cd.r0.floor().to_integer();
    let mut out = Vec::new();
    let mut r = num_bigint::BigInt::one();
    while r <= top {
        let ru: usize = (&r).try_into().unwrap();
        if edge_profile(eq, ru).is_ok() {
            out.push(ru);
        }
        r += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::fixtures::five_solution_equation as example;

    fn with_degrees(n: [usize; 3], a: [usize; 3]) -> AbelEquation {
        AbelEquation::new(n, a.map(|d| RatPoly::monomial(int(1), d))).unwrap()
    }

    #[test]
    fn order_values() {
        let eq = example();
        assert_eq!(phi(&eq, Term::Partial, 2), 3);
        assert_eq!(phi(&eq, Term::Three, 2), 3);
        assert_eq!(phi(&eq, Term::One, 2), 3);
    }

    #[test]
    fn candidate_sets() {
        let cd = candidate_degrees(&example());
        assert!(cd.ratios().iter().all(|x| **x == int(2)));
        assert_eq!(cd.r0, rat(9, 2));
        assert_eq!(cd.gamma, vec![2]);

        let cd = candidate_degrees(&with_degrees([2, 3, 4], [0, 0, 0]));
        assert!(cd.gamma.is_empty());

        let cd = candidate_degrees(&with_degrees([2, 3, 5], [0, 1, 5]));
        assert_eq!(
            (
                cd.r32.clone(),
                cd.r31.clone(),
                cd.r21.clone(),
                cd.r3d.clone(),
                cd.r2d.clone(),
                cd.r1d.clone()
            ),
            (int(2), rat(5, 3), int(1), rat(3, 2), int(1), int(1))
        );
        assert_eq!(cd.r0, rat(5, 2));
        assert_eq!(cd.gamma, vec![1, 2]);
    }

    #[test]
    fn profiles() {
        let eq = example();
        let p = edge_profile(&eq, 2).unwrap();
        assert_eq!(p.tie, TieSet::parse("{3,2,1,∂}").unwrap());
        assert_eq!(
            p.edge_poly,
            RatPoly::from_fracs(&[(0, 1), (2, 1), (23, 3), (0, 1), (-7, 1), (0, 1), (4, 3)])
        );
        assert_eq!(p.e_r, 1);
        assert_eq!(p.order, 3);
        let e = edge_profile(&eq, 1).unwrap_err();
        assert_eq!(e.phi, [-3, -1, 1, 2]);

        let eq = with_degrees([2, 3, 5], [0, 1, 5]);
        assert_eq!(edge_profile(&eq, 1).unwrap_err().phi, [0, 2, 2, 2]);
        assert_eq!(edge_profile(&eq, 2).unwrap_err().phi, [5, 5, 4, 3]);
    }

    #[test]
    fn tie_labels() {
        let eq = example();
        let p = edge_profile(&eq, 2).unwrap();
        assert_eq!(classify_tie(&eq, &p).unwrap(), TieKind::T321d);
        let eq = with_degrees([2, 3, 4], [0, 3, 5]);
        let p = edge_profile(&eq, 2).unwrap();
        assert_eq!(classify_tie(&eq, &p).unwrap(), TieKind::T32d);
        assert_eq!(TieKind::T32.to_string(), "{3,2}");
    }

    #[test]
    fn tampered_profile_is_caught() {
        let eq = example();
        let mut p = edge_profile(&eq, 2).unwrap();
        p.tie = TieSet::from_terms(&[Term::Three, Term::Two]);
        assert!(matches!(
            classify_tie(&eq, &p),
            Err(DiagramError::InternalInconsistency(_))
        ));
    }

    #[test]
    fn invalid_equations() {
        let one = RatPoly::one();
        assert_eq!(
            AbelEquation::new([1, 2, 3], [one.clone(), one.clone(), one.clone()]),
            Err(DiagramError::InvalidExponents(1, 2, 3))
        );
        assert_eq!(
            AbelEquation::new([2, 3, 4], [one.clone(), RatPoly::zero(), one]),
            Err(DiagramError::ZeroCoefficient(2))
        );
    }

    #[test]
    fn tie_set_parsing_round_trips() {
        for k in TieKind::ALL {
            assert_eq!(TieSet::parse(&k.to_string()), Some(k.tie_set()));
        }
        assert_eq!(TieSet::parse("3,2,d"), Some(TieKind::T32d.tie_set()));
    }
}
