//! Degree patterns forced by two or three coexisting solutions, and the
//! resulting bounds on the number of solutions.

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{candidate_degrees, edge_profile, AbelEquation, Term, TieSet};
use crate::exactalg::{isolate_real_roots, RatPoly, Rational};
use crate::ndcheck::FieldMode;
use crate::solver::{RationalSolution, SolutionSet};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("distinct solutions required")]
    SameSolution,
    #[error("no alternative matches: {ledger}")]
    ClassificationFailure { ledger: String },
    #[error("degrees must be strictly increasing")]
    NonIncreasing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PairCase {
    C1,
    C2a,
    C2b,
    C3a,
    C3b,
    C3c,
}

impl PairCase {
    pub fn tie(self) -> TieSet {
        use Term::*;
        TieSet::from_terms(match self {
            PairCase::C1 => &[Three, Two, Partial],
            PairCase::C2a => &[Two, One],
            PairCase::C2b => &[Three, Two, One],
            PairCase::C3a => &[Two, One, Partial],
            PairCase::C3b => &[Three, One, Partial],
            PairCase::C3c => &[Three, Two, One, Partial],
        })
    }

    /// Letter of the matching global bound.
    pub fn bound_label(self) -> char {
        match self {
            PairCase::C1 => 'a',
            PairCase::C2a => 'b',
            PairCase::C2b => 'c',
            PairCase::C3a => 'd',
            PairCase::C3b => 'e',
            PairCase::C3c => 'f',
        }
    }
}

impl std::fmt::Display for PairCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairClass {
    pub case: PairCase,
    pub d: usize,
    pub d2: usize,
    pub tie_at_d: TieSet,
    /// The relations among `a1, a2, a3, d` that selected the case.
    pub constraints: Vec<String>,
}

struct Ledger {
    lines: Vec<String>,
    ok: bool,
}

impl Ledger {
    fn check(&mut self, ok: bool, what: String) {
        self.lines.push(if ok {
            what
        } else {
            format!("violated: {what}")
        });
        self.ok &= ok;
    }
}

/// The trichotomy at `d`, the larger of two solution degrees.
pub fn classify_degrees(
    eq: &AbelEquation,
    d: usize,
    d2: usize,
) -> Result<PairClass, StructureError> {
    let (d1, d2) = if d2 > d { (d2, d) } else { (d, d2) };
    let a = |i| eq.a(i) as i64;
    let n = |i| eq.n(i) as i64;
    let d = d1 as i64;
    let (a1, a2, a3) = (a(1), a(2), a(3));
    let e1 = (n(1) - 1) * d - 1;
    let e2 = (n(2) - 1) * d - 1;
    let e3 = (n(3) - 1) * d - 1;
    let cd = candidate_degrees(eq);
    let as_rat = |x: usize| Rational::from_integer(x.into());
    let mut l = Ledger {
        lines: vec![format!("a = ({a1}, {a2}, {a3}), d = {d}, deg p2 = {d2}")],
        ok: true,
    };
    let case = if a1 < e1 && a2 == e2 {
        l.lines.push(format!("a1 < {e1}, a2 = {e2}"));
        l.check(a3 == e3, format!("a3 = {e3}"));
        l.check(d2 == d1, format!("deg p2 = {d}"));
        PairCase::C1
    } else if a1 > e1 && a2 == a1 + (n(2) - n(1)) * d {
        l.lines.push(format!("a1 > {e1}, a2 = a1 + (n2-n1)d"));
        let top = a1 + (n(3) - n(1)) * d;
        if a3 == top {
            l.lines.push(format!("a3 = {top}"));
            l.check(d2 == d1, format!("deg p2 = {d}"));
            PairCase::C2b
        } else {
            l.check(
                (n(3) - n(2)) * d <= a3 && a3 < top,
                format!("{} <= a3 < {top}", (n(3) - n(2)) * d),
            );
            l.check(
                as_rat(d2) == cd.r32 && d2 < d1,
                format!("deg p2 = r32 = {} < d", cd.r32),
            );
            PairCase::C2a
        }
    } else if a1 == e1 && a2 <= e2 {
        l.lines.push(format!("a1 = {e1}, a2 <= {e2}"));
        match (a2 == e2, a3 == e3) {
            (true, false) => {
                l.check(a3 < e3, format!("a3 < {e3}"));
                l.check(
                    cd.r32 <= as_rat(d2) && as_rat(d1) <= cd.r0,
                    format!("r32 = {} <= deg p2 <= d <= r0 = {}", cd.r32, cd.r0),
                );
                PairCase::C3a
            }
            (false, true) => {
                l.check(d2 == d1, format!("deg p2 = {d}"));
                PairCase::C3b
            }
            (true, true) => {
                l.check(d2 == d1, format!("deg p2 = {d}"));
                PairCase::C3c
            }
            (false, false) => {
                l.check(false, format!("a2 = {e2} or a3 = {e3}"));
                PairCase::C3a
            }
        }
    } else {
        l.check(false, "one of (C1), (C2), (C3)".to_string());
        PairCase::C1
    };
    let tie = edge_profile(eq, d1).map(|p| p.tie);
    l.check(tie == Ok(case.tie()), format!("T_d = {}", case.tie()));
    if d2 == d1 {
        let same = match case {
            PairCase::C1 | PairCase::C2a | PairCase::C2b => a1 < a2 && a2 < a3,
            _ => a1 < a3 && a2 < a3,
        };
        l.check(same, "same-degree coefficient ordering".to_string());
    }
    if !l.ok {
        return Err(StructureError::ClassificationFailure {
            ledger: l.lines.join("; "),
        });
    }
    Ok(PairClass {
        case,
        d: d1,
        d2,
        tie_at_d: case.tie(),
        constraints: l.lines,
    })
}

/// Classification of two solutions; the larger degree plays the role of `p1`.
pub fn classify_pair(
    eq: &AbelEquation,
    p1: &RationalSolution,
    p2: &RationalSolution,
) -> Result<PairClass, StructureError> {
    if p1 == p2 {
        return Err(StructureError::SameSolution);
    }
    classify_degrees(eq, p1.r, p2.r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundCase {
    /// One of the six alternatives at the maximal realized degree.
    Case(char),
    /// Maximal tie `{3,2}` or `{3,1}`: the single solution is the only one.
    ExactlyOne,
    /// Fewer than two solutions: sum of the per-degree root bounds.
    PerDegree,
    /// Two or more solutions but the trichotomy failed (nondegeneracy is violated).
    Unclassified,
}

impl std::fmt::Display for BoundCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundCase::Case(c) => write!(f, "({c})"),
            BoundCase::ExactlyOne => write!(f, "exactly one"),
            BoundCase::PerDegree => write!(f, "per degree"),
            BoundCase::Unclassified => write!(f, "unclassified"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub mode: FieldMode,
    pub case_label: BoundCase,
    pub bound: usize,
    pub realized: usize,
    pub sharp: bool,
    /// False when nondegeneracy fails; the bound is then informational.
    pub applies: bool,
}

/// Bound for the alternative with label `c` in the given mode.
pub fn case_bound(eq: &AbelEquation, c: char, mode: FieldMode) -> usize {
    let n = eq.exponents();
    match (mode, c) {
        (FieldMode::Complex, 'a') | (FieldMode::Complex, 'e') | (FieldMode::Complex, 'f') => {
            n[2] - 1
        }
        (FieldMode::Complex, 'b') => n[2],
        (FieldMode::Complex, 'c') => n[2] - n[0],
        (FieldMode::Complex, 'd') => (n[1] - 1) + 2 * (n[2] - 1),
        (FieldMode::Real, 'a') | (FieldMode::Real, 'c') | (FieldMode::Real, 'e') => 4,
        (FieldMode::Real, 'b') | (FieldMode::Real, 'f') => 5,
        (FieldMode::Real, 'd') => 12,
        _ => unreachable!("no alternative {c}"),
    }
}

fn per_degree_bound(eq: &AbelEquation, r: usize, mode: FieldMode) -> usize {
    edge_profile(eq, r).map_or(0, |p| match mode {
        FieldMode::Complex => p.nonzero_root_bound(),
        FieldMode::Real => p.real_root_bound(),
    })
}

pub fn count_bound(eq: &AbelEquation, sols: &SolutionSet, mode: FieldMode) -> BoundReport {
    let realized = sols.count(mode);
    let applies = sols.nd.holds;
    let in_mode: Vec<&RationalSolution> = sols
        .solutions
        .iter()
        .filter(|s| mode == FieldMode::Complex || s.real_embeddings() > 0)
        .collect();
    let report = |case_label, bound: usize| BoundReport {
        mode,
        case_label,
        bound,
        realized,
        sharp: realized == bound,
        applies,
    };
    let top = in_mode.iter().map(|s| s.r).max();
    if realized < 2 {
        if let (1, Some(r)) = (realized, top) {
            let tie = edge_profile(eq, r).map(|p| p.tie).ok();
            let single = [
                TieSet::from_terms(&[Term::Three, Term::Two]),
                TieSet::from_terms(&[Term::Three, Term::One]),
            ];
            if tie.is_some_and(|t| single.contains(&t)) {
                return report(BoundCase::ExactlyOne, 1);
            }
            return report(BoundCase::PerDegree, per_degree_bound(eq, r, mode));
        }
        let total = candidate_degrees(eq)
            .gamma
            .into_iter()
            .map(|r| per_degree_bound(eq, r, mode))
            .sum();
        return report(BoundCase::PerDegree, total);
    }
    let r = top.expect("at least two solutions");
    let other_degree = in_mode.iter().map(|s| s.r).min().expect("nonempty");
    match classify_degrees(eq, r, other_degree) {
        Ok(class) => {
            let label = class.case.bound_label();
            if applies && mode == FieldMode::Real && class.case == PairCase::C3c {
                let reduced = edge_profile(eq, r).expect("realized degree").reduced;
                let nonzero_real = isolate_real_roots(&reduced)
                    .expect("squarefree under nondegeneracy")
                    .len();
                assert!(
                    nonzero_real <= 5,
                    "more than five nonzero real roots at a four-term tie"
                );
            }
            report(BoundCase::Case(label), case_bound(eq, label, mode))
        }
        Err(_) => {
            let total = sols
                .gamma
                .iter()
                .map(|&r| per_degree_bound(eq, r, mode))
                .sum();
            report(BoundCase::Unclassified, total)
        }
    }
}

/// `(deg A1, deg A2, deg A3)` forced by three solutions of degrees `d1 < d2 < d3`.
pub fn three_solution_degrees(
    d: [usize; 3],
    n: [usize; 3],
) -> Result<(usize, usize, usize), StructureError> {
    if !(d[0] < d[1] && d[1] < d[2]) || d[0] == 0 {
        return Err(StructureError::NonIncreasing);
    }
    let a1 = (n[0] - 1) * d[2] - 1;
    let a2 = a1 + (n[1] - n[0]) * d[1];
    let a3 = a2 + (n[2] - n[1]) * d[0];
    Ok((a1, a2, a3))
}

/// `det [1, p_j^(n3-n2), p_j^(n3-n1)]_j`.
pub fn delta123(p: [&RatPoly; 3], n: [usize; 3]) -> RatPoly {
    let u: Vec<RatPoly> = p.iter().map(|q| q.pow(n[2] - n[1])).collect();
    let v: Vec<RatPoly> = p.iter().map(|q| q.pow(n[2] - n[0])).collect();
    &(&(&u[1] - &u[0]) * &(&v[2] - &v[0])) - &(&(&u[2] - &u[0]) * &(&v[1] - &v[0]))
}
