//! The report document. Every exact value is a `p/q` string; field order is fixed.

use abel_core::diagram::{edge_profiles, AbelEquation, TieSet};
use abel_core::exactalg::serde_rational::poly_to_strings;
use abel_core::exactalg::{format_rational, rat, refine_root, RatPoly, Rational, RootInterval};
use abel_core::ndcheck::{check_nd, FieldMode, NDVerdict};
use abel_core::solver::{
    scaling_orbit, BranchOutcome, Completeness, RationalSolution, SolutionSet,
};
use abel_core::structure::{count_bound, BoundCase, BoundReport};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::document::EquationDocument;

#[derive(Clone, Debug, Serialize)]
pub struct ProfileDoc {
    pub r: usize,
    pub tie: TieSet,
    pub order: i64,
    pub edge_polynomial: Vec<String>,
    pub zero_multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntervalDoc {
    pub lo: String,
    pub hi: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContextDoc {
    pub label: String,
    pub degree: usize,
    /// Monic modulus in `C`, lowest power first.
    pub modulus: Vec<String>,
}

/// Decimal hints, present only on request; never used as exact data.
#[derive(Clone, Debug, Serialize)]
pub struct ApproxDoc {
    pub approximate: bool,
    pub interval_width: String,
    pub root: String,
    pub denominator: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionDoc {
    pub degree: usize,
    pub context: ContextDoc,
    /// Coefficient of `t^j` at index `j`, each an array over the basis `1, C, C^2, ...`.
    pub denominator: Vec<Vec<String>>,
    /// The same denominator with rational coefficients, when the context is rational.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational_denominator: Option<Vec<String>>,
    pub real_embeddings: usize,
    pub real_roots: Vec<IntervalDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<Vec<ApproxDoc>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchDoc {
    pub context: String,
    pub outcome: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeDoc {
    pub r: usize,
    pub series_order: usize,
    pub count_complex: usize,
    pub count_real: usize,
    pub branches: Vec<BranchDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundDoc {
    pub mode: FieldMode,
    pub case: String,
    pub bound: usize,
    pub realized: usize,
    pub sharp: bool,
    pub applies: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitDoc {
    pub degree: usize,
    pub context: String,
    pub rational: Vec<String>,
    pub algebraic: usize,
    pub residual: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleDoc {
    pub applicable: bool,
    pub agreement: Option<bool>,
    pub backstop: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountDoc {
    pub complex: usize,
    pub real: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveDoc {
    pub completeness: Completeness,
    pub count: CountDoc,
    pub gamma_sol: Vec<usize>,
    pub solutions: Vec<SolutionDoc>,
    pub degrees: Vec<DegreeDoc>,
    pub bounds: Vec<BoundDoc>,
    pub scaling_orbits: Vec<OrbitDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub mode: FieldMode,
    pub equation: EquationDocument,
    pub gamma: Vec<usize>,
    pub edge_profiles: Vec<ProfileDoc>,
    pub nd: NDVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solve: Option<SolveDoc>,
    pub notes: Vec<String>,
}

fn strings(p: &RatPoly) -> Vec<String> {
    poly_to_strings(p)
}

pub fn case_name(c: BoundCase) -> String {
    match c {
        BoundCase::Case(l) => l.to_string(),
        BoundCase::ExactlyOne => "exactly_one".into(),
        BoundCase::PerDegree => "per_degree".into(),
        BoundCase::Unclassified => "unclassified".into(),
    }
}

pub fn bound_doc(b: &BoundReport) -> BoundDoc {
    BoundDoc {
        mode: b.mode,
        case: case_name(b.case_label),
        bound: b.bound,
        realized: b.realized,
        sharp: b.sharp,
        applies: b.applies,
    }
}

fn outcome_text(o: &BranchOutcome) -> String {
    match o {
        BranchOutcome::Accepted => "accepted".into(),
        BranchOutcome::NotRational { index } => format!("not rational: coefficient {index} of 1/x"),
        BranchOutcome::FailedDivisibility => "failed divisibility".into(),
        BranchOutcome::FailedVerification => "failed verification".into(),
        BranchOutcome::Obstructed { n } => format!("obstructed resonance at {n}"),
        BranchOutcome::Resonant { n } => format!("resonance at {n}"),
        BranchOutcome::Continued { n, found } => {
            format!("continued past resonance at {n}: {found} found")
        }
    }
}

fn interval(iv: &RootInterval) -> IntervalDoc {
    IntervalDoc {
        lo: format_rational(&iv.lo),
        hi: format_rational(&iv.hi),
    }
}

fn decimal(x: &Rational) -> String {
    format!("{:.12e}", x.to_f64().unwrap_or(f64::NAN))
}

fn approx(s: &RationalSolution) -> Vec<ApproxDoc> {
    let width = rat(1, 1 << 40);
    s.real_roots
        .iter()
        .map(|iv| {
            let iv = refine_root(s.context.modulus(), iv, &width);
            let c = iv.midpoint();
            let denominator = s
                .denominator
                .coeffs()
                .iter()
                .map(|v| decimal(&v.eval(&c)))
                .collect();
            ApproxDoc {
                approximate: true,
                interval_width: format_rational(&iv.width()),
                root: decimal(&c),
                denominator,
            }
        })
        .collect()
}

pub fn solution_doc(s: &RationalSolution, with_approx: bool) -> SolutionDoc {
    let basis = s.context.degree();
    let denominator = s
        .denominator
        .coeffs()
        .iter()
        .map(|v| (0..basis).map(|i| format_rational(&v.coeff(i))).collect())
        .collect();
    SolutionDoc {
        degree: s.r,
        context: ContextDoc {
            label: s.context.label().to_string(),
            degree: basis,
            modulus: strings(s.context.modulus()),
        },
        denominator,
        rational_denominator: s.rational_denominator().as_ref().map(strings),
        real_embeddings: s.real_embeddings(),
        real_roots: s.real_roots.iter().map(interval).collect(),
        approx: with_approx.then(|| approx(s)),
    }
}

/// Diagram and ND data; the part shared by every command.
pub fn analysis(command: &str, eq: &AbelEquation, mode: FieldMode) -> ReportDocument {
    let cd = abel_core::diagram::candidate_degrees(eq);
    let edge_profiles: Vec<ProfileDoc> = edge_profiles(eq)
        .into_iter()
        .map(|p| ProfileDoc {
            r: p.r,
            tie: p.tie,
            order: p.order,
            edge_polynomial: strings(&p.edge_poly),
            zero_multiplicity: p.e_r,
        })
        .collect();
    let mut notes = Vec::new();
    if cd.gamma.is_empty() {
        notes.push("no admissible degrees".to_string());
    }
    ReportDocument {
        command: command.to_string(),
        mode,
        equation: EquationDocument::from_equation(eq),
        gamma: cd.gamma,
        edge_profiles,
        nd: check_nd(eq, mode),
        solve: None,
        notes,
    }
}

pub fn solve_doc(eq: &AbelEquation, set: &SolutionSet, with_approx: bool) -> SolveDoc {
    let degrees = set
        .degrees
        .iter()
        .map(|d| DegreeDoc {
            r: d.profile.r,
            series_order: d.series_order,
            count_complex: d.count_complex,
            count_real: d.count_real,
            branches: d
                .branches
                .iter()
                .map(|b| BranchDoc {
                    context: b.context.label().to_string(),
                    outcome: outcome_text(&b.outcome),
                })
                .collect(),
        })
        .collect();
    let bounds = [FieldMode::Real, FieldMode::Complex]
        .map(|m| bound_doc(&count_bound(eq, set, m)))
        .to_vec();
    let scaling_orbits = set
        .solutions
        .iter()
        .map(|s| {
            let o = scaling_orbit(eq, s);
            OrbitDoc {
                degree: s.r,
                context: s.context.label().to_string(),
                rational: o.rational.iter().map(format_rational).collect(),
                algebraic: o.algebraic.len(),
                residual: strings(&o.residual),
            }
        })
        .collect();
    SolveDoc {
        completeness: set.completeness,
        count: CountDoc {
            complex: set.count_complex,
            real: set.count_real,
        },
        gamma_sol: set.gamma_sol.clone(),
        solutions: set
            .solutions
            .iter()
            .map(|s| solution_doc(s, with_approx))
            .collect(),
        degrees,
        bounds,
        scaling_orbits,
        oracle: set.oracle.as_ref().map(|o| OracleDoc {
            applicable: o.applicable,
            agreement: o.agree,
            backstop: o.backstop,
        }),
    }
}

/// A few human-readable lines for standard error.
pub fn summary(r: &ReportDocument) -> String {
    let mut out = vec![format!(
        "gamma = {:?}, nondegeneracy ({:?}): {}",
        r.gamma,
        r.mode,
        if r.nd.holds { "holds" } else { "fails" }
    )];
    for p in &r.edge_profiles {
        out.push(format!("  r = {}: tie {}", p.r, p.tie));
    }
    if let Some(s) = &r.solve {
        out.push(format!(
            "{} complex, {} real solutions ({:?})",
            s.count.complex, s.count.real, s.completeness
        ));
        for sol in &s.solutions {
            let shown = match &sol.rational_denominator {
                Some(c) => format!("p = [{}]", c.join(", ")),
                None => format!(
                    "context of degree {}, modulus [{}]",
                    sol.context.degree,
                    sol.context.modulus.join(", ")
                ),
            };
            out.push(format!("  degree {}: {shown}", sol.degree));
        }
        for b in &s.bounds {
            out.push(format!(
                "  bound {:?}: case {}, {} <= {}",
                b.mode, b.case, b.realized, b.bound
            ));
        }
    }
    out.extend(r.notes.iter().cloned());
    out.join("\n")
}
