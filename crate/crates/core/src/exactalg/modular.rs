//! Arithmetic in `Q[C]/(g)` for a monic squarefree `g`, with dynamic splitting.
//!
//! No factorization is ever attempted. When an inversion or a zero test meets a
//! zero divisor, the modulus splits into two coprime factors and the caller
//! reruns its computation in each branch (see [`explore`]).

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::gcd::{interpolate, poly_gcd, resultant, xgcd};
use super::{ExactError, RatPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicContext {
    modulus: RatPoly,
    label: String,
}

pub type Ctx = Arc<AlgebraicContext>;

/// Raised when a zero divisor is met; `left * right` is the old modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitEvent {
    pub left: Ctx,
    pub right: Ctx,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvertError {
    Split(SplitEvent),
    ZeroInverse,
    ContextMismatch,
}

impl From<SplitEvent> for InvertError {
    fn from(s: SplitEvent) -> Self {
        InvertError::Split(s)
    }
}

impl AlgebraicContext {
    /// Makes the modulus monic and checks it is squarefree of positive degree.
    pub fn new(modulus: &RatPoly, label: impl Into<String>) -> Result<Ctx, ExactError> {
        if modulus.deg().unwrap_or(0) == 0 {
            return Err(ExactError::BadModulus);
        }
        if !poly_gcd(modulus, &modulus.derivative())?.is_constant() {
            return Err(ExactError::BadModulus);
        }
        Ok(Arc::new(AlgebraicContext {
            modulus: modulus.monic(),
            label: label.into(),
        }))
    }

    /// The context `Q[C]/(C - value)`.
    pub fn rational(value: &Rational, label: impl Into<String>) -> Ctx {
        Arc::new(AlgebraicContext {
            modulus: RatPoly::from_coeffs(vec![-value.clone(), Rational::one()]),
            label: label.into(),
        })
    }

    pub fn modulus(&self) -> &RatPoly {
        &self.modulus
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg().unwrap()
    }

    /// The root when the modulus is linear.
    pub fn rational_root(&self) -> Option<Rational> {
        (self.degree() == 1).then(|| -self.modulus.coeff(0))
    }

    pub fn reduce(&self, p: &RatPoly) -> RatPoly {
        if p.deg().is_some_and(|d| d >= self.degree()) {
            p.rem(&self.modulus).expect("modulus nonzero")
        } else {
            p.clone()
        }
    }

    pub fn mul(&self, a: &RatPoly, b: &RatPoly) -> RatPoly {
        self.reduce(&(a * b))
    }

    pub fn pow(&self, a: &RatPoly, e: usize) -> RatPoly {
        let mut result = RatPoly::one();
        let mut base = self.reduce(a);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    fn split_on(&self, g: &RatPoly) -> SplitEvent {
        let right = self
            .modulus
            .exact_div(g)
            .expect("nonzero")
            .expect("factor divides");
        SplitEvent {
            left: Arc::new(AlgebraicContext {
                modulus: g.monic(),
                label: format!("{}.0", self.label),
            }),
            right: Arc::new(AlgebraicContext {
                modulus: right.monic(),
                label: format!("{}.1", self.label),
            }),
        }
    }

    /// Inverse of a residue, or a split when it is a zero divisor.
    pub fn invert_raw(&self, a: &RatPoly) -> Result<RatPoly, InvertError> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Err(InvertError::ZeroInverse);
        }
        if a.is_constant() {
            return Ok(RatPoly::constant(a.lc().recip()));
        }
        let (g, s, _) = xgcd(&a, &self.modulus).expect("nonzero");
        if g.is_constant() {
            Ok(self.reduce(&s))
        } else {
            Err(InvertError::Split(self.split_on(&g)))
        }
    }

    /// `Ok(true)` when zero in every branch, `Ok(false)` when a unit, otherwise a split.
    pub fn zero_test(&self, a: &RatPoly) -> Result<bool, SplitEvent> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Ok(true);
        }
        if a.is_constant() {
            return Ok(false);
        }
        let g = poly_gcd(&a, &self.modulus).expect("nonzero");
        if g.is_constant() {
            Ok(false)
        } else {
            Err(self.split_on(&g))
        }
    }

    pub fn gen(self: &Ctx) -> ModElement {
        ModElement {
            ctx: self.clone(),
            value: self.reduce(&RatPoly::x()),
        }
    }

    pub fn elem(self: &Ctx, value: &RatPoly) -> ModElement {
        ModElement {
            ctx: self.clone(),
            value: self.reduce(value),
        }
    }

    pub fn constant(self: &Ctx, c: &Rational) -> ModElement {
        self.elem(&RatPoly::constant(c.clone()))
    }

    /// `prod (y - a(theta))` over the roots `theta` of the modulus.
    pub fn charpoly(&self, a: &RatPoly) -> RatPoly {
        let a = self.reduce(a);
        let d = self.degree();
        let xs: Vec<Rational> = (0..=d as i64)
            .map(|i| Rational::from_integer(i.into()))
            .collect();
        let ys: Vec<Rational> = xs
            .iter()
            .map(|y| {
                let b = &RatPoly::constant(y.clone()) - &a;
                if b.is_zero() {
                    Rational::zero()
                } else {
                    resultant(&self.modulus, &b).expect("nonzero")
                }
            })
            .collect();
        interpolate(&xs, &ys)
    }
}

impl fmt::Display for AlgebraicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: Q[C]/({})",
            self.label,
            self.modulus.display_with("C")
        )
    }
}

/// An element of a context, stored as a reduced residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModElement {
    ctx: Ctx,
    value: RatPoly,
}

impl ModElement {
    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    pub fn value(&self) -> &RatPoly {
        &self.value
    }

    fn same(&self, o: &ModElement) -> Result<(), ExactError> {
        if Arc::ptr_eq(&self.ctx, &o.ctx) || self.ctx.modulus == o.ctx.modulus {
            Ok(())
        } else {
            Err(ExactError::ContextMismatch)
        }
    }

    pub fn add(&self, o: &ModElement) -> Result<ModElement, ExactError> {
        self.same(o)?;
        Ok(ModElement {
            ctx: self.ctx.clone(),
            value: &self.value + &o.value,
        })
    }

    pub fn sub(&self, o: &ModElement) -> Result<ModElement, ExactError> {
        self.same(o)?;
        Ok(ModElement {
            ctx: self.ctx.clone(),
            value: &self.value - &o.value,
        })
    }

    pub fn mul(&self, o: &ModElement) -> Result<ModElement, ExactError> {
        self.same(o)?;
        Ok(ModElement {
            ctx: self.ctx.clone(),
            value: self.ctx.mul(&self.value, &o.value),
        })
    }

    pub fn neg(&self) -> ModElement {
        ModElement {
            ctx: self.ctx.clone(),
            value: -&self.value,
        }
    }

    pub fn invert(&self) -> Result<ModElement, InvertError> {
        let value = self.ctx.invert_raw(&self.value)?;
        Ok(ModElement {
            ctx: self.ctx.clone(),
            value,
        })
    }

    pub fn div(&self, o: &ModElement) -> Result<ModElement, InvertError> {
        self.same(o).map_err(|_| InvertError::ContextMismatch)?;
        let inv = o.invert()?;
        Ok(self.mul(&inv).expect("same context"))
    }

    /// True when the residue is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    pub fn zero_test(&self) -> Result<bool, SplitEvent> {
        self.ctx.zero_test(&self.value)
    }

    /// The rational value when the residue is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.value.is_zero() {
            Some(Rational::zero())
        } else if self.value.is_constant() {
            Some(self.value.lc())
        } else {
            None
        }
    }

    /// Image in a context whose modulus divides this one's.
    pub fn lift_to(&self, child: &Ctx) -> ModElement {
        child.elem(&self.value)
    }

    pub fn charpoly(&self) -> RatPoly {
        self.ctx.charpoly(&self.value)
    }
}

/// Chinese remaindering: the element of `parent` restricting to `left` and `right`.
pub fn crt_combine(
    left: &ModElement,
    right: &ModElement,
    parent: &Ctx,
) -> Result<ModElement, ExactError> {
    let ml = left.ctx.modulus();
    let mr = right.ctx.modulus();
    if &(ml * mr) != parent.modulus() {
        return Err(ExactError::ContextMismatch);
    }
    let inv = right
        .ctx
        .invert_raw(ml)
        .map_err(|_| ExactError::ContextMismatch)?;
    let diff = right.ctx.reduce(&(&right.value - &left.value));
    let k = right.ctx.mul(&diff, &inv);
    Ok(parent.elem(&(&left.value + &(ml * &k))))
}

/// Runs `f` in `ctx`, rerunning it in both halves whenever it reports a split.
/// Results come back in left-to-right branch order.
pub fn explore<T>(ctx: Ctx, mut f: impl FnMut(&Ctx) -> Result<T, SplitEvent>) -> Vec<(Ctx, T)> {
    let mut out = Vec::new();
    let mut stack = vec![ctx];
    while let Some(c) = stack.pop() {
        match f(&c) {
            Ok(v) => out.push((c, v)),
            Err(SplitEvent { left, right }) => {
                stack.push(right);
                stack.push(left);
            }
        }
    }
    out
}

/// Polynomial in `t` whose coefficients are residues of one context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtxPoly {
    ctx: Ctx,
    coeffs: Vec<RatPoly>,
}

impl CtxPoly {
    pub fn new(ctx: &Ctx, coeffs: Vec<RatPoly>) -> Self {
        let mut coeffs: Vec<RatPoly> = coeffs.iter().map(|c| ctx.reduce(c)).collect();
        while coeffs.last().is_some_and(RatPoly::is_zero) {
            coeffs.pop();
        }
        CtxPoly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn from_rat(ctx: &Ctx, p: &RatPoly) -> Self {
        Self::new(
            ctx,
            p.coeffs()
                .iter()
                .map(|c| RatPoly::constant(c.clone()))
                .collect(),
        )
    }

    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[RatPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ModElement {
        self.ctx
            .elem(&self.coeffs.get(i).cloned().unwrap_or_default())
    }

    /// Degree by trailing nonzero residue.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &CtxPoly) -> CtxPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = RatPoly::zero();
        CtxPoly::new(
            &self.ctx,
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &CtxPoly) -> CtxPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> CtxPoly {
        CtxPoly {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, o: &CtxPoly) -> CtxPoly {
        if self.is_zero() || o.is_zero() {
            return CtxPoly {
                ctx: self.ctx.clone(),
                coeffs: Vec::new(),
            };
        }
        let mut out = vec![RatPoly::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        CtxPoly::new(&self.ctx, out)
    }

    pub fn pow(&self, e: usize) -> CtxPoly {
        let mut result = CtxPoly::new(&self.ctx, vec![RatPoly::one()]);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn scale(&self, c: &ModElement) -> CtxPoly {
        CtxPoly::new(
            &self.ctx,
            self.coeffs.iter().map(|a| a * c.value()).collect(),
        )
    }

    pub fn derivative(&self) -> CtxPoly {
        CtxPoly::new(
            &self.ctx,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rational::from_integer((i as i64).into())))
                .collect(),
        )
    }

    /// Whether every coefficient vanishes in the whole context.
    pub fn zero_test(&self) -> Result<bool, SplitEvent> {
        for c in &self.coeffs {
            if !self.ctx.zero_test(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The plain rational polynomial when every coefficient is a constant residue.
    pub fn to_rat(&self) -> Option<RatPoly> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_zero() {
                    Some(Rational::zero())
                } else if c.is_constant() {
                    Some(c.lc())
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(RatPoly::from_coeffs)
    }

    /// Image in a context whose modulus divides this one's.
    pub fn lift_to(&self, child: &Ctx) -> CtxPoly {
        CtxPoly::new(child, self.coeffs.clone())
    }

    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "*t".to_string(),
                _ => format!("*t^{i}"),
            };
            parts.push(format!("({}){mono}", c.display_with("C")));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
