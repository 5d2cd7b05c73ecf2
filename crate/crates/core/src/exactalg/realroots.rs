//! Real roots: Sturm chains, exact counting, isolation and refinement.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::gcd::squarefree_part;
use super::poly::sign_of;
use super::{ExactError, RatPoly, Rational};

/// An endpoint of a counting interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

/// An isolating interval. When `lo == hi` the root is exactly `lo`; otherwise
/// the root lies strictly inside and the polynomial changes sign across it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        if self.is_exact() {
            x == &self.lo
        } else {
            &self.lo < x && x < &self.hi
        }
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }
}

/// Standard Sturm sequence of a squarefree polynomial, each member scaled by a
/// positive constant to integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    pub sequence: Vec<RatPoly>,
    ints: Vec<Vec<BigInt>>,
}

/// Integer coefficients of a positive multiple of `p`.
fn positive_integer_multiple(p: &RatPoly) -> Vec<BigInt> {
    let (content, ints) = p.primitive_integer();
    if content.is_negative() {
        ints.into_iter().map(|i| -i).collect()
    } else {
        ints
    }
}

/// Sign of `p(x)` from integer coefficients, without rational arithmetic.
fn sign_at_integer(c: &[BigInt], x: &Rational) -> i32 {
    let Some((top, rest)) = c.split_last() else {
        return 0;
    };
    let (u, v) = (x.numer(), x.denom());
    let mut acc = top.clone();
    let mut vpow = BigInt::one();
    for ci in rest.iter().rev() {
        vpow *= v;
        acc = acc * u + ci * &vpow;
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

impl SturmChain {
    /// Builds the chain of the squarefree part of `a`.
    pub fn new(a: &RatPoly) -> Result<Self, ExactError> {
        let normal = |p: &RatPoly| {
            RatPoly::from_coeffs(
                positive_integer_multiple(p)
                    .into_iter()
                    .map(Rational::from_integer)
                    .collect(),
            )
        };
        let f = normal(&squarefree_part(a)?);
        let mut sequence = vec![f.clone()];
        if !f.is_constant() {
            let mut prev = f.clone();
            let mut cur = normal(&f.derivative());
            while !cur.is_zero() {
                let next = normal(&-prev.rem(&cur)?);
                sequence.push(cur.clone());
                prev = cur;
                cur = next;
            }
        }
        let ints = sequence.iter().map(positive_integer_multiple).collect();
        Ok(SturmChain { sequence, ints })
    }

    pub fn variations(&self, at: &Bound) -> usize {
        let signs = self.sequence.iter().zip(&self.ints).map(|(p, c)| match at {
            Bound::NegInf => p.sign_at_infinity(false),
            Bound::PosInf => p.sign_at_infinity(true),
            Bound::Finite(x) => sign_at_integer(c, x),
        });
        count_variations(signs)
    }

    /// Number of distinct roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

fn count_variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Number of distinct real roots in the half-open interval `(lo, hi]`.
pub fn real_root_count(a: &RatPoly, lo: &Bound, hi: &Bound) -> Result<usize, ExactError> {
    if a.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    Ok(SturmChain::new(a)?.count(lo, hi))
}

/// Sign variations of `a(C)` and `a(-C)`.
pub fn descartes_bound(a: &RatPoly) -> Result<(usize, usize), ExactError> {
    if a.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    let pos = count_variations(a.coeffs().iter().map(sign_of));
    let neg = count_variations(a.reflect().coeffs().iter().map(sign_of));
    Ok((pos, neg))
}

/// `1 + max |a_i / a_n|`; every complex root has modulus strictly below it.
pub fn cauchy_bound(a: &RatPoly) -> Result<Rational, ExactError> {
    let lc = a.leading_coeff().ok_or(ExactError::ZeroInput)?.abs();
    let n = a.coeffs().len() - 1;
    let m = a.coeffs()[..n]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(Rational::one() + m)
}

/// A power of two strictly above the modulus of every complex root.
pub fn power_of_two_root_bound(a: &RatPoly) -> Result<Rational, ExactError> {
    let lc = a.leading_coeff().ok_or(ExactError::ZeroInput)?.abs();
    let n = a.coeffs().len() - 1;
    let bits = |x: &BigInt| x.bits() as i64;
    // |a_(n-i) / a_n| < 2^e  implies  |a_(n-i) / a_n|^(1/i) < 2^ceil(e/i)
    let k = (1..=n)
        .filter_map(|i| {
            let q = a.coeff(n - i).abs() / &lc;
            (!q.is_zero()).then(|| {
                let e = bits(q.numer()) - bits(q.denom()) + 1;
                e.div_euclid(i as i64) + i64::from(e.rem_euclid(i as i64) != 0)
            })
        })
        .max()
        .unwrap_or(0);
    let two = Rational::from_integer(2.into());
    Ok(two.pow((k + 2) as i32))
}

/// A point strictly inside `(lo, hi)` at which `f` does not vanish.
fn split_point(f: &[BigInt], lo: &Rational, hi: &Rational) -> Rational {
    let w = hi - lo;
    for den in 2i64.. {
        for num in 1..den {
            let m = lo + &w * Rational::new(num.into(), den.into());
            if sign_at_integer(f, &m) != 0 {
                return m;
            }
        }
    }
    unreachable!()
}

/// Disjoint isolating intervals for the real roots of a squarefree polynomial,
/// in increasing order.
pub fn isolate_real_roots(a: &RatPoly) -> Result<Vec<RootInterval>, ExactError> {
    if a.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    if a.is_constant() {
        return Ok(Vec::new());
    }
    if !super::gcd::poly_gcd(a, &a.derivative())?.is_constant() {
        return Err(ExactError::NotSquarefree);
    }
    if a.deg() == Some(1) {
        let root = -a.coeff(0) / a.coeff(1);
        return Ok(vec![RootInterval {
            lo: root.clone(),
            hi: root,
        }]);
    }
    let chain = SturmChain::new(a)?;
    let f = positive_integer_multiple(a);
    let b = power_of_two_root_bound(a)?;
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count(&Bound::Finite(lo.clone()), &Bound::Finite(hi.clone()));
        match n {
            0 => {}
            1 => out.push(normalize(&f, lo, hi)),
            _ => {
                let m = split_point(&f, &lo, &hi);
                stack.push((m.clone(), hi));
                stack.push((lo, m));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

fn normalize(f: &[BigInt], lo: Rational, hi: Rational) -> RootInterval {
    if sign_at_integer(f, &hi) == 0 {
        RootInterval { lo: hi.clone(), hi }
    } else {
        RootInterval { lo, hi }
    }
}

/// Bisects an isolating interval of the squarefree `a` until its width is below `width`.
pub fn refine_root(a: &RatPoly, iv: &RootInterval, width: &Rational) -> RootInterval {
    let f = positive_integer_multiple(a);
    let mut iv = iv.clone();
    let s_lo = sign_at_integer(&f, &iv.lo);
    while !iv.is_exact() && &iv.width() >= width {
        let m = iv.midpoint();
        let s = sign_at_integer(&f, &m);
        if s == 0 {
            return RootInterval {
                lo: m.clone(),
                hi: m,
            };
        }
        if s == s_lo {
            iv.lo = m;
        } else {
            iv.hi = m;
        }
    }
    iv
}

/// Distinct rational roots in increasing order.
pub fn rational_roots(a: &RatPoly) -> Result<Vec<Rational>, ExactError> {
    let f = squarefree_part(a)?;
    if f.is_constant() {
        return Ok(Vec::new());
    }
    let (_, ints) = f.primitive_integer();
    let lead: BigInt = ints.last().cloned().unwrap();
    let step = Rational::new(BigInt::one(), lead.clone());
    let mut roots = Vec::new();
    for iv in isolate_real_roots(&f)? {
        if iv.is_exact() {
            roots.push(iv.lo);
            continue;
        }
        // A rational root k/m in lowest terms has m | lead, so it lies on the grid step*Z.
        let iv = refine_root(&f, &iv, &step);
        if iv.is_exact() {
            roots.push(iv.lo);
            continue;
        }
        let lo_k = (&iv.lo * Rational::from_integer(lead.clone())).ceil();
        let hi_k = (&iv.hi * Rational::from_integer(lead.clone())).floor();
        let mut k = lo_k;
        while k <= hi_k {
            let x = &k * &step;
            if iv.contains(&x) && f.eval(&x).is_zero() {
                roots.push(x);
                break;
            }
            k += Rational::one();
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn all() -> (Bound, Bound) {
        (Bound::NegInf, Bound::PosInf)
    }

    fn p2_reduced() -> RatPoly {
        RatPoly::from_fracs(&[(2, 1), (23, 3), (0, 1), (-7, 1), (0, 1), (4, 3)])
    }

    #[test]
    fn counts() {
        let (lo, hi) = all();
        assert_eq!(
            real_root_count(&RatPoly::from_ints(&[-1, -3, 2]), &lo, &hi).unwrap(),
            2
        );
        assert_eq!(
            real_root_count(&RatPoly::from_ints(&[1, 0, 1]), &lo, &hi).unwrap(),
            0
        );
        assert_eq!(real_root_count(&p2_reduced(), &lo, &hi).unwrap(), 5);
        // (t-1)^2 (t+1): distinct roots only
        let a = &RatPoly::from_ints(&[-1, 1]).pow(2) * &RatPoly::from_ints(&[1, 1]);
        assert_eq!(real_root_count(&a, &lo, &hi).unwrap(), 2);
        let half = real_root_count(&p2_reduced(), &Bound::Finite(int(0)), &hi).unwrap();
        assert_eq!(half, 2);
    }

    #[test]
    fn isolation_examples() {
        let iv = isolate_real_roots(&RatPoly::from_fracs(&[(-3, 2), (1, 1)])).unwrap();
        assert_eq!(iv.len(), 1);
        assert!(iv[0].contains(&rat(3, 2)) || iv[0].is_exact());
        let q = RatPoly::from_ints(&[-1, -3, 2]);
        let iv = isolate_real_roots(&q).unwrap();
        assert_eq!(iv.len(), 2);
        let a = refine_root(&q, &iv[0], &rat(1, 2));
        let b = refine_root(&q, &iv[1], &rat(1, 2));
        assert!(a.lo >= int(-1) && a.hi <= int(0));
        assert!(b.lo >= int(1) && b.hi <= int(2));
        assert!(isolate_real_roots(&RatPoly::from_ints(&[1, 0, 1]))
            .unwrap()
            .is_empty());
        let sq = RatPoly::from_ints(&[1, -2, 1]);
        assert_eq!(isolate_real_roots(&sq), Err(ExactError::NotSquarefree));
    }

    #[test]
    fn descartes_examples() {
        assert_eq!(
            descartes_bound(&RatPoly::from_ints(&[0, -1, 0, 1])).unwrap(),
            (1, 1)
        );
        assert_eq!(descartes_bound(&p2_reduced()).unwrap(), (2, 3));
        assert_eq!(descartes_bound(&RatPoly::from_ints(&[5])).unwrap(), (0, 0));
    }

    #[test]
    fn rational_root_extraction() {
        let full = p2_reduced();
        assert_eq!(
            rational_roots(&full).unwrap(),
            vec![int(-2), int(-1), rat(3, 2)]
        );
        assert!(rational_roots(&RatPoly::from_ints(&[-2, 0, 1]))
            .unwrap()
            .is_empty());
        let a =
            &RatPoly::from_fracs(&[(-5, 7), (1, 1)]).pow(3) * &RatPoly::from_ints(&[3, 0, 0, 1]);
        assert_eq!(rational_roots(&a).unwrap(), vec![rat(5, 7)]);
    }

    #[test]
    fn cauchy_bound_dominates() {
        let b = cauchy_bound(&p2_reduced()).unwrap();
        for iv in isolate_real_roots(&p2_reduced()).unwrap() {
            assert!(iv.lo.abs() <= b && iv.hi.abs() <= b);
        }
    }
}
