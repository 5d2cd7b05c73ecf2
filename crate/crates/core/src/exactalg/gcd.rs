//! Gcds, resultants, squarefree decomposition and interpolation.

use num_traits::{One, Zero};

use super::{ExactError, RatPoly, Rational};

/// Monic greatest common divisor.
pub fn poly_gcd(a: &RatPoly, b: &RatPoly) -> Result<RatPoly, ExactError> {
    if a.is_zero() && b.is_zero() {
        return Err(ExactError::BothZero);
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y)?;
        x = y;
        y = r.monic();
    }
    Ok(x.monic())
}

/// Extended Euclid: returns `(g, s, u)` with `s*a + u*b = g`, `g` monic.
pub fn xgcd(a: &RatPoly, b: &RatPoly) -> Result<(RatPoly, RatPoly, RatPoly), ExactError> {
    if a.is_zero() && b.is_zero() {
        return Err(ExactError::BothZero);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (RatPoly::one(), RatPoly::zero());
    let (mut u0, mut u1) = (RatPoly::zero(), RatPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        let s2 = &s0 - &(&q * &s1);
        let u2 = &u0 - &(&q * &u1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        u0 = std::mem::replace(&mut u1, u2);
    }
    let inv = r0.lc().recip();
    Ok((r0.scale(&inv), s0.scale(&inv), u0.scale(&inv)))
}

fn rpow(x: &Rational, e: usize) -> Rational {
    num_traits::pow(x.clone(), e)
}

/// Resultant by the subresultant pseudo-remainder sequence.
pub fn resultant(a: &RatPoly, b: &RatPoly) -> Result<Rational, ExactError> {
    if a.is_zero() || b.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = Rational::one();
    let (da, db) = (a.deg().unwrap(), b.deg().unwrap());
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
    }
    if b.deg() == Some(0) {
        return Ok(s * rpow(&b.lc(), a.deg().unwrap()));
    }
    let mut g = Rational::one();
    let mut h = Rational::one();
    loop {
        let (dega, degb) = (a.deg().unwrap(), b.deg().unwrap());
        let delta = dega - degb;
        if dega % 2 == 1 && degb % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b)?;
        a = b;
        let div = &g * rpow(&h, delta);
        b = r.scale(&div.recip());
        g = a.lc();
        h = if delta == 0 {
            h
        } else {
            rpow(&g, delta) / rpow(&h, delta - 1)
        };
        match b.deg() {
            None => return Ok(Rational::zero()),
            Some(0) => {
                let dega = a.deg().unwrap();
                let res = rpow(&b.lc(), dega) / rpow(&h, dega - 1);
                return Ok(s * res);
            }
            Some(_) => {}
        }
    }
}

/// Resultant by the field Euclidean algorithm; used to cross-check.
pub fn resultant_euclid(a: &RatPoly, b: &RatPoly) -> Result<Rational, ExactError> {
    if a.is_zero() || b.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    let (da, db) = (a.deg().unwrap(), b.deg().unwrap());
    if db == 0 {
        return Ok(rpow(&b.lc(), da));
    }
    if da == 0 {
        return Ok(rpow(&a.lc(), db));
    }
    if da < db {
        let sign = if da % 2 == 1 && db % 2 == 1 {
            -Rational::one()
        } else {
            Rational::one()
        };
        return Ok(sign * resultant_euclid(b, a)?);
    }
    // res(a, b) = (-1)^(da db) res(b, a) = (-1)^(da db) lc(b)^(da - deg r) res(b, r)
    let r = a.rem(b)?;
    let Some(dr) = r.deg() else {
        return Ok(Rational::zero());
    };
    let sign = if da % 2 == 1 && db % 2 == 1 {
        -Rational::one()
    } else {
        Rational::one()
    };
    Ok(sign * rpow(&b.lc(), da - dr) * resultant_euclid(b, &r)?)
}

/// Resultant as the determinant of the Sylvester matrix.
pub fn sylvester_resultant(a: &RatPoly, b: &RatPoly) -> Result<Rational, ExactError> {
    if a.is_zero() || b.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    let (m, n) = (a.deg().unwrap(), b.deg().unwrap());
    let size = m + n;
    if size == 0 {
        return Ok(Rational::one());
    }
    let mut mat = vec![vec![Rational::zero(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            mat[i][i + j] = a.coeff(m - j);
        }
    }
    for i in 0..m {
        for j in 0..=n {
            mat[n + i][i + j] = b.coeff(n - j);
        }
    }
    Ok(determinant(mat))
}

/// Determinant by fraction-field Gaussian elimination.
pub fn determinant(mut mat: Vec<Vec<Rational>>) -> Rational {
    let n = mat.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !mat[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            mat.swap(piv, col);
            det = -det;
        }
        let p = mat[col][col].clone();
        det *= &p;
        let (top, rest) = mat.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest.iter_mut().filter(|row| !row[col].is_zero()) {
            let f = &row[col] / &p;
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Squarefree factorization `a = lc * prod f_i^m_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub unit: Rational,
    /// Monic, squarefree, pairwise coprime factors with increasing multiplicity.
    pub parts: Vec<(RatPoly, usize)>,
}

impl SquarefreeDecomposition {
    pub fn expand(&self) -> RatPoly {
        self.parts
            .iter()
            .fold(RatPoly::constant(self.unit.clone()), |acc, (f, m)| {
                &acc * &f.pow(*m)
            })
    }
}

/// Yun's algorithm.
pub fn squarefree_decompose(a: &RatPoly) -> Result<SquarefreeDecomposition, ExactError> {
    if a.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    let unit = a.lc();
    let f = a.monic();
    let mut parts = Vec::new();
    if f.is_constant() {
        return Ok(SquarefreeDecomposition { unit, parts });
    }
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df)?;
    let mut b = f.exact_div(&a0)?.expect("gcd divides");
    let c = df.exact_div(&a0)?.expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let ai = poly_gcd(&b, &d)?;
        let nb = b.exact_div(&ai)?.expect("gcd divides");
        let nc = d.exact_div(&ai)?.expect("gcd divides");
        d = &nc - &nb.derivative();
        b = nb;
        if !ai.is_constant() {
            parts.push((ai, i));
        }
        i += 1;
    }
    Ok(SquarefreeDecomposition { unit, parts })
}

/// Product of the distinct monic irreducible factors, computed as `a / gcd(a, a')`.
pub fn squarefree_part(a: &RatPoly) -> Result<RatPoly, ExactError> {
    if a.is_zero() {
        return Err(ExactError::ZeroInput);
    }
    if a.is_constant() {
        return Ok(RatPoly::one());
    }
    let g = poly_gcd(a, &a.derivative())?;
    Ok(a.exact_div(&g)?.expect("gcd divides").monic())
}

/// Maximal monic `h` with `h^k | a`.
pub fn power_part(a: &RatPoly, k: usize) -> Result<RatPoly, ExactError> {
    assert!(k >= 1, "power_part needs k >= 1");
    let sq = squarefree_decompose(a)?;
    Ok(sq
        .parts
        .iter()
        .fold(RatPoly::one(), |acc, (f, m)| &acc * &f.pow(m / k)))
}

/// The unique polynomial of degree below `xs.len()` through the given points.
///
/// Panics when two abscissae coincide.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> RatPoly {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut dd: Vec<Rational> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = &xs[i] - &xs[i - j];
            assert!(!den.is_zero(), "repeated interpolation node");
            dd[i] = (&dd[i] - &dd[i - 1]) / den;
        }
    }
    let mut acc = RatPoly::zero();
    for i in (0..n).rev() {
        let lin = RatPoly::from_coeffs(vec![-xs[i].clone(), Rational::one()]);
        acc = &(&acc * &lin) + &RatPoly::constant(dd[i].clone());
    }
    acc
}
