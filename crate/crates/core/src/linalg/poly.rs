use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mat::Mat;
use super::rat::Rat;
use super::subspace::rref_in_place;

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// stored lowest degree first. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::from_coeffs(vec![BigInt::one()])
    }

    pub fn x() -> Self {
        IntPoly::from_i64(&[0, 1])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn mul_scalar(&self, c: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigInt::from(i + 1))
                .collect(),
        )
    }

    /// GCD of all coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Content-free version with positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        IntPoly::from_coeffs(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Exact division; `None` when `self` is not a multiple of `d` over Z.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let (dn, dd) = (self.degree()?, d.degree()?);
        if dn < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); dn - dd + 1];
        let lead = d.leading();
        for k in (0..=dn - dd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            quo[k] = q.clone();
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_coeffs(quo))
    }

    /// Evaluates the polynomial at a square matrix.
    pub fn eval_mat(&self, m: &Mat) -> Mat {
        assert!(m.is_square(), "polynomial of a non-square matrix");
        let n = m.rows();
        let mut acc = Mat::zero(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Mat::identity(n).scale(&Rat::from_bigint(c.clone()));
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Rat::from_bigint(c.clone());
        }
        acc
    }

    /// Builds the primitive integer polynomial proportional to the monic
    /// rational polynomial with the given coefficients (lowest first,
    /// including the leading 1).
    pub fn from_monic_rational(coeffs: &[Rat]) -> IntPoly {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        IntPoly::from_coeffs(
            coeffs
                .iter()
                .map(|c| c.numer() * (&den / c.denom()))
                .collect(),
        )
        .primitive()
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{}", a)?,
                1 if a.is_one() => write!(f, "x")?,
                1 => write!(f, "{}*x", a)?,
                _ if a.is_one() => write!(f, "x^{}", i)?,
                _ => write!(f, "{}*x^{}", a, i)?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Primitive GCD via the subresultant polynomial remainder sequence.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let (mut f, mut g) = if a.degree() >= b.degree() {
        (a.primitive(), b.primitive())
    } else {
        (b.primitive(), a.primitive())
    };
    while !g.is_zero() {
        let r = pseudo_rem(&f, &g);
        f = g;
        g = r.primitive();
    }
    f.primitive()
}

/// Pseudo-remainder of `a` by `b`: lc(b)^(deg a - deg b + 1) * a mod b.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let da = a.degree().expect("zero dividend");
    let db = b.degree().expect("zero divisor");
    if da < db {
        return a.clone();
    }
    let lead = b.leading();
    let mut rem = a.clone();
    while let Some(dr) = rem.degree() {
        if dr < db {
            break;
        }
        let shift = dr - db;
        let top = rem.leading();
        // rem <- lc(b)*rem - top*x^shift*b
        let mut shifted = vec![BigInt::zero(); shift];
        shifted.extend(b.coeffs().iter().cloned());
        let sub = IntPoly::from_coeffs(shifted).mul_scalar(&top);
        rem = rem.mul_scalar(&lead).sub(&sub);
    }
    rem
}

/// lcm of two primitive polynomials, primitive with positive lead.
pub fn lcm(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() || b.is_zero() {
        return IntPoly::zero();
    }
    let g = gcd(a, b);
    a.mul(b)
        .div_exact(&g)
        .expect("gcd divides the product")
        .primitive()
}

/// Yun's squarefree decomposition of a primitive polynomial:
/// returns (g_i, i) with `p = content * prod g_i^i` and each g_i squarefree.
pub fn squarefree_decomposition(p: &IntPoly) -> Vec<(IntPoly, u32)> {
    let p = p.primitive();
    if p.is_constant() {
        return Vec::new();
    }
    let dp = p.derivative();
    let a0 = gcd(&p, &dp);
    if a0.is_constant() {
        return vec![(p, 1)];
    }
    let mut out = Vec::new();
    let mut b = p.div_exact(&a0).expect("gcd divides");
    let mut c = dp.div_exact(&a0).expect("gcd divides");
    let mut i = 1u32;
    loop {
        let d = c.sub(&b.derivative());
        if d.is_zero() {
            if b.degree().unwrap_or(0) > 0 {
                out.push((b.primitive(), i));
            }
            break;
        }
        let g = gcd(&b, &d);
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.primitive(), i));
        }
        b = b.div_exact(&g).expect("gcd divides");
        c = d.div_exact(&g).expect("gcd divides");
        i += 1;
        if b.is_constant() {
            break;
        }
    }
    out
}

/// Minimal polynomial of a square rational matrix, returned as the primitive
/// integer polynomial proportional to the monic one. Computed as the lcm of
/// the per-vector annihilators over the standard basis (Krylov iteration).
pub fn min_poly(m: &Mat) -> IntPoly {
    assert!(m.is_square(), "minimal polynomial of a non-square matrix");
    let n = m.rows();
    assert!(n > 0);
    let mut acc = IntPoly::one();
    for start in 0..n {
        let mut v = vec![Rat::zero(); n];
        v[start] = Rat::one();
        let local = local_annihilator(m, v);
        acc = lcm(&acc, &local);
        if acc.degree() == Some(n) {
            break;
        }
    }
    // normalize: primitive with positive leading coefficient
    acc.primitive()
}

/// Monic annihilator of a single vector under right multiplication,
/// as a primitive integer polynomial.
fn local_annihilator(m: &Mat, v0: Vec<Rat>) -> IntPoly {
    let n = m.rows();
    // Augmented rows [iterate | history coords], reduced incrementally.
    let mut reduced: Vec<Vec<Rat>> = Vec::new();
    let mut v = v0;
    for step in 0..=n {
        let mut aug = v.clone();
        aug.extend(std::iter::repeat(Rat::zero()).take(n + 1));
        aug[n + step] = Rat::one();
        // reduce against previous rows on the first n coordinates
        for row in &reduced {
            let pivot = row[..n].iter().position(|e| !e.is_zero()).unwrap();
            if !aug[pivot].is_zero() {
                let f = aug[pivot].clone();
                for (a, r) in aug.iter_mut().zip(row) {
                    *a -= &(&f * r);
                }
            }
        }
        if aug[..n].iter().all(Rat::is_zero) {
            // the tail records the annihilating combination of the iterates
            let mut coeffs: Vec<Rat> = aug[n..n + step].to_vec();
            coeffs.push(Rat::one());
            return IntPoly::from_monic_rational(&coeffs);
        }
        // normalize pivot to 1 for cheaper later reductions
        let pivot = aug[..n].iter().position(|e| !e.is_zero()).unwrap();
        let pinv = aug[pivot].recip();
        for a in aug.iter_mut() {
            *a = &*a * &pinv;
        }
        reduced.push(aug);
        v = m.apply_row(&v);
    }
    unreachable!("a vector in dimension n is annihilated by degree <= n");
}

/// Reduced-row-echelon helper shared with subspace code; re-exported here so
/// poly-internal callers avoid a dependency cycle.
#[allow(dead_code)]
fn _rref(m: &mut Mat) -> usize {
    rref_in_place(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_poly_identity() {
        let p = min_poly(&Mat::identity(2));
        assert_eq!(p, IntPoly::from_i64(&[-1, 1])); // x - 1
    }

    #[test]
    fn min_poly_jordan_block() {
        let m = Mat::from_i64(&[&[1, 1], &[0, 1]]);
        let p = min_poly(&m);
        assert_eq!(p, IntPoly::from_i64(&[1, -2, 1])); // (x-1)^2
        assert!(p.eval_mat(&m).is_zero());
    }

    #[test]
    fn min_poly_annihilates() {
        let m = Mat::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[2, -1, 3]]);
        let p = min_poly(&m);
        assert!(p.eval_mat(&m).is_zero());
        assert_eq!(p.degree(), Some(3));
    }

    #[test]
    fn gcd_and_lcm() {
        let a = IntPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let b = IntPoly::from_i64(&[-1, 1]); // x - 1
        assert_eq!(gcd(&a, &b), b);
        assert_eq!(lcm(&a, &b), a);
        let c = IntPoly::from_i64(&[1, 1]); // x + 1
        assert_eq!(lcm(&b, &c), a);
    }

    #[test]
    fn div_exact_detects_nondivisor() {
        let a = IntPoly::from_i64(&[-1, 0, 1]);
        let b = IntPoly::from_i64(&[1, 1]);
        assert_eq!(a.div_exact(&b).unwrap(), IntPoly::from_i64(&[-1, 1]));
        assert!(a.div_exact(&IntPoly::from_i64(&[1, 2])).is_none());
    }

    #[test]
    fn squarefree_of_power() {
        // (x-1)^2 (x+2)
        let p = IntPoly::from_i64(&[1, -2, 1]).mul(&IntPoly::from_i64(&[2, 1]));
        let parts = squarefree_decomposition(&p);
        assert_eq!(parts.len(), 2);
        assert!(parts.contains(&(IntPoly::from_i64(&[2, 1]), 1)));
        assert!(parts.contains(&(IntPoly::from_i64(&[-1, 1]), 2)));
    }
}
