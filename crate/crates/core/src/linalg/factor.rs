//! Rational polynomial factorization: squarefree decomposition over Z,
//! distinct/equal-degree splitting modulo a small prime, Hensel lifting and
//! subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::poly::{self, IntPoly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
}

/// Factors a rational (integer-primitive) polynomial into irreducible
/// primitive integer factors with multiplicities. The product of the factors
/// raised to their multiplicities equals the input up to a rational scalar.
pub fn factor_squarefree_rational(p: &IntPoly) -> Result<Vec<(IntPoly, u32)>, FactorError> {
    if p.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in poly::squarefree_decomposition(p) {
        for factor in factor_squarefree(&part) {
            out.push((factor, mult));
        }
    }
    out.sort_by_key(|(f, m)| (f.degree().unwrap_or(0), *m, format!("{:?}", f)));
    Ok(out)
}

/// Factors a primitive squarefree integer polynomial of degree >= 1.
fn factor_squarefree(g: &IntPoly) -> Vec<IntPoly> {
    let d = g.degree().expect("nonzero input");
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        return vec![g.primitive()];
    }
    let lead = g.leading();
    if lead.is_one() {
        return zassenhaus_monic(g);
    }
    // Monic transform: G(x) = l^(d-1) g(x/l) is monic over Z; factors of g
    // are the primitive parts of H(l x) for H ranging over factors of G.
    let mut cs = Vec::with_capacity(d + 1);
    for (j, c) in g.coeffs().iter().enumerate() {
        if j == d {
            cs.push(BigInt::one());
        } else {
            cs.push(c * lead.pow((d - 1 - j) as u32));
        }
    }
    let monic = IntPoly::from_coeffs(cs);
    zassenhaus_monic(&monic)
        .into_iter()
        .map(|h| {
            let cs: Vec<BigInt> = h
                .coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| c * lead.pow(j as u32))
                .collect();
            IntPoly::from_coeffs(cs).primitive()
        })
        .collect()
}

/// Zassenhaus factorization of a monic squarefree integer polynomial.
fn zassenhaus_monic(g: &IntPoly) -> Vec<IntPoly> {
    let d = g.degree().expect("nonzero");
    if d == 1 {
        return vec![g.clone()];
    }
    let p = choose_prime(g);
    let gp = ModPoly::from_int_poly(g, p).monic();
    let modular = factor_squarefree_mod(&gp);
    if modular.len() == 1 {
        return vec![g.clone()];
    }
    // Landau-Mignotte: any monic integer factor h of g satisfies
    // |h_i| <= 2^d * ||g||_2 <= 2^d * ||g||_1.
    let norm1: BigInt = g.coeffs().iter().map(|c| c.abs()).sum();
    let bound = (BigInt::one() << (d + 1)) * norm1 + BigInt::one();
    // modulus of the shape p^(2^j) so the quadratic lifting sequence lands
    // on it exactly at every tree level
    let mut modulus = BigInt::from(p);
    while modulus < bound {
        modulus = &modulus * &modulus;
    }
    let lifted = lift_factor_tree(&reduce_mod(g, &modulus), &modular, p, &modulus);
    recombine(g, lifted, &modulus)
}

/// Subset-search recombination of lifted modular factors.
fn recombine(g: &IntPoly, lifted: Vec<IntPoly>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut pool = lifted;
    let mut remaining = g.clone();
    let mut out = Vec::new();
    let mut size = 1usize;
    loop {
        if pool.is_empty() {
            debug_assert_eq!(remaining.degree(), Some(0));
            break;
        }
        if 2 * size > pool.len() {
            out.push(remaining);
            break;
        }
        let idx: Vec<usize> = (0..pool.len()).collect();
        let mut found = None;
        'subsets: for subset in subsets_of_size(&idx, size) {
            let mut candidate = IntPoly::one();
            for &i in &subset {
                candidate = mulmod_int(&candidate, &pool[i], modulus);
            }
            let candidate = symmetric(&candidate, modulus);
            if let Some(rest) = remaining.div_exact(&candidate) {
                found = Some((subset, candidate, rest));
                break 'subsets;
            }
        }
        match found {
            Some((subset, factor, rest)) => {
                out.push(factor);
                remaining = rest;
                let drop: std::collections::HashSet<usize> = subset.into_iter().collect();
                pool = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !drop.contains(i))
                    .map(|(_, f)| f)
                    .collect();
            }
            None => size += 1,
        }
    }
    out
}

fn subsets_of_size(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(size);
    fn rec(
        items: &[usize],
        size: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            rec(items, size, i + 1, current, out);
            current.pop();
        }
    }
    rec(items, size, 0, &mut current, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Integer polynomials with coefficients taken modulo a BigInt (for lifting)
// ---------------------------------------------------------------------------

fn reduce_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::from_coeffs(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / 2;
    IntPoly::from_coeffs(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn mulmod_int(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    reduce_mod(&a.mul(b), m)
}

fn addmod_int(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    reduce_mod(&a.add(b), m)
}

fn submod_int(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    reduce_mod(&a.sub(b), m)
}

/// Division by a monic polynomial with coefficients mod m.
fn divrem_monic_int(a: &IntPoly, b: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    let db = b.degree().expect("monic divisor");
    debug_assert!(b.leading().is_one());
    let mut rem: Vec<BigInt> = a.coeffs().to_vec();
    if rem.len() <= db {
        return (IntPoly::zero(), reduce_mod(a, m));
    }
    let mut quo = vec![BigInt::zero(); rem.len() - db];
    for k in (0..quo.len()).rev() {
        let top = rem[k + db].mod_floor(m);
        if top.is_zero() {
            continue;
        }
        quo[k] = top.clone();
        for (i, c) in b.coeffs().iter().enumerate() {
            let v = (&rem[k + i] - &top * c).mod_floor(m);
            rem[k + i] = v;
        }
    }
    rem.truncate(db);
    (
        IntPoly::from_coeffs(quo.into_iter().map(|c| c.mod_floor(m)).collect()),
        IntPoly::from_coeffs(rem),
    )
}

/// One quadratic Hensel step: from f = u*v (mod m) with s*u + t*v = 1 (mod m)
/// to the same data modulo m^2 (coefficients of f taken mod m^2).
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &IntPoly,
    u: &IntPoly,
    v: &IntPoly,
    s: &IntPoly,
    t: &IntPoly,
    m2: &BigInt,
) -> (IntPoly, IntPoly, IntPoly, IntPoly) {
    let e = submod_int(f, &mulmod_int(u, v, m2), m2);
    let (q, r) = divrem_monic_int(&mulmod_int(s, &e, m2), v, m2);
    let v_new = addmod_int(v, &r, m2);
    // recompute u by exact division: f = u_new * v_new (mod m^2)
    let _ = q;
    let (u_new, rem) = divrem_monic_int(f, &v_new, m2);
    debug_assert!(reduce_mod(&rem, m2).is_zero(), "hensel division not exact");
    // lift the Bezout pair
    let b = submod_int(
        &addmod_int(&mulmod_int(s, &u_new, m2), &mulmod_int(t, &v_new, m2), m2),
        &IntPoly::one(),
        m2,
    );
    let (c, d) = divrem_monic_int(&mulmod_int(s, &b, m2), &v_new, m2);
    let s_new = submod_int(s, &d, m2);
    let t_new = submod_int(
        t,
        &addmod_int(&mulmod_int(t, &b, m2), &mulmod_int(&c, &u_new, m2), m2),
        m2,
    );
    (u_new, v_new, s_new, t_new)
}

/// Lifts the factorization of `f` (monic, known mod `target`) from the given
/// modular factors at `p` up to the target modulus, splitting recursively.
fn lift_factor_tree(f: &IntPoly, factors: &[ModPoly], p: u64, target: &BigInt) -> Vec<IntPoly> {
    if factors.len() == 1 {
        return vec![reduce_mod(f, target)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let u0 = left.iter().fold(ModPoly::one(p), |a, b| a.mul(b));
    let v0 = right.iter().fold(ModPoly::one(p), |a, b| a.mul(b));
    let (s0, t0) = u0.bezout(&v0);

    let mut u = u0.to_int_poly();
    let mut v = v0.to_int_poly();
    let mut s = s0.to_int_poly();
    let mut t = t0.to_int_poly();
    let mut m = BigInt::from(p);
    while &m < target {
        // lift to m^2 each round; overshooting the target is harmless
        let mstep = &m * &m;
        let (u2, v2, s2, t2) = hensel_step(&reduce_mod(f, &mstep), &u, &v, &s, &t, &mstep);
        u = u2;
        v = v2;
        s = s2;
        t = t2;
        m = mstep;
    }
    let mut out = lift_factor_tree(&reduce_mod(&u, &m), left, p, &m);
    out.extend(lift_factor_tree(&reduce_mod(&v, &m), right, p, &m));
    out.into_iter().map(|h| reduce_mod(&h, &m)).collect()
}

/// Smallest odd prime at which the polynomial stays squarefree with
/// invertible leading coefficient.
fn choose_prime(g: &IntPoly) -> u64 {
    let mut p = 3u64;
    loop {
        if is_prime(p) {
            let lead_ok = !g.leading().mod_floor(&BigInt::from(p)).is_zero();
            if lead_ok {
                let gp = ModPoly::from_int_poly(g, p);
                let dgp = gp.derivative();
                if !dgp.is_zero() && gp.gcd(&dgp).degree() == 0 {
                    return p;
                }
            }
        }
        p += 2;
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// ---------------------------------------------------------------------------
// Polynomials over F_p
// ---------------------------------------------------------------------------

/// Dense polynomial over F_p, lowest degree first, coefficients in [0, p).
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct ModPoly {
    pub p: u64,
    coeffs: Vec<u64>,
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

pub(crate) fn mod_pow(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

impl ModPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        ModPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        ModPoly::new(p, vec![0, 1])
    }

    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        let pm = BigInt::from(p);
        ModPoly::new(
            p,
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&pm).to_u64().unwrap())
                .collect(),
        )
    }

    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = mod_inv(self.leading(), self.p);
        ModPoly::new(
            self.p,
            self.coeffs.iter().map(|&c| c * inv % self.p).collect(),
        )
    }

    pub fn sub(&self, other: &ModPoly) -> ModPoly {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = (a + p - b) % p;
        }
        ModPoly::new(p, out)
    }

    pub fn mul(&self, other: &ModPoly) -> ModPoly {
        if self.is_zero() || other.is_zero() {
            return ModPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        ModPoly::new(p, out)
    }

    pub fn mul_scalar(&self, c: u64) -> ModPoly {
        ModPoly::new(
            self.p,
            self.coeffs
                .iter()
                .map(|&a| a * (c % self.p) % self.p)
                .collect(),
        )
    }

    pub fn divrem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.is_zero() || self.degree() < d.degree() {
            return (ModPoly::zero(p), self.clone());
        }
        let dinv = mod_inv(d.leading(), p);
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let mut quo = vec![0u64; rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let top = rem[k + dd] % p;
            if top == 0 {
                continue;
            }
            let q = top * dinv % p;
            quo[k] = q;
            for (i, &c) in d.coeffs.iter().enumerate() {
                rem[k + i] = (rem[k + i] + p - q * c % p) % p;
            }
        }
        rem.truncate(dd);
        (ModPoly::new(p, quo), ModPoly::new(p, rem))
    }

    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        self.divrem(d).1
    }

    pub fn gcd(&self, other: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns (s, t) with s*self + t*other = 1; panics if
    /// the inputs are not coprime.
    pub fn bezout(&self, other: &ModPoly) -> (ModPoly, ModPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (ModPoly::one(p), ModPoly::zero(p));
        let (mut t0, mut t1) = (ModPoly::zero(p), ModPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        assert_eq!(r0.degree(), 0, "bezout of non-coprime polynomials");
        let inv = mod_inv(r0.leading(), p);
        (s0.mul_scalar(inv), t0.mul_scalar(inv))
    }

    pub fn derivative(&self) -> ModPoly {
        if self.coeffs.len() <= 1 {
            return ModPoly::zero(self.p);
        }
        ModPoly::new(
            self.p,
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| c * ((i as u64 + 1) % self.p) % self.p)
                .collect(),
        )
    }

    /// self^e mod f, with a BigInt exponent.
    pub fn pow_mod_big(&self, e: &BigInt, f: &ModPoly) -> ModPoly {
        let mut acc = ModPoly::one(self.p);
        let mut base = self.rem(f);
        for bit in 0..e.bits() {
            if e.bit(bit) {
                acc = acc.mul(&base).rem(f);
            }
            base = base.mul(&base).rem(f);
        }
        acc
    }

    pub fn pow_mod(&self, e: u64, f: &ModPoly) -> ModPoly {
        self.pow_mod_big(&BigInt::from(e), f)
    }
}

/// Full factorization over F_p with multiplicities.
pub(crate) fn factor_mod(f: &ModPoly) -> Vec<(ModPoly, u32)> {
    let p = f.p;
    let mut out: Vec<(ModPoly, u32)> = Vec::new();
    let mut rest = f.monic();
    let mut outer_mult = 1u32;
    while rest.degree() > 0 {
        let deriv = rest.derivative();
        if deriv.is_zero() {
            // rest = h(x^p) = (h*(x))^p over F_p
            let mut root = Vec::new();
            for (i, &c) in rest.coeffs().iter().enumerate() {
                if i % (p as usize) == 0 {
                    root.push(c);
                }
            }
            rest = ModPoly::new(p, root);
            outer_mult *= p as u32;
            continue;
        }
        let squarefree = rest.divrem(&rest.gcd(&deriv)).0.monic();
        for factor in factor_squarefree_mod(&squarefree) {
            let mut mult = 0u32;
            loop {
                let (q, r) = rest.divrem(&factor);
                if r.is_zero() {
                    rest = q;
                    mult += 1;
                } else {
                    break;
                }
            }
            if mult > 0 {
                merge_factor(&mut out, factor, mult * outer_mult);
            }
        }
    }
    out
}

fn merge_factor(out: &mut Vec<(ModPoly, u32)>, f: ModPoly, mult: u32) {
    for (g, m) in out.iter_mut() {
        if *g == f {
            *m += mult;
            return;
        }
    }
    out.push((f, mult));
}

/// Irreducible factors of a monic squarefree polynomial over F_p
/// (distinct-degree followed by Cantor–Zassenhaus splitting).
pub(crate) fn factor_squarefree_mod(f: &ModPoly) -> Vec<ModPoly> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.monic();
    let mut h = ModPoly::x(p);
    let mut degree = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    while rest.degree() >= 1 {
        degree += 1;
        if 2 * degree > rest.degree() {
            out.push(rest.clone());
            break;
        }
        h = h.pow_mod(p, &rest);
        let split = h.sub(&ModPoly::x(p)).gcd(&rest);
        if split.degree() > 0 {
            equal_degree_split(&split, degree, &mut out, &mut rng);
            rest = rest.divrem(&split).0.monic();
            h = h.rem(&rest);
        }
    }
    out.sort_by_key(|f| (f.degree(), f.coeffs().to_vec()));
    out
}

/// Cantor–Zassenhaus equal-degree splitting for odd p.
fn equal_degree_split(f: &ModPoly, d: usize, out: &mut Vec<ModPoly>, rng: &mut ChaCha8Rng) {
    let p = f.p;
    if f.degree() == d {
        out.push(f.monic());
        return;
    }
    debug_assert!(p % 2 == 1, "equal-degree splitting requires an odd prime");
    let exponent = (BigInt::from(p).pow(d as u32) - BigInt::one()) / BigInt::from(2);
    loop {
        let a = ModPoly::new(p, (0..f.degree()).map(|_| rng.gen_range(0..p)).collect());
        if a.degree() == 0 && a.is_zero() {
            continue;
        }
        let b = a.pow_mod_big(&exponent, f);
        let g = b.sub(&ModPoly::one(p)).gcd(f);
        if g.degree() > 0 && g.degree() < f.degree() {
            equal_degree_split(&g, d, out, rng);
            equal_degree_split(&f.divrem(&g).0, d, out, rng);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64(cs)
    }

    #[test]
    fn factor_difference_of_squares() {
        let f = poly(&[-1, 0, 1]); // x^2 - 1
        let fs = factor_squarefree_rational(&f).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&(poly(&[-1, 1]), 1)));
        assert!(fs.contains(&(poly(&[1, 1]), 1)));
    }

    #[test]
    fn factor_irreducible_quadratic() {
        let f = poly(&[1, 0, 1]); // x^2 + 1
        let fs = factor_squarefree_rational(&f).unwrap();
        assert_eq!(fs, vec![(poly(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn factor_with_multiplicity() {
        // (x-1)^2 (x^2+x+1)
        let f = poly(&[1, -2, 1]).mul(&poly(&[1, 1, 1]));
        let fs = factor_squarefree_rational(&f).unwrap();
        assert!(fs.contains(&(poly(&[-1, 1]), 2)));
        assert!(fs.contains(&(poly(&[1, 1, 1]), 1)));
    }

    #[test]
    fn factor_nonmonic() {
        // (2x - 1)(3x + 5)
        let f = poly(&[-1, 2]).mul(&poly(&[5, 3]));
        let fs = factor_squarefree_rational(&f).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&(poly(&[-1, 2]), 1)));
        assert!(fs.contains(&(poly(&[5, 3]), 1)));
    }

    #[test]
    fn factor_degree_six_product() {
        // (x^2+1)(x^2-2)(x^2+x+1): pairwise distinct irreducibles
        let f = poly(&[1, 0, 1])
            .mul(&poly(&[-2, 0, 1]))
            .mul(&poly(&[1, 1, 1]));
        let fs = factor_squarefree_rational(&f).unwrap();
        let degs: Vec<usize> = fs.iter().map(|(g, _)| g.degree().unwrap()).collect();
        assert_eq!(degs, vec![2, 2, 2]);
        let product = fs.iter().fold(IntPoly::one(), |acc, (g, m)| {
            let mut a = acc;
            for _ in 0..*m {
                a = a.mul(g);
            }
            a
        });
        assert_eq!(product.primitive(), f.primitive());
    }

    #[test]
    fn factor_zero_errors() {
        assert_eq!(
            factor_squarefree_rational(&IntPoly::zero()).unwrap_err(),
            FactorError::ZeroPolynomial
        );
    }

    #[test]
    fn mod_poly_roundtrip() {
        let p = 101;
        let f = ModPoly::new(p, vec![3, 0, 1]);
        let g = ModPoly::new(p, vec![5, 1]);
        let (q, r) = f.divrem(&g);
        assert_eq!(f.sub(&g.mul(&q)), r);
    }

    #[test]
    fn cyclotomic_mod_five_splits() {
        // x^2 + 1 factors mod 5 as (x-2)(x-3)
        let f = ModPoly::new(5, vec![1, 0, 1]);
        let fs = factor_squarefree_mod(&f);
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|g| g.degree() == 1));
    }
}
