//! Matrix representations over a small prime field: reduction from the
//! rationals, spinning, the standard irreducibility test (random algebra
//! element, kernel of an irreducible factor of its minimal polynomial, spin
//! in the module and its transpose), and full composition-factor chopping.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::factor::{factor_mod, mod_inv, ModPoly};
use crate::linalg::Mat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModularError {
    #[error("prime {0} divides a denominator of the representation")]
    BadPrime(u64),
    #[error("generators are empty or of mismatched size")]
    BadGenerators,
}

/// Dense matrix over F_p, row-major, entries reduced to [0, p).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpMat {
    pub p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMat {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        FpMat {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = FpMat::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Reduces a rational matrix mod p; fails when p divides a denominator.
    pub fn from_mat(m: &Mat, p: u64) -> Result<Self, ModularError> {
        let pm = BigInt::from(p);
        let mut data = Vec::with_capacity(m.rows() * m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let e = &m[(i, j)];
                let den = e.denom().mod_floor(&pm).to_u64().expect("small residue");
                if den == 0 {
                    return Err(ModularError::BadPrime(p));
                }
                let num = e.numer().mod_floor(&pm).to_u64().expect("small residue");
                data.push(num * mod_inv(den, p) % p);
            }
        }
        Ok(FpMat {
            p,
            rows: m.rows(),
            cols: m.cols(),
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { 1 } else { 0 }))
    }

    pub fn transpose(&self) -> FpMat {
        let mut out = FpMat::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows);
        let p = self.p;
        let mut out = FpMat::zero(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(k, j)) % p;
                }
            }
        }
        out
    }

    pub fn add_scaled_identity(&self, c: u64) -> FpMat {
        assert_eq!(self.rows, self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            let idx = i * self.cols + i;
            out.data[idx] = (out.data[idx] + c) % self.p;
        }
        out
    }

    pub fn scale(&self, c: u64) -> FpMat {
        let c = c % self.p;
        FpMat {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * c % self.p).collect(),
        }
    }

    pub fn add(&self, other: &FpMat) -> FpMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        FpMat {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| (a + b) % self.p)
                .collect(),
        }
    }

    /// `v * self` for a row vector.
    pub fn apply_row(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let p = self.p;
        let mut out = vec![0u64; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for j in 0..self.cols {
                out[j] = (out[j] + vi * self.get(i, j)) % p;
            }
        }
        out
    }

    /// Evaluates an integer-coefficient polynomial (mod p) at the matrix.
    pub(crate) fn eval_poly(&self, f: &ModPoly) -> FpMat {
        assert_eq!(self.rows, self.cols);
        let mut acc = FpMat::zero(self.p, self.rows, self.cols);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self).add_scaled_identity(c);
        }
        acc
    }
}

/// Row reduction in place; returns the rank.
pub fn rref_fp(m: &mut FpMat) -> usize {
    let p = m.p;
    let (rows, cols) = (m.rows, m.cols);
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        let pivot = match (pivot_row..rows).find(|&r| m.get(r, col) != 0) {
            Some(r) => r,
            None => continue,
        };
        if pivot != pivot_row {
            for j in 0..cols {
                let a = m.get(pivot, j);
                let b = m.get(pivot_row, j);
                m.set(pivot, j, b);
                m.set(pivot_row, j, a);
            }
        }
        let inv = mod_inv(m.get(pivot_row, col), p);
        for j in 0..cols {
            let v = m.get(pivot_row, j) * inv % p;
            m.set(pivot_row, j, v);
        }
        for r in 0..rows {
            if r != pivot_row {
                let f = m.get(r, col);
                if f != 0 {
                    for j in 0..cols {
                        let v = (m.get(r, j) + p - f * m.get(pivot_row, j) % p) % p;
                        m.set(r, j, v);
                    }
                }
            }
        }
        pivot_row += 1;
    }
    pivot_row
}

pub fn rank_fp(m: &FpMat) -> usize {
    let mut work = m.clone();
    rref_fp(&mut work)
}

/// Basis of `{v : v m = 0}` as rows.
pub fn left_kernel_fp(m: &FpMat) -> Vec<Vec<u64>> {
    let mt = m.transpose();
    // kernel of the column action of m^T
    let p = m.p;
    let mut work = mt.clone();
    let rank = rref_fp(&mut work);
    let cols = mt.cols();
    let mut pivots = Vec::with_capacity(rank);
    for i in 0..rank {
        let lead = (0..cols).find(|&j| work.get(i, j) != 0).unwrap();
        pivots.push(lead);
    }
    let mut basis = Vec::new();
    for f in 0..cols {
        if pivots.contains(&f) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[f] = 1;
        for (i, &piv) in pivots.iter().enumerate() {
            let c = work.get(i, f);
            if c != 0 {
                v[piv] = p - c;
            }
        }
        basis.push(v);
    }
    basis
}

/// Row-reduced spinning basis of `seed` under right multiplication by the
/// generators.
pub fn spin_fp(seed: &[u64], gens: &[FpMat]) -> Vec<Vec<u64>> {
    let p = gens[0].p;
    let n = seed.len();
    let mut rows: Vec<Vec<u64>> = Vec::new(); // kept reduced with pivot map
    let mut pivots: Vec<usize> = Vec::new();
    let mut frontier = vec![seed.to_vec()];
    while let Some(mut v) = frontier.pop() {
        // reduce v against current rows
        for (row, &piv) in rows.iter().zip(&pivots) {
            if v[piv] != 0 {
                let f = v[piv];
                for j in 0..n {
                    v[j] = (v[j] + p - f * row[j] % p) % p;
                }
            }
        }
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            let inv = mod_inv(v[piv], p);
            for x in v.iter_mut() {
                *x = *x * inv % p;
            }
            for g in gens {
                frontier.push(g.apply_row(&v));
            }
            rows.push(v);
            pivots.push(piv);
            if rows.len() == n {
                break;
            }
        }
    }
    rows
}

/// Minimal polynomial over F_p via per-vector annihilators.
pub(crate) fn min_poly_fp(m: &FpMat) -> ModPoly {
    let p = m.p;
    let n = m.rows();
    let mut acc = ModPoly::one(p);
    for start in 0..n {
        let mut v = vec![0u64; n];
        v[start] = 1;
        let local = local_annihilator_fp(m, v);
        let g = acc.gcd(&local);
        acc = acc.mul(&local).divrem(&g).0.monic();
        if acc.degree() == n {
            break;
        }
    }
    acc
}

fn local_annihilator_fp(m: &FpMat, v0: Vec<u64>) -> ModPoly {
    let p = m.p;
    let n = m.rows();
    let mut reduced: Vec<(Vec<u64>, usize)> = Vec::new(); // (augmented row, pivot)
    let mut v = v0;
    for step in 0..=n {
        let mut aug = v.clone();
        aug.extend(std::iter::repeat(0u64).take(n + 1));
        aug[n + step] = 1;
        for (row, piv) in &reduced {
            if aug[*piv] != 0 {
                let f = aug[*piv];
                for (a, r) in aug.iter_mut().zip(row) {
                    *a = (*a + p - f * *r % p) % p;
                }
            }
        }
        if aug[..n].iter().all(|&x| x == 0) {
            let mut coeffs = aug[n..n + step].to_vec();
            coeffs.push(1);
            return ModPoly::new(p, coeffs);
        }
        let piv = aug[..n].iter().position(|&x| x != 0).unwrap();
        let inv = mod_inv(aug[piv], p);
        for a in aug.iter_mut() {
            *a = *a * inv % p;
        }
        reduced.push((aug, piv));
        v = m.apply_row(&v);
    }
    unreachable!("annihilator of degree <= n always exists");
}

/// Verdict of the mod-p irreducibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModVerdict {
    Irreducible,
    /// A proper nonzero invariant row space (reduced basis).
    Reducible(Vec<Vec<u64>>),
    Inconclusive,
}

/// Random-element irreducibility test. Certified in both directions when it
/// answers: `Irreducible` comes from a full spin in the module and its
/// transpose for a factor of minimal nullity; `Reducible` carries a witness
/// submodule.
pub fn irreducibility_fp(gens: &[FpMat], rng: &mut ChaCha8Rng, tries: usize) -> ModVerdict {
    if gens.is_empty() {
        return ModVerdict::Inconclusive;
    }
    let p = gens[0].p;
    let n = gens[0].rows();
    if n == 1 {
        return ModVerdict::Irreducible;
    }
    let gens_t: Vec<FpMat> = gens.iter().map(FpMat::transpose).collect();
    for _ in 0..tries {
        let a = random_algebra_element_fp(gens, rng);
        let minp = min_poly_fp(&a);
        let mut factors: Vec<(ModPoly, u32)> = factor_mod(&minp);
        factors.sort_by_key(|(f, _)| f.degree());
        for (f, _) in &factors {
            let nmat = a.eval_poly(f);
            let kernel = left_kernel_fp(&nmat);
            if kernel.is_empty() {
                continue;
            }
            let spin = spin_fp(&kernel[0], gens);
            if spin.len() < n {
                return ModVerdict::Reducible(spin);
            }
            if kernel.len() == f.degree() {
                // minimal nullity: one dual spin decides
                let dual_kernel = left_kernel_fp(&nmat.transpose());
                let dual_spin = spin_fp(&dual_kernel[0], &gens_t);
                if dual_spin.len() < n {
                    return ModVerdict::Reducible(annihilator_fp(p, n, &dual_spin));
                }
                return ModVerdict::Irreducible;
            }
            // non-minimal nullity: try the remaining kernel vectors anyway
            for w in kernel.iter().skip(1) {
                let spin = spin_fp(w, gens);
                if spin.len() < n {
                    return ModVerdict::Reducible(spin);
                }
            }
        }
    }
    ModVerdict::Inconclusive
}

/// `{v : v u^T = 0 for all u in rows}`, the invariant annihilator of a
/// transposed-module submodule.
fn annihilator_fp(p: u64, n: usize, rows: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut m = FpMat::zero(p, n, rows.len());
    for (j, u) in rows.iter().enumerate() {
        for i in 0..n {
            m.set(i, j, u[i]);
        }
    }
    left_kernel_fp(&m)
}

fn random_algebra_element_fp(gens: &[FpMat], rng: &mut ChaCha8Rng) -> FpMat {
    let p = gens[0].p;
    let n = gens[0].rows();
    let mut acc = FpMat::zero(p, n, n);
    for g in gens {
        let c = rng.gen_range(0..4u64);
        if c != 0 {
            acc = acc.add(&g.scale(c));
        }
    }
    // mix in one random product to escape commutative traps
    if gens.len() >= 2 && rng.gen_bool(0.5) {
        let i = rng.gen_range(0..gens.len());
        let j = rng.gen_range(0..gens.len());
        acc = acc.add(&gens[i].mul(&gens[j]).scale(rng.gen_range(1..4u64)));
    }
    acc
}

/// Restriction of the generators to an invariant row space given by a
/// reduced basis.
fn restrict_fp(gens: &[FpMat], basis: &[Vec<u64>]) -> Vec<FpMat> {
    let p = gens[0].p;
    let s = basis.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).unwrap())
        .collect();
    gens.iter()
        .map(|g| {
            let mut out = FpMat::zero(p, s, s);
            for (i, row) in basis.iter().enumerate() {
                let mut img = g.apply_row(row);
                for (k, &piv) in pivots.iter().enumerate() {
                    // reduced basis rows: coordinate at a pivot is the
                    // coefficient of that basis row
                    let c = img[piv];
                    if c != 0 {
                        out.set(i, k, c);
                        for j in 0..img.len() {
                            img[j] = (img[j] + p - c * basis[k][j] % p) % p;
                        }
                    }
                }
                debug_assert!(img.iter().all(|&x| x == 0), "basis not invariant");
            }
            out
        })
        .collect()
}

/// Quotient action on the coordinates complementary to the pivots of the
/// invariant row space.
fn quotient_fp(gens: &[FpMat], basis: &[Vec<u64>]) -> Vec<FpMat> {
    let p = gens[0].p;
    let n = gens[0].rows();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).unwrap())
        .collect();
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let t = free.len();
    let reduce = |mut v: Vec<u64>| -> Vec<u64> {
        for (row, &piv) in basis.iter().zip(&pivots) {
            let f = v[piv];
            if f != 0 {
                for j in 0..n {
                    v[j] = (v[j] + p - f * row[j] % p) % p;
                }
            }
        }
        v
    };
    gens.iter()
        .map(|g| {
            let mut out = FpMat::zero(p, t, t);
            for (i, &fj) in free.iter().enumerate() {
                let mut e = vec![0u64; n];
                e[fj] = 1;
                let img = reduce(g.apply_row(&e));
                for (k, &fk) in free.iter().enumerate() {
                    out.set(i, k, img[fk]);
                }
            }
            out
        })
        .collect()
}

/// Dimensions of the composition factors, obtained by recursive chopping.
/// Sorted ascending.
pub fn composition_factor_dims(gens: &[FpMat], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = vec![gens.to_vec()];
    while let Some(current) = stack.pop() {
        let n = current[0].rows();
        if n == 0 {
            continue;
        }
        match irreducibility_fp(&current, rng, 60) {
            ModVerdict::Irreducible => out.push(n),
            ModVerdict::Reducible(sub) => {
                stack.push(restrict_fp(&current, &sub));
                stack.push(quotient_fp(&current, &sub));
            }
            ModVerdict::Inconclusive => {
                // treat as irreducible but flag by pushing the dimension;
                // callers compare against exact rational data and will fail
                // loudly on a mismatch
                out.push(n);
            }
        }
    }
    out.sort_unstable();
    out
}
