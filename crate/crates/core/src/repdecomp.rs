//! Decomposition of a finite list of invertible rational matrices into
//! irreducible constituents with multiplicities.
//!
//! The splitting search works over the rationals: kernels of irreducible
//! factors of the minimal polynomial of random algebra elements are spun up
//! to invariant subspaces; invariant complements come from an exact
//! Sylvester-type solve (they exist precisely in the semisimple case, which
//! is the supported input class). Irreducibility of the leaves is certified
//! by reduction modulo configurable primes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{
    factor_squarefree_rational, image, left_kernel, min_poly, quotient_basis, solve_right, Mat,
    Rat, Subspace,
};
use crate::modular::{irreducibility_fp, FpMat, ModVerdict};

/// A finite list of invertible matrices of equal size acting on row vectors.
#[derive(Clone, Debug)]
pub struct Representation {
    pub dim: usize,
    pub generators: Vec<Mat>,
    pub labels: Option<Vec<String>>,
}

impl Representation {
    pub fn new(generators: Vec<Mat>) -> Self {
        assert!(!generators.is_empty(), "empty generator list");
        let dim = generators[0].rows();
        assert!(generators
            .iter()
            .all(|g| g.rows() == dim && g.cols() == dim));
        Representation {
            dim,
            generators,
            labels: None,
        }
    }

    pub fn with_labels(generators: Vec<Mat>, labels: Vec<String>) -> Self {
        let mut r = Representation::new(generators);
        assert_eq!(r.generators.len(), labels.len());
        r.labels = Some(labels);
        r
    }
}

/// How a constituent's irreducibility was established. Serializes as the
/// string `"modular:p"` or `"search-exhausted"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Irreducible after reduction modulo this prime (hence over Q).
    Modular(u64),
    /// The randomized search found no invariant subspace and no modular
    /// witness settled the question.
    SearchExhausted,
}

impl Serialize for Certificate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Certificate::Modular(p) => serializer.serialize_str(&format!("modular:{p}")),
            Certificate::SearchExhausted => serializer.serialize_str("search-exhausted"),
        }
    }
}

/// One isomorphism class of irreducible constituents.
#[derive(Clone, Debug, Serialize)]
pub struct Constituent {
    pub rank: usize,
    pub multiplicity: usize,
    /// Rows spanning one copy inside the ambient space.
    pub sub_basis: Subspace,
    /// Action of the original generators on that copy.
    pub restricted_generators: Vec<Mat>,
    pub certificate: Certificate,
    /// Dimension of the self-intertwiner space; 1 means absolutely
    /// irreducible.
    pub endomorphism_dim: usize,
}

#[derive(Clone, Debug)]
pub struct DecomposeConfig {
    pub seed: u64,
    pub attempts: usize,
    pub certificate_primes: Vec<u64>,
}

impl Default for DecomposeConfig {
    fn default() -> Self {
        DecomposeConfig {
            seed: 0,
            attempts: 25,
            certificate_primes: vec![101, 103, 107],
        }
    }
}

#[derive(Debug, Error)]
pub enum DecomposeError {
    #[error("no invariant complement found: input representation is not semisimple")]
    NotSemisimple,
    #[error("invariant subspace is not exactly invariant (internal error)")]
    InvarianceLost,
}

/// Per-prime verdict of the modular irreducibility witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PrimeVerdict {
    Irreducible,
    Reducible,
    Inconclusive,
    BadPrime,
}

/// Reduces the generators modulo each prime and runs the finite-field
/// irreducibility test. `Irreducible` at any good prime certifies
/// irreducibility over the rationals; `Reducible` everywhere is
/// inconclusive on its own.
pub fn modular_irreducibility_witness(
    r: &Representation,
    primes: &[u64],
    seed: u64,
) -> Vec<(u64, PrimeVerdict)> {
    let mut out = Vec::with_capacity(primes.len());
    for &p in primes {
        let gens: Result<Vec<FpMat>, _> =
            r.generators.iter().map(|g| FpMat::from_mat(g, p)).collect();
        let verdict = match gens {
            Err(_) => PrimeVerdict::BadPrime,
            Ok(gens) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
                match irreducibility_fp(&gens, &mut rng, 40) {
                    ModVerdict::Irreducible => PrimeVerdict::Irreducible,
                    ModVerdict::Reducible(_) => PrimeVerdict::Reducible,
                    ModVerdict::Inconclusive => PrimeVerdict::Inconclusive,
                }
            }
        };
        out.push((p, verdict));
    }
    out
}

/// Searches for a proper nonzero invariant subspace. Deterministic
/// structural checks first (common fixed vectors, span of the moved parts),
/// then random algebra elements with minimal-polynomial factor kernels spun
/// to invariance, in both the module and its transpose.
pub fn invariant_subspace(r: &Representation, cfg: &DecomposeConfig) -> Option<Subspace> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    invariant_subspace_with_rng(r, cfg.attempts, &mut rng)
}

fn invariant_subspace_with_rng(
    r: &Representation,
    attempts: usize,
    rng: &mut ChaCha8Rng,
) -> Option<Subspace> {
    let n = r.dim;
    if n <= 1 {
        return None;
    }
    let id = Mat::identity(n);

    // common fixed vectors of the row action
    let mut fixed = Subspace::full(n);
    for g in &r.generators {
        fixed = fixed.intersect(&left_kernel(&(g - &id)));
    }
    if !fixed.is_zero() && !fixed.is_full() {
        return Some(fixed);
    }
    if fixed.is_full() {
        // every generator is the identity: any line is invariant
        return Some(Subspace::from_rows(n, vec![unit_row(n, 0)]));
    }

    // span of the moved parts (invariant; proper iff a trivial quotient
    // splits off)
    let mut moved = Subspace::zero(n);
    for g in &r.generators {
        moved = moved.sum(&image(&(g - &id)));
    }
    if !moved.is_zero() && !moved.is_full() {
        return Some(moved);
    }

    let gens_t: Vec<Mat> = r.generators.iter().map(Mat::transpose).collect();
    for _ in 0..attempts {
        let candidate = random_algebra_element(&r.generators, rng);
        let poly = min_poly(&candidate);
        let factors = match factor_squarefree_rational(&poly) {
            Ok(f) => f,
            Err(_) => continue,
        };
        let mut irreducibles: Vec<_> = factors.into_iter().map(|(f, _)| f).collect();
        irreducibles.sort_by_key(|f| f.degree().unwrap_or(0));
        for f in &irreducibles {
            let evaluated = f.eval_mat(&candidate);
            let kernel = left_kernel(&evaluated);
            if kernel.is_zero() {
                continue;
            }
            for w in kernel.basis_rows() {
                let spun = spin(w, &r.generators);
                if !spun.is_full() {
                    return Some(spun);
                }
                // dual spin: a proper transposed-module subspace gives a
                // proper invariant annihilator
                let dual = left_kernel(&evaluated.transpose());
                if let Some(wd) = dual.basis_rows().first() {
                    let dual_spun = spin(wd, &gens_t);
                    if !dual_spun.is_full() {
                        return Some(annihilator(&dual_spun));
                    }
                }
            }
        }
    }
    None
}

fn unit_row(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

fn random_algebra_element(gens: &[Mat], rng: &mut ChaCha8Rng) -> Mat {
    let n = gens[0].rows();
    let mut acc = Mat::zero(n, n);
    for g in gens {
        let c = rng.gen_range(-2i64..=2);
        if c != 0 {
            acc = &acc + &g.scale(&Rat::from_int(c));
        }
    }
    if gens.len() >= 2 && rng.gen_bool(0.5) {
        let i = rng.gen_range(0..gens.len());
        let j = rng.gen_range(0..gens.len());
        let c = Rat::from_int(rng.gen_range(1i64..=2));
        acc = &acc + &(&gens[i] * &gens[j]).scale(&c);
    }
    acc
}

/// Closure of the span of `seed` under right multiplication, built
/// incrementally: every newly independent vector is pushed through all
/// generators once.
pub fn spin(seed: &[Rat], gens: &[Mat]) -> Subspace {
    let n = seed.len();
    let mut rows: Vec<Vec<Rat>> = Vec::new(); // reduced, with pivot map
    let mut pivots: Vec<usize> = Vec::new();
    let mut frontier = vec![seed.to_vec()];
    while let Some(mut v) = frontier.pop() {
        for (row, &piv) in rows.iter().zip(&pivots) {
            if !v[piv].is_zero() {
                let f = v[piv].clone();
                for (vj, rj) in v.iter_mut().zip(row) {
                    *vj -= &(&f * rj);
                }
            }
        }
        if let Some(piv) = v.iter().position(|e| !e.is_zero()) {
            let inv = v[piv].recip();
            for e in v.iter_mut() {
                *e = &*e * &inv;
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
    Subspace::from_rows(n, rows)
}

/// `{v : v u^T = 0 for all rows u of s}`.
fn annihilator(s: &Subspace) -> Subspace {
    let _n = s.ambient_dim();
    let m = Mat::from_rows(s.basis_rows().to_vec()).transpose();
    left_kernel(&m)
}

/// Action of each generator on an invariant row space: `R_g B = B g`.
pub fn restrict_generators(gens: &[Mat], basis: &Subspace) -> Vec<Mat> {
    let b = basis.basis_mat();
    let bt = b.transpose();
    gens.iter()
        .map(|g| {
            let img_t = (&b * g).transpose();
            let x = solve_right(&bt, &img_t).expect("basis is invariant");
            x.transpose()
        })
        .collect()
}

/// An invariant complement to `sub`, by solving the compatibility system on
/// a graph over a coordinate complement. `None` when the system is
/// inconsistent (non-semisimple input).
fn invariant_complement(gens: &[Mat], sub: &Subspace) -> Option<Subspace> {
    let n = sub.ambient_dim();
    let s = sub.dim();
    let t = n - s;
    if t == 0 {
        return Some(Subspace::zero(n));
    }
    if s == 0 {
        return Some(Subspace::full(n));
    }
    let (complement0, _) = quotient_basis(&Subspace::full(n), sub).expect("sub inside full");
    let mut rows = sub.basis_rows().to_vec();
    rows.extend(complement0.iter().cloned());
    let p_mat = Mat::from_rows(rows);
    let p_inv = p_mat.inverse().expect("basis change");

    // conjugated generators have block rows [A 0 / C B]
    let mut a_blocks = Vec::with_capacity(gens.len());
    let mut b_blocks = Vec::with_capacity(gens.len());
    let mut c_blocks = Vec::with_capacity(gens.len());
    for g in gens {
        let conj = &(&p_mat * g) * &p_inv;
        debug_assert!(conj.block(0, s, s, t).is_zero(), "sub not invariant");
        a_blocks.push(conj.block(0, 0, s, s));
        c_blocks.push(conj.block(s, 0, t, s));
        b_blocks.push(conj.block(s, s, t, t));
    }

    // unknown X (t x s): X A_g - B_g X = -C_g for every g
    let unknowns = s * t;
    let mut system = Mat::zero(gens.len() * unknowns, unknowns);
    let mut rhs = Mat::zero(gens.len() * unknowns, 1);
    for (gi, ((a, b), c)) in a_blocks.iter().zip(&b_blocks).zip(&c_blocks).enumerate() {
        for i in 0..t {
            for j in 0..s {
                let row = gi * unknowns + i * s + j;
                for k in 0..s {
                    // X[i,k] * A[k,j]
                    let idx = i * s + k;
                    system[(row, idx)] = &system[(row, idx)] + &a[(k, j)];
                }
                for k in 0..t {
                    // -B[i,k] * X[k,j]
                    let idx = k * s + j;
                    system[(row, idx)] = &system[(row, idx)] - &b[(i, k)];
                }
                rhs[(row, 0)] = -&c[(i, j)];
            }
        }
    }
    let x = solve_right(&system, &rhs)?;
    // complement rows: X * S + C0 in the original coordinates
    let mut rows = Vec::with_capacity(t);
    for i in 0..t {
        let mut row = complement0[i].clone();
        for j in 0..s {
            let coeff = &x[(i * s + j, 0)];
            if !coeff.is_zero() {
                for (col, v) in sub.basis_rows()[j].iter().enumerate() {
                    row[col] = &row[col] + &(coeff * v);
                }
            }
        }
        rows.push(row);
    }
    let complement = Subspace::from_rows(n, rows);
    debug_assert_eq!(complement.dim(), t);
    Some(complement)
}

struct Piece {
    /// Rows embedding the piece into the ambient space.
    embedding: Mat,
    gens: Vec<Mat>,
    certificate: Certificate,
}

/// Modular certificate attempt: the first prime whose reduction is
/// irreducible settles irreducibility over the rationals.
fn modular_certificate(gens: &[Mat], primes: &[u64], seed: u64) -> Option<u64> {
    for &p in primes {
        let reduced: Result<Vec<FpMat>, _> = gens.iter().map(|g| FpMat::from_mat(g, p)).collect();
        if let Ok(reduced) = reduced {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
            if irreducibility_fp(&reduced, &mut rng, 40) == ModVerdict::Irreducible {
                return Some(p);
            }
        }
    }
    None
}

/// Splits the representation into irreducible constituents grouped into
/// isomorphism classes. Requires semisimple input; a missing complement is
/// reported as an error rather than silently mis-split.
///
/// Each piece is first offered to the modular witness: an irreducible
/// reduction short-circuits the rational search, which only runs on pieces
/// the primes could not certify.
pub fn decompose(
    r: &Representation,
    cfg: &DecomposeConfig,
) -> Result<Vec<Constituent>, DecomposeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut leaves: Vec<Piece> = Vec::new();
    let mut stack = vec![Piece {
        embedding: Mat::identity(r.dim),
        gens: r.generators.clone(),
        certificate: Certificate::SearchExhausted,
    }];
    while let Some(mut piece) = stack.pop() {
        let dim = piece.embedding.rows();
        if dim == 0 {
            continue;
        }
        if let Some(p) = modular_certificate(&piece.gens, &cfg.certificate_primes, cfg.seed) {
            piece.certificate = Certificate::Modular(p);
            leaves.push(piece);
            continue;
        }
        let local = Representation::new(piece.gens.clone());
        match invariant_subspace_with_rng(&local, cfg.attempts, &mut rng) {
            None => {
                piece.certificate = Certificate::SearchExhausted;
                leaves.push(piece);
            }
            Some(sub) => {
                let comp =
                    invariant_complement(&piece.gens, &sub).ok_or(DecomposeError::NotSemisimple)?;
                for part in [sub, comp] {
                    if part.dim() == 0 {
                        continue;
                    }
                    let gens = restrict_generators(&piece.gens, &part);
                    let embedding = &part.basis_mat() * &piece.embedding;
                    stack.push(Piece {
                        embedding,
                        gens,
                        certificate: Certificate::SearchExhausted,
                    });
                }
            }
        }
    }

    // group leaves into isomorphism classes
    let mut classes: Vec<(Piece, usize)> = Vec::new();
    for leaf in leaves {
        let mut matched = false;
        for (rep_leaf, count) in classes.iter_mut() {
            if rep_leaf.embedding.rows() == leaf.embedding.rows()
                && equivalent(&rep_leaf.gens, &leaf.gens)
            {
                *count += 1;
                matched = true;
                break;
            }
        }
        if !matched {
            classes.push((leaf, 1));
        }
    }
    classes.sort_by_key(|(leaf, _)| leaf.embedding.rows());

    let mut out = Vec::with_capacity(classes.len());
    for (leaf, multiplicity) in classes {
        let rank = leaf.embedding.rows();
        let sub_basis = Subspace::row_space(&leaf.embedding);
        // exact invariance sanity: g maps the subspace onto itself
        for g in &r.generators {
            if sub_basis.apply(g) != sub_basis {
                return Err(DecomposeError::InvarianceLost);
            }
        }
        let restricted = restrict_generators(&r.generators, &sub_basis);
        let local = Representation::new(restricted.clone());
        let endomorphism_dim = endomorphism_dim(&local, &cfg.certificate_primes);
        out.push(Constituent {
            rank,
            multiplicity,
            sub_basis,
            restricted_generators: restricted,
            certificate: leaf.certificate,
            endomorphism_dim,
        });
    }
    debug_assert_eq!(
        out.iter().map(|c| c.rank * c.multiplicity).sum::<usize>(),
        r.dim
    );
    Ok(out)
}

/// Dimension of the self-intertwiner space. Since the modular nullity can
/// only exceed the rational one, a prime where it equals 1 certifies the
/// rational answer (the identity is always an intertwiner); otherwise the
/// exact rational system is solved.
fn endomorphism_dim(r: &Representation, primes: &[u64]) -> usize {
    for &p in primes {
        if let Some(d) = intertwiner_dim_mod_p(r, r, p) {
            if d == 1 {
                return 1;
            }
        }
    }
    intertwiner_space(r, r).dim()
}

/// Nullity of the intertwiner system modulo p; `None` when p divides a
/// denominator.
fn intertwiner_dim_mod_p(r1: &Representation, r2: &Representation, p: u64) -> Option<usize> {
    let g1: Result<Vec<FpMat>, _> = r1
        .generators
        .iter()
        .map(|g| FpMat::from_mat(g, p))
        .collect();
    let g2: Result<Vec<FpMat>, _> = r2
        .generators
        .iter()
        .map(|g| FpMat::from_mat(g, p))
        .collect();
    let (g1, g2) = (g1.ok()?, g2.ok()?);
    let (d1, d2) = (r1.dim, r2.dim);
    let unknowns = d1 * d2;
    let mut system = FpMat::zero(p, r1.generators.len() * unknowns, unknowns);
    for (gi, (m1, m2)) in g1.iter().zip(&g2).enumerate() {
        for i in 0..d1 {
            for j in 0..d2 {
                let row = gi * unknowns + i * d2 + j;
                for b in 0..d2 {
                    let idx = i * d2 + b;
                    let v = (system.get(row, idx) + m2.get(b, j)) % p;
                    system.set(row, idx, v);
                }
                for a in 0..d1 {
                    let idx = a * d2 + j;
                    let v = (system.get(row, idx) + p - m1.get(i, a)) % p;
                    system.set(row, idx, v);
                }
            }
        }
    }
    let rank = crate::modular::rank_fp(&system);
    Some(unknowns - rank)
}

fn equivalent(g1: &[Mat], g2: &[Mat]) -> bool {
    let r1 = Representation::new(g1.to_vec());
    let r2 = Representation::new(g2.to_vec());
    // cheap negative: zero modular nullity forces a zero rational one
    if let Some(0) = intertwiner_dim_mod_p(&r1, &r2, 101) {
        return false;
    }
    let hom = intertwiner_space(&r1, &r2);
    if hom.is_zero() {
        return false;
    }
    // between irreducibles any nonzero intertwiner is invertible
    let d1 = r1.dim;
    let x = Mat::from_fn(d1, r2.dim, |i, j| {
        hom.basis_rows()[0][i * r2.dim + j].clone()
    });
    x.is_invertible()
}

/// Solution space of `X g2 = g1 X` over all generator pairs, as row vectors
/// of length dim1 x dim2 (row-major flattening of X).
pub fn intertwiner_space(r1: &Representation, r2: &Representation) -> Subspace {
    assert_eq!(r1.generators.len(), r2.generators.len());
    let (d1, d2) = (r1.dim, r2.dim);
    let unknowns = d1 * d2;
    let mut system = Mat::zero(r1.generators.len() * unknowns, unknowns);
    for (gi, (g1, g2)) in r1.generators.iter().zip(&r2.generators).enumerate() {
        // equation (i,j): sum_b X[i,b] g2[b,j] - sum_a g1[i,a] X[a,j] = 0
        for i in 0..d1 {
            for j in 0..d2 {
                let row = gi * unknowns + i * d2 + j;
                for b in 0..d2 {
                    let idx = i * d2 + b;
                    system[(row, idx)] = &system[(row, idx)] + &g2[(b, j)];
                }
                for a in 0..d1 {
                    let idx = a * d2 + j;
                    system[(row, idx)] = &system[(row, idx)] - &g1[(i, a)];
                }
            }
        }
    }
    left_kernel(&system.transpose())
}
