//! Monodromy tuples of local systems on a punctured torus: validation,
//! Euler characteristics, the pullback along the inversion of the curve and
//! the convolution tuple with its handle twists.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{GeneratorWord, Letter};
use crate::linalg::{fixed_space, kronecker, Mat};

/// Images of the standard generators of the fundamental group of an
/// r-punctured torus: r local matrices and the two handle matrices,
/// subject to `A_1 ... A_r [A, B] = 1` with every entry invertible.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct MonodromyTuple {
    pub rank: usize,
    pub locals: Vec<Mat>,
    pub handle: (Mat, Mat),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TupleError {
    #[error("local matrix {0} is not square of the stated rank")]
    BadShape(usize),
    #[error("handle matrix {0} is not square of the stated rank")]
    BadHandleShape(usize),
    #[error("local matrix {0} is singular")]
    SingularLocal(usize),
    #[error("handle matrix {0} is singular")]
    SingularHandle(usize),
    #[error("product relation A_1...A_r [A,B] = 1 fails")]
    ProductRelation,
    #[error("all local monodromies are trivial (negligible object)")]
    Negligible,
    #[error("word index {0} out of range for {1} generators")]
    WordIndex(usize, usize),
}

impl MonodromyTuple {
    pub fn new(rank: usize, locals: Vec<Mat>, handle: (Mat, Mat)) -> Self {
        MonodromyTuple {
            rank,
            locals,
            handle,
        }
    }

    /// Tuple with identity handle matrices.
    pub fn with_trivial_handle(rank: usize, locals: Vec<Mat>) -> Self {
        MonodromyTuple {
            rank,
            locals,
            handle: (Mat::identity(rank), Mat::identity(rank)),
        }
    }

    pub fn local_count(&self) -> usize {
        self.locals.len()
    }

    /// Generator count including the handle pair.
    pub fn generator_count(&self) -> usize {
        self.locals.len() + 2
    }

    /// Generator by 1-based index: locals first, then the handle pair.
    pub fn generator(&self, index: usize) -> Option<&Mat> {
        let r = self.locals.len();
        match index {
            0 => None,
            i if i <= r => Some(&self.locals[i - 1]),
            i if i == r + 1 => Some(&self.handle.0),
            i if i == r + 2 => Some(&self.handle.1),
            _ => None,
        }
    }

    /// Checks the product relation exactly and invertibility of every entry.
    pub fn validate(&self) -> Result<(), TupleError> {
        let n = self.rank;
        for (i, m) in self.locals.iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(TupleError::BadShape(i + 1));
            }
            if !m.is_invertible() {
                return Err(TupleError::SingularLocal(i + 1));
            }
        }
        for (i, m) in [&self.handle.0, &self.handle.1].into_iter().enumerate() {
            if m.rows() != n || m.cols() != n {
                return Err(TupleError::BadHandleShape(i + 1));
            }
            if !m.is_invertible() {
                return Err(TupleError::SingularHandle(i + 1));
            }
        }
        if !self.relation_product().is_identity() {
            return Err(TupleError::ProductRelation);
        }
        Ok(())
    }

    /// `A_1 ... A_r * A * B * A^-1 * B^-1`.
    pub fn relation_product(&self) -> Mat {
        let mut acc = Mat::identity(self.rank);
        for m in &self.locals {
            acc = &acc * m;
        }
        let (a, b) = (&self.handle.0, &self.handle.1);
        let ainv = a.inverse().expect("validated handle");
        let binv = b.inverse().expect("validated handle");
        &(&(&(&acc * a) * b) * &ainv) * &binv
    }

    /// Euler characteristic `r*n - sum dim fixed(A_i)`. The formula needs at
    /// least one nontrivial local monodromy; the all-identity case is the
    /// smooth (negligible) one and is rejected.
    pub fn euler_char(&self) -> Result<i64, TupleError> {
        if self.locals.iter().all(Mat::is_identity) {
            return Err(TupleError::Negligible);
        }
        let n = self.rank as i64;
        let r = self.locals.len() as i64;
        let mut fixed_total = 0i64;
        for m in &self.locals {
            fixed_total += fixed_space(m).expect("square local").dim() as i64;
        }
        Ok(r * n - fixed_total)
    }

    /// Evaluates a word in the generators, left to right.
    pub fn evaluate_word(&self, w: &GeneratorWord) -> Result<Mat, TupleError> {
        let mut acc = Mat::identity(self.rank);
        let count = self.generator_count();
        for &Letter(k, e) in w.letters() {
            let m = self.generator(k).ok_or(TupleError::WordIndex(k, count))?;
            acc = &acc * &m.pow(e as i64);
        }
        Ok(acc)
    }
}

/// Generic rank of a convolution from the ranks and Euler characteristics
/// of the inputs: `rk1*chi2 + chi1*rk2`.
pub fn generic_rank_of_convolution(rk1: i64, chi1: i64, rk2: i64, chi2: i64) -> i64 {
    rk1 * chi2 + chi1 * rk2
}

/// Monodromy tuple of the pullback along the inversion of the curve: local
/// entries reversed with nested conjugation, handle rebuilt from the
/// inverses. The output satisfies the product relation whenever the input
/// does.
pub fn pullback_negation(t: &MonodromyTuple) -> Result<MonodromyTuple, TupleError> {
    t.validate()?;
    let r = t.locals.len();
    let mut locals = Vec::with_capacity(r);
    // suffix[i] = M_{i+1} * ... * M_r (empty product = identity)
    let mut suffix = Mat::identity(t.rank);
    let mut suffixes = vec![suffix.clone(); r + 1];
    for i in (0..r).rev() {
        suffix = &t.locals[i] * &suffix;
        suffixes[i] = suffix.clone();
    }
    for i in 0..r {
        // position i+1 holds M_{r-i} conjugated by M_{r-i+1} ... M_r
        let m = &t.locals[r - 1 - i];
        locals.push(m.conj(&suffixes[r - i]));
    }
    let total = &suffixes[0]; // M_1 ... M_r
    let total_inv = total.inverse().expect("validated locals");
    let a_new = &total_inv * &t.handle.0.inverse().expect("validated handle");
    let b_new = &t.handle.1.inverse().expect("validated handle") * total;
    let out = MonodromyTuple::new(t.rank, locals, (a_new, b_new));
    debug_assert!(out.relation_product().is_identity());
    Ok(out)
}

/// Monodromy tuple of the convolution of two local systems, together with
/// the provenance data and the handle twist matrices used by the cocycle
/// transformation of the two global deformations.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvolutionTuple {
    pub tuple: MonodromyTuple,
    /// (p, q, n1, n2): local counts and ranks of the two inputs.
    pub provenance: (usize, usize, usize, usize),
    pub twist_alpha: Mat,
    pub twist_beta: Mat,
}

/// Builds the convolution tuple: the first factor's locals tensored with the
/// identity, the negation-pullback of the second factor's locals tensored on
/// the other side, and the handle matrices twisted by the pullback handle.
pub fn convolution_tuple(
    t1: &MonodromyTuple,
    t2: &MonodromyTuple,
) -> Result<ConvolutionTuple, TupleError> {
    t1.validate()?;
    t2.validate()?;
    let (n1, n2) = (t1.rank, t2.rank);
    let (p, q) = (t1.locals.len(), t2.locals.len());
    let id1 = Mat::identity(n1);
    let id2 = Mat::identity(n2);
    let neg = pullback_negation(t2)?;
    let mut locals = Vec::with_capacity(p + q);
    for a in &t1.locals {
        locals.push(kronecker(a, &id2));
    }
    for b in &neg.locals {
        locals.push(kronecker(&id1, b));
    }
    let c_twisted = &neg.handle.0; // B_q^-1 ... B_1^-1 C^-1
    let d_twisted = &neg.handle.1; // D^-1 B_1 ... B_q
    let handle = (
        kronecker(&t1.handle.0, c_twisted),
        kronecker(&t1.handle.1, d_twisted),
    );
    let tuple = MonodromyTuple::new(n1 * n2, locals, handle);
    tuple.validate()?;
    let twist_alpha = kronecker(&id1, &c_twisted.inverse().expect("invertible twist"));
    let twist_beta = kronecker(&id1, &d_twisted.inverse().expect("invertible twist"));
    Ok(ConvolutionTuple {
        tuple,
        provenance: (p, q, n1, n2),
        twist_alpha,
        twist_beta,
    })
}
