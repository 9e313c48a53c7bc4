//! Shared test support: a definition-level cocycle oracle independent of
//! the library's matrix assembly, and random valid tuple generators.

use ellconv::braid::{GeneratorWord, Letter, TupleDeformation};
use ellconv::linalg::{Mat, Rat};
use ellconv::monodromy::MonodromyTuple;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Evaluates a cocycle, given by its values on the standard generators, at
/// an arbitrary word by folding the defining rule from the left:
/// starting from zero, a positive letter k maps the accumulator a to
/// a*A_k + v_k, an inverse letter to (a - v_k)*A_k^-1.
pub fn eval_cocycle(tuple: &MonodromyTuple, values: &[Vec<Rat>], word: &GeneratorWord) -> Vec<Rat> {
    let n = tuple.rank;
    let mut acc = vec![Rat::zero(); n];
    for &Letter(k, e) in word.letters() {
        let a = tuple.generator(k).expect("index in range");
        if e > 0 {
            let moved = a.apply_row(&acc);
            acc = moved
                .into_iter()
                .zip(&values[k - 1])
                .map(|(x, v)| &x + v)
                .collect();
        } else {
            let shifted: Vec<Rat> = acc.iter().zip(&values[k - 1]).map(|(x, v)| x - v).collect();
            let ainv = a.inverse().expect("invertible generator");
            acc = ainv.apply_row(&shifted);
        }
    }
    acc
}

/// Applies a tuple deformation to cocycle values definitionally: component
/// words are evaluated by the fold above and each result is twisted on the
/// right.
pub fn oracle_transform(
    tuple: &MonodromyTuple,
    values: &[Vec<Rat>],
    deformation: &TupleDeformation,
    twist: &Mat,
) -> Vec<Vec<Rat>> {
    deformation
        .components
        .iter()
        .map(|w| twist.apply_row(&eval_cocycle(tuple, values, w)))
        .collect()
}

pub fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let m = Mat::from_fn(n, n, |_, _| Rat::from_int(rng.gen_range(-3..=3)));
        if m.is_invertible() {
            return m;
        }
    }
}

/// Random valid tuple: the last local balances the product relation.
pub fn random_tuple(rank: usize, locals: usize, rng: &mut ChaCha8Rng) -> MonodromyTuple {
    assert!(locals >= 1);
    let mut ms: Vec<Mat> = (0..locals - 1)
        .map(|_| random_invertible(rank, rng))
        .collect();
    let a = random_invertible(rank, rng);
    let b = random_invertible(rank, rng);
    let mut prefix = Mat::identity(rank);
    for m in &ms {
        prefix = &prefix * m;
    }
    let comm = &(&(&a * &b) * &a.inverse().unwrap()) * &b.inverse().unwrap();
    ms.push(&prefix.inverse().unwrap() * &comm.inverse().unwrap());
    let t = MonodromyTuple::new(rank, ms, (a, b));
    t.validate().unwrap();
    t
}

/// Splits a flat evaluation-space vector into the r+2 component values.
pub fn unflatten(v: &[Rat], n: usize) -> Vec<Vec<Rat>> {
    v.chunks(n).map(|c| c.to_vec()).collect()
}
