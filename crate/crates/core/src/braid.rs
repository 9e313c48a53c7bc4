//! Words in the homotopy generators of a punctured torus and the braid
//! calculus acting on them. A tuple of generator words records where each
//! standard generator goes under a deformation; braid generators act by the
//! usual one-sided conjugation moves on neighbouring local strands and never
//! touch the two handle components.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Single letter: 1-based generator index with exponent +1 or -1.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Letter(pub usize, pub i8);

/// Word in the homotopy generators, serialized as a list of
/// `[index, exponent]` pairs. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorWord(pub Vec<Letter>);

impl GeneratorWord {
    pub fn identity() -> Self {
        GeneratorWord(Vec::new())
    }

    pub fn generator(index: usize) -> Self {
        GeneratorWord(vec![Letter(index, 1)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &GeneratorWord) -> GeneratorWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        GeneratorWord(letters)
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|l| l.0).max().unwrap_or(0)
    }
}

/// Reverses the word and flips every exponent.
pub fn invert(w: &GeneratorWord) -> GeneratorWord {
    GeneratorWord(
        w.0.iter()
            .rev()
            .map(|&Letter(k, e)| Letter(k, -e))
            .collect(),
    )
}

/// `by^-1 * w * by`.
pub fn conjugate(by: &GeneratorWord, w: &GeneratorWord) -> GeneratorWord {
    invert(by).concat(w).concat(by)
}

/// `by * w * by^-1`.
pub fn conjugate_inverse(by: &GeneratorWord, w: &GeneratorWord) -> GeneratorWord {
    by.concat(w).concat(&invert(by))
}

/// Cancels adjacent inverse pairs until none remain. No other rewriting.
pub fn free_reduce(w: &GeneratorWord) -> GeneratorWord {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.0.len());
    for &l in &w.0 {
        match stack.last() {
            Some(&Letter(k, e)) if k == l.0 && e == -l.1 => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    GeneratorWord(stack)
}

/// Braid word on the local strands: `+k` is the k-th braid generator,
/// `-k` its inverse. Serialized as a flat list of signed integers.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BraidWord(pub Vec<i32>);

impl BraidWord {
    pub fn inverse(&self) -> BraidWord {
        BraidWord(self.0.iter().rev().map(|&k| -k).collect())
    }
}

/// Images of the r+2 standard generators under a deformation. The last two
/// components are the handle generators; the first `local_count()` are the
/// local loops that braids are allowed to move.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TupleDeformation {
    pub components: Vec<GeneratorWord>,
}

impl TupleDeformation {
    /// Identity deformation on `locals` local generators plus the handle.
    pub fn identity(locals: usize) -> Self {
        TupleDeformation {
            components: (1..=locals + 2).map(GeneratorWord::generator).collect(),
        }
    }

    pub fn local_count(&self) -> usize {
        self.components.len() - 2
    }

    pub fn free_reduced(&self) -> TupleDeformation {
        TupleDeformation {
            components: self.components.iter().map(free_reduce).collect(),
        }
    }

    /// Ordered product of the local components.
    pub fn local_product(&self) -> GeneratorWord {
        let mut w = GeneratorWord::identity();
        for c in &self.components[..self.local_count()] {
            w = w.concat(c);
        }
        w
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("braid index {index} out of range for {locals} local strands")]
    IndexOutOfRange { index: i32, locals: usize },
    #[error("braid index 0 is not a generator")]
    ZeroIndex,
}

/// One braid generator move. For `j > 0` the strands j, j+1 are crossed with
/// component j+1 moving into slot j; for `j < 0` the inverse crossing.
/// Indices touching the handle components are rejected.
pub fn braid_step(j: i32, t: &TupleDeformation) -> Result<TupleDeformation, BraidError> {
    if j == 0 {
        return Err(BraidError::ZeroIndex);
    }
    let locals = t.local_count();
    let k = j.unsigned_abs() as usize;
    if k + 1 > locals {
        return Err(BraidError::IndexOutOfRange { index: j, locals });
    }
    let mut out = t.clone();
    let (a, b) = (k - 1, k); // 0-based slots
    if j > 0 {
        out.components[a] = t.components[b].clone();
        out.components[b] = conjugate(&t.components[b], &t.components[a]);
    } else {
        out.components[a] = conjugate_inverse(&t.components[a], &t.components[b]);
        out.components[b] = t.components[a].clone();
    }
    Ok(out)
}

/// Left-to-right composition of braid steps over the letters of `w`.
pub fn braid_action(w: &BraidWord, t: &TupleDeformation) -> Result<TupleDeformation, BraidError> {
    let mut acc = t.clone();
    for &j in &w.0 {
        acc = braid_step(j, &acc)?;
    }
    Ok(acc)
}

/// Deformation of the standard generators along the first handle path of
/// the base: locals in the first block are conjugated by the product of the
/// second block, the second block by the inverse handle generator, and the
/// handle picks up the inverse product.
pub fn global_alpha_deformation(p: usize, q: usize) -> TupleDeformation {
    assert!(p >= 1 && q >= 1);
    let r = p + q;
    let alpha = r + 1;
    let beta = r + 2;
    let mut components = Vec::with_capacity(r + 2);
    let block_up: Vec<Letter> = (p + 1..=r).map(|k| Letter(k, 1)).collect();
    let block_down: Vec<Letter> = (p + 1..=r).rev().map(|k| Letter(k, -1)).collect();
    for i in 1..=p {
        let mut w = block_down.clone();
        w.push(Letter(i, 1));
        w.extend(block_up.iter().copied());
        components.push(GeneratorWord(w));
    }
    for j in 1..=q {
        components.push(GeneratorWord(vec![
            Letter(alpha, 1),
            Letter(p + j, 1),
            Letter(alpha, -1),
        ]));
    }
    components.push(GeneratorWord::generator(alpha));
    let mut beta_word = block_down.clone();
    beta_word.push(Letter(beta, 1));
    components.push(GeneratorWord(beta_word));
    TupleDeformation { components }
}

/// Deformation along the second handle path of the base.
pub fn global_beta_deformation(p: usize, q: usize) -> TupleDeformation {
    assert!(p >= 1 && q >= 1);
    let r = p + q;
    let alpha = r + 1;
    let beta = r + 2;
    let mut components = Vec::with_capacity(r + 2);
    let block_up: Vec<Letter> = (p + 1..=r).map(|k| Letter(k, 1)).collect();
    let block_down: Vec<Letter> = (p + 1..=r).rev().map(|k| Letter(k, -1)).collect();
    for i in 1..=p {
        let mut w = vec![Letter(beta, 1)];
        w.extend(block_up.iter().copied());
        w.push(Letter(beta, -1));
        w.push(Letter(i, 1));
        w.push(Letter(beta, 1));
        w.extend(block_down.iter().copied());
        w.push(Letter(beta, -1));
        components.push(GeneratorWord(w));
    }
    for j in 1..=q {
        components.push(GeneratorWord(vec![
            Letter(beta, 1),
            Letter(p + j, 1),
            Letter(beta, -1),
        ]));
    }
    let mut alpha_word = block_up.clone();
    alpha_word.push(Letter(alpha, 1));
    components.push(GeneratorWord(alpha_word));
    components.push(GeneratorWord::generator(beta));
    TupleDeformation { components }
}

/// The 19 braid words moving the distinguished loops of the 19-point base
/// configuration, on 14 local strands (indices up to 13), 1-based list.
pub fn delta_words() -> Vec<BraidWord> {
    DELTA_WORDS.iter().map(|w| BraidWord(w.to_vec())).collect()
}

#[rustfmt::skip]
const DELTA_WORDS: [&[i32]; 19] = [
    &[7, 6, 8, 7, 5, 9, 4, 6, 8, 10, 3, 5, 9, 11, 4, 7, 10, 2, 6, 8, 12, 1, 3, 5, 7, 9, 11, 13, 2, 6, 8, 12, 4, 7, 10, 3, 5, 9, 11, 4, 6, 8, 10, 5, 9, 7, 6, 8, 7, 7, -8, -6, -7, -9, -5, -10, -8, -6, -4, -11, -9, -5, -3, -10, -7, -4, -12, -8, -6, -2, -13, -11, -9, -7, -5, -3, -1, -12, -8, -6, -2, -10, -7, -4, -11, -9, -5, -3, -10, -8, -6, -4, -9, -5, -7, -8, -6, -7],
    &[7, 6, 8, 7, 5, 9, 4, 6, 8, 10, 3, 5, 9, 11, 4, 7, 10, 2, 6, 8, 12, 1, 3, 5, 7, 9, 11, 13, 2, 6, 8, 12, 4, 7, 10, 3, 5, 9, 11, 4, 6, 8, 10, 5, 9, 7, 6, 6, 8, 8, -7, -9, -5, -10, -8, -6, -4, -11, -9, -5, -3, -10, -7, -4, -12, -8, -6, -2, -13, -11, -9, -7, -5, -3, -1, -12, -8, -6, -2, -10, -7, -4, -11, -9, -5, -3, -10, -8, -6, -4, -9, -5, -7, -8, -6, -7],
    &[7, 6, 8, 7, 5, 9, 4, 6, 8, 10, 3, 5, 9, 11, 4, 7, 10, 2, 6, 8, 12, 1, 3, 5, 7, 9, 11, 13, 2, 6, 8, 12, 4, 7, 10, 3, 5, 9, 11, 4, 6, 8, 10, 5, 9, 7, 7, -9, -5, -10, -8, -6, -4, -11, -9, -5, -3, -10, -7, -4, -12, -8, -6, -2, -13, -11, -9, -7, -5, -3, -1, -12, -8, -6, -2, -10, -7, -4, -11, -9, -5, -3, -10, -8, -6, -4, -9, -5, -7, -8, -6, -7],
    &[7, 6, 8, 7, 5, 9, 4, 6, 8, 10, 3, 5, 9, 11, 4, 7, 10, 2, 6, 8, 12, 1, 3, 5, 7, 9, 11, 13, 2, 6, 8, 12, 4, 7, 10, 3, 5, 9, 11, 4, 6, 8, 10, 5, 5, 9, 9, -10, -8, -6, -4, -11, -9, -5, -3, -10, -7, -4, -12, -8, -6, -2, -13, -11, -9, -7, -5, -3, -1, -12, -8, -6, -2, -10, -7, -4, -11, -9, -5, -3, -10, -8, -6, -4, -9, -5, -7, -8, -6, -7],
    &[7, 6, 8, 7, 5, 9, 4, 6, 8, 10, 3, 5, 9, 11, 4, 7, 10, 2, 6, 8, 12, 1, 3, 5, 7, 9, 11, 13, 2, 6, 8, 12, 4, 7, 10, 3, 5, 9, 11, 4, 4, 6, 6, 8, 8, 10, 10, -11, -9, -5, -3, -10, -7, -4, -12, -8, -6, -2, -13, -11, -9, -7, -5, -3, -1, -12, -8, -6, -2, -10, -7, -4, -11, -9, -5, -3, -10, -8, -6, -4, -9, -5, -7, -8, -6, -7],
    &[7, 6, 8, 7, 5, 9, 4, 6, 8, 10, 3, 5, 9, 11, 4, 7, 10, 2, 6, 8, 12, 1, 3, 5, 7, 9, 11, 13, 2, 6, 8, 12, 4, 7, 10, 3, 3, 5, 5, 9, 9, 11, 11, -10, -7, -4, -12, -8, -6, -2, -13, -11, -9, -7, -5, -3, -1, -12, -8, -6, -2, -10, -7, -4, -11, -9, -5, -3, -10, -8, -6, -4, -9, -5, -7, -8, -6, -7],
    &[7, 6, 8, 7, 5, 9, 4, 6, 8, 10, 3, 5, 9, 11, 4, 7, 10, 2, 6, 8, 12, 1, 3, 5, 7, 9, 11, 13, 2, 6, 8, 12, 4, 10, 7, 7, -10, -4, -12, -8, -6, -2, -13, -11, -9, -7, -5, -3, -1, -12, -8, -6, -2, -10, -7, -4, -11, -9, -5, -3, -10, -8, -6, -4, -9, -5, -7, -8, -6, -7],
    &[7, 6, 8, 7, 5, 9, 4, 6, 8, 10, 3, 5, 9, 11, 4, 7, 10, 2, 6, 8, 12, 1, 3, 5, 7, 9, 11, 13, 2, 6, 8, 12, 4, 4, 10, 10, -12, -8, -6, -2, -13, -11, -9, -7, -5, -3, -1, -12, -8, -6, -2, -10, -7, -4, -11, -9, -5, -3, -10, -8, -6, -4, -9, -5, -7, -8, -6, -7],
    &[7, 6, 8, 7, 5, 9, 4, 6, 8, 10, 3, 5, 9, 11, 4, 7, 10, 2, 6, 8, 12, 1, 3, 5, 7, 9, 11, 13, 2, 2, 6, 6, 8, 8, 12, 12, -13, -11, -9, -7, -5, -3, -1, -12, -8, -6, -2, -10, -7, -4, -11, -9, -5, -3, -10, -8, -6, -4, -9, -5, -7, -8, -6, -7],
    &[7, 6, 8, 7, 5, 9, 4, 6, 8, 10, 3, 5, 9, 11, 4, 7, 10, 2, 6, 8, 12, 1, 1, 3, 3, 5, 5, 7, 7, 9, 9, 11, 11, 13, 13, -12, -8, -6, -2, -10, -7, -4, -11, -9, -5, -3, -10, -8, -6, -4, -9, -5, -7, -8, -6, -7],
    &[7, 6, 8, 7, 5, 9, 4, 6, 8, 10, 3, 5, 9, 11, 4, 7, 10, 2, 2, 6, 6, 8, 8, 12, 12, -10, -7, -4, -11, -9, -5, -3, -10, -8, -6, -4, -9, -5, -7, -8, -6, -7],
    &[7, 6, 8, 7, 5, 9, 4, 6, 8, 10, 3, 5, 9, 11, 7, 4, 4, 10, 10, -7, -11, -9, -5, -3, -10, -8, -6, -4, -9, -5, -7, -8, -6, -7],
    &[7, 6, 8, 7, 5, 9, 4, 6, 8, 10, 3, 5, 9, 11, 7, 7, -11, -9, -5, -3, -10, -8, -6, -4, -9, -5, -7, -8, -6, -7],
    &[7, 6, 8, 7, 5, 9, 4, 6, 8, 10, 3, 3, 5, 5, 9, 9, 11, 11, -10, -8, -6, -4, -9, -5, -7, -8, -6, -7],
    &[7, 6, 8, 7, 5, 9, 4, 4, 6, 6, 8, 8, 10, 10, -9, -5, -7, -8, -6, -7],
    &[7, 6, 8, 7, 5, 5, 9, 9, -7, -8, -6, -7],
    &[7, 6, 8, 7, 7, -8, -6, -7],
    &[7, 6, 6, 8, 8, -7],
    &[7, 7],
];

/// Outcome of one relation instance.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub label: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub strands: usize,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&RelationCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

pub fn deformations_equal(a: &TupleDeformation, b: &TupleDeformation) -> bool {
    a.free_reduced() == b.free_reduced()
}

/// Verifies the two families of braid relations as identities of tuple
/// deformations (compared after free reduction): the exchange relation on
/// neighbouring generators and commutation at distance two or more.
pub fn check_braid_relations(strands: usize) -> RelationReport {
    assert!(strands >= 3, "relation check needs at least 3 strands");
    let id = TupleDeformation::identity(strands);
    let act = |word: &[i32]| braid_action(&BraidWord(word.to_vec()), &id).expect("valid indices");
    let mut checks = Vec::new();
    for i in 1..=(strands as i32) - 2 {
        let lhs = act(&[i, i + 1, i]);
        let rhs = act(&[i + 1, i, i + 1]);
        checks.push(RelationCheck {
            label: format!("exchange({},{})", i, i + 1),
            pass: deformations_equal(&lhs, &rhs),
        });
    }
    for i in 1..=(strands as i32) - 1 {
        for j in i + 2..=(strands as i32) - 1 {
            let lhs = act(&[i, j]);
            let rhs = act(&[j, i]);
            checks.push(RelationCheck {
                label: format!("commute({},{})", i, j),
                pass: deformations_equal(&lhs, &rhs),
            });
        }
    }
    RelationReport { strands, checks }
}

/// A deformation produced by a pure braid sends every local generator to a
/// conjugate of itself and fixes the handle components.
pub fn is_pure_conjugation(t: &TupleDeformation) -> bool {
    let locals = t.local_count();
    for (idx, c) in t.components.iter().enumerate() {
        let w = free_reduce(c);
        if idx >= locals {
            if w != GeneratorWord::generator(idx + 1) {
                return false;
            }
            continue;
        }
        // w must have the shape u^-1 (idx+1) u after free reduction
        if w.len() % 2 == 0 {
            return false;
        }
        let mid = w.len() / 2;
        if w.0[mid] != Letter(idx + 1, 1) {
            return false;
        }
        let prefix = GeneratorWord(w.0[..mid].to_vec());
        let suffix = GeneratorWord(w.0[mid + 1..].to_vec());
        if !free_reduce(&prefix.concat(&suffix)).is_empty() {
            return false;
        }
    }
    true
}
