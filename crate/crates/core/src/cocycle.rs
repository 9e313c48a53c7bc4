//! Cocycle model of the first parabolic cohomology of a punctured torus and
//! the transformation of cocycles under tuple deformations.
//!
//! A cocycle is stored through its evaluation on the standard generators, a
//! row vector in V^(r+2). The admissible evaluations form the subspace H
//! (local values confined to the image of A_i - 1, plus one linear relation
//! from the defining relator); coboundaries form the subspace E. The
//! cohomology is the quotient W = H/E, handled through an explicit
//! complement basis with projection and section maps.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braid::{
    braid_action, delta_words, global_alpha_deformation, global_beta_deformation, BraidError,
    BraidWord, Letter, TupleDeformation,
};
use crate::linalg::{image, quotient_basis, Mat, Rat, Subspace};
use crate::monodromy::{convolution_tuple, ConvolutionTuple, MonodromyTuple, TupleError};

#[derive(Debug, Error)]
pub enum CocycleError {
    #[error("invalid monodromy tuple: {0}")]
    Tuple(#[from] TupleError),
    #[error("braid word error: {0}")]
    Braid(#[from] BraidError),
    #[error("deformation has {got} components, tuple needs {want}")]
    ComponentCount { got: usize, want: usize },
    #[error("deformation word index {0} out of range")]
    WordIndex(usize),
    #[error("twist matrix must be invertible {0}x{0}")]
    BadTwist(usize),
    #[error("deformation does not preserve the admissible-cocycle space")]
    NotPreservingH,
    #[error("deformation does not preserve the coboundary space")]
    NotPreservingE,
    #[error("convolution monodromy needs 7+7 local points, got {p}+{q}")]
    ConfigurationMismatch { p: usize, q: usize },
}

/// The cocycle spaces of a monodromy tuple, with the quotient data.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub tuple: MonodromyTuple,
    pub h_basis: Subspace,
    pub e_basis: Subspace,
    pub w_dim: usize,
    /// N x w matrix: right multiplication sends an H-vector to its class.
    pub class_map: Mat,
    /// w x N matrix of complement representatives; rows lift W-coordinates.
    pub section: Mat,
}

/// Transformation of evaluated cocycles induced by one tuple deformation:
/// the matrix on the full evaluation space and its action on the quotient.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DeformationMatrix {
    pub full: Mat,
    pub induced: Mat,
}

/// Builds the admissible-cocycle space, the coboundary space and the
/// quotient data for a valid tuple.
pub fn build_cocycle_space(t: &MonodromyTuple) -> Result<CocycleSpace, CocycleError> {
    t.validate()?;
    let n = t.rank;
    let r = t.locals.len();
    let total = n * (r + 2);

    // Suffix products S_i = A_{i+1} ... A_r (S_r = identity).
    let mut suffixes = vec![Mat::identity(n); r + 1];
    for i in (0..r).rev() {
        suffixes[i] = &t.locals[i] * &suffixes[i + 1];
    }
    // suffixes[i] = A_{i+1} ... A_r holds for the *relation* coefficient of
    // v_i when indexed by i+1; shift below uses suffixes[i+1].

    let (a, b) = (&t.handle.0, &t.handle.1);
    let ainv = a.inverse().expect("validated");
    let binv = b.inverse().expect("validated");
    let handle_coeff_a = &(&(b - &Mat::identity(n)) * &binv) * &ainv;
    let handle_coeff_b = &(&(&Mat::identity(n) - a) * &binv) * &ainv;

    // Parameters: coordinates of v_i in a basis of Im(A_i - 1) for each
    // local slot, then the two free handle vectors.
    let local_images: Vec<Subspace> = t
        .locals
        .iter()
        .map(|m| image(&(m - &Mat::identity(n))))
        .collect();
    let param_dim: usize = local_images.iter().map(Subspace::dim).sum::<usize>() + 2 * n;

    // Relation matrix R (param_dim x n): the defining relator evaluated on a
    // parametrized cocycle must vanish.
    let mut relation = Mat::zero(param_dim, n);
    let mut row = 0usize;
    for (i, img) in local_images.iter().enumerate() {
        let coeff = &suffixes[i + 1]; // A_{i+2}...A_r for 0-based i
        for basis_row in img.basis_rows() {
            let contrib = coeff_apply(basis_row, coeff);
            for (j, val) in contrib.into_iter().enumerate() {
                relation[(row, j)] = val;
            }
            row += 1;
        }
    }
    for k in 0..n {
        let mut unit = vec![Rat::zero(); n];
        unit[k] = Rat::one();
        let contrib = coeff_apply(&unit, &handle_coeff_a);
        for (j, val) in contrib.into_iter().enumerate() {
            relation[(row, j)] = val;
        }
        row += 1;
    }
    for k in 0..n {
        let mut unit = vec![Rat::zero(); n];
        unit[k] = Rat::one();
        let contrib = coeff_apply(&unit, &handle_coeff_b);
        for (j, val) in contrib.into_iter().enumerate() {
            relation[(row, j)] = val;
        }
        row += 1;
    }
    debug_assert_eq!(row, param_dim);

    // Solutions x with x * relation = 0, mapped into evaluation vectors.
    let param_solutions = crate::linalg::left_kernel(&relation);
    let mut h_rows = Vec::with_capacity(param_solutions.dim());
    for sol in param_solutions.basis_rows() {
        let mut v = vec![Rat::zero(); total];
        let mut offset = 0usize;
        for (i, img) in local_images.iter().enumerate() {
            for (bi, basis_row) in img.basis_rows().iter().enumerate() {
                let c = &sol[offset + bi];
                if !c.is_zero() {
                    for (j, e) in basis_row.iter().enumerate() {
                        let idx = i * n + j;
                        let add = c * e;
                        v[idx] = &v[idx] + &add;
                    }
                }
            }
            offset += img.dim();
        }
        for h in 0..2 {
            for j in 0..n {
                v[(r + h) * n + j] = sol[offset + h * n + j].clone();
            }
        }
        h_rows.push(v);
    }
    let h_basis = Subspace::from_rows(total, h_rows);

    // Coboundaries: rows of [A_1-1 | ... | A_r-1 | A-1 | B-1].
    let mut cob = Mat::zero(n, total);
    for (i, m) in t.locals.iter().chain([a, b]).enumerate() {
        let diff = m - &Mat::identity(n);
        cob.insert_block(&diff, 0, i * n);
    }
    let e_basis = Subspace::row_space(&cob);

    debug_assert!(h_basis.contains_subspace(&e_basis));
    let (complement, class_map) = quotient_basis(&h_basis, &e_basis).expect("E inside H");
    let w_dim = complement.len();
    let section = if w_dim == 0 {
        Mat::zero(0, total)
    } else {
        Mat::from_rows(complement)
    };
    Ok(CocycleSpace {
        tuple: t.clone(),
        h_basis,
        e_basis,
        w_dim,
        class_map,
        section,
    })
}

/// `v * m` for a row vector.
fn coeff_apply(v: &[Rat], m: &Mat) -> Vec<Rat> {
    m.apply_row(v)
}

impl CocycleSpace {
    /// Matrix of the cocycle transformation attached to a tuple deformation:
    /// each deformed evaluation is the cocycle-rule expansion of the
    /// component word, then every component is twisted on the right. The
    /// resulting map must preserve the admissible and coboundary spaces,
    /// which is verified exactly; the induced matrix is the quotient action.
    pub fn deformation_matrix(
        &self,
        d: &TupleDeformation,
        twist: &Mat,
    ) -> Result<DeformationMatrix, CocycleError> {
        let full = self.assemble_full(d, twist)?;
        let h_image = self.h_basis.apply(&full);
        if h_image != self.h_basis {
            return Err(CocycleError::NotPreservingH);
        }
        let e_image = self.e_basis.apply(&full);
        if e_image != self.e_basis {
            return Err(CocycleError::NotPreservingE);
        }

        let induced = if self.w_dim == 0 {
            Mat::zero(0, 0)
        } else {
            &(&self.section * &full) * &self.class_map
        };
        Ok(DeformationMatrix { full, induced })
    }

    /// Assembles the matrix on the full evaluation space without the
    /// invariance checks: block (k, comp) collects, over the occurrences of
    /// generator k in the component word, the suffix product of the letters
    /// after it (negated and premultiplied by the inverse generator for an
    /// inverse occurrence), and every block column is twisted on the right.
    ///
    /// Exposed for definition-level cross-checks; use `deformation_matrix`
    /// for the checked transformation.
    pub fn full_transformation_matrix(
        &self,
        d: &TupleDeformation,
        twist: &Mat,
    ) -> Result<Mat, CocycleError> {
        self.assemble_full(d, twist)
    }

    fn assemble_full(&self, d: &TupleDeformation, twist: &Mat) -> Result<Mat, CocycleError> {
        let t = &self.tuple;
        let n = t.rank;
        let r = t.locals.len();
        let gens = r + 2;
        if d.components.len() != gens {
            return Err(CocycleError::ComponentCount {
                got: d.components.len(),
                want: gens,
            });
        }
        if twist.rows() != n || twist.cols() != n || !twist.is_invertible() {
            return Err(CocycleError::BadTwist(n));
        }

        let mut mats = Vec::with_capacity(gens);
        let mut invs = Vec::with_capacity(gens);
        for k in 1..=gens {
            let m = t.generator(k).expect("index in range");
            mats.push(m.clone());
            invs.push(m.inverse().expect("validated tuple"));
        }

        let total = n * gens;
        let mut full = Mat::zero(total, total);
        for (comp, word) in d.components.iter().enumerate() {
            let letters = word.letters();
            let m = letters.len();
            // suffix[j] = evaluation of the letters after position j-1
            let mut suffix = vec![Mat::identity(n); m + 1];
            for j in (0..m).rev() {
                let Letter(k, e) = letters[j];
                if k == 0 || k > gens {
                    return Err(CocycleError::WordIndex(k));
                }
                let factor = if e >= 0 { &mats[k - 1] } else { &invs[k - 1] };
                suffix[j] = factor * &suffix[j + 1];
            }
            let mut blocks = vec![Mat::zero(n, n); gens];
            for (j, &Letter(k, e)) in letters.iter().enumerate() {
                let term = if e >= 0 {
                    suffix[j + 1].clone()
                } else {
                    -&(&invs[k - 1] * &suffix[j + 1])
                };
                blocks[k - 1] = &blocks[k - 1] + &term;
            }
            for (k, block) in blocks.iter().enumerate() {
                if block.is_zero() {
                    continue;
                }
                full.insert_block(&(block * twist), k * n, comp * n);
            }
        }
        Ok(full)
    }
}

/// The convolution monodromy bundle: the convolution tuple, its cocycle
/// space and the 21 matrices (19 distinguished loops of the base followed by
/// the two handle loops, the latter inverted so the product relation of the
/// base group holds on the quotient).
#[derive(Clone, Debug)]
pub struct ConvolutionMonodromy {
    pub convolution: ConvolutionTuple,
    pub space: CocycleSpace,
    pub matrices: Vec<DeformationMatrix>,
}

impl ConvolutionMonodromy {
    pub fn w_dim(&self) -> usize {
        self.space.w_dim
    }

    pub fn induced(&self) -> Vec<&Mat> {
        self.matrices.iter().map(|m| &m.induced).collect()
    }

    /// `M_1 ... M_19 [M_20, M_21]` on the quotient.
    pub fn product_relation(&self) -> Mat {
        let w = self.space.w_dim;
        let mut acc = Mat::identity(w);
        for m in &self.matrices[..19] {
            acc = &acc * &m.induced;
        }
        let m20 = &self.matrices[19].induced;
        let m21 = &self.matrices[20].induced;
        let comm = &(&(m20 * m21) * &m20.inverse().expect("invertible"))
            * &m21.inverse().expect("invertible");
        &acc * &comm
    }
}

/// Monodromy of the self/pairwise convolution of two 7-point tuples: the 19
/// hard-coded loop words apply exactly to the 7+7 configuration.
pub fn convolution_monodromy(
    t1: &MonodromyTuple,
    t2: &MonodromyTuple,
) -> Result<ConvolutionMonodromy, CocycleError> {
    let (p, q) = (t1.locals.len(), t2.locals.len());
    if p != 7 || q != 7 {
        return Err(CocycleError::ConfigurationMismatch { p, q });
    }
    convolution_monodromy_with_words(t1, t2, &delta_words())
}

/// General version: caller supplies the loop words on p+q strands.
pub fn convolution_monodromy_with_words(
    t1: &MonodromyTuple,
    t2: &MonodromyTuple,
    words: &[BraidWord],
) -> Result<ConvolutionMonodromy, CocycleError> {
    let convolution = convolution_tuple(t1, t2)?;
    let space = build_cocycle_space(&convolution.tuple)?;
    let (p, q) = (convolution.provenance.0, convolution.provenance.1);
    let identity_def = TupleDeformation::identity(p + q);
    let mut matrices = Vec::with_capacity(words.len() + 2);
    let id_twist = Mat::identity(convolution.tuple.rank);
    for w in words {
        let deformation = braid_action(w, &identity_def)?;
        matrices.push(space.deformation_matrix(&deformation, &id_twist)?);
    }
    let alpha =
        space.deformation_matrix(&global_alpha_deformation(p, q), &convolution.twist_alpha)?;
    let beta = space.deformation_matrix(&global_beta_deformation(p, q), &convolution.twist_beta)?;
    for m in [alpha, beta] {
        matrices.push(DeformationMatrix {
            full: m.full.inverse().expect("invertible deformation"),
            induced: if space.w_dim == 0 {
                Mat::zero(0, 0)
            } else {
                m.induced.inverse().expect("invertible induced")
            },
        });
    }
    Ok(ConvolutionMonodromy {
        convolution,
        space,
        matrices,
    })
}
