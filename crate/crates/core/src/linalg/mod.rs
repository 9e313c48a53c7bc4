//! Exact rational linear algebra: arbitrary-precision rationals, dense
//! matrices acting on row vectors from the right, subspace calculus in
//! canonical reduced-row-echelon form, and integer polynomial machinery
//! (minimal polynomials, factorization over Q).

pub mod factor;
pub mod mat;
pub mod poly;
pub mod rat;
pub mod subspace;

pub use factor::{factor_squarefree_rational, FactorError};
pub use mat::{kronecker, Mat};
pub use poly::{min_poly, IntPoly};
pub use rat::Rat;
pub use subspace::{
    fixed_space, image, kernel, left_kernel, quotient_basis, rref, solve_right, Subspace,
    SubspaceError,
};
