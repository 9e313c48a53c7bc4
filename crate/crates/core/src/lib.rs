//! Exact-arithmetic toolkit for the monodromy of convolutions of local
//! systems on punctured elliptic curves.
//!
//! The crate computes, over the rationals and without any floating point:
//! monodromy tuples and their convolution, the action of surface braid
//! groups on parabolic-cohomology cocycles, decomposition of the resulting
//! matrix representations into irreducible constituents, and the
//! group-theoretic certification pipeline for seven-point sheaves.

pub mod braid;
pub mod cocycle;
pub mod linalg;
pub mod modular;
pub mod monodromy;
pub mod repdecomp;
pub mod tannaka;

pub use linalg::{Mat, Rat, Subspace};
pub use monodromy::MonodromyTuple;
