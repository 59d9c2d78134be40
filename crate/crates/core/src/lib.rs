//! Multiplication by n on Weierstrass curves over arbitrary commutative
//! rings, done symbolically: the homogeneous degree-n^2 triples
//! (alpha_n, beta_n, gamma_n) built from division polynomials, exact sparse
//! multivariate polynomial arithmetic underneath, a chord-tangent oracle for
//! independent verification over fields, and the Tate normal form machinery
//! that turns the same division polynomials into explicit defining equations
//! of the modular curves Y1(n).

pub mod curves;
pub mod divpoly;
pub mod moduli;
pub mod mpoly;
pub mod projmul;
pub mod rings;
pub mod verify;

pub use curves::{oracle_add, oracle_mul, oracle_neg, CurveOps, ProjPoint, WeierstrassCurve};
pub use divpoly::{AffineElement, DivPolyLadder};
pub use mpoly::{MPoly, SPoly, VarSet};
pub use projmul::{build_triple, eval_triple, specialize_triple, MulTriple};
pub use rings::{Ring, RingElement};
