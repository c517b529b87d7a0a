//! Exact construction and verification of quasi-idempotent Rota-Baxter
//! operators on finite-dimensional algebras.
//!
//! Scalars are exact (rationals, cyclotomic fields, Laurent polynomials and
//! rational functions in `v`). Algebras are given by sparse structure
//! constants; Hopf data adds a coproduct, counit and antipode. From a Hopf
//! algebra the crate computes the trace element and integral spaces, and
//! from any element `ξ` with `ξ² = −λξ` it builds the Rota-Baxter operator
//! `a ↦ ξa` and the tridendriform (or, at weight zero, dendriform) structure
//! it induces.

pub mod algebra;
pub mod check;
pub mod document;
pub mod expr;
pub mod families;
pub mod hopf;
pub mod linalg;
pub mod rota_baxter;
pub mod scalar;

pub use algebra::{AlgebraError, Basis, Element, FiniteDimAlgebra, StructureConstants};
pub use check::{CheckPolicy, Coverage, Verdict};
pub use hopf::{HopfAlgebra, HopfError, Side};
pub use linalg::{LinalgError, Matrix};
pub use rota_baxter::{LinearOperator, RbError, RotaBaxterOperator};
pub use scalar::{Rational, Scalar, ScalarError, ScalarRing};
