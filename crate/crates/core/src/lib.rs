//! Exact symbolic computation in universal enveloping algebras of the
//! classical matrix Lie algebras, built around the quantum argument shift
//! method: PBW normal forms over arbitrary-precision rationals,
//! quasi-derivations and the shift operator D_mu, tensor-matrix calculus
//! with permutation and form operators, Brauer-type symmetrizers, Pfaffians,
//! and generator families for quantum Mishchenko--Fomenko subalgebras,
//! together with an executable verification suite for the identities the
//! constructions rest on.

pub mod algebra;
pub mod check;
pub mod error;
pub mod generators;
pub mod linsolve;
pub mod parse;
pub mod pbw;
pub mod quasi;
pub mod random;
pub mod scalar;
pub mod shift;
pub mod sym;
pub mod tensor;
pub mod umatrix;

pub use algebra::{AlgebraSpec, Family, GenId};
pub use error::{AlgebraError, Result};
pub use pbw::{normal_form, PbwMonomial, UElement};
pub use quasi::{d_mu, d_mu_iterate, quasi_derive, DerivKind};
pub use shift::ShiftMatrix;
pub use sym::SElement;
pub use tensor::TensorElement;
