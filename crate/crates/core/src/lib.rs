//! Exact computations for lattice vertex operator algebras and their modules.
//!
//! * [`linalg`]: sparse echelon forms over exact rationals.
//! * [`fock`]: `M(1)`, `V_L`, `V_{L+λ}`, θ and the base vertex operators.
//! * [`modes`]: the generic mode action `u_n w` and identity checks.
//! * [`cofinite`]: `C_n` quotients, generator sets and `C_1` representatives.
//! * [`zhu`]: the products `*` and `∘`, `O(V)` and the truncated `A(V)`.
//! * [`pbw`]: rewriting of mode words into spanning form and lowest-weight vectors.

pub mod cofinite;
pub mod element;
pub mod error;
pub mod fock;
pub mod graded;
pub mod linalg;
pub mod modes;
pub mod par;
pub mod pbw;
pub mod report;
pub mod scalar;
pub mod space;
pub mod suites;
pub mod zhu;

pub use element::Element;
pub use error::{Error, Result};
pub use linalg::{quotient_dim, row_reduce, RowBasis};
pub use scalar::{Scalar, Weight};
pub use space::{Basis, CosetSpec, LatticeSpec, Space, SpaceRef};
