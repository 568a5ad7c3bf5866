//! Exact q-series algebra for vertex functions of cotangent bundles of
//! Grassmannians, their symplectic duals, and the point varieties `X_λ`,
//! together with Macdonald-diagonal q-difference operators.

pub mod algebra;
pub mod cli;
pub mod duality;
pub mod macdonald;
pub mod qcomb;
pub mod qdiff;
pub mod report;
pub mod vertex;

pub use algebra::AlgebraError as Error;
