//! Symmetric polynomials, the (q,t) power-sum pairing and Macdonald
//! polynomials by Gram–Schmidt.

pub mod basis;
pub mod checks;
pub mod inner;
pub mod sym;
pub mod tableau;

pub use basis::{GRAM_SCHMIDT_MAX_DEGREE, macdonald_eval, macdonald_p, macdonald_p_lambda, macdonald_p_with, LinearExtension, MacdonaldBasisCache};
pub use checks::{check_extensions, check_orthogonality, check_qbinomial, check_unitriangularity};
pub use inner::{gram, inner, power_inner, power_to_monomial};
pub use sym::{monomial_sym, SymPoly};
pub use tableau::macdonald_p_tableau;
