//! Shift operators in `x_1..x_k`, the diagonal family `D_d`, Noumi's
//! `N_d`, and their spectral checks on Macdonald polynomials.

pub mod checks;
pub mod operator;

pub use checks::{
    check_commute, check_diagonal, check_diagonal2, check_lemma_rewrite, eigenvalue, macdonald_at, qselberg_check,
    qselberg_check_at, qselberg_sides, selberg_weight, spectral_point, ParamSlot,
};
pub use operator::{compositions, op_d, op_d_rewritten, op_n, ShiftOperator};
