//! q-Pochhammer calculus, φ expansions and Young-diagram combinatorics.

pub mod partition;
pub mod phi;
pub mod pochhammer;

pub use partition::{zbox, Cell, Partition, QuiverA};
pub use phi::{phi_inverse, phi_ratio, phi_truncated};
pub use pochhammer::{qfactor_ratio, qpoch, qpoch_ratfunc, QFactorList, QRatio};
