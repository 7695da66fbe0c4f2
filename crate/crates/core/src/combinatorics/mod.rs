//! Partitions, symmetric-group characters and symmetric functions.

mod character;
mod partition;
mod symfunc;

pub use character::character;
pub use partition::{Cell, Partition};
pub use symfunc::{
    cauchy_check, cauchy_mismatch, exponential_side, schur_diagonal_side, schur_in_power_sums, Basis,
    CauchyMismatch, PowerSumTensor, SymFunc,
};
