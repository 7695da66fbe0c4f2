pub mod annulus;
pub mod coefficients;
pub mod combinatorics;
pub mod error;
pub mod homfly;
pub mod linalg;
pub mod ov;
pub mod verify;

pub use error::{Error, Result};
