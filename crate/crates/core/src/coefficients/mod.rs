//! Exact coefficient arithmetic: Laurent polynomials in `a` and `q^(1/2)`
//! and their fraction field.

mod laurent;
mod text;
mod upoly;
mod value;

pub use laurent::{Exp, HalfLaurent, ZPolynomial};
pub use value::SkeinValue;
