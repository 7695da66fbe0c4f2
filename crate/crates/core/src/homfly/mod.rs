//! HOMFLYPT invariants of framed braid closures and their two-strand cables.

mod braid;
mod cable;
mod engine;

pub use braid::{markov_normalize, BraidWord, Normalized};
pub use cable::{
    cable, cable_components, colored_evaluation, colored_homfly, colored_homfly_components, framing_monomial,
    homfly_evaluation, label_idempotents, pattern_for, twist_eigenvalue, two_strand_idempotents, CableExpression,
    ColoredEvaluation, Normalization,
};
pub use engine::{homfly, CirclePolynomial, Engine, EngineOptions, ResolutionOrder};
