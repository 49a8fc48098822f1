//! Exact symbolic engine for finitely generated field extensions of Q.
//!
//! A field is presented as a tower: a purely transcendental layer
//! `Q(t_1, ..., t_r)` followed by algebraic generators, each given by a monic
//! minimal polynomial over the layers below it. On top of that representation
//! the crate provides exact factorization (over Q, over rational function
//! fields, and over towers), minimal polynomials relative to described
//! subfields, embedding and automorphism enumeration, conjugation analysis,
//! and the classifiers for the quasi-galois / galois / tame / strong /
//! absolute hierarchy. Every verdict is exact: either certified by a rule
//! with checkable data, refuted by a witness, or reported Unknown together
//! with the search bound that was exhausted.

pub mod error;
pub mod rational;
pub mod multipoly;
pub mod ratfunc;
pub mod unipoly;
pub mod linalg;
pub mod factor;
pub mod tower;
pub mod galois;
pub mod parse;

pub use error::{ArithError, BuildError, FactorError, ParseError, QueryError};
pub use rational::Rational;
pub use ratfunc::RatFunc;
