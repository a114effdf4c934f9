//! Poisson-Lie sigma models from Manin-triple structure constants.
//!
//! The library takes a Manin triple `(D, g, g~)` as two sets of structure
//! constants, validates the algebraic axioms, assembles the Drinfeld
//! double, evaluates the Poisson-Lie bivector P(X) = b(g) a(g)^-1 through
//! the adjoint-action block factorization, and evaluates the Poisson
//! sigma-model action and equation-of-motion residuals on discretized
//! worldsheet fields. A catalog ships the standard four-dimensional triples
//! and four six-dimensional ones built on sl(2,C), together with their
//! closed-form reference bivectors.

pub mod adjoint;
pub mod catalog;
pub mod error;
pub mod io;
pub mod lie;
pub mod matrix;
pub mod poisson;
pub mod report;
pub mod rng;
pub mod scan;
pub mod sigma;

pub use error::{Error, ParseError, Result};
