//! Exact computations relating specialized BMW algebras to symmetric squares
//! of Temperley-Lieb algebras: restricted tableaux and their bijection, path
//! model representations with Markov traces, the square realization of the
//! BMW generators, link invariants and braid image groups.

pub mod bijection;
pub mod coeff;
pub mod diagrams;
pub mod error;
pub mod images;
pub mod invariants;
pub mod linalg;
pub mod pathmodel;
pub mod squares;
pub mod suite;
pub mod tableaux;

pub use diagrams::{Diagram, Level};
pub use error::{Error, Result};
