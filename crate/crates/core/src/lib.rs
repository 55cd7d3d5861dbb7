//! Categories assigned to defect circles in Dijkgraaf-Witten theory.

pub mod algebraic_model;
pub mod groupoid_rep;
pub mod groups;
pub mod io;
pub mod monomial;
pub mod phases;
pub mod spectral;
pub mod trace_engine;
pub mod transgression;

pub use groupoid_rep::{ActionGroupoid, CategoryInvariants};
pub use groups::{FiniteGroup, PairEmbedding};
pub use phases::{Cochain, Phase};
pub use transgression::{DefectDatum, GroupoidCocycle};

/// Floating-point scalar used by the numeric decompositions unless a caller
/// picks another.
pub type Real = f64;
