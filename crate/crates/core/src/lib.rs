//! Translating XOR constraints into CNF and measuring how well unit
//! propagation (and its generalisations) works on the result.

pub mod alloc;
pub mod cnf;
mod engine;
pub mod error;
pub mod gen;
pub mod measure;
pub mod monotone;
pub mod structure;
pub mod translate;
pub mod xor;

pub use alloc::VarAllocator;
pub use cnf::{apply, Clause, ClauseSet, Lit, PartialAssignment, Var};
pub use error::{Error, Result};
pub use measure::{HardnessReport, Measure, ResolutionProof, Scope};
pub use monotone::MonotoneCircuit;
pub use structure::GeneralGraph;
pub use translate::{Method, TranslationResult};
pub use xor::{XorConstraint, XorSystem};
