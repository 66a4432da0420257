//! Number theoretic Hilbert transforms (NHT).
//!
//! An NHT of even size `n` is an `n x n` circulant matrix over Z_m whose
//! first row alternates zero and nonzero entries, `0, u0, 0, u1, ...`, and
//! whose transpose is its inverse mod `m`. This crate checks coefficient
//! vectors against the orthogonality conditions, searches for solutions,
//! applies exact forward/inverse transforms, scrambles byte streams into a
//! fixed container format, and keeps catalogs of known solutions.

pub mod catalog;
pub mod circulant;
pub mod codec;
pub mod conditions;
pub mod container;
pub mod error;
pub mod reference;
pub mod residue;
pub mod search;

pub use catalog::{builtin_catalog, Catalog, CatalogEntry, Source};
pub use circulant::{build_first_row, is_identity, DenseMatrix, NhtMatrix};
pub use codec::{
    descramble_stream, forward, forward_unvalidated, inverse, scramble_stream, ScrambleKey,
};
pub use conditions::{
    autocorrelation, check_solution, condition_set, CoeffVector, ConditionSet, Verdict,
};
pub use container::ScrambleContainer;
pub use error::{Error, Result};
pub use residue::{dot_mod, mul_mod, reduce, Modulus};
pub use search::{
    canonicalize, census, enumerate, random_search, Census, SearchMode, SearchOptions, SearchSpec,
    SolutionRecord,
};
