//! Skew perspectives of partial Steiner triple systems.
//!
//! The crate builds binomial configurations as skew perspectives between two
//! complete graphs (`constructions`), manipulates the pair permutations that
//! drive them (`skews`), analyses free complete subgraphs (`analysis`), decides
//! isomorphism and computes automorphism groups (`isomorphism`), and runs the
//! exhaustive classification of the `(15_4 20_3)` skew perspectives whose axis
//! is a labelled Veblen configuration (`classify`).
//!
//! Points are dense integer ids; every configuration may carry a symbolic
//! label table. The text interchange format is `psts/1` (see [`io`]).

pub mod analysis;
pub mod classify;
pub mod constructions;
pub mod error;
pub mod incidence;
pub mod io;
pub mod isomorphism;
pub mod perm;
pub mod skews;

pub use error::{Error, Result};
pub use incidence::{Config, ConfigParams, Line, PointId, ValidationReport, Violation};
pub use perm::Perm;
pub use skews::{Pair, PhiSequence, Skew};
