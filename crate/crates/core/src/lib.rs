//! Coloring systems: origin-anchored Wang tilings of the quadrant.
//!
//! A system `(C, a, H, V)` fixes `n` colors, an origin color `a`, and the
//! pairs allowed between horizontal and vertical neighbours. This crate
//! checks finite colorings against a system, searches the space of
//! acceptable colorings in diagonal order, certifies infinite colorings with
//! periodic tori, and runs exhaustive censuses over all systems with a given
//! number of colors.

pub mod census;
pub mod checker;
pub mod coloring;
pub mod diag;
pub mod fixtures;
pub mod io;
pub mod render;
pub mod search;
pub mod system;

pub use checker::{check_sequence, check_triangle, is_prefix, Check, InputError, Violation};
pub use coloring::{ColorSequence, PeriodicWitness, TriangleColoring};
pub use diag::Tile;
pub use search::{SearchBudget, Searcher, Verdict, VerdictKind};
pub use system::{canonical_form, is_isomorphic, validate_system, Color, ColoringSystem, SystemFile};
