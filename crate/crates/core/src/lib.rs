//! Workbench for the packed interval covering decision problem.
//!
//! An instance is a bound `N` and a sequence of *packs*, each a finite set of
//! subintervals of `[1, N]`; the question is whether one interval can be
//! chosen from every pack so that the chosen intervals cover `[1, N]`
//! exactly. The problem is NP-complete even when `N` is written in binary,
//! which the tooling here respects end to end: verification and search run on
//! compressed coordinates and never enumerate `[1, N]`.
//!
//! The crate provides:
//!
//! - [`pic`]: the data model, well-formedness checks, the endpoint-sweep
//!   cover verifier, and coordinate compression;
//! - [`sat`]: CNF formulas, a deterministic DPLL engine, an exhaustive
//!   oracle, and validation of the (3,B2) occurrence discipline (three
//!   literals per clause, every variable twice positive and twice negative);
//! - [`reduce`]: the polynomial reduction from (3,B2) formulas to covering
//!   instances, with witness translation in both directions;
//! - [`solve`]: three exact decision procedures (Cartesian brute force,
//!   backtracking over compressed segments, and a CNF encoding solved by the
//!   DPLL engine);
//! - [`gen`]: seeded random generators for instances and (3,B2) formulas;
//! - [`io`]: the line-oriented text formats for instances, witnesses,
//!   DIMACS CNF, reduction maps, and assignments;
//! - [`render`]: deterministic SVG drawings of instances and witnesses.

pub mod gen;
pub mod io;
pub mod pic;
pub mod reduce;
pub mod render;
pub mod sat;
pub mod solve;

#[cfg(test)]
pub(crate) mod fixtures;

pub use pic::{CompressedInstance, Interval, Pack, PicInstance, Segment, Selection};
pub use sat::{B2Formula, Clause, CnfFormula, Literal, Valuation};
