//! Exact enumeration of 321-avoiding affine permutations and the
//! combinatorial structures in bijection with them.
//!
//! The library realizes one circle of ideas: affine permutations avoiding the
//! pattern 321 are counted, mapped to *alternating diagrams* (cylindrical
//! arrangements of generator chains), to *heaps of pieces* (Cartier–Foata
//! monoids of segments, monomers/dimers, and cycles), to *lattice walks* on a
//! half-line with loops, and to *periodic parallelogram polyominoes*. Every
//! bijection is implemented in both directions, every generating function is
//! computed as an exact truncated power series, and every series identity can
//! be re-verified against brute-force enumeration.
//!
//! # Modules
//!
//! - [`series`] — exact truncated formal power series in `x`, `y`, `q` over
//!   the rationals: the arithmetic substrate.
//! - [`qformulas`] — the named basic-hypergeometric series (`J`, `calJ`,
//!   `h`, `j`, `frakh`, `N`, `Nhat`, …) and the closed forms built from them.
//! - [`permutations`] — affine permutations in window notation: validation,
//!   products by generators, inversion number, 321-avoidance, reduced words.
//! - [`diagrams`] — alternating diagrams on the cylinder, their validity,
//!   duality, and the bijection `delta` with 321-avoiding elements.
//! - [`heaps`] — heaps of pieces over an abstract concurrency relation:
//!   Cartier–Foata normal form, minima/maxima, composition, subtraction.
//! - [`cycles`] — heaps of cycles over a digraph and the walk ↔ (self-avoiding
//!   path, heap of cycles) decomposition.
//! - [`monodimer`] — monomer/dimer heaps on the half-line, loop walks, the
//!   word model avoiding the factor `LR`, and the pairs-of-partitions model.
//! - [`ppp`] — periodic parallelogram polyominoes: alternating sequences,
//!   their heap realization, statistics, and the marked bijection with
//!   alternating diagrams.
//! - [`oracle`] — independent brute-force enumerators used to cross-check
//!   every series and bijection.
//! - [`suites`] — the named verification suites behind `verify`, each a
//!   self-contained pass/fail check at documented bounds.
//! - [`formats`] — serde-friendly exchange representations shared by the CLI
//!   and the examples.

pub mod cycles;
pub mod diagrams;
pub mod formats;
pub mod heaps;
pub mod monodimer;
pub mod oracle;
pub mod permutations;
pub mod ppp;
pub mod qformulas;
pub mod series;
pub mod suites;

pub use series::{Monomial, SeriesError, Trunc, TruncatedSeries, Var};
