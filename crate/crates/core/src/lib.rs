//! Exact symbolic computation for Weyl algebras, universal enveloping
//! algebras of gl_n and o_N, and the dual-pair homomorphisms connecting
//! them.
//!
//! The crate constructs the realizations L and R of a reductive dual pair
//! inside the Weyl algebra, builds the distinguished invariant elements
//! (quantum minors, quantum pfaffians, transfer generator sets), and
//! mechanically verifies an executable catalog of operator identities,
//! kernel facts, ad-invariance certificates, and symbol-vanishing checks
//! over exact rational arithmetic.
//!
//! Module map:
//! - [`scalar`], [`multi_index`], [`linalg`]: exact rationals and linear
//!   algebra shared by everything else
//! - [`weyl`]: normal-ordered differential operators plus the faithful
//!   action on polynomials and the symbol map
//! - [`poly`]: commutative polynomials over declared variable sets
//! - [`uea`]: PBW arithmetic in U(gl_n) and U(o_N)
//! - [`matrix`]: operator matrices over any of the above
//! - [`dualpair`]: the realized L and R maps, normalized and unnormalized
//! - [`transfer`]: quantum minors, pfaffians, and generator sets
//! - [`geometry`]: partitions, small orbits, lifting, vanishing checks
//! - [`verify`]: the identity catalog, calibration, and suite runner
//! - [`expr`]: the expression grammar, parser, and evaluator

pub mod combinatorics;
pub mod dualpair;
pub mod expr;
pub mod geometry;
pub mod linalg;
pub mod matrix;
pub mod multi_index;
pub mod poly;
mod render;
pub mod rng;
pub mod scalar;
pub mod transfer;
pub mod uea;
pub mod verify;
pub mod weyl;

pub use scalar::Rat;
