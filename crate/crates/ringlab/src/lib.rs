//! Exact computational algebra on small finite rings.
//!
//! The crate builds finite rings (residue rings, direct products, full and
//! upper-triangular matrix rings, quotients, and corner rings), computes their
//! structural sets (units, Jacobson radical, idempotents, ...) by exact brute
//! force, and decides a hierarchy of element decompositions of the form
//! a = +-p + j with p idempotent — together with the clean family a = e + u.
//! For 2x2 matrix rings over commutative local rings, closed-form criteria
//! decide the same questions without whole-ring sweeps; the corpus runner
//! cross-checks the two routes on a family of small rings.

pub mod corpus;
pub mod dsl;
pub mod error;
pub mod exec;
pub mod polarity;
pub mod report;
pub mod ring;
pub mod structure;
pub mod theorems;

pub use error::{Result, RingError};
pub use ring::{Caps, Element, ElementLiteral, FiniteRing};
