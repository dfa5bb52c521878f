//! Exact computation with finite rings and finite (right) modules over them:
//! normal forms over Z/nZ, ring and module constructions, injective
//! envelopes, projective covers, and verification suites for structural
//! criteria phrased in terms of automorphism-invariance of those envelopes
//! and covers.

pub mod config;
pub mod error;
pub mod exactlin;
pub mod invariance;
pub mod module;
pub mod ring;
pub mod spec;

pub use config::Guards;
pub use error::{Error, Result};
