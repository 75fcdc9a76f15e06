//! Exact equivariant Hodge-theoretic traces for finite-order automorphisms of
//! smooth projective hypersurfaces, and a symmetric-group character engine to
//! decompose the resulting class functions.

pub mod arith;
pub mod cli;
pub mod error;
pub mod lefschetz;
pub mod oracles;
pub mod series;
pub mod symgroup;
pub mod verify;

pub use arith::{Cyclotomic, Rational};
pub use error::{Error, Result};
