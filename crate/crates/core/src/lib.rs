//! Closed-subbasis topologies on distinguished classes of subsemimodules of
//! finite semimodules over finite commutative semirings.

pub mod algebra;
pub mod bits;
pub mod classes;
pub mod error;
pub mod lattice;
pub mod maps;
pub mod topology;
pub mod verifier;

pub use bits::{PointSet, SubsetMask};
pub use error::{Error, Result};
