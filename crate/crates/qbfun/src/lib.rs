//! Fundamental relative invariants of type-A quiver representation spaces
//! and their b-functions, a-functions, lace diagrams, rank parameters and
//! slice representations, together with a symbolic checker that verifies
//! b-function identities by direct differentiation.

pub mod bfun;
pub mod error;
pub mod invariant;
pub mod json;
pub mod lace;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod quiver;
pub mod rank;
pub mod render;
pub mod slice;

pub use error::{Error, Result};
