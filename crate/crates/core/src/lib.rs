//! Exact computation in ıquiver algebras and their ıHall algebras over
//! finite prime fields.

pub mod engine;
pub mod error;
pub mod fq;
pub mod identities;
pub mod oracle;
pub mod quiver;
pub mod rep;
pub mod scalar;

pub use error::{Error, Result};
