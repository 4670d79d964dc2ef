pub mod catalog;
pub mod closures;
pub mod error;
pub mod lattices;
pub mod linalg;
pub mod rep;
pub mod verify;

pub use error::{Error, Result};
