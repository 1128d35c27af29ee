pub mod clifford;
pub mod error;
pub mod functional_calculus;
pub mod genus;
pub mod linalg;
pub mod mackey;
pub mod pin;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
