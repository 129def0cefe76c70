pub mod differential;
pub mod error;
pub mod exterior;
pub mod howe;
pub mod hypercomplex;
pub mod scalars;
pub mod su2;
pub mod testkit;
pub mod verify;

pub use error::{Error, Result};
