pub mod algorithms;
pub mod constants;
pub mod experiments;
pub mod error;
pub mod harness;
pub mod matroid;
pub mod principal;
pub mod rational;
pub mod zoo;

pub use error::{Error, Result};
