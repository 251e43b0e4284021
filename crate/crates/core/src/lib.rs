pub mod coeff;
pub mod define;
pub mod constructions;
pub mod error;
pub mod lie;
pub mod linear;
pub mod va;

pub use error::{Error, Result};
pub mod suites;
