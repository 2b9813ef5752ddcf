pub mod eigensolver;
pub mod error;
pub mod expansion;
pub mod polycore;
pub mod specfun;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
