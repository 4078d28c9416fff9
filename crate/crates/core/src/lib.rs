pub mod characters;
pub mod cli;
pub mod dimfun;
pub mod error;
pub mod isotropy;
pub mod linalg;
pub mod orbitcat;
pub mod permgroup;

pub use error::{Error, Result};
