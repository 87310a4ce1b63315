pub mod algebra;
pub mod commutation;
pub mod composition;
pub mod error;
pub mod families;
pub mod kernel;
pub mod random;
pub mod sea;
pub mod spectral;
pub mod suite;

pub use error::{Error, Result};
