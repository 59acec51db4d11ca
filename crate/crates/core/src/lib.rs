pub mod battery;
pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod family;
pub mod geometry;
pub mod grid;
pub mod output;
pub mod propagators;
pub mod quadrature;
pub mod restriction;
pub mod specfun;
pub mod transforms;

pub use error::{Error, Result};
