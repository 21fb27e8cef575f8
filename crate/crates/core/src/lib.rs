pub mod cache;
pub mod counting;
pub mod error;
pub mod loss;
mod graph;
pub mod oracle;
pub mod problem;
pub mod rauzy;
pub mod reference;
pub mod semiring;
pub mod solver;
pub mod state;

pub use error::{Error, Result};
