pub mod approx;
pub mod ball;
pub mod cli;
pub mod cubic;
pub mod error;
pub mod geometry;
pub mod numeration;
pub mod output;

pub use error::{Error, Result};
