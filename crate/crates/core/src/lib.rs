pub mod cyclotomic;
pub mod error;
pub mod groups;

pub use error::{Error, Result};
pub mod characters;
pub mod double;
pub mod linalg;
pub mod fusion;
pub mod graphs;
pub mod report;
pub mod fixtures;
