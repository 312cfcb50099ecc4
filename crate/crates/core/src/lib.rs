pub mod complex;
pub mod error;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod regularity;
pub mod staircase;
pub mod syzygy;

pub use error::{Error, Result};
