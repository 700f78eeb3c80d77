pub mod error;
pub mod noise;
pub mod partition;
pub mod text;

pub use error::{Error, Result};
pub mod lowerbound;
pub mod mechanism;
pub mod projection;
