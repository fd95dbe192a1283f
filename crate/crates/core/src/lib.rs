pub mod bezout;
pub mod companion;
pub mod eigen;
pub mod error;
pub mod io;
pub mod linalg;
pub mod par;
pub mod pipeline;
pub mod poly;
pub mod reduction;

pub use error::{Error, Result};
