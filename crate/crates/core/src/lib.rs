pub mod bases;
pub mod channels;
pub mod coherence;
pub mod error;
pub mod linalg;
pub mod numfmt;
pub mod sampling;
pub mod states;
pub mod surfaces;
pub mod verify;

pub use error::{Error, Result};
