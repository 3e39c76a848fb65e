//! Exact certificates for overcommutation in group presentations.

pub mod error;
pub mod exactfield;

pub use error::{Error, Result};
pub mod words;
pub mod steinberg;
pub mod certificates;
pub mod alexander;
