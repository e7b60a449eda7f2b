//! Osserman, Jordan-Osserman and duality checks for algebraic curvature
//! tensors on pseudo-Euclidean spaces.

pub mod catalog;
pub mod checks;
pub mod cli;
pub mod curvature;
pub mod error;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod polymatrix;
pub mod ser;
pub mod space;
pub mod spectral;
pub mod theorems;

pub use error::{Error, Result};
