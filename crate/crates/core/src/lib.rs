pub mod algebra;
pub mod api;
pub mod cluster;
pub mod cluster_tilted;
pub mod dot;
pub mod error;
pub mod linalg;
pub mod mesh;
pub mod oracle;
pub mod quiver;
pub mod tilting;
pub mod translation;

pub use error::{Error, Result};
