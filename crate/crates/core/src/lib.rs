pub mod algebra;
pub mod charnum;
pub mod cohomology;
pub mod error;
pub mod json;
pub mod lsolver;
pub mod manifolds;
pub mod oracle;
pub mod partitions;
pub mod symfun;
pub mod verify;

pub use error::{Error, Result};
