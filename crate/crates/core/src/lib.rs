pub mod algcore;
pub mod error;
pub mod exactmath;
pub mod fixtures;
pub mod intcoint;
pub mod modtrace;
pub mod qhspec;
pub mod quasihopf;
pub mod repcat;
pub mod report;
pub mod sympferm;

pub use error::{Error, Result};
