pub mod calogero_moser;
pub mod classical;
pub mod error;
pub mod qh_stable;
pub mod report;
pub mod rootdata;
pub mod symbolic;
pub mod toda;
pub mod weyl;

pub use error::{Error, Result};
