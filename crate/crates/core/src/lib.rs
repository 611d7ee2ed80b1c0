pub mod chevgroup;
pub mod error;
pub mod lattice;
pub mod par;
pub mod relroots;
pub mod rootsys;

pub use error::{Error, Result};
pub use par::Exec;
