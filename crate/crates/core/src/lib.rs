pub mod arith;
pub mod bitset;
pub mod cd;
pub mod constructors;
pub mod corpus;
pub mod error;
pub mod group;
pub mod groupspec;
pub mod oracle;
pub mod par;
pub mod presentation;
pub mod subgroups;

pub use error::{Error, Result};
