pub mod arith;
pub mod biset;
pub mod chartable;
pub mod classfn;
mod error;
pub mod essential;
pub mod group;
pub mod ideal;
pub mod rep;
pub mod verify;

pub use error::{Error, Result};
