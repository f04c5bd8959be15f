pub mod arith;
pub mod classes;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod places;
pub mod report;
pub mod rigid;
pub mod scenario;
pub mod symbols;

pub use error::{Error, Result};
