//! Primitivity rank, critical subgroups, word measures on symmetric groups
//! and genericity checks for words in free groups.

pub mod agraphs;
pub mod cli;
pub mod error;
pub mod genericity;
pub mod pirank;
pub mod whitehead;
pub mod wordmeasure;
pub mod words;

pub use error::{Error, Result};
