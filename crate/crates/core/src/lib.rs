pub mod cat;
pub mod corpus;
pub mod error;
pub mod exp;
pub mod fib;
pub mod ez;
pub mod hom;
pub mod io;
pub mod limits;
pub mod oracle;
pub mod poset;
pub mod realize;
pub mod rep;
pub mod sset;
pub mod sspace;
pub mod straighten;
pub mod suite;

pub use error::{Error, Result};
