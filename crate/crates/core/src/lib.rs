pub mod brachy;
pub mod error;
pub mod finstruct;
pub mod identities;
pub mod lang;
pub mod matrix;
pub mod modelsearch;
pub mod poly;
mod syntax;
pub mod zoo;

pub use error::{Error, Result};
