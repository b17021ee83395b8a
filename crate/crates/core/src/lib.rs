pub mod bounds;
pub mod codefile;
pub mod error;
pub mod exact;
pub mod field;
pub mod krawtchouk;
pub mod linear;
pub mod matrix;
pub mod oracle;
pub mod report;
pub mod space;
pub mod suites;

pub use error::{Error, Result};
