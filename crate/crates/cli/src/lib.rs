//! Library half of the CLI: configuration handling and the stage
//! implementations, kept callable from integration tests.

pub mod config;
pub mod stages;
