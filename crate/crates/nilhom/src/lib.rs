//! Command line support for `nilhom-core`: a shared and persistent profile
//! cache, JSON documents, parallel tables and the verification suites.

pub mod cache;
pub mod format;
pub mod run;
pub mod suites;

pub use nilhom_core as core;
