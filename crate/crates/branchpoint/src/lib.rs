//! File formats, manifests and the command-line front end for
//! `branchpoint-core`.

pub use branchpoint_core as core;

pub mod cli;
pub mod error;
pub mod formats;
pub mod manifest;
