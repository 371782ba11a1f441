//! File formats, reference fixtures, verification pipelines, parallel
//! simulation and the `pilegame` command line, on top of `pilegame-core`.

pub mod cli;
pub mod fixtures;
pub mod json;
pub mod pretty;
pub mod sim;
pub mod verify;

pub use pilegame_core as core;
