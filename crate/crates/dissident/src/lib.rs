//! JSON formats, embedded inputs and the command-line driver built on
//! [`dissident_core`].

pub use dissident_core as core;

pub mod builtins;
pub mod cli;
pub mod format;
