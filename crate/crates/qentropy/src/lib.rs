//! File formats, number formatting, Werner-scan CSV output and the `qentropy`
//! command-line front end over [`qentropy_core`].

pub mod cli;
pub mod format;
pub mod io;
pub mod scan;

pub use qentropy_core as core;
