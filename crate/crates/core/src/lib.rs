#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod channels;
pub mod classical;
pub mod composite;
pub mod error;
pub mod functionals;
pub mod linalg;
mod math;
pub mod quantum;
pub mod random;
pub mod verify;

pub use error::{Error, Result};
