#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod abelian;
pub mod arith;
pub mod breen;
pub mod cochain;
pub mod cqha;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod nichols;
pub mod pointed;
pub mod zmod;

pub use error::{Error, Result};
pub use group::{Character, FinAbGroup, GroupElement, GroupHom};
