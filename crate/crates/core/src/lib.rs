//! Exact anchor computation for the irreducible characters of finite groups.
//!
//! The library builds the order `OGe_χ` as a lattice over the p-local
//! integers, runs relative-trace membership tests over p-subgroup classes and
//! reports the minimal class, along with the surrounding block data.

pub mod anchor;
pub mod arith;
pub mod cache;
pub mod catalog;
pub mod chtab;
pub mod cyclo;
pub mod error;
pub mod fp;
pub mod grp;
pub mod lat;
pub mod padic;
pub mod verify;

pub use error::{Error, Result};
