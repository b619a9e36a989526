//! Cohen–Lenstra type measures on partitions attached to the finite classical
//! groups, exact finite-rank distributions of the Jordan type at eigenvalue 1,
//! certified total variation distances between them, and a brute-force
//! enumeration oracle over small matrix groups.

pub mod error;
pub mod cli;
pub mod exactnum;
pub mod ffgroups;
pub mod measures;
pub mod partitions;
pub mod tvdist;

pub use error::{Error, Result};
