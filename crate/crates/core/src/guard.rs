//! Caps for exponential scans.
//!
//! Each brute-force routine has a built-in cap. The `DIJOIN_GUARD`
//! environment variable raises every cap to at least its value.

use crate::error::{Error, Result};

pub const ENV: &str = "DIJOIN_GUARD";

/// Default cap on `|E(S)|` for directing scans.
pub const ORIENT_EDGES: usize = 24;
/// Default cap on `|E(S)|` for partition scans.
pub const PARTITION_EDGES: usize = 20;
/// Default cap on the vertex count for preorder and tree enumeration.
pub const FAMILY_VERTICES: usize = 6;

/// The effective cap given a built-in default.
pub fn cap(default: usize) -> usize {
    std::env::var(ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map_or(default, |v| v.max(default))
}

pub fn check(what: &'static str, size: usize, guard: usize) -> Result<()> {
    if size > guard {
        Err(Error::GuardExceeded { what, size, guard })
    } else {
        Ok(())
    }
}
