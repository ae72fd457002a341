//! The executable case analysis, grouped in three suites.

pub mod cp3;
pub mod f12;
pub mod prop1;
mod sample;

use crate::report::{Check, Suite};

/// Terms shown when a symbolic residual is reported.
const BRIEF: usize = 6;

/// Every shipped check, in id order.
pub fn registry() -> Vec<Check> {
    let mut all: Vec<Check> = prop1::CHECKS
        .iter()
        .chain(cp3::CHECKS)
        .chain(f12::CHECKS)
        .copied()
        .collect();
    all.sort_by_key(|c| c.id);
    all
}

pub fn suite(s: Suite) -> Vec<Check> {
    registry().into_iter().filter(|c| c.suite == s).collect()
}
