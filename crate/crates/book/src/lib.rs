//! Code listings of the lpset guide, compiled and run as doc tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/fields.md")]
pub mod fields {}

#[doc = include_str!("../../../book/src/linearized.md")]
pub mod linearized {}

#[doc = include_str!("../../../book/src/linear-sets.md")]
pub mod linear_sets {}

#[doc = include_str!("../../../book/src/equivalence.md")]
pub mod equivalence {}

#[doc = include_str!("../../../book/src/automorphisms.md")]
pub mod automorphisms {}

#[doc = include_str!("../../../book/src/census.md")]
pub mod census {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
