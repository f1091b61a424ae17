//! mdbook cannot run listings that depend on workspace crates, so each
//! chapter is pulled in as the documentation of an empty module and rustdoc
//! tests the listings. A failing doc-test names the chapter module.

pub use tuav_core;
pub use tuav_sim;

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/environments.md")]
pub mod environments {}
#[doc = include_str!("../../../book/src/geometry.md")]
pub mod geometry {}
#[doc = include_str!("../../../book/src/channel.md")]
pub mod channel {}
#[doc = include_str!("../../../book/src/beamforming.md")]
pub mod beamforming {}
#[doc = include_str!("../../../book/src/link-budget.md")]
pub mod link_budget {}
#[doc = include_str!("../../../book/src/scenarios.md")]
pub mod scenarios {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
