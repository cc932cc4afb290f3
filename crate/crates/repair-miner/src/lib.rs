//! Mines fine-grained source-code changes from version-control history and
//! reasons about the probabilistic search spaces of automatic program repair.
//!
//! The pipeline: parse file revisions into syntax trees ([`syntax`]), compute
//! tree edit scripts between consecutive revisions ([`differ`]), classify
//! edits into change types ([`changes`]), aggregate transactions into
//! frequency-weighted repair models ([`corpus`], [`stats`], [`repair`]),
//! validate models by cross-validation ([`crossval`]), and instantiate the
//! same arithmetic for a concrete mutation-operator space ([`concrete`]).
//! Every result renders as JSON records, CSV, or markdown ([`report`]).
//!
//! Each major capability has a runnable example under `examples/`; start with
//! `cargo run --example repair_shapes`. The `repair-miner` binary exposes the
//! same pipeline as subcommands.

pub mod changes;
pub mod cli;
pub mod concrete;
pub mod corpus;
pub mod crossval;
pub mod differ;
pub mod error;
pub mod repair;
pub mod report;
pub mod stats;
pub mod syntax;

pub use error::{Error, Result};
