//! Source trees and the taxonomies that govern them.
//!
//! A tree is an ordered, labeled tree of nodes with kinds drawn from a
//! configurable entity taxonomy, optional normalized source text values, and
//! 1-based position ranges. Trees come from two frontends: a small Java-subset
//! parser and a structured-record interchange format.

pub(crate) mod decl;
mod interchange;
pub mod kinds;
mod mini_java;
mod taxonomy;
mod tree;

pub use interchange::{parse_tree, serialize_tree};
pub use mini_java::parse_mini_java;
pub use taxonomy::{ClassifierSettings, DifferSettings, Taxonomy};
pub use tree::{validate_tree, Origin, Range, SourceTree, TreeNode};
