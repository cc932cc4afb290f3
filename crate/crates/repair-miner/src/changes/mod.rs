//! Classified source-code changes and the feature spaces over them.

mod classifier;
mod types;

pub use classifier::{
    classify_script, classify_script_strict, Classification, DroppedOperation,
};
pub use types::{combination_label, ChangeModel, FeatureSpace, SourceCodeChange};
