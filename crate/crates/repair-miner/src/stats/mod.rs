//! Descriptive statistics over mined corpora: feature frequency tables,
//! rank correlation between them, and inter-rater agreement for manual
//! evaluations.

mod agreement;
mod freq;
mod spearman;

pub use agreement::{agreement, Agreement, RatingMatrix};
pub use freq::{frequencies, FrequencyRow, FrequencyTable};
pub use spearman::{
    average_ranks, correlate, spearman_critical_value, spearman_rho, spearman_significant,
    Correlation,
};
