//! Probabilistic repair models: distributions over repair actions,
//! shapes extracted from transactions, the multinomial shape
//! probability, the analytic median attempt count, and a simulation
//! oracle for it.

mod attempts;
mod model;
mod monte_carlo;
mod shape;

pub(crate) use attempts::multinomial_probability;
pub use attempts::{
    median_attempts, repairability, shape_probability, MedianAttempts, Repairability,
    PROBABILITY_FLOOR,
};
pub use model::{RepairModel, UNIFORM_PROVENANCE};
pub use monte_carlo::{
    monte_carlo_median, monte_carlo_median_capped, MonteCarloEstimate, DEFAULT_ATTEMPT_CAP,
};
pub use shape::{extract_shape, RepairShape};
