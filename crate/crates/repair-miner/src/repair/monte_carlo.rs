//! Simulation oracle for the median-attempts analysis: draw shapes from
//! the model until the target multiset appears, over many independent
//! trials, and report the empirical median attempt count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::repair::{MedianAttempts, RepairModel, RepairShape};

/// Attempts per trial are capped at this by default; a trial that hits
/// the cap is counted in `capped_trials`.
pub const DEFAULT_ATTEMPT_CAP: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MonteCarloEstimate {
    /// Empirical median; `Infinite` when the median trial hit the cap.
    pub median: MedianAttempts,
    pub trials: u64,
    /// Trials that were cut off at `attempt_cap` before succeeding.
    pub capped_trials: u64,
    pub attempt_cap: u64,
}

/// Empirical median attempts with the default cap.
pub fn monte_carlo_median(
    shape: &RepairShape,
    model: &RepairModel,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    monte_carlo_median_capped(shape, model, trials, seed, DEFAULT_ATTEMPT_CAP)
}

/// Empirical median attempts. Each trial uses its own generator stream
/// derived from the seed, so results do not depend on thread count.
pub fn monte_carlo_median_capped(
    shape: &RepairShape,
    model: &RepairModel,
    trials: u64,
    seed: u64,
    attempt_cap: u64,
) -> Result<MonteCarloEstimate> {
    if trials == 0 {
        return Err(Error::Domain("simulation needs at least one trial".into()));
    }
    if attempt_cap == 0 {
        return Err(Error::Domain("attempt cap must be positive".into()));
    }

    let mut needed = vec![0u32; model.len()];
    for (label, count) in shape.actions() {
        let index = model
            .index_of(label)
            .ok_or_else(|| Error::UnknownAction(label.to_string()))?;
        if model.probabilities()[index] == 0.0 {
            return Err(Error::NonterminatingOracle(format!(
                "action '{label}' has probability zero"
            )));
        }
        needed[index] = count;
    }
    let n = shape.size();

    let mut cumulative = Vec::with_capacity(model.len());
    let mut mass = 0.0;
    for &p in model.probabilities() {
        mass += p;
        cumulative.push(mass);
    }

    let mut attempts: Vec<u64> = (0..trials)
        .into_par_iter()
        .map_init(
            || vec![0u32; needed.len()],
            |remaining, trial| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(trial);
                for attempt in 1..=attempt_cap {
                    remaining.copy_from_slice(&needed);
                    let mut matched = true;
                    for _ in 0..n {
                        let u: f64 = rng.gen::<f64>() * mass;
                        let drawn = cumulative.partition_point(|&c| c <= u).min(needed.len() - 1);
                        if remaining[drawn] == 0 {
                            matched = false;
                            break;
                        }
                        remaining[drawn] -= 1;
                    }
                    if matched {
                        return attempt;
                    }
                }
                attempt_cap + 1
            },
        )
        .collect();

    let capped_trials = attempts.iter().filter(|&&a| a > attempt_cap).count() as u64;
    attempts.sort_unstable();
    // Lower middle element, the same even-length convention the analytic
    // median uses downstream.
    let middle = attempts[(attempts.len() - 1) / 2];
    let median = if middle > attempt_cap {
        MedianAttempts::Infinite
    } else {
        MedianAttempts::Finite(middle)
    };
    Ok(MonteCarloEstimate {
        median,
        trials,
        capped_trials,
        attempt_cap,
    })
}
