//! Rank correlation between two frequency vectors, with tabulated
//! critical values for the feature-space sizes this crate works with.

use serde::Serialize;

use crate::error::{Error, Result};

/// Average ranks (1-based). Tied values share the mean of the positions
/// they occupy, so `[10.0, 20.0, 20.0]` ranks as `[1.0, 2.5, 2.5]`.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // Positions start..end are 0-based; their 1-based mean is
        // (start + 1 + end) / 2.
        let rank = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

/// Spearman's rank correlation: the Pearson correlation of the average
/// ranks of both vectors, which handles ties exactly.
pub fn spearman_rho(left: &[f64], right: &[f64]) -> Result<f64> {
    if left.len() != right.len() {
        return Err(Error::DimensionMismatch {
            left: left.len(),
            right: right.len(),
        });
    }
    if left.len() < 2 {
        return Err(Error::Domain(
            "correlation needs at least two observations".into(),
        ));
    }
    if left.iter().chain(right).any(|v| !v.is_finite()) {
        return Err(Error::Domain("correlation input must be finite".into()));
    }
    pearson(&average_ranks(left), &average_ranks(right))
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        cov += (a - mean_x) * (b - mean_y);
        var_x += (a - mean_x) * (a - mean_x);
        var_y += (b - mean_y) * (b - mean_y);
    }
    if var_x == 0.0 || var_y == 0.0 {
        return Err(Error::UndefinedCorrelation(
            "a ranking with no variation has no rank correlation".into(),
        ));
    }
    Ok(cov / (var_x * var_y).sqrt())
}

/// Two-sided critical value of Spearman's rho at the given significance
/// level. Only the 0.01 level and the vector sizes used by the two change
/// models are tabulated: exactly 41 features, or 60 and more.
pub fn spearman_critical_value(features: usize, significance: f64) -> Result<f64> {
    if (significance - 0.01).abs() > 1e-12 {
        return Err(Error::UnsupportedSignificanceLevel(significance));
    }
    match features {
        41 => Ok(0.364),
        n if n >= 60 => Ok(0.301),
        n => Err(Error::UnsupportedSpaceSize(n)),
    }
}

/// Whether `rho` is significant: strictly beyond the tabulated critical
/// value in absolute terms.
pub fn spearman_significant(rho: f64, features: usize, significance: f64) -> Result<bool> {
    Ok(rho.abs() > spearman_critical_value(features, significance)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Correlation {
    pub rho: f64,
    pub features: usize,
    pub significance: f64,
    pub critical: f64,
    pub significant: bool,
}

/// Correlates two same-length vectors and checks significance in one go.
pub fn correlate(left: &[f64], right: &[f64], significance: f64) -> Result<Correlation> {
    let rho = spearman_rho(left, right)?;
    let critical = spearman_critical_value(left.len(), significance)?;
    Ok(Correlation {
        rho,
        features: left.len(),
        significance,
        critical,
        significant: rho.abs() > critical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_swap_of_three_gives_one_half() {
        let rho = spearman_rho(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]).unwrap();
        assert_eq!(rho, 0.5);
    }

    #[test]
    fn identical_and_reversed_orderings_are_extremes() {
        let x = [3.0, 1.0, 4.0, 1.5, 9.0];
        let rev: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((spearman_rho(&x, &x).unwrap() - 1.0).abs() < 1e-15);
        assert!((spearman_rho(&x, &rev).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn ties_average_their_ranks() {
        assert_eq!(average_ranks(&[10.0, 20.0, 20.0]), vec![1.0, 2.5, 2.5]);
        assert_eq!(
            average_ranks(&[5.0, 5.0, 5.0, 1.0]),
            vec![3.0, 3.0, 3.0, 1.0]
        );
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        assert!(matches!(
            spearman_rho(&[1.0, 2.0], &[1.0]),
            Err(Error::DimensionMismatch { left: 2, right: 1 })
        ));
        assert!(matches!(
            spearman_rho(&[1.0], &[1.0]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            spearman_rho(&[2.0, 2.0, 2.0], &[1.0, 2.0, 3.0]),
            Err(Error::UndefinedCorrelation(_))
        ));
        assert!(matches!(
            spearman_rho(&[1.0, f64::NAN], &[1.0, 2.0]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn critical_values_cover_both_model_sizes() {
        assert_eq!(spearman_critical_value(41, 0.01).unwrap(), 0.364);
        assert_eq!(spearman_critical_value(60, 0.01).unwrap(), 0.301);
        assert_eq!(spearman_critical_value(82, 0.01).unwrap(), 0.301);
        assert!(matches!(
            spearman_critical_value(41, 0.05),
            Err(Error::UnsupportedSignificanceLevel(_))
        ));
        assert!(matches!(
            spearman_critical_value(45, 0.01),
            Err(Error::UnsupportedSpaceSize(45))
        ));
    }

    #[test]
    fn significance_is_a_strict_threshold() {
        assert!(!spearman_significant(0.364, 41, 0.01).unwrap());
        assert!(spearman_significant(0.3645, 41, 0.01).unwrap());
        assert!(spearman_significant(-0.4, 41, 0.01).unwrap());
        assert!(!spearman_significant(0.301, 82, 0.01).unwrap());
    }

    proptest! {
        /// Rank correlation only sees order, so a strictly increasing
        /// transform of either side leaves rho untouched. Integer inputs
        /// and integer affine maps keep the transform exact in floats.
        #[test]
        fn invariant_under_monotone_transforms(
            xs in proptest::collection::vec(-1000..1000i32, 3..40),
            ys in proptest::collection::vec(-1000..1000i32, 3..40),
        ) {
            let n = xs.len().min(ys.len());
            let xs: Vec<f64> = xs[..n].iter().map(|&v| v as f64).collect();
            let ys: Vec<f64> = ys[..n].iter().map(|&v| v as f64).collect();
            let rho = match spearman_rho(&xs, &ys) {
                Ok(r) => r,
                Err(_) => return Ok(()),
            };
            let fx: Vec<f64> = xs.iter().map(|v| 3.0 * v + 7.0).collect();
            let fy: Vec<f64> = ys.iter().map(|v| 5.0 * v - 11.0).collect();
            prop_assert_eq!(rho, spearman_rho(&fx, &fy).unwrap());
            prop_assert_eq!(rho, spearman_rho(&ys, &xs).unwrap());
            prop_assert!(rho.abs() <= 1.0 + 1e-12);
        }
    }
}
