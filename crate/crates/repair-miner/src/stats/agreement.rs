//! Inter-rater agreement over a matrix of category counts: the mean
//! observed pairwise agreement, the agreement expected by chance, and the
//! kappa that relates the two.
//!
//! All three figures are computed in exact integer fractions and only
//! converted to floats at the end, so small hand-checkable matrices give
//! bit-exact results.

use std::io::Read;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// Items by categories; cell `(i, j)` counts the raters that put item `i`
/// into category `j`. Every item must be rated by the same number of
/// raters, and there must be at least two of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatingMatrix {
    counts: Vec<Vec<u64>>,
    raters: u64,
}

impl RatingMatrix {
    pub fn new(counts: Vec<Vec<u64>>) -> Result<Self> {
        let invalid = |m: String| Error::InvalidRatingMatrix(m);
        let Some(first) = counts.first() else {
            return Err(invalid("matrix has no items".into()));
        };
        let categories = first.len();
        if categories == 0 {
            return Err(invalid("matrix has no categories".into()));
        }
        let raters: u64 = first.iter().sum();
        for (i, row) in counts.iter().enumerate() {
            if row.len() != categories {
                return Err(invalid(format!(
                    "item {} has {} categories, expected {categories}",
                    i + 1,
                    row.len()
                )));
            }
            let sum: u64 = row.iter().sum();
            if sum != raters {
                return Err(invalid(format!(
                    "item {} was rated {sum} times, expected {raters}",
                    i + 1
                )));
            }
        }
        if raters < 2 {
            return Err(invalid(format!(
                "agreement needs at least two raters per item, got {raters}"
            )));
        }
        Ok(RatingMatrix { counts, raters })
    }

    /// Reads a headerless CSV of counts, one row per item.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self> {
        let mut csv = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .flexible(false)
            .from_reader(reader);
        let mut counts = Vec::new();
        for (i, record) in csv.records().enumerate() {
            let record =
                record.map_err(|e| Error::InvalidRatingMatrix(format!("row {}: {e}", i + 1)))?;
            let row = record
                .iter()
                .map(|cell| {
                    cell.parse::<u64>().map_err(|_| {
                        Error::InvalidRatingMatrix(format!(
                            "row {}: '{cell}' is not a count",
                            i + 1
                        ))
                    })
                })
                .collect::<Result<Vec<u64>>>()?;
            counts.push(row);
        }
        RatingMatrix::new(counts)
    }

    pub fn from_csv_path<P: AsRef<Path>>(path: P) -> Result<Self> {
        Self::from_csv_reader(std::fs::File::open(path)?)
    }

    pub fn items(&self) -> usize {
        self.counts.len()
    }

    pub fn categories(&self) -> usize {
        self.counts[0].len()
    }

    pub fn raters(&self) -> u64 {
        self.raters
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Agreement {
    /// Mean over items of the fraction of agreeing rater pairs.
    pub observed: f64,
    /// Agreement expected if every rater drew categories at the overall
    /// marginal rates.
    pub expected: f64,
    /// Chance-corrected agreement; `None` when chance agreement is
    /// already perfect and the correction is undefined.
    pub kappa: Option<f64>,
}

/// Computes observed agreement, expected agreement, and kappa.
pub fn agreement(matrix: &RatingMatrix) -> Agreement {
    let items = matrix.items() as i128;
    let raters = matrix.raters() as i128;

    // Per item, agreeing pairs over all pairs: (sum of squared cell
    // counts - raters) / (raters * (raters - 1)). Summed over items with
    // the common denominator pulled out.
    let mut pair_sum: i128 = 0;
    for row in matrix.counts() {
        for &cell in row {
            let cell = cell as i128;
            pair_sum += cell * cell;
        }
    }
    pair_sum -= items * raters;
    let observed = Fraction::new(pair_sum, items * raters * (raters - 1));

    // Chance agreement: sum of squared category shares.
    let total = items * raters;
    let mut share_sq_sum: i128 = 0;
    for j in 0..matrix.categories() {
        let column: i128 = matrix.counts().iter().map(|row| row[j] as i128).sum();
        share_sq_sum += column * column;
    }
    let expected = Fraction::new(share_sq_sum, total * total);

    let kappa = (!expected.is_one())
        .then(|| observed.sub(expected).div(Fraction::ONE.sub(expected)).to_f64());

    Agreement {
        observed: observed.to_f64(),
        expected: expected.to_f64(),
        kappa,
    }
}

/// Reduced fraction with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Fraction {
    num: i128,
    den: i128,
}

impl Fraction {
    const ONE: Fraction = Fraction { num: 1, den: 1 };

    fn new(num: i128, den: i128) -> Fraction {
        assert!(den != 0, "fraction denominator must be nonzero");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i128;
        Fraction {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    fn sub(self, other: Fraction) -> Fraction {
        Fraction::new(self.num * other.den - other.num * self.den, self.den * other.den)
    }

    fn div(self, other: Fraction) -> Fraction {
        assert!(other.num != 0, "division by zero fraction");
        Fraction::new(self.num * other.den, self.den * other.num)
    }

    fn is_one(self) -> bool {
        self.num == self.den
    }

    fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}
