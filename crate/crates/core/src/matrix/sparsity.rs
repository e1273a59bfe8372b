use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{in_zero_set, mu_hat, BernoulliParams, QuarterInt};
use crate::error::Result;
use crate::report::Report;
use crate::spectrum::{
    enumerate_gamma, scale_value, tilde_stratum_index, word_from_value, DigitWord, GammaOrder,
    TildeStratum,
};

use super::{u_argument, DEFAULT_TOL};

/// Expected content of a block of U|_{W₀} over the classes {1}, Γ̃₀, Γ̃₁, ….
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockPattern {
    /// Every entry is exactly zero.
    Zero,
    /// At least one nonzero entry.
    Star,
}

/// The sparsity pattern of U|_{W₀} for n = 2, p = 5, indexed (row, column).
/// Returns `None` for classes outside the refinement.
pub fn expected_w0_pattern(row: TildeStratum, col: TildeStratum) -> Option<BlockPattern> {
    use BlockPattern::{Star, Zero};
    use TildeStratum::{Level, OnePoint};
    Some(match (row, col) {
        (OnePoint, OnePoint) => Zero,
        (OnePoint, Level(0)) | (Level(0), OnePoint) => Star,
        (OnePoint, Level(_)) | (Level(_), OnePoint) => Zero,
        (Level(0), Level(0)) => Zero,
        (Level(0), Level(_)) | (Level(_), Level(0)) => Star,
        (Level(_), Level(_)) => Zero,
        (TildeStratum::Other, _) | (_, TildeStratum::Other) => return None,
    })
}

/// A nonzero entry U(row, col) = μ̂(5·col − row).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub row: DigitWord,
    pub col: DigitWord,
    pub argument: QuarterInt,
    pub value: f64,
    pub error_bound: f64,
    /// The argument vanishes, so the entry is exactly 1.
    pub exact_one: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SparsityBlock {
    pub row: TildeStratum,
    pub col: TildeStratum,
    pub expected: BlockPattern,
    /// Block size inside the truncation.
    pub rows: usize,
    pub cols: usize,
    /// Entries of the truncated block that are not exact zeros.
    pub nonzero: usize,
    /// For star blocks: the first nonzero entry found in the witness window.
    pub witness: Option<Witness>,
    /// For (Γ̃₀, Γ̃_k), k ≥ 1: an entry with 5γ′ = ξ′.
    pub exact_one: Option<Witness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SparsityReport {
    pub max_digits: u32,
    pub witness_digits: u32,
    /// Classes in display order with their sizes inside the truncation.
    pub classes: Vec<(TildeStratum, usize)>,
    pub blocks: Vec<SparsityBlock>,
    pub report: Report,
    /// Γ₀ truncation ordered by class, then value.
    #[serde(skip)]
    pub order: Vec<DigitWord>,
    /// Row-major exact-zero mask over `order`.
    #[serde(skip)]
    pub zero_mask: Vec<bool>,
}

impl SparsityReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }

    pub fn block(&self, row: TildeStratum, col: TildeStratum) -> Option<&SparsityBlock> {
        self.blocks.iter().find(|b| b.row == row && b.col == col)
    }
}

fn gamma_zero_classes(max_digits: u32) -> Result<BTreeMap<TildeStratum, Vec<DigitWord>>> {
    let params = BernoulliParams::quarter_five();
    let mut classes: BTreeMap<TildeStratum, Vec<DigitWord>> = BTreeMap::new();
    for w in enumerate_gamma(max_digits, GammaOrder::ValueAscending) {
        if w.digit(0) {
            classes
                .entry(tilde_stratum_index(w, params)?)
                .or_default()
                .push(w);
        }
    }
    Ok(classes)
}

fn witness(row: DigitWord, col: DigitWord, tol: f64) -> Result<Option<Witness>> {
    let params = BernoulliParams::quarter_five();
    let argument = u_argument(row, col, params)?;
    if in_zero_set(argument, params) {
        return Ok(None);
    }
    let value = mu_hat(argument, params, tol)?;
    if !value.is_certified_nonzero() {
        return Ok(None);
    }
    Ok(Some(Witness {
        row,
        col,
        argument,
        value: value.value(),
        error_bound: value.error_bound,
        exact_one: argument.is_zero(),
    }))
}

/// Computes the exact-zero pattern of U|_{W₀} (n = 2, p = 5) over the
/// Γ₀ words of at most `max_digits` digits, checks it against
/// [`expected_w0_pattern`], and exhibits a certified nonzero in every star
/// block.
///
/// Zero blocks are checked over the whole truncation. Witnesses are searched
/// among words of at most `witness_digits` digits (default `max_digits + 2`),
/// since a star block can be entirely zero inside a small truncation.
pub fn analyze_w0_sparsity(max_digits: u32, witness_digits: Option<u32>) -> Result<SparsityReport> {
    let params = BernoulliParams::quarter_five();
    let witness_digits = witness_digits.unwrap_or(max_digits + 2).max(max_digits);
    let classes = gamma_zero_classes(max_digits)?;
    let window = gamma_zero_classes(witness_digits)?;
    let mut report = Report::new("w0-sparsity");

    let order: Vec<DigitWord> = classes.values().flatten().copied().collect();
    let zero_mask: Vec<bool> = order
        .iter()
        .flat_map(|&row| {
            order
                .iter()
                .map(move |&col| u_argument(row, col, params).map(|a| in_zero_set(a, params)))
        })
        .collect::<Result<_>>()?;

    let mut blocks = Vec::new();
    for (&row_class, row_words) in &classes {
        for (&col_class, col_words) in &classes {
            let Some(expected) = expected_w0_pattern(row_class, col_class) else {
                continue;
            };
            let mut nonzero = 0;
            for &row in row_words {
                for &col in col_words {
                    if !in_zero_set(u_argument(row, col, params)?, params) {
                        nonzero += 1;
                    }
                }
            }
            let mut block = SparsityBlock {
                row: row_class,
                col: col_class,
                expected,
                rows: row_words.len(),
                cols: col_words.len(),
                nonzero,
                witness: None,
                exact_one: None,
            };
            match expected {
                BlockPattern::Zero => {
                    report.check(
                        nonzero == 0,
                        || format!("block ({row_class}, {col_class})"),
                        || format!("{nonzero} entries outside the zero set"),
                    );
                }
                BlockPattern::Star => {
                    block.witness = find_witness(&window, row_class, col_class)?;
                    report.check(
                        block.witness.is_some(),
                        || format!("block ({row_class}, {col_class})"),
                        || format!("no certified nonzero within {witness_digits} digits"),
                    );
                    if nonzero == 0 {
                        report.note(format!(
                            "block ({row_class}, {col_class}) is zero inside {max_digits} digits; witness taken from {witness_digits} digits"
                        ));
                    }
                }
            }
            if let (TildeStratum::Level(0), TildeStratum::Level(k)) = (row_class, col_class) {
                if k >= 1 {
                    block.exact_one = find_exact_one(&window, col_class, witness_digits)?;
                    report.check(
                        block.exact_one.is_some(),
                        || format!("exact-one entry in block ({row_class}, {col_class})"),
                        || format!("no index pair with 5*col = row within {witness_digits} digits"),
                    );
                }
            }
            blocks.push(block);
        }
    }

    Ok(SparsityReport {
        max_digits,
        witness_digits,
        classes: classes.iter().map(|(c, w)| (*c, w.len())).collect(),
        blocks,
        report,
        order,
        zero_mask,
    })
}

fn find_witness(
    window: &BTreeMap<TildeStratum, Vec<DigitWord>>,
    row_class: TildeStratum,
    col_class: TildeStratum,
) -> Result<Option<Witness>> {
    let (Some(rows), Some(cols)) = (window.get(&row_class), window.get(&col_class)) else {
        return Ok(None);
    };
    for &col in cols {
        for &row in rows {
            if let Some(w) = witness(row, col, DEFAULT_TOL)? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Searches γ′ ∈ Γ̃_k with ξ′ = 5γ′ ∈ Γ̃₀, where U(ξ′, γ′) = μ̂(0) = 1.
fn find_exact_one(
    window: &BTreeMap<TildeStratum, Vec<DigitWord>>,
    col_class: TildeStratum,
    witness_digits: u32,
) -> Result<Option<Witness>> {
    let params = BernoulliParams::quarter_five();
    let Some(cols) = window.get(&col_class) else {
        return Ok(None);
    };
    for &col in cols {
        let target = scale_value(col, params)?;
        let Some(row) = word_from_value(target, params) else {
            continue;
        };
        if row.len() > witness_digits || !row.digit(0) {
            continue;
        }
        if tilde_stratum_index(row, params)? != TildeStratum::Level(0) {
            continue;
        }
        if let Some(w) = witness(row, col, DEFAULT_TOL)? {
            if w.exact_one {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> DigitWord {
        s.parse().unwrap()
    }

    #[test]
    fn pattern_table() {
        use TildeStratum::{Level, OnePoint};
        assert_eq!(
            expected_w0_pattern(OnePoint, OnePoint),
            Some(BlockPattern::Zero)
        );
        assert_eq!(
            expected_w0_pattern(OnePoint, Level(0)),
            Some(BlockPattern::Star)
        );
        assert_eq!(
            expected_w0_pattern(Level(3), OnePoint),
            Some(BlockPattern::Zero)
        );
        assert_eq!(
            expected_w0_pattern(Level(0), Level(2)),
            Some(BlockPattern::Star)
        );
        assert_eq!(
            expected_w0_pattern(Level(0), Level(0)),
            Some(BlockPattern::Zero)
        );
        assert_eq!(
            expected_w0_pattern(Level(1), Level(2)),
            Some(BlockPattern::Zero)
        );
        assert_eq!(expected_w0_pattern(TildeStratum::Other, OnePoint), None);
    }

    #[test]
    fn smallest_exact_one_witness() {
        // γ′ = 17 ∈ Γ̃₁, ξ′ = 85 = 5·17 ∈ Γ̃₀
        let w = witness(word("1111"), word("101"), DEFAULT_TOL)
            .unwrap()
            .unwrap();
        assert!(w.exact_one);
        assert_eq!(w.value, 1.0);
        assert_eq!(w.error_bound, 0.0);
    }

    #[test]
    fn small_truncation_passes() {
        let r = analyze_w0_sparsity(4, None).unwrap();
        assert!(r.passed(), "{:?}", r.report.violations);
        assert_eq!(r.zero_mask.len(), r.order.len() * r.order.len());
        let one_one = r
            .block(TildeStratum::OnePoint, TildeStratum::OnePoint)
            .unwrap();
        assert_eq!(one_one.nonzero, 0);
    }

    #[test]
    fn narrow_window_cannot_find_exact_one() {
        // Γ̃₂ needs 4 digits, and its exact-one partner 5·(1+4³) = 325 needs 5
        let r = analyze_w0_sparsity(4, Some(4)).unwrap();
        assert!(!r.passed());
    }
}
