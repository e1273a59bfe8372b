//! Truncated matrices of U with respect to E(Γ), and the structural checks
//! run against them.
//!
//! Entries are U(ξ, γ) = ⟨e_ξ, U e_γ⟩ = μ̂(pγ − ξ). The exact-zero mask comes
//! from the zero-set predicate and never from a magnitude threshold.

mod export;
mod sparsity;
mod verify;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{mu_hat, BernoulliParams, MuHatValue, QuarterInt};
use crate::error::Result;
use crate::spectrum::{enumerate_gamma, scale_value, word_value, DigitWord, GammaOrder};

pub use export::{block_summary, write_csv, write_pgm, write_svg, BlockSummary, BlockSummaryCell};
pub use sparsity::{
    analyze_w0_sparsity, expected_w0_pattern, BlockPattern, SparsityBlock, SparsityReport, Witness,
};
pub use verify::{
    verify_block_diagonal, verify_block_equality, verify_commutation_even,
    verify_multiplication_identity, verify_odd_relations,
};

/// Default tolerance for numeric magnitudes of matrix entries.
pub const DEFAULT_TOL: f64 = 1e-12;

/// One matrix entry U(row, col).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntryValue {
    pub row: DigitWord,
    pub col: DigitWord,
    pub value: MuHatValue,
}

/// The argument pγ − ξ of the (ξ, γ) entry.
pub fn u_argument(row: DigitWord, col: DigitWord, params: BernoulliParams) -> Result<QuarterInt> {
    Ok(scale_value(col, params)? - word_value(row, params))
}

/// U(ξ, γ) = μ̂(pγ − ξ) with an exact-zero flag and certified magnitude.
pub fn u_entry(
    row: DigitWord,
    col: DigitWord,
    params: BernoulliParams,
    tol: f64,
) -> Result<EntryValue> {
    let arg = u_argument(row, col, params)?;
    Ok(EntryValue {
        row,
        col,
        value: mu_hat(arg, params, tol)?,
    })
}

/// A dense block of the matrix of U over given row and column index words.
#[derive(Debug, Clone)]
pub struct BlockMatrix {
    params: BernoulliParams,
    rows: Vec<DigitWord>,
    cols: Vec<DigitWord>,
    /// Row-major.
    entries: Vec<EntryValue>,
}

impl BlockMatrix {
    /// Computes every entry; rows and columns are evaluated in parallel.
    pub fn build(
        params: BernoulliParams,
        rows: Vec<DigitWord>,
        cols: Vec<DigitWord>,
        tol: f64,
    ) -> Result<Self> {
        params.require_p()?;
        let ncols = cols.len();
        let entries = (0..rows.len() * ncols)
            .into_par_iter()
            .map(|idx| u_entry(rows[idx / ncols], cols[idx % ncols], params, tol))
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockMatrix {
            params,
            rows,
            cols,
            entries,
        })
    }

    /// The square truncation over all words of at most `max_digits` digits,
    /// ordered {0}, Γ₀, Γ₁, ….
    pub fn strata_major(params: BernoulliParams, max_digits: u32, tol: f64) -> Result<Self> {
        let words = enumerate_gamma(max_digits, GammaOrder::StrataMajor);
        Self::build(params, words.clone(), words, tol)
    }

    pub fn params(&self) -> BernoulliParams {
        self.params
    }

    pub fn rows(&self) -> &[DigitWord] {
        &self.rows
    }

    pub fn cols(&self) -> &[DigitWord] {
        &self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &EntryValue {
        &self.entries[i * self.cols.len() + j]
    }

    pub fn entries(&self) -> &[EntryValue] {
        &self.entries
    }

    pub fn is_zero(&self, i: usize, j: usize) -> bool {
        self.entry(i, j).value.exact_zero
    }

    /// Row-major exact-zero mask.
    pub fn zero_mask(&self) -> Vec<bool> {
        self.entries.iter().map(|e| e.value.exact_zero).collect()
    }
}
