//! Renderings of a [`BlockMatrix`]: CSV entries, a per-stratum JSON summary,
//! and PGM/SVG pictures of the exact-zero mask.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::arith::BernoulliParams;
use crate::error::Result;
use crate::spectrum::{stratum_index, Stratum};

use super::BlockMatrix;

#[derive(Debug, Clone, Serialize)]
pub struct BlockSummaryCell {
    pub row: Stratum,
    pub col: Stratum,
    pub entries: usize,
    pub nonzero: usize,
    pub max_magnitude: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockSummary {
    pub params: BernoulliParams,
    pub size: usize,
    pub strata: Vec<(Stratum, usize)>,
    pub cells: Vec<BlockSummaryCell>,
}

/// One row per entry: row word, column word, exact-zero flag, sign,
/// magnitude, error bound.
pub fn write_csv<W: Write>(matrix: &BlockMatrix, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record([
        "row",
        "col",
        "exact_zero",
        "sign",
        "magnitude",
        "error_bound",
    ])?;
    for e in matrix.entries() {
        writer.write_record([
            e.row.to_string(),
            e.col.to_string(),
            e.value.exact_zero.to_string(),
            e.value.sign.to_string(),
            format!("{:e}", e.value.magnitude),
            format!("{:e}", e.value.error_bound),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Nonzero counts and largest magnitudes per (row stratum, column stratum).
pub fn block_summary(matrix: &BlockMatrix) -> BlockSummary {
    let mut strata: BTreeMap<Stratum, usize> = BTreeMap::new();
    for &w in matrix.cols() {
        *strata.entry(stratum_index(w)).or_default() += 1;
    }
    let mut cells: BTreeMap<(Stratum, Stratum), BlockSummaryCell> = BTreeMap::new();
    for e in matrix.entries() {
        let key = (stratum_index(e.row), stratum_index(e.col));
        let cell = cells.entry(key).or_insert(BlockSummaryCell {
            row: key.0,
            col: key.1,
            entries: 0,
            nonzero: 0,
            max_magnitude: 0.0,
        });
        cell.entries += 1;
        if !e.value.exact_zero {
            cell.nonzero += 1;
            cell.max_magnitude = cell.max_magnitude.max(e.value.magnitude);
        }
    }
    BlockSummary {
        params: matrix.params(),
        size: matrix.nrows(),
        strata: strata.into_iter().collect(),
        cells: cells.into_values().collect(),
    }
}

/// Binary greymap of the mask: 0 for exact zeros, 255 otherwise.
pub fn write_pgm<W: Write>(matrix: &BlockMatrix, mut out: W) -> Result<()> {
    write!(out, "P5\n{} {}\n255\n", matrix.ncols(), matrix.nrows())?;
    let pixels: Vec<u8> = matrix
        .entries()
        .iter()
        .map(|e| if e.value.exact_zero { 0 } else { 255 })
        .collect();
    out.write_all(&pixels)?;
    out.flush()?;
    Ok(())
}

/// SVG grid of the mask, shaded by magnitude, with stratum boundaries drawn.
pub fn write_svg<W: Write>(matrix: &BlockMatrix, mut out: W, cell: u32) -> Result<()> {
    let cell = cell.max(1);
    let (w, h) = (matrix.ncols() as u32 * cell, matrix.nrows() as u32 * cell);
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )?;
    writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#)?;
    for i in 0..matrix.nrows() {
        for j in 0..matrix.ncols() {
            let e = matrix.entry(i, j);
            if e.value.exact_zero {
                continue;
            }
            let shade = 255 - (e.value.magnitude.clamp(0.0, 1.0) * 255.0).round() as u8;
            writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{cell}" height="{cell}" fill="rgb({shade},{shade},{shade})"/>"#,
                j as u32 * cell,
                i as u32 * cell
            )?;
        }
    }
    let mut boundaries = Vec::new();
    for (j, pair) in matrix.cols().windows(2).enumerate() {
        if stratum_index(pair[0]) != stratum_index(pair[1]) {
            boundaries.push((j as u32 + 1) * cell);
        }
    }
    for b in boundaries {
        writeln!(
            out,
            r#"<line x1="{b}" y1="0" x2="{b}" y2="{h}" stroke="red" stroke-width="1"/>"#
        )?;
        writeln!(
            out,
            r#"<line x1="0" y1="{b}" x2="{w}" y2="{b}" stroke="red" stroke-width="1"/>"#
        )?;
    }
    writeln!(out, "</svg>")?;
    Ok(())
}
