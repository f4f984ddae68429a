//! Markered array windows and marker constructions.
//!
//! A marker at position `n` sits between columns `n` and `n+1`; it is
//! drawn as a vertical bar immediately to the right of the symbol in
//! column `n`.

mod format;
mod krieger;
mod markers;
mod rectangles;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::semigroup::SemigroupError;
use crate::symbolic::{SymbolicError, Word};

pub use format::{parse_array, write_array};
pub use krieger::{auto_cover, krieger_markers, CylinderSet, KriegerOutcome, KriegerReport, DEFAULT_RADIUS_CAP};
pub use markers::{subdivide_row, upward_adjust, validate_markers, GapIssue, RowReport, ValidationReport};
pub use rectangles::{
    entropy_from_rectangles, extract_rectangles, free_block_rectangles, length_counts, word_rectangles, KRectangle,
    RectangleCounts,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrayError {
    #[error("row {row} has width {found}, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("marker {marker} in row {row} lies outside [{lo}, {hi}]")]
    MarkerOutOfRange { row: usize, marker: i64, lo: i64, hi: i64 },
    #[error("window has no rows")]
    NoRows,
    #[error("row {0} does not exist in this window")]
    NoSuchRow(usize),
    #[error("row {row} has fewer than two markers")]
    NoMarkers { row: usize },
    #[error("gap [{left}, {right}] of length {gap} in row {row} is shorter than n(n+1) = {bound}")]
    GapTooSmall { row: usize, left: i64, right: i64, gap: u64, bound: u64 },
    #[error("rectangle counts are empty")]
    EmptyCounts,
    #[error("rectangle length {length} lies outside [{min}, {max}]")]
    LengthOutOfBounds { length: usize, min: usize, max: usize },
    #[error("cover member {member} is not {n}-separated: witness `{witness}`")]
    NotSeparated { member: usize, n: usize, witness: Word },
    #[error("cover member {member} pattern `{pattern}` is not admissible or has the wrong length")]
    BadPattern { member: usize, pattern: Word },
    #[error("cover members {0} and {1} coincide")]
    DuplicateMember(usize, usize),
    #[error("refined radius {needed} exceeds the cap {cap}")]
    RadiusOverflow { needed: usize, cap: usize },
    #[error("marker spacing n must be positive")]
    ZeroSpacing,
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

/// One row of an array window: its symbols and marker positions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Row {
    pub symbols: Vec<String>,
    pub markers: BTreeSet<i64>,
}

impl Row {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>, markers: impl IntoIterator<Item = i64>) -> Self {
        Row { symbols: symbols.into_iter().map(Into::into).collect(), markers: markers.into_iter().collect() }
    }
}

/// A finite K-row array over the coordinate interval `[start, start + width - 1]`.
///
/// `first_row` is the label of `rows[0]`: 1 for ordinary arrays, 0 for
/// arrays built from Bratteli diagrams, which carry the top vertex row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrayWindow {
    pub start: i64,
    pub first_row: usize,
    pub rows: Vec<Row>,
}

impl ArrayWindow {
    pub fn new(start: i64, first_row: usize, rows: Vec<Row>) -> Result<Self, ArrayError> {
        let w = ArrayWindow { start, first_row, rows };
        w.check()?;
        Ok(w)
    }

    /// Verifies rectangular shape and marker ranges.
    pub fn check(&self) -> Result<(), ArrayError> {
        let first = self.rows.first().ok_or(ArrayError::NoRows)?;
        let width = first.symbols.len();
        let (lo, hi) = (self.start - 1, self.end());
        for (i, r) in self.rows.iter().enumerate() {
            let row = self.first_row + i;
            if r.symbols.len() != width {
                return Err(ArrayError::Ragged { row, expected: width, found: r.symbols.len() });
            }
            if let Some(&marker) = r.markers.iter().find(|&&m| m < lo || m > hi) {
                return Err(ArrayError::MarkerOutOfRange { row, marker, lo, hi });
            }
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, |r| r.symbols.len())
    }

    /// Last coordinate; `start - 1` for an empty window.
    pub fn end(&self) -> i64 {
        self.start + self.width() as i64 - 1
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    /// Label of the top row.
    pub fn last_row(&self) -> usize {
        self.first_row + self.rows.len() - 1
    }

    pub fn row(&self, label: usize) -> Result<&Row, ArrayError> {
        label.checked_sub(self.first_row).and_then(|i| self.rows.get(i)).ok_or(ArrayError::NoSuchRow(label))
    }

    pub(crate) fn row_mut(&mut self, label: usize) -> Result<&mut Row, ArrayError> {
        label.checked_sub(self.first_row).and_then(|i| self.rows.get_mut(i)).ok_or(ArrayError::NoSuchRow(label))
    }

    pub fn symbol(&self, label: usize, coord: i64) -> Option<&str> {
        let row = self.row(label).ok()?;
        let i = usize::try_from(coord - self.start).ok()?;
        row.symbols.get(i).map(String::as_str)
    }

    /// Same content shifted so that column `c` moves to `c - 1`.
    pub fn shifted_left(&self) -> Self {
        let mut w = self.clone();
        w.start -= 1;
        for r in &mut w.rows {
            r.markers = r.markers.iter().map(|m| m - 1).collect();
        }
        w
    }

    /// Restriction to `[a, b]`, keeping markers in `[a-1, b]`.
    pub fn restrict(&self, a: i64, b: i64) -> Self {
        let a = a.max(self.start);
        let b = b.min(self.end());
        let rows = self
            .rows
            .iter()
            .map(|r| Row {
                symbols: if a > b {
                    Vec::new()
                } else {
                    r.symbols[(a - self.start) as usize..=(b - self.start) as usize].to_vec()
                },
                markers: r.markers.range(a - 1..=b.max(a - 1)).copied().collect(),
            })
            .collect();
        ArrayWindow { start: a, first_row: self.first_row, rows }
    }

    /// A single-row window reading `word` with the given alphabet tokens.
    pub fn from_word(tokens: &[String], word: &Word, start: i64, markers: impl IntoIterator<Item = i64>) -> Self {
        let row = Row::new(word.0.iter().map(|&s| tokens[s as usize].clone()), markers);
        ArrayWindow { start, first_row: 1, rows: vec![row] }
    }
}

/// Per-row gap bounds `(n_k^min, n_k^max)`, indexed from the window's first row.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkerProfile {
    pub bounds: Vec<(usize, usize)>,
    pub nested: bool,
    pub balanced_tolerance: f64,
}

impl MarkerProfile {
    pub fn new(bounds: Vec<(usize, usize)>) -> Self {
        MarkerProfile { bounds, nested: true, balanced_tolerance: 1.0 }
    }

    /// Constant gaps per row, as in odometer-style marker systems.
    pub fn uniform(gaps: &[usize]) -> Self {
        Self::new(gaps.iter().map(|&g| (g, g)).collect())
    }
}
