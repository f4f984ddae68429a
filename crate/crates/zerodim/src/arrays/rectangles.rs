use std::collections::BTreeMap;

use super::{ArrayError, ArrayWindow, MarkerProfile, Row};
use crate::symbolic::SubshiftSpec;

/// Rows `first_row..=depth` of a window between two consecutive row-`depth`
/// markers. Marker positions are relative: `j` is the boundary right of the
/// rectangle's column `j`, and `-1` the left delimiter.
///
/// The derived order compares width first, then contents, which is the
/// canonical order used by the codecs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KRectangle {
    pub width: usize,
    pub depth: usize,
    pub first_row: usize,
    pub rows: Vec<Vec<String>>,
    pub markers: Vec<Vec<i64>>,
}

impl KRectangle {
    /// Places the rectangle with its first column at `start`.
    pub fn to_window(&self, start: i64) -> ArrayWindow {
        let rows = self
            .rows
            .iter()
            .zip(&self.markers)
            .map(|(s, m)| Row { symbols: s.clone(), markers: m.iter().map(|x| x + start).collect() })
            .collect();
        ArrayWindow { start, first_row: self.first_row, rows }
    }

    /// Symbols of the row labelled `label`.
    pub fn row(&self, label: usize) -> &[String] {
        &self.rows[label - self.first_row]
    }
}

/// Distinct rectangles with their multiplicities.
pub type RectangleCounts = BTreeMap<KRectangle, usize>;

/// Cuts rows up to `k` at consecutive row-`k` markers. The fragments before
/// the first and after the last marker are dropped.
pub fn extract_rectangles(w: &ArrayWindow, k: usize) -> Result<RectangleCounts, ArrayError> {
    w.check()?;
    let delimiters: Vec<i64> = w.row(k)?.markers.iter().copied().collect();
    if delimiters.len() < 2 {
        return Err(ArrayError::NoMarkers { row: k });
    }
    let mut out = RectangleCounts::new();
    for pair in delimiters.windows(2) {
        let (left, right) = (pair[0], pair[1]);
        let lo = (left + 1 - w.start) as usize;
        let hi = (right - w.start) as usize;
        let rect = KRectangle {
            width: hi + 1 - lo,
            depth: k,
            first_row: w.first_row,
            rows: w.rows[..=k - w.first_row].iter().map(|r| r.symbols[lo..=hi].to_vec()).collect(),
            markers: w.rows[..=k - w.first_row]
                .iter()
                .map(|r| r.markers.range(left..=right).map(|m| m - left - 1).collect())
                .collect(),
        };
        *out.entry(rect).or_insert(0) += 1;
    }
    Ok(out)
}

/// Number of distinct rectangles of each width.
pub fn length_counts(rects: &RectangleCounts) -> BTreeMap<usize, u64> {
    let mut out = BTreeMap::new();
    for r in rects.keys() {
        *out.entry(r.width).or_insert(0) += 1;
    }
    out
}

/// max over widths n of (1/n)·log₂(#rectangles of width n), with widths
/// checked against the profile bounds of row `k`.
pub fn entropy_from_rectangles(
    counts: &BTreeMap<usize, u64>,
    profile: &MarkerProfile,
    k: usize,
) -> Result<f64, ArrayError> {
    if counts.is_empty() {
        return Err(ArrayError::EmptyCounts);
    }
    let (min, max) = profile.bounds.get(k.wrapping_sub(1)).copied().unwrap_or((1, usize::MAX));
    counts
        .iter()
        .filter(|(_, &c)| c > 0)
        .map(|(&n, &c)| {
            if n < min || n > max {
                Err(ArrayError::LengthOutOfBounds { length: n, min, max })
            } else {
                Ok((c as f64).log2() / n as f64)
            }
        })
        .try_fold(0.0f64, |acc, h| h.map(|h| acc.max(h)))
}

/// Allowed `k`-rectangles of the free-block system: row `j` has width-`2^j`
/// blocks over `{0..j}`, and at most one block of the whole rectangle is
/// not identically zero.
pub fn free_block_rectangles(k: usize) -> Vec<KRectangle> {
    let width = 1usize << k;
    let markers: Vec<Vec<i64>> = (1..=k)
        .map(|j| {
            let step = 1i64 << j;
            std::iter::once(-1).chain((1..=(width as i64 / step)).map(|b| b * step - 1)).collect()
        })
        .collect();
    let zero = vec![vec!["0".to_string(); width]; k];
    let mut out = vec![zero.clone()];
    for j in 1..=k {
        let block = 1usize << j;
        let symbols = j as u64 + 1;
        let total = symbols.pow(block as u32);
        for b in 0..width / block {
            for code in 1..total {
                let mut rows = zero.clone();
                let mut c = code;
                for col in (0..block).rev() {
                    rows[j - 1][b * block + col] = (c % symbols).to_string();
                    c /= symbols;
                }
                out.push(rows);
            }
        }
    }
    let mut rects: Vec<KRectangle> = out
        .into_iter()
        .map(|rows| KRectangle { width, depth: k, first_row: 1, rows, markers: markers.clone() })
        .collect();
    rects.sort();
    rects
}

/// One-row rectangles reading each admissible word of length `n`.
pub fn word_rectangles(spec: &SubshiftSpec, n: usize) -> Vec<KRectangle> {
    let tokens = spec.alphabet().tokens();
    spec.language(n)
        .into_iter()
        .map(|w| KRectangle {
            width: n,
            depth: 1,
            first_row: 1,
            rows: vec![w.0.iter().map(|&s| tokens[s as usize].clone()).collect()],
            markers: vec![vec![-1, n as i64 - 1]],
        })
        .collect()
}
