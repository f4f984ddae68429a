use super::{ArrayError, ArrayWindow, MarkerProfile};
use crate::semigroup::decompose_pq;

/// A gap between two marker positions (or a window edge).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapIssue {
    pub left: i64,
    pub right: i64,
    pub gap: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RowReport {
    pub row: usize,
    /// Markers of this row absent from the row below.
    pub nesting_violations: Vec<i64>,
    pub gap_violations: Vec<GapIssue>,
    /// Gaps cut by the window edge whose true length is unknown.
    pub inconclusive: Vec<GapIssue>,
    pub balance: f64,
    pub balanced: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub rows: Vec<RowReport>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.rows.iter().all(|r| r.nesting_violations.is_empty() && r.gap_violations.is_empty() && r.balanced)
    }
}

pub fn validate_markers(w: &ArrayWindow, p: &MarkerProfile) -> Result<ValidationReport, ArrayError> {
    w.check()?;
    let (lo, hi) = (w.start - 1, w.end());
    let mut rows = Vec::with_capacity(w.height());
    for (i, row) in w.rows.iter().enumerate() {
        let label = w.first_row + i;
        let nesting_violations = match (p.nested, i.checked_sub(1)) {
            (true, Some(j)) => row.markers.iter().filter(|m| !w.rows[j].markers.contains(m)).copied().collect(),
            _ => Vec::new(),
        };

        let (min, max) = p.bounds.get(i).copied().unwrap_or((1, usize::MAX));
        let mut gap_violations = Vec::new();
        let mut inconclusive = Vec::new();
        let ms: Vec<i64> = row.markers.iter().copied().collect();
        for pair in ms.windows(2) {
            let gap = (pair[1] - pair[0]) as usize;
            if gap < min || gap > max {
                gap_violations.push(GapIssue { left: pair[0], right: pair[1], gap });
            }
        }
        let mut edges = Vec::new();
        match (ms.first(), ms.last()) {
            (Some(&first), Some(&last)) => {
                if first > lo {
                    edges.push(GapIssue { left: lo, right: first, gap: (first - lo) as usize });
                }
                if last < hi {
                    edges.push(GapIssue { left: last, right: hi, gap: (hi - last) as usize });
                }
            }
            _ if hi > lo => edges.push(GapIssue { left: lo, right: hi, gap: (hi - lo) as usize }),
            _ => {}
        }
        for e in edges {
            // A cut gap already longer than the maximum is a definite violation.
            if e.gap > max {
                gap_violations.push(e);
            } else {
                inconclusive.push(e);
            }
        }

        let balance = min as f64 / max as f64;
        rows.push(RowReport {
            row: label,
            nesting_violations,
            gap_violations,
            inconclusive,
            balance,
            balanced: balance >= p.balanced_tolerance,
        });
    }
    Ok(ValidationReport { rows })
}

/// Moves every marker of each row onto the nearest marker of the row below
/// at or left of it, working upward; markers with nothing below-left are deleted.
pub fn upward_adjust(w: &ArrayWindow) -> ArrayWindow {
    let mut out = w.clone();
    for i in 1..out.rows.len() {
        let below = out.rows[i - 1].markers.clone();
        out.rows[i].markers =
            out.rows[i].markers.iter().filter_map(|&m| below.range(..=m).next_back().copied()).collect();
    }
    out
}

/// Subdivides each interior gap of row `row` into `p` gaps of length `n`
/// followed by `q` gaps of length `n + 1`, with `p` maximal.
pub fn subdivide_row(w: &ArrayWindow, row: usize, n: u64) -> Result<ArrayWindow, ArrayError> {
    if n == 0 {
        return Err(ArrayError::ZeroSpacing);
    }
    let mut out = w.clone();
    let target = out.row_mut(row)?;
    let primary: Vec<i64> = target.markers.iter().copied().collect();
    let bound = n * (n + 1);
    for pair in primary.windows(2) {
        let gap = (pair[1] - pair[0]) as u64;
        if gap < bound {
            return Err(ArrayError::GapTooSmall { row, left: pair[0], right: pair[1], gap, bound });
        }
        let (p, q) = decompose_pq(gap, n)?;
        let mut pos = pair[0];
        for step in std::iter::repeat_n(n, p as usize).chain(std::iter::repeat_n(n + 1, q as usize)) {
            pos += step as i64;
            target.markers.insert(pos);
        }
        debug_assert_eq!(pos, pair[1]);
    }
    Ok(out)
}
