use std::collections::{BTreeMap, BTreeSet};

use super::CompressionError;
use crate::arrays::{extract_rectangles, ArrayWindow, KRectangle, MarkerProfile, Row};

/// Positive integer labels for rectangles of all depths, assigned in the
/// canonical order (width, then depth, then contents).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountableLabeling {
    labels: BTreeMap<KRectangle, u64>,
    rects: Vec<KRectangle>,
}

impl CountableLabeling {
    pub fn new(rects: impl IntoIterator<Item = KRectangle>) -> Self {
        let rects: Vec<KRectangle> = rects.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let labels = rects.iter().enumerate().map(|(i, r)| (r.clone(), i as u64 + 1)).collect();
        CountableLabeling { labels, rects }
    }

    /// Labels every rectangle of depth `1..=depth` occurring in the windows.
    pub fn from_windows<'a>(
        windows: impl IntoIterator<Item = &'a ArrayWindow>,
        depth: usize,
    ) -> Result<Self, CompressionError> {
        let mut all = Vec::new();
        for w in windows {
            for k in 1..=depth {
                if let Ok(rects) = extract_rectangles(w, k) {
                    all.extend(rects.into_keys());
                }
            }
        }
        Ok(Self::new(all))
    }

    pub fn label(&self, r: &KRectangle) -> Option<u64> {
        self.labels.get(r).copied()
    }

    pub fn rectangle(&self, label: u64) -> Option<&KRectangle> {
        label.checked_sub(1).and_then(|i| self.rects.get(i as usize))
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }
}

/// One entry per column; `None` is the extra symbol ∞.
pub type CountableCode = Vec<Option<u64>>;

/// Rows `1..=k` between row-`k` markers `left` and `right`.
fn rect_at(w: &ArrayWindow, k: usize, left: i64, right: i64) -> KRectangle {
    let (lo, hi) = ((left + 1 - w.start) as usize, (right - w.start) as usize);
    KRectangle {
        width: hi + 1 - lo,
        depth: k,
        first_row: 1,
        rows: w.rows[..k].iter().map(|r| r.symbols[lo..=hi].to_vec()).collect(),
        markers: w.rows[..k].iter().map(|r| r.markers.range(left..=right).map(|m| m - left - 1).collect()).collect(),
    }
}

fn check_spacing(w: &ArrayWindow, profile: &MarkerProfile) -> Result<(), CompressionError> {
    let k = w.height();
    if profile.bounds.len() < k {
        return Err(CompressionError::Spacing { row: profile.bounds.len() + 1, reason: "no bounds given".into() });
    }
    if profile.bounds[0].0 < 2 {
        return Err(CompressionError::Spacing { row: 1, reason: "minimal gap must be at least 2".into() });
    }
    for j in 1..k {
        let (min, prev_max) = (profile.bounds[j].0, profile.bounds[j - 1].1);
        if min < 2 * prev_max {
            return Err(CompressionError::Spacing {
                row: j + 1,
                reason: format!("minimal gap {min} is below twice the previous maximal gap {prev_max}"),
            });
        }
    }
    let report = crate::arrays::validate_markers(w, profile)?;
    for r in &report.rows {
        if let Some(m) = r.nesting_violations.first() {
            return Err(CompressionError::Spacing { row: r.row, reason: format!("marker {m} is not nested") });
        }
        if let Some(g) = r.gap_violations.first() {
            return Err(CompressionError::Spacing { row: r.row, reason: format!("gap {} out of bounds", g.gap) });
        }
    }
    Ok(())
}

/// Writes the labels row after row: a row-1 rectangle's label goes to its
/// first column, a deeper rectangle's label to the first free column after
/// its left marker; everything left over is ∞.
pub fn encode_countable(
    w: &ArrayWindow,
    profile: &MarkerProfile,
    labeling: &CountableLabeling,
) -> Result<CountableCode, CompressionError> {
    w.check()?;
    if w.width() == 0 {
        return Ok(Vec::new());
    }
    let depth = w.height();
    if w.first_row != 1 {
        return Err(CompressionError::Spacing { row: w.first_row, reason: "rows must start at 1".into() });
    }
    let top = &w.rows[depth - 1].markers;
    if !top.contains(&(w.start - 1)) || !top.contains(&w.end()) {
        return Err(CompressionError::TruncatedWindow { row: depth });
    }
    check_spacing(w, profile)?;
    let mut code: CountableCode = vec![None; w.width()];
    let at = |c: i64| (c - w.start) as usize;
    for k in 1..=depth {
        let bounds: Vec<i64> = w.rows[k - 1].markers.iter().copied().collect();
        for pair in bounds.windows(2) {
            let (left, right) = (pair[0], pair[1]);
            let label = labeling.label(&rect_at(w, k, left, right)).ok_or(CompressionError::Unlabeled)?;
            let slot = (left + 1..=right).find(|&c| code[at(c)].is_none()).ok_or(CompressionError::FullSector {
                row: k,
                left,
                right,
            })?;
            debug_assert!(k > 1 || slot == left + 1);
            code[at(slot)] = Some(label);
        }
        if k < depth {
            if let Some(pair) = bounds.windows(2).find(|p| (p[0] + 1..=p[1]).all(|c| code[at(c)].is_some())) {
                return Err(CompressionError::FullSector { row: k, left: pair[0], right: pair[1] });
            }
        }
    }
    Ok(code)
}

/// Unloads the labels row by row, starting from a marker just left of
/// `start` and rebuilding rows `1..=depth` with their markers.
pub fn decode_countable(
    code: &[Option<u64>],
    start: i64,
    depth: usize,
    labeling: &CountableLabeling,
) -> Result<ArrayWindow, CompressionError> {
    let width = code.len();
    let end = start + width as i64 - 1;
    let fail = |position: usize, reason: String| CompressionError::CountableDecode { position, reason };
    let mut cells: Vec<Vec<Option<String>>> = vec![vec![None; width]; depth];
    let mut markers: Vec<BTreeSet<i64>> = vec![BTreeSet::from([start - 1]); depth];
    let mut used = vec![false; width];
    for k in 1..=depth {
        let mut pos = start - 1;
        while pos < end {
            let first = (pos + 1 - start) as usize;
            let slot = if k == 1 { Some(first) } else { (first..width).find(|&c| !used[c]) };
            let slot = slot.ok_or_else(|| fail(width, format!("no free slot for a row-{k} label")))?;
            let label = code[slot].ok_or_else(|| fail(slot, "expected a label, found ∞".into()))?;
            let rect = labeling.rectangle(label).ok_or_else(|| fail(slot, format!("unknown label {label}")))?;
            if rect.depth != k || rect.first_row != 1 {
                return Err(fail(slot, format!("label {label} is not a depth-{k} rectangle")));
            }
            if pos + rect.width as i64 > end {
                return Err(fail(slot, format!("label {label} overruns the window")));
            }
            used[slot] = true;
            for j in 0..k {
                for (i, s) in rect.rows[j].iter().enumerate() {
                    let cell = &mut cells[j][first + i];
                    match cell {
                        Some(old) if old != s => {
                            return Err(fail(slot, format!("row {} disagrees at column {}", j + 1, first + i)))
                        }
                        _ => *cell = Some(s.clone()),
                    }
                }
                let shifted: BTreeSet<i64> = rect.markers[j].iter().map(|m| m + pos + 1).collect();
                if j + 1 < k {
                    let known: BTreeSet<i64> = markers[j].range(pos..=pos + rect.width as i64).copied().collect();
                    if known != shifted {
                        return Err(fail(slot, format!("row {} markers disagree", j + 1)));
                    }
                } else {
                    markers[j].extend(shifted);
                }
            }
            pos += rect.width as i64;
        }
    }
    if let Some(c) = (0..width).find(|&c| code[c].is_some() && !used[c]) {
        return Err(fail(c, "label left over after unloading".into()));
    }
    let rows = cells
        .into_iter()
        .zip(markers)
        .map(|(cells, markers)| Row { symbols: cells.into_iter().map(|c| c.unwrap_or_default()).collect(), markers })
        .collect();
    Ok(ArrayWindow::new(start, 1, rows)?)
}

/// Space-separated decimal labels with `*` for ∞.
pub fn write_countable(code: &[Option<u64>]) -> String {
    code.iter().map(|c| c.map_or("*".to_string(), |l| l.to_string())).collect::<Vec<_>>().join(" ")
}

pub fn parse_countable(text: &str) -> Result<CountableCode, CompressionError> {
    text.split_whitespace()
        .map(|t| match t {
            "*" => Ok(None),
            _ => t.parse::<u64>().ok().filter(|&l| l > 0).map(Some).ok_or_else(|| CompressionError::BadToken(t.into())),
        })
        .collect()
}
