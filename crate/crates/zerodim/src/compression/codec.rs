use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{CodeFamily, CompressionError};
use crate::arrays::{extract_rectangles, ArrayWindow, KRectangle, Row};
use crate::symbolic::Word;

/// A length-preserving injection from rectangles to family blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressionMap {
    pub ell: usize,
    pub s: usize,
    pub forward: BTreeMap<KRectangle, Word>,
    backward: HashMap<Word, KRectangle>,
}

impl CompressionMap {
    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn rectangle(&self, block: &Word) -> Option<&KRectangle> {
        self.backward.get(block)
    }
}

/// Sends the i-th rectangle of each length (in canonical order) to the
/// i-th family block of that length.
pub fn compress(rects: &[KRectangle], family: &mut CodeFamily) -> Result<CompressionMap, CompressionError> {
    let sorted: BTreeSet<&KRectangle> = rects.iter().collect();
    let mut by_length: BTreeMap<usize, Vec<&KRectangle>> = BTreeMap::new();
    for r in sorted {
        by_length.entry(r.width).or_default().push(r);
    }
    let mut forward = BTreeMap::new();
    let mut backward = HashMap::new();
    for (&length, group) in &by_length {
        let blocks = family.blocks(length)?;
        if blocks.len() < group.len() {
            return Err(CompressionError::Capacity { length, needed: group.len(), available: blocks.len() });
        }
        for (r, b) in group.iter().zip(blocks) {
            forward.insert((*r).clone(), b.clone());
            backward.insert(b.clone(), (*r).clone());
        }
    }
    Ok(CompressionMap { ell: family.ell, s: family.s, forward, backward })
}

/// Replaces each rectangle between consecutive last-row markers by its block.
pub fn recode(w: &ArrayWindow, map: &CompressionMap) -> Result<Word, CompressionError> {
    let k = w.last_row();
    let markers = &w.row(k)?.markers;
    if w.width() == 0 {
        return Ok(Word(Vec::new()));
    }
    if !markers.contains(&(w.start - 1)) || !markers.contains(&w.end()) {
        return Err(CompressionError::TruncatedWindow { row: k });
    }
    let bounds: Vec<i64> = markers.iter().copied().collect();
    let mut out = Vec::new();
    for pair in bounds.windows(2) {
        let piece = w.restrict(pair[0] + 1, pair[1]);
        let rect = extract_rectangles(&piece, k)?.into_keys().next().expect("one rectangle");
        let block = map.forward.get(&rect).ok_or(CompressionError::UnknownBlock { column: pair[0] + 1 })?;
        out.extend_from_slice(&block.0);
    }
    Ok(Word(out))
}

/// Result of decoding: the number of leading symbols skipped as an
/// incomplete block, and the recovered window starting at column 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub skipped: usize,
    pub window: ArrayWindow,
}

/// Cuts the coded text at the occurrences of the marker word and looks each
/// block up. Text before the first occurrence is skipped.
pub fn decode(coded: &Word, map: &CompressionMap) -> Result<Decoded, CompressionError> {
    let marker = CodeFamily::new(map.ell, map.s)?.marker();
    let starts: Vec<usize> = coded.occurrences(&marker.0).collect();
    let (depth, first_row) = map.forward.keys().next().map_or((1, 1), |r| (r.depth, r.first_row));
    let mut rows: Vec<Row> = (first_row..=depth).map(|_| Row::new(Vec::<String>::new(), [-1])).collect();
    let skipped = starts.first().copied().unwrap_or(coded.len());
    let mut column = 0i64;
    for (i, &p) in starts.iter().enumerate() {
        let end = starts.get(i + 1).copied().unwrap_or(coded.len());
        let block = Word(coded.0[p..end].to_vec());
        let rect = map.rectangle(&block).ok_or(CompressionError::Desync { position: p })?;
        for (row, (symbols, markers)) in rows.iter_mut().zip(rect.rows.iter().zip(&rect.markers)) {
            row.symbols.extend(symbols.iter().cloned());
            row.markers.extend(markers.iter().map(|m| m + column));
        }
        column += rect.width as i64;
    }
    if skipped == coded.len() && !coded.is_empty() {
        return Err(CompressionError::Desync { position: 0 });
    }
    Ok(Decoded { skipped, window: ArrayWindow::new(0, first_row, rows)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrays::parse_array;
    use crate::compression::build_family;

    fn ab_map() -> (ArrayWindow, CompressionMap) {
        let w = parse_array("ROWS 1 0 8\n| a b a | b a b | a b a |\n").unwrap();
        let rects: Vec<KRectangle> = extract_rectangles(&w, 1).unwrap().into_keys().collect();
        let mut fam = CodeFamily::new(2, 1).unwrap();
        (w, compress(&rects, &mut fam).unwrap())
    }

    fn digits(s: &str) -> Word {
        Word(s.bytes().map(|b| (b - b'0') as u32).collect())
    }

    #[test]
    fn ab_roundtrip() {
        let (w, map) = ab_map();
        let coded = recode(&w, &map).unwrap();
        assert_eq!(coded, digits("100101100"));
        let back = decode(&coded, &map).unwrap();
        assert_eq!(back.skipped, 0);
        assert_eq!(back.window, w);
    }

    #[test]
    fn truncated_prefix_is_skipped() {
        let (_, map) = ab_map();
        let back = decode(&digits("01100"), &map).unwrap();
        assert_eq!(back.skipped, 2);
        assert_eq!(back.window.rows[0].symbols, ["a", "b", "a"]);
    }

    #[test]
    fn corruption_desynchronizes() {
        let (_, map) = ab_map();
        assert_eq!(decode(&digits("100111100"), &map), Err(CompressionError::Desync { position: 0 }));
        assert_eq!(decode(&digits("10010111"), &map), Err(CompressionError::Desync { position: 3 }));
    }

    #[test]
    fn capacity() {
        let make = |n: usize| -> Vec<KRectangle> {
            (0..n)
                .map(|i| KRectangle {
                    width: 4,
                    depth: 1,
                    first_row: 1,
                    rows: vec![vec![i.to_string(); 4]],
                    markers: vec![vec![-1, 3]],
                })
                .collect()
        };
        let mut fam = CodeFamily::new(2, 1).unwrap();
        assert_eq!(compress(&make(3), &mut fam).unwrap().len(), 3);
        assert_eq!(
            compress(&make(4), &mut fam),
            Err(CompressionError::Capacity { length: 4, needed: 4, available: 3 })
        );
        assert!(compress(&[], &mut fam).unwrap().is_empty());
        assert_eq!(fam.count(4).unwrap(), build_family(2, 1, 4).unwrap().len());
    }
}
