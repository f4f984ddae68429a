use std::collections::{BTreeSet, HashMap};

use super::{FinitePath, OrderedBratteliDiagram, Vertex};
use crate::arrays::{ArrayWindow, Row};

/// The `k`-symbol of a level-`k` vertex: rows `0..=k` starting at column 0.
/// Row 0 lists `v_0` in every column; row `j` lists the level-`j` vertex each
/// path passes through, with a marker right of every `j`-symbol and at `-1`.
pub fn k_symbol(d: &OrderedBratteliDiagram, v: Vertex) -> ArrayWindow {
    let mut memo = HashMap::new();
    let rows = build(d, v, &mut memo);
    ArrayWindow { start: 0, first_row: 0, rows }
}

fn build(d: &OrderedBratteliDiagram, v: Vertex, memo: &mut HashMap<Vertex, Vec<Row>>) -> Vec<Row> {
    if let Some(rows) = memo.get(&v) {
        return rows.clone();
    }
    let mut rows: Vec<Row> = (0..v.level).map(|_| Row { symbols: Vec::new(), markers: BTreeSet::from([-1]) }).collect();
    for &e in d.out_edges(v) {
        let child = build(d, Vertex::new(v.level - 1, d.edge(v.level, e).target), memo);
        let offset = rows.first().map_or(0, |r| r.symbols.len()) as i64;
        for (row, part) in rows.iter_mut().zip(child) {
            row.symbols.extend(part.symbols);
            row.markers.extend(part.markers.iter().map(|m| m + offset));
        }
    }
    let width = rows.first().map_or(1, |r| r.symbols.len());
    rows.push(Row { symbols: vec![d.name(v).to_string(); width], markers: BTreeSet::from([-1, width as i64 - 1]) });
    memo.insert(v, rows.clone());
    rows
}

/// The `k`-symbol of the path's source placed so that the path's own
/// column (its 1-based rank from the left) sits at coordinate 0.
pub fn path_to_array(d: &OrderedBratteliDiagram, p: &FinitePath) -> ArrayWindow {
    let w = k_symbol(d, p.source(d));
    let start = 1 - p.rank(d) as i64;
    ArrayWindow {
        start,
        first_row: 0,
        rows: w
            .rows
            .into_iter()
            .map(|r| Row { symbols: r.symbols, markers: r.markers.iter().map(|m| m + start).collect() })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn top_symbol() {
        let d = fixtures::odometer(2);
        let w = k_symbol(&d, Vertex::TOP);
        assert_eq!(w.rows.len(), 1);
        assert_eq!(w.rows[0].symbols, ["v0"]);
        assert_eq!(w.rows[0].markers, [-1, 0].into());
    }

    #[test]
    fn odometer_level_two() {
        let d = fixtures::odometer(2);
        let w = k_symbol(&d, Vertex::new(2, 0));
        assert_eq!(w.width(), 4);
        assert_eq!(w.rows[2].symbols, ["v2"; 4]);
        assert_eq!(w.rows[2].markers, [-1, 3].into());
        assert_eq!(w.rows[1].markers, [-1, 1, 3].into());
        assert_eq!(w.rows[0].markers, [-1, 0, 1, 2, 3].into());
        w.check().unwrap();
    }

    #[test]
    fn figure_symbol() {
        let d = fixtures::two_symbol_figure();
        let w = k_symbol(&d, d.vertex(2, "u1").unwrap());
        assert_eq!(w.width(), 12);
        let row1: Vec<&str> = w.rows[1].symbols.iter().map(String::as_str).collect();
        assert_eq!(row1, ["w2", "w2", "w2", "w1", "w1", "w4", "w4", "w4", "w4", "w4", "w1", "w1"]);
        assert_eq!(w.rows[1].markers, [-1, 2, 4, 9, 11].into());
    }

    #[test]
    fn minimal_path_alignment() {
        let d = fixtures::odometer(3);
        let w = path_to_array(&d, &d.minimal_path(Vertex::new(3, 0)));
        assert_eq!((w.start, w.end()), (0, 7));
    }
}
