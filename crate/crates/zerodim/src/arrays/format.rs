use std::collections::BTreeSet;

use super::{ArrayWindow, Row};
use crate::ParseError;

/// Parses `ROWS K a b [first]` followed by `K` row lines, lowest row first.
/// Symbols are whitespace separated; `|` marks a boundary and may also be
/// glued to symbols (`a|b`).
pub fn parse_array(text: &str) -> Result<ArrayWindow, ParseError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| ParseError::new(1, "missing ROWS header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.first() != Some(&"ROWS") || !(4..=5).contains(&fields.len()) {
        return Err(ParseError::new(hline, "expected `ROWS K a b [first-row]`"));
    }
    let num = |s: &str| s.parse::<i64>().map_err(|_| ParseError::new(hline, format!("bad integer `{s}`")));
    let k = num(fields[1])?;
    let (a, b) = (num(fields[2])?, num(fields[3])?);
    let first_row = match fields.get(4) {
        Some(f) => num(f)? as usize,
        None => 1,
    };
    if k < 1 || b < a - 1 {
        return Err(ParseError::new(hline, "need K ≥ 1 and b ≥ a - 1"));
    }
    let width = (b - a + 1) as usize;

    let mut rows = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let (line, content) = lines.next().ok_or_else(|| ParseError::new(hline, format!("expected {k} row lines")))?;
        let mut symbols = Vec::new();
        let mut markers = BTreeSet::new();
        for token in content.split_whitespace() {
            let mut rest = token;
            while !rest.is_empty() {
                if let Some(r) = rest.strip_prefix('|') {
                    markers.insert(a - 1 + symbols.len() as i64);
                    rest = r;
                } else {
                    let end = rest.find('|').unwrap_or(rest.len());
                    symbols.push(rest[..end].to_string());
                    rest = &rest[end..];
                }
            }
        }
        if symbols.len() != width {
            return Err(ParseError::new(line, format!("row has {} symbols, expected {width}", symbols.len())));
        }
        rows.push(Row { symbols, markers });
    }
    if let Some((line, _)) = lines.next() {
        return Err(ParseError::new(line, "unexpected trailing content"));
    }
    ArrayWindow::new(a, first_row, rows).map_err(|e| ParseError::new(hline, e.to_string()))
}

pub fn write_array(w: &ArrayWindow) -> String {
    let mut out = format!("ROWS {} {} {}", w.height(), w.start, w.end());
    if w.first_row != 1 {
        out.push_str(&format!(" {}", w.first_row));
    }
    out.push('\n');
    for row in &w.rows {
        let mut tokens: Vec<&str> = Vec::new();
        if row.markers.contains(&(w.start - 1)) {
            tokens.push("|");
        }
        for (i, s) in row.symbols.iter().enumerate() {
            tokens.push(s);
            if row.markers.contains(&(w.start + i as i64)) {
                tokens.push("|");
            }
        }
        out.push_str(&tokens.join(" "));
        out.push('\n');
    }
    out
}
