use std::fmt::Write as _;

use super::{Alphabet, Constraint, SubshiftSpec};
use crate::ParseError;

/// Parses the line-oriented subshift format:
///
/// ```text
/// # golden mean shift
/// ALPHABET 0 1
/// FORBID 11
/// ```
///
/// `FORBID` may repeat; `ALLOW m w1 w2 ...` selects the allowed-blocks mode.
pub fn parse_subshift(text: &str) -> Result<SubshiftSpec, ParseError> {
    let mut alphabet: Option<(usize, Alphabet)> = None;
    let mut forbid: Vec<(usize, String)> = Vec::new();
    let mut allow: Option<(usize, usize, Vec<String>)> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut parts = content.split_whitespace();
        let directive = parts.next().unwrap_or_default();
        match directive {
            "ALPHABET" => {
                if alphabet.is_some() {
                    return Err(ParseError::new(line, "duplicate ALPHABET directive"));
                }
                let a = Alphabet::new(parts).map_err(|e| ParseError::new(line, e.to_string()))?;
                alphabet = Some((line, a));
            }
            "FORBID" => forbid.extend(parts.map(|w| (line, w.to_string()))),
            "ALLOW" => {
                if allow.is_some() {
                    return Err(ParseError::new(line, "duplicate ALLOW directive"));
                }
                let m = parts
                    .next()
                    .and_then(|m| m.parse::<usize>().ok())
                    .ok_or_else(|| ParseError::new(line, "ALLOW expects a memory length first"))?;
                allow = Some((line, m, parts.map(str::to_string).collect()));
            }
            other => return Err(ParseError::new(line, format!("unknown directive `{other}`"))),
        }
    }

    let (_, alphabet) = alphabet.ok_or_else(|| ParseError::new(1, "missing ALPHABET directive"))?;
    match allow {
        Some((line, _, _)) if !forbid.is_empty() => Err(ParseError::new(line, "FORBID and ALLOW cannot be combined")),
        Some((line, m, words)) => {
            let words = words
                .iter()
                .map(|w| alphabet.parse_word(w))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| ParseError::new(line, e.to_string()))?;
            SubshiftSpec::allowed(alphabet, m, words).map_err(|e| ParseError::new(line, e.to_string()))
        }
        None => {
            let words = forbid
                .iter()
                .map(|(line, w)| alphabet.parse_word(w).map_err(|e| ParseError::new(*line, e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            let line = forbid.first().map_or(1, |(l, _)| *l);
            SubshiftSpec::forbidden(alphabet, words).map_err(|e| ParseError::new(line, e.to_string()))
        }
    }
}

pub fn write_subshift(spec: &SubshiftSpec) -> String {
    let a = spec.alphabet();
    let mut out = format!("ALPHABET {}\n", a.tokens().join(" "));
    match spec.constraint() {
        Constraint::Forbidden(ws) => {
            if !ws.is_empty() {
                out.push_str("FORBID");
                for w in ws {
                    let _ = write!(out, " {}", a.render(w));
                }
                out.push('\n');
            }
        }
        Constraint::Allowed { memory, words } => {
            let _ = write!(out, "ALLOW {memory}");
            for w in words {
                let _ = write!(out, " {}", a.render(w));
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forbid() {
        let s = parse_subshift("# golden\nALPHABET 0 1\nFORBID 11\n").unwrap();
        assert_eq!(s.language(3).len(), 5);
        let again = parse_subshift(&write_subshift(&s)).unwrap();
        assert_eq!(again.constraint(), s.constraint());
    }

    #[test]
    fn parse_allow_multichar() {
        let s = parse_subshift("ALPHABET aa bb\nALLOW 2 aa,aa aa,bb bb,aa\n").unwrap();
        assert_eq!(s.language_count(20), 17711);
        let again = parse_subshift(&write_subshift(&s)).unwrap();
        assert_eq!(again.constraint(), s.constraint());
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_subshift("ALPHABET 0 1\n\nFORBID 12\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_subshift("ALPHABET 0 1\nALLOW 2 00 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_subshift("BOGUS\n").unwrap_err();
        assert_eq!(e.line, 1);
    }
}
