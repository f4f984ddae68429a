use super::{Edge, OrderedBratteliDiagram, StationaryTail};
use crate::ParseError;

/// Line of the STATIONARY directive, the tail, and its `a->b` pairs.
type TailDirective = (usize, StationaryTail, Vec<(String, String)>);

/// Parses the diagram text format:
///
/// ```text
/// LEVEL 0 v0
/// LEVEL 1 v1 w1
/// EDGE 1 v1 v0 0
/// STATIONARY k0 [period] [a->b ...]
/// ```
///
/// The optional `a->b` pairs spell out the level isomorphism between level
/// `k0` and level `k0 + period`; it must be positional (the i-th vertex maps
/// to the i-th vertex).
pub fn parse_diagram(text: &str) -> Result<OrderedBratteliDiagram, ParseError> {
    let mut names: Vec<Vec<String>> = Vec::new();
    let mut edges: Vec<Vec<Edge>> = Vec::new();
    let mut tail: Option<TailDirective> = None;
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| ParseError::new(line, format!("bad integer `{s}`")));
        match fields[0] {
            "LEVEL" => {
                let k = num(fields.get(1).ok_or_else(|| ParseError::new(line, "LEVEL needs an index"))?)?;
                if k != names.len() {
                    return Err(ParseError::new(line, format!("expected LEVEL {}, found LEVEL {k}", names.len())));
                }
                if fields.len() < 3 {
                    return Err(ParseError::new(line, "LEVEL needs at least one vertex"));
                }
                names.push(fields[2..].iter().map(|s| s.to_string()).collect());
            }
            "EDGE" => {
                if fields.len() != 5 {
                    return Err(ParseError::new(line, "expected `EDGE k source target order`"));
                }
                let k = num(fields[1])?;
                if k == 0 || k >= names.len() {
                    return Err(ParseError::new(
                        line,
                        format!("EDGE level {k} needs levels {} and {k} declared", k.max(1) - 1),
                    ));
                }
                let find = |level: usize, name: &str| {
                    names[level]
                        .iter()
                        .position(|n| n == name)
                        .ok_or_else(|| ParseError::new(line, format!("no vertex `{name}` on level {level}")))
                };
                let source = find(k, fields[2])?;
                let target = find(k - 1, fields[3])?;
                let order = num(fields[4])?;
                if edges.len() <= k {
                    edges.resize(k + 1, Vec::new());
                }
                edges[k].push(Edge { source, target, order });
            }
            "STATIONARY" => {
                if tail.is_some() {
                    return Err(ParseError::new(line, "duplicate STATIONARY line"));
                }
                let k0 = num(fields.get(1).ok_or_else(|| ParseError::new(line, "STATIONARY needs k0"))?)?;
                let mut rest = &fields[2..];
                let mut period = 1;
                if let Some(p) = rest.first().filter(|s| !s.contains("->")) {
                    period = num(p)?;
                    rest = &rest[1..];
                }
                let map = rest
                    .iter()
                    .map(|pair| {
                        pair.split_once("->")
                            .map(|(a, b)| (a.to_string(), b.to_string()))
                            .ok_or_else(|| ParseError::new(line, format!("expected `a->b`, found `{pair}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                tail = Some((line, StationaryTail { k0, period }, map));
            }
            other => return Err(ParseError::new(line, format!("unknown directive `{other}`"))),
        }
    }
    let tail_line = tail.as_ref().map_or(last_line, |t| t.0);
    if let Some((line, t, map)) = &tail {
        let image = t.k0 + t.period;
        if image >= names.len() {
            return Err(ParseError::new(*line, format!("stationary tail needs level {image}")));
        }
        for (a, b) in map {
            let pa = names[t.k0].iter().position(|n| n == a);
            let pb = names[image].iter().position(|n| n == b);
            match (pa, pb) {
                (Some(x), Some(y)) if x == y => {}
                (Some(_), Some(_)) => {
                    return Err(ParseError::new(*line, format!("isomorphism `{a}->{b}` is not positional")))
                }
                _ => return Err(ParseError::new(*line, format!("`{a}->{b}` names unknown vertices"))),
            }
        }
    }
    if names.is_empty() {
        return Err(ParseError::new(1, "no LEVEL lines"));
    }
    OrderedBratteliDiagram::new(names, edges, tail.map(|t| t.1)).map_err(|e| ParseError::new(tail_line, e.to_string()))
}

pub fn write_diagram(d: &OrderedBratteliDiagram) -> String {
    let mut out = String::new();
    for (k, level) in d.levels().iter().enumerate() {
        out.push_str(&format!("LEVEL {k} {}\n", level.join(" ")));
    }
    for k in 1..=d.depth() {
        for e in d.edges(k) {
            out.push_str(&format!(
                "EDGE {k} {} {} {}\n",
                d.levels()[k][e.source],
                d.levels()[k - 1][e.target],
                e.order
            ));
        }
    }
    if let Some(t) = d.tail() {
        let pairs: Vec<String> =
            d.levels()[t.k0].iter().zip(&d.levels()[t.k0 + t.period]).map(|(a, b)| format!("{a}->{b}")).collect();
        out.push_str(&format!("STATIONARY {} {} {}\n", t.k0, t.period, pairs.join(" ")));
    }
    out
}
