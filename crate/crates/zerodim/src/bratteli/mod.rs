//! Ordered Bratteli diagrams, their path spaces and the Vershik map.
//!
//! Paths run from the top vertex `v_0` downward; edge `e_i` joins level
//! `i` to level `i - 1`. Finite paths with a common source are ordered
//! inverse-lexicographically: the deepest differing edge decides.

mod decisive;
mod dot;
mod format;
mod path;
mod symbols;
mod telescope;
mod trapezoid;

use thiserror::Error;

pub use decisive::{decisive_check, ContinuityWitness, ExtremalCount, Interior, Side, Status, Verdict, Witness};
pub use dot::emit_dot;
pub use format::{parse_diagram, write_diagram};
pub use path::{vershik_orbit, Extremal, FinitePath, Orbit, OrbitEnd};
pub use symbols::{k_symbol, path_to_array};
pub use telescope::{is_simple_upto, telescope, Simplicity, Telescoping};
pub use trapezoid::{trapezoid_diagram, RectangleSystem, TrapezoidOutput};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BratteliError {
    #[error("level 0 must contain exactly one vertex")]
    BadTopLevel,
    #[error("level {0} has no vertices")]
    EmptyLevel(usize),
    #[error("duplicate vertex `{name}` on level {level}")]
    DuplicateVertex { level: usize, name: String },
    #[error("no vertex `{name}` on level {level}")]
    UnknownVertex { level: usize, name: String },
    #[error("edge on level {level} refers to a missing vertex")]
    EdgeOutOfRange { level: usize },
    #[error("vertex `{name}` on level {level} has two edges with order {order}")]
    DuplicateOrder { level: usize, name: String, order: usize },
    #[error("stationary tail needs levels up to {needed}, diagram stops at {depth}")]
    TailTooShort { needed: usize, depth: usize },
    #[error("levels {level} and {image} are not positionally isomorphic")]
    TailMismatch { level: usize, image: usize },
    #[error("stationary period must be positive")]
    ZeroPeriod,
    #[error("a stationary policy was requested but the diagram declares no stationary tail")]
    NotStationary,
    #[error("depth {depth} exceeds the truncation depth {max}")]
    TooDeep { depth: usize, max: usize },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("telescoping levels must start at 0, increase, stay within depth {0}, and number at least two")]
    BadTelescoping(usize),
    #[error("depth-{depth} rectangle {index} has no legal {side} neighbour")]
    AdjacencyNotClosed { depth: usize, index: usize, side: &'static str },
    #[error("depth-{depth} rectangle {index} does not decompose into known depth-{} rectangles", depth - 1)]
    UnknownComponent { depth: usize, index: usize },
}

/// A vertex address: level and position within the level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub level: usize,
    pub index: usize,
}

impl Vertex {
    pub const TOP: Vertex = Vertex { level: 0, index: 0 };

    pub fn new(level: usize, index: usize) -> Self {
        Vertex { level, index }
    }
}

/// An edge of `E_k`: source on level `k`, target on level `k - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub order: usize,
}

/// Levels beyond `k0` repeat with the given period: `E_{k+p}` equals `E_k`
/// position for position whenever `k > k0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StationaryTail {
    pub k0: usize,
    pub period: usize,
}

/// How an analysis treats the part of the diagram beyond its truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailPolicy {
    TruncateAtK,
    StationaryRepeat,
}

/// A finite truncation `V_0..V_K` of an ordered Bratteli diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedBratteliDiagram {
    names: Vec<Vec<String>>,
    edges: Vec<Vec<Edge>>,
    /// `out[k][v]`: indices into `edges[k]` of edges leaving vertex `v` of level `k`, by order.
    out: Vec<Vec<Vec<usize>>>,
    /// `into[k][t]`: indices into `edges[k]` of edges entering vertex `t` of level `k - 1`.
    into: Vec<Vec<Vec<usize>>>,
    tail: Option<StationaryTail>,
}

impl OrderedBratteliDiagram {
    /// `edges[k]` lists `E_k` for `k ≥ 1`; `edges[0]` is ignored and may be empty.
    pub fn new(
        names: Vec<Vec<String>>,
        mut edges: Vec<Vec<Edge>>,
        tail: Option<StationaryTail>,
    ) -> Result<Self, BratteliError> {
        if names.first().map(Vec::len) != Some(1) {
            return Err(BratteliError::BadTopLevel);
        }
        for (level, vs) in names.iter().enumerate() {
            if vs.is_empty() {
                return Err(BratteliError::EmptyLevel(level));
            }
            for (i, n) in vs.iter().enumerate() {
                if vs[..i].contains(n) {
                    return Err(BratteliError::DuplicateVertex { level, name: n.clone() });
                }
            }
        }
        edges.resize(names.len(), Vec::new());
        edges[0].clear();
        let mut d = OrderedBratteliDiagram { names, edges, out: Vec::new(), into: Vec::new(), tail: None };
        d.index()?;
        if let Some(t) = tail {
            d.check_tail(t)?;
            d.tail = Some(t);
        }
        Ok(d)
    }

    fn index(&mut self) -> Result<(), BratteliError> {
        let depth = self.depth();
        self.out = vec![vec![Vec::new(); self.names[0].len()]; depth + 1];
        self.into = vec![Vec::new(); depth + 1];
        for k in 1..=depth {
            let mut out = vec![Vec::new(); self.names[k].len()];
            let mut into = vec![Vec::new(); self.names[k - 1].len()];
            for (i, e) in self.edges[k].iter().enumerate() {
                if e.source >= out.len() || e.target >= into.len() {
                    return Err(BratteliError::EdgeOutOfRange { level: k });
                }
                out[e.source].push(i);
                into[e.target].push(i);
            }
            for (v, list) in out.iter_mut().enumerate() {
                list.sort_by_key(|&i| self.edges[k][i].order);
                if let Some(w) = list.windows(2).find(|w| self.edges[k][w[0]].order == self.edges[k][w[1]].order) {
                    return Err(BratteliError::DuplicateOrder {
                        level: k,
                        name: self.names[k][v].clone(),
                        order: self.edges[k][w[0]].order,
                    });
                }
            }
            self.out[k] = out;
            self.into[k] = into;
        }
        Ok(())
    }

    fn check_tail(&self, t: StationaryTail) -> Result<(), BratteliError> {
        if t.period == 0 {
            return Err(BratteliError::ZeroPeriod);
        }
        let needed = t.k0 + t.period;
        if self.depth() < needed {
            return Err(BratteliError::TailTooShort { needed, depth: self.depth() });
        }
        if self.names[t.k0].len() != self.names[needed].len() {
            return Err(BratteliError::TailMismatch { level: t.k0, image: needed });
        }
        for k in t.k0 + 1..=self.depth() - t.period {
            let mut a = self.edges[k].clone();
            let mut b = self.edges[k + t.period].clone();
            a.sort();
            b.sort();
            if a != b || self.names[k].len() != self.names[k + t.period].len() {
                return Err(BratteliError::TailMismatch { level: k, image: k + t.period });
            }
        }
        Ok(())
    }

    /// Truncation depth `K`.
    pub fn depth(&self) -> usize {
        self.names.len() - 1
    }

    pub fn tail(&self) -> Option<StationaryTail> {
        self.tail
    }

    pub fn level_size(&self, k: usize) -> usize {
        self.names[k].len()
    }

    pub fn levels(&self) -> &[Vec<String>] {
        &self.names
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.level][v.index]
    }

    pub fn vertex(&self, level: usize, name: &str) -> Result<Vertex, BratteliError> {
        self.names
            .get(level)
            .and_then(|vs| vs.iter().position(|n| n == name))
            .map(|index| Vertex { level, index })
            .ok_or_else(|| BratteliError::UnknownVertex { level, name: name.to_string() })
    }

    /// Finds a vertex by name on any level, shallowest first.
    pub fn find_vertex(&self, name: &str) -> Option<Vertex> {
        (0..=self.depth()).find_map(|k| self.vertex(k, name).ok())
    }

    pub fn vertices(&self, k: usize) -> impl Iterator<Item = Vertex> {
        (0..self.names[k].len()).map(move |index| Vertex { level: k, index })
    }

    /// `E_k`.
    pub fn edges(&self, k: usize) -> &[Edge] {
        &self.edges[k]
    }

    pub fn edge(&self, k: usize, i: usize) -> Edge {
        self.edges[k][i]
    }

    /// Outgoing edges of `v` as indices into `edges(v.level)`, sorted by order.
    pub fn out_edges(&self, v: Vertex) -> &[usize] {
        &self.out[v.level][v.index]
    }

    /// Edges of `E_{v.level + 1}` entering `v`.
    pub fn in_edges(&self, v: Vertex) -> &[usize] {
        if v.level >= self.depth() {
            return &[];
        }
        &self.into[v.level + 1][v.index]
    }

    pub fn is_max_edge(&self, k: usize, i: usize) -> bool {
        let e = self.edges[k][i];
        self.out[k][e.source].last() == Some(&i)
    }

    pub fn is_min_edge(&self, k: usize, i: usize) -> bool {
        let e = self.edges[k][i];
        self.out[k][e.source].first() == Some(&i)
    }

    /// Number of paths from each vertex to `v_0`, level by level.
    pub fn path_counts(&self) -> Vec<Vec<u128>> {
        let mut counts = vec![vec![1u128]];
        for k in 1..=self.depth() {
            let row = (0..self.names[k].len())
                .map(|v| {
                    self.out[k][v]
                        .iter()
                        .map(|&i| counts[k - 1][self.edges[k][i].target])
                        .fold(0u128, u128::saturating_add)
                })
                .collect();
            counts.push(row);
        }
        counts
    }

    pub fn path_count(&self, v: Vertex) -> u128 {
        self.path_counts()[v.level][v.index]
    }

    /// Copy of the diagram continued to `depth` using the stationary tail;
    /// unchanged when there is no tail or `depth ≤ K`.
    pub fn extended(&self, depth: usize) -> Self {
        let Some(t) = self.tail else { return self.clone() };
        let mut d = self.clone();
        for k in self.depth() + 1..=depth {
            let names = d.names[k - t.period].iter().map(|n| relabel(n, k - t.period, k)).collect();
            d.names.push(names);
            d.edges.push(d.edges[k - t.period].clone());
        }
        d.index().expect("copied levels are consistent");
        d
    }

    /// A depth at which stationary analyses have settled: the truncation
    /// plus enough periods for every subset iteration on a level to cycle.
    pub(crate) fn horizon(&self, depth: usize) -> usize {
        match self.tail {
            Some(t) => {
                let width = self.names.iter().map(Vec::len).max().unwrap_or(1);
                depth.max(self.depth()).max(t.k0) + t.period * (width + 2)
            }
            None => self.depth(),
        }
    }

    pub fn validate(&self) -> DiagramReport {
        let depth = self.depth();
        let mut report = DiagramReport::default();
        for k in 1..=depth {
            for v in self.vertices(k) {
                if self.out_edges(v).is_empty() {
                    report.no_outgoing.push((k, self.name(v).to_string()));
                }
                let orders: Vec<usize> = self.out_edges(v).iter().map(|&i| self.edges[k][i].order).collect();
                if orders.iter().enumerate().any(|(j, &o)| o != j) {
                    report.order_gaps.push((k, self.name(v).to_string()));
                }
            }
        }
        for k in 0..depth {
            for v in self.vertices(k) {
                if self.in_edges(v).is_empty() {
                    report.no_incoming.push((k, self.name(v).to_string()));
                }
            }
        }
        report
    }
}

/// Problems found by [`OrderedBratteliDiagram::validate`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiagramReport {
    /// Vertices above the truncation that no edge of the next level reaches.
    pub no_incoming: Vec<(usize, String)>,
    /// Vertices (level ≥ 1) with no edge toward the previous level.
    pub no_outgoing: Vec<(usize, String)>,
    /// Vertices whose edge orders are not `0..deg`.
    pub order_gaps: Vec<(usize, String)>,
}

impl DiagramReport {
    pub fn is_valid(&self) -> bool {
        self.no_incoming.is_empty() && self.no_outgoing.is_empty() && self.order_gaps.is_empty()
    }
}

/// Renames a vertex copied from level `from` to level `to`: a trailing
/// level number is replaced, anything else gets `_to` appended.
fn relabel(name: &str, from: usize, to: usize) -> String {
    let from = from.to_string();
    match name.strip_suffix(&from) {
        Some(stem) if !stem.is_empty() && !stem.ends_with(|c: char| c.is_ascii_digit()) => format!("{stem}{to}"),
        _ => format!("{name}_{to}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn odometer_counts() {
        let d = fixtures::odometer(5);
        for k in 0..=5 {
            assert_eq!(d.path_count(Vertex::new(k, 0)), 1 << k);
        }
        assert!(d.validate().is_valid());
    }

    #[test]
    fn figure_vertex_has_twelve_paths() {
        let d = fixtures::two_symbol_figure();
        let u1 = d.vertex(2, "u1").unwrap();
        assert_eq!(d.path_count(u1), 12);
    }

    #[test]
    fn extension_follows_the_tail() {
        let d = fixtures::example1();
        let e = d.extended(6);
        assert_eq!(e.depth(), 6);
        assert_eq!(e.levels()[6], ["v6", "w6"]);
        assert_eq!(e.edges(6), e.edges(2));
        let ex2 = fixtures::example2().extended(7);
        assert_eq!(ex2.edges(7), ex2.edges(3));
        assert_eq!(ex2.edges(6), ex2.edges(2));
    }

    #[test]
    fn relabel_rules() {
        assert_eq!(relabel("v2", 2, 5), "v5");
        assert_eq!(relabel("v12", 2, 5), "v12_5");
        assert_eq!(relabel("top", 2, 5), "top_5");
        assert_eq!(relabel("2", 2, 5), "2_5");
    }

    #[test]
    fn construction_errors() {
        let names = vec![vec!["a".to_string(), "b".to_string()]];
        assert_eq!(OrderedBratteliDiagram::new(names, vec![], None), Err(BratteliError::BadTopLevel));
        let names = vec![vec!["v0".to_string()], vec!["v1".to_string()]];
        let dup = vec![vec![], vec![Edge { source: 0, target: 0, order: 0 }, Edge { source: 0, target: 0, order: 0 }]];
        assert!(matches!(
            OrderedBratteliDiagram::new(names.clone(), dup, None),
            Err(BratteliError::DuplicateOrder { .. })
        ));
        let short = vec![vec![], vec![Edge { source: 0, target: 0, order: 0 }]];
        assert!(matches!(
            OrderedBratteliDiagram::new(names, short, Some(StationaryTail { k0: 1, period: 1 })),
            Err(BratteliError::TailTooShort { .. })
        ));
    }

    #[test]
    fn tail_mismatch_detected() {
        let text =
            "LEVEL 0 v0\nLEVEL 1 v1\nLEVEL 2 v2\nEDGE 1 v1 v0 0\nEDGE 2 v2 v1 0\nEDGE 2 v2 v1 1\nSTATIONARY 0 1\n";
        assert!(matches!(parse_diagram(text), Err(e) if e.message.contains("not positionally isomorphic")));
    }

    #[test]
    fn boundary_vertices_are_not_flagged() {
        let d = fixtures::odometer(3);
        assert!(d.validate().no_incoming.is_empty());
        let text = "LEVEL 0 v0\nLEVEL 1 a b\nLEVEL 2 c\nEDGE 1 a v0 0\nEDGE 1 b v0 0\nEDGE 2 c a 0\n";
        let r = parse_diagram(text).unwrap().validate();
        assert_eq!(r.no_incoming, vec![(1, "b".to_string())]);
    }
}
