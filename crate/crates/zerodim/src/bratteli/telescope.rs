use std::collections::HashMap;

use super::{BratteliError, Edge, FinitePath, OrderedBratteliDiagram, Vertex};

/// A telescoped diagram together with the original edges behind each
/// composite edge.
#[derive(Debug, Clone)]
pub struct Telescoping {
    pub diagram: OrderedBratteliDiagram,
    pub keep: Vec<usize>,
    /// `constituents[j][e]`: original edges (top first) of composite edge `e` of new level `j`.
    pub constituents: Vec<Vec<Vec<usize>>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
}

impl Telescoping {
    /// Image of an original path whose depth is a kept level.
    pub fn project(&self, p: &FinitePath) -> Option<FinitePath> {
        let j = self.keep.iter().position(|&k| k == p.depth())?;
        let edges = (1..=j)
            .map(|m| self.lookup[m].get(&p.edges[self.keep[m - 1]..self.keep[m]]).copied())
            .collect::<Option<Vec<_>>>()?;
        Some(FinitePath { edges })
    }
}

/// Original edge segments from `v` down to level `stop`, inverse-lexicographic.
fn segments(d: &OrderedBratteliDiagram, v: Vertex, stop: usize) -> Vec<Vec<usize>> {
    if v.level == stop {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for &e in d.out_edges(v) {
        let t = Vertex::new(v.level - 1, d.edge(v.level, e).target);
        for mut s in segments(d, t, stop) {
            s.push(e);
            out.push(s);
        }
    }
    out
}

/// Collapses the diagram onto the levels in `keep`; composite edges are the
/// paths between kept levels, ordered so that path order is preserved.
pub fn telescope(d: &OrderedBratteliDiagram, keep: &[usize]) -> Result<Telescoping, BratteliError> {
    let valid = keep.len() >= 2
        && keep[0] == 0
        && keep.windows(2).all(|w| w[0] < w[1])
        && keep.last().is_some_and(|&k| k <= d.depth());
    if !valid {
        return Err(BratteliError::BadTelescoping(d.depth()));
    }
    let names: Vec<Vec<String>> = keep.iter().map(|&k| d.levels()[k].clone()).collect();
    let mut edges = vec![Vec::new()];
    let mut constituents = vec![Vec::new()];
    let mut lookup = vec![HashMap::new()];
    for m in 1..keep.len() {
        let (lo, hi) = (keep[m - 1], keep[m]);
        let mut level = Vec::new();
        let mut parts = Vec::new();
        let mut index = HashMap::new();
        for v in d.vertices(hi) {
            for (order, seg) in segments(d, v, lo).into_iter().enumerate() {
                let target = if seg.is_empty() { v.index } else { d.edge(lo + 1, seg[0]).target };
                index.insert(seg.clone(), level.len());
                level.push(Edge { source: v.index, target, order });
                parts.push(seg);
            }
        }
        edges.push(level);
        constituents.push(parts);
        lookup.push(index);
    }
    let diagram = OrderedBratteliDiagram::new(names, edges, None)?;
    Ok(Telescoping { diagram, keep: keep.to_vec(), constituents, lookup })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplicity {
    pub simple: bool,
    /// Greedy chain of levels, each fully connected to the previous one.
    pub witness: Vec<usize>,
}

/// `reach[j][v]`: which vertices of level `base` the vertex `v` of level `j` reaches.
fn reach_from(d: &OrderedBratteliDiagram, base: usize, depth: usize) -> Vec<Vec<Vec<bool>>> {
    let width = d.level_size(base);
    let mut reach = vec![Vec::new(); depth + 1];
    reach[base] = (0..width).map(|i| (0..width).map(|j| i == j).collect()).collect();
    for k in base + 1..=depth {
        reach[k] = d
            .vertices(k)
            .map(|v| {
                let mut r = vec![false; width];
                for &e in d.out_edges(v) {
                    for (x, &hit) in r.iter_mut().zip(&reach[k - 1][d.edge(k, e).target]) {
                        *x |= hit;
                    }
                }
                r
            })
            .collect();
    }
    reach
}

/// Decides simplicity within the truncation: every level up to `depth / 2`
/// must be fully connected from some deeper level. The witness is the
/// greedy chain of earliest fully connected levels starting from 0.
pub fn is_simple_upto(d: &OrderedBratteliDiagram, depth: usize) -> Result<Simplicity, BratteliError> {
    if depth > d.depth() {
        return Err(BratteliError::TooDeep { depth, max: d.depth() });
    }
    let full: Vec<Vec<bool>> = (0..=depth)
        .map(|n| {
            let reach = reach_from(d, n, depth);
            (0..=depth).map(|m| m > n && reach[m].iter().all(|r| r.iter().all(|&x| x))).collect()
        })
        .collect();
    let simple = (0..=depth / 2).all(|n| (n + 1..=depth).any(|m| full[n][m]));
    let mut witness = vec![0];
    while let Some(m) = (witness[witness.len() - 1] + 1..=depth).find(|&m| full[witness[witness.len() - 1]][m]) {
        witness.push(m);
    }
    Ok(Simplicity { simple, witness })
}
