use std::fmt;

use super::{BratteliError, OrderedBratteliDiagram, TailPolicy, Vertex};

/// Edges `e_1..e_k` from `v_0` downward; `edges[i]` indexes `E_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinitePath {
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremal {
    Max,
    Min,
}

impl FinitePath {
    pub fn depth(&self) -> usize {
        self.edges.len()
    }

    /// Checks indices and the chaining condition `t(e_{i+1}) = s(e_i)`.
    pub fn check(&self, d: &OrderedBratteliDiagram) -> Result<(), BratteliError> {
        if self.depth() > d.depth() {
            return Err(BratteliError::TooDeep { depth: self.depth(), max: d.depth() });
        }
        for (i, &e) in self.edges.iter().enumerate() {
            let k = i + 1;
            let edge =
                d.edges(k).get(e).ok_or_else(|| BratteliError::InvalidPath(format!("no edge {e} on level {k}")))?;
            let expected = if k == 1 { 0 } else { d.edge(k - 1, self.edges[i - 1]).source };
            if edge.target != expected {
                return Err(BratteliError::InvalidPath(format!("edge {k} does not continue edge {}", k - 1)));
            }
        }
        Ok(())
    }

    /// `s(e_k)`, or `v_0` for the empty path.
    pub fn source(&self, d: &OrderedBratteliDiagram) -> Vertex {
        match self.edges.last() {
            Some(&e) => Vertex::new(self.depth(), d.edge(self.depth(), e).source),
            None => Vertex::TOP,
        }
    }

    /// Order indices `(o(e_1), ..., o(e_k))`.
    pub fn labels(&self, d: &OrderedBratteliDiagram) -> Vec<usize> {
        self.edges.iter().enumerate().map(|(i, &e)| d.edge(i + 1, e).order).collect()
    }

    /// Path with the given order indices, top edge first.
    pub fn from_labels(d: &OrderedBratteliDiagram, source: Vertex, labels: &[usize]) -> Result<Self, BratteliError> {
        if labels.len() != source.level {
            return Err(BratteliError::InvalidPath(format!(
                "{} labels for a level-{} vertex",
                labels.len(),
                source.level
            )));
        }
        let mut edges = vec![0; labels.len()];
        let mut v = source;
        for k in (1..=source.level).rev() {
            let e = *d.out_edges(v).iter().find(|&&i| d.edge(k, i).order == labels[k - 1]).ok_or_else(|| {
                BratteliError::InvalidPath(format!("no edge of order {} at level {k}", labels[k - 1]))
            })?;
            edges[k - 1] = e;
            v = Vertex::new(k - 1, d.edge(k, e).target);
        }
        Ok(FinitePath { edges })
    }

    /// Vertices `v_0, t(e_2), ..., s(e_k)` visited by the path.
    pub fn vertices(&self, d: &OrderedBratteliDiagram) -> Vec<Vertex> {
        std::iter::once(Vertex::TOP)
            .chain(self.edges.iter().enumerate().map(|(i, &e)| Vertex::new(i + 1, d.edge(i + 1, e).source)))
            .collect()
    }

    pub fn is_extremal(&self, d: &OrderedBratteliDiagram, kind: Extremal) -> bool {
        self.edges.iter().enumerate().all(|(i, &e)| match kind {
            Extremal::Max => d.is_max_edge(i + 1, e),
            Extremal::Min => d.is_min_edge(i + 1, e),
        })
    }

    /// The next path in inverse-lexicographic order among paths with the
    /// same source, or `None` for a maximal path.
    pub fn successor(&self, d: &OrderedBratteliDiagram) -> Option<FinitePath> {
        self.step(d, Extremal::Max)
    }

    /// The previous path, or `None` for a minimal path.
    pub fn predecessor(&self, d: &OrderedBratteliDiagram) -> Option<FinitePath> {
        self.step(d, Extremal::Min)
    }

    /// Advances past the least edge that is not `stop`-extremal and refills
    /// everything above it with the opposite extremal path.
    fn step(&self, d: &OrderedBratteliDiagram, stop: Extremal) -> Option<FinitePath> {
        let i = (0..self.depth()).find(|&i| match stop {
            Extremal::Max => !d.is_max_edge(i + 1, self.edges[i]),
            Extremal::Min => !d.is_min_edge(i + 1, self.edges[i]),
        })?;
        let k = i + 1;
        let e = d.edge(k, self.edges[i]);
        let siblings = d.out_edges(Vertex::new(k, e.source));
        let pos = siblings.iter().position(|&j| j == self.edges[i]).expect("edge belongs to its source");
        let next = match stop {
            Extremal::Max => siblings[pos + 1],
            Extremal::Min => siblings[pos - 1],
        };
        let mut edges = self.edges.clone();
        edges[i] = next;
        let refill = match stop {
            Extremal::Max => Extremal::Min,
            Extremal::Min => Extremal::Max,
        };
        let head = extremal_from(d, Vertex::new(k - 1, d.edge(k, next).target), refill);
        edges[..i].copy_from_slice(&head.edges);
        Some(FinitePath { edges })
    }

    /// 1-based position of the path among all paths from its source to `v_0`.
    pub fn rank(&self, d: &OrderedBratteliDiagram) -> u128 {
        let counts = d.path_counts();
        let mut r = 1u128;
        for (i, &e) in self.edges.iter().enumerate() {
            let k = i + 1;
            let edge = d.edge(k, e);
            for &j in d.out_edges(Vertex::new(k, edge.source)) {
                let sib = d.edge(k, j);
                if sib.order >= edge.order {
                    break;
                }
                r = r.saturating_add(counts[k - 1][sib.target]);
            }
        }
        r
    }
}

impl fmt::Display for FinitePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The all-maximal or all-minimal path from `v` to `v_0`.
pub(crate) fn extremal_from(d: &OrderedBratteliDiagram, v: Vertex, kind: Extremal) -> FinitePath {
    let mut edges = vec![0; v.level];
    let mut cur = v;
    for k in (1..=v.level).rev() {
        let out = d.out_edges(cur);
        let e = match kind {
            Extremal::Max => *out.last().expect("vertex has outgoing edges"),
            Extremal::Min => out[0],
        };
        edges[k - 1] = e;
        cur = Vertex::new(k - 1, d.edge(k, e).target);
    }
    FinitePath { edges }
}

impl OrderedBratteliDiagram {
    pub fn minimal_path(&self, v: Vertex) -> FinitePath {
        extremal_from(self, v, Extremal::Min)
    }

    pub fn maximal_path(&self, v: Vertex) -> FinitePath {
        extremal_from(self, v, Extremal::Max)
    }

    /// Every path from `v` to `v_0`, in increasing inverse-lexicographic order.
    pub fn paths_from(&self, v: Vertex) -> Vec<FinitePath> {
        if v.level == 0 {
            return vec![FinitePath { edges: Vec::new() }];
        }
        let mut out = Vec::new();
        for &e in self.out_edges(v) {
            let t = Vertex::new(v.level - 1, self.edge(v.level, e).target);
            for mut p in self.paths_from(t) {
                p.edges.push(e);
                out.push(p);
            }
        }
        out
    }

    /// All paths of depth `k`, grouped by source in level order.
    pub fn paths_at(&self, k: usize) -> Vec<FinitePath> {
        self.vertices(k).flat_map(|v| self.paths_from(v)).collect()
    }

    /// Depth-`k` paths made of extremal edges only that continue to
    /// infinitely long extremal paths (or to the truncation depth when
    /// there is no stationary tail).
    pub fn extremal_paths(&self, k: usize, kind: Extremal) -> Result<Vec<FinitePath>, BratteliError> {
        if k > self.depth() {
            return Err(BratteliError::TooDeep { depth: k, max: self.depth() });
        }
        let ext = self.extended(self.horizon(k));
        let alive = extendable(&ext, kind);
        Ok(self.vertices(k).filter(|v| alive[k][v.index]).map(|v| extremal_from(self, v, kind)).collect())
    }
}

/// `alive[j][v]`: an all-`kind` chain reaches from the deepest level of `d` up to `v`.
pub(crate) fn extendable(d: &OrderedBratteliDiagram, kind: Extremal) -> Vec<Vec<bool>> {
    let depth = d.depth();
    let mut alive: Vec<Vec<bool>> = (0..=depth).map(|k| vec![false; d.level_size(k)]).collect();
    alive[depth].iter_mut().for_each(|a| *a = true);
    for k in (1..=depth).rev() {
        for v in d.vertices(k) {
            if !alive[k][v.index] {
                continue;
            }
            let out = d.out_edges(v);
            let e = match kind {
                Extremal::Max => out.last(),
                Extremal::Min => out.first(),
            };
            if let Some(&e) = e {
                alive[k - 1][d.edge(k, e).target] = true;
            }
        }
    }
    alive
}

/// Why an orbit stopped before using all its steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitEnd {
    Completed,
    /// The last path is maximal and the policy could not extend it.
    Maximal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub paths: Vec<FinitePath>,
    pub end: OrbitEnd,
    /// The diagram the later paths live in (extended under a stationary tail).
    pub diagram: OrderedBratteliDiagram,
}

/// Iterates the successor map `steps` times. Under a stationary policy an
/// all-maximal prefix is lengthened by one edge (the first non-maximal
/// edge into its source, else the first edge) and retried, at most
/// `extension_cap` times in a row.
pub fn vershik_orbit(
    d: &OrderedBratteliDiagram,
    p: &FinitePath,
    steps: usize,
    tail: TailPolicy,
    extension_cap: usize,
) -> Result<Orbit, BratteliError> {
    p.check(d)?;
    if tail == TailPolicy::StationaryRepeat && d.tail().is_none() {
        return Err(BratteliError::NotStationary);
    }
    let mut diagram = d.clone();
    let mut paths = vec![p.clone()];
    let mut cur = p.clone();
    for _ in 0..steps {
        let mut grown = 0;
        let next = loop {
            if let Some(q) = cur.successor(&diagram) {
                break Some(q);
            }
            if tail == TailPolicy::TruncateAtK || grown == extension_cap {
                break None;
            }
            let k = cur.depth() + 1;
            if diagram.depth() < k {
                diagram = diagram.extended(k);
            }
            let source = cur.source(&diagram);
            let into = diagram.in_edges(source);
            let Some(&e) = into.iter().find(|&&e| !diagram.is_max_edge(k, e)).or(into.first()) else {
                break None;
            };
            cur.edges.push(e);
            grown += 1;
        };
        match next {
            Some(q) => {
                paths.push(q.clone());
                cur = q;
            }
            None => return Ok(Orbit { paths, end: OrbitEnd::Maximal, diagram }),
        }
    }
    Ok(Orbit { paths, end: OrbitEnd::Completed, diagram })
}
