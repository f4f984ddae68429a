use std::collections::{BTreeSet, HashMap};

use super::{BratteliError, Edge, OrderedBratteliDiagram};
use crate::arrays::KRectangle;
use crate::symbolic::{SubshiftSpec, Word};

/// Rectangles of depths `1..=K` (index `d - 1` holds depth `d`) with the
/// pairs `(left, right)` allowed to sit side by side at each depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectangleSystem {
    pub levels: Vec<Vec<KRectangle>>,
    pub adjacency: Vec<BTreeSet<(usize, usize)>>,
}

impl RectangleSystem {
    /// Depth-1 rectangles are the admissible words of length `block`; a
    /// depth-`d` rectangle is an admissible word of length `block·2^(d-1)`
    /// with a row-`j` marker every `block·2^(j-1)` columns and filler rows.
    /// Two rectangles are adjacent when their concatenation is admissible.
    pub fn from_subshift(spec: &SubshiftSpec, block: usize, depth: usize) -> Self {
        let tokens = spec.alphabet().tokens();
        let mut levels = Vec::new();
        let mut adjacency = Vec::new();
        for d in 1..=depth {
            let width = block << (d - 1);
            let words = spec.language(width);
            let rects: Vec<KRectangle> = words
                .iter()
                .map(|w| {
                    let mut rows = vec![w.0.iter().map(|&s| tokens[s as usize].clone()).collect::<Vec<_>>()];
                    rows.extend((2..=d).map(|_| vec!["-".to_string(); width]));
                    let markers = (1..=d)
                        .map(|j| {
                            let step = (block << (j - 1)) as i64;
                            std::iter::once(-1).chain((1..=width as i64 / step).map(|b| b * step - 1)).collect()
                        })
                        .collect();
                    KRectangle { width, depth: d, first_row: 1, rows, markers }
                })
                .collect();
            let mut adj = BTreeSet::new();
            for (i, a) in words.iter().enumerate() {
                for (j, b) in words.iter().enumerate() {
                    let joined = Word([a.0.as_slice(), b.0.as_slice()].concat());
                    if spec.is_admissible(&joined).unwrap_or(false) {
                        adj.insert((i, j));
                    }
                }
            }
            levels.push(rects);
            adjacency.push(adj);
        }
        RectangleSystem { levels, adjacency }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    fn check_closed(&self) -> Result<(), BratteliError> {
        for (d, adj) in self.adjacency.iter().enumerate() {
            for index in 0..self.levels[d].len() {
                if !adj.iter().any(|&(_, r)| r == index) {
                    return Err(BratteliError::AdjacencyNotClosed { depth: d + 1, index, side: "left" });
                }
                if !adj.iter().any(|&(l, _)| l == index) {
                    return Err(BratteliError::AdjacencyNotClosed { depth: d + 1, index, side: "right" });
                }
            }
        }
        Ok(())
    }

    /// `comps[d][i]`: the depth-`(d-1)` pieces of rectangle `i` of depth `d`
    /// (`comps[1]` and `comps[0]` are unused).
    fn components(&self) -> Result<Vec<Vec<Vec<usize>>>, BratteliError> {
        let mut comps = vec![Vec::new(), Vec::new()];
        for d in 2..=self.depth() {
            let index: HashMap<&KRectangle, usize> =
                self.levels[d - 2].iter().enumerate().map(|(i, r)| (r, i)).collect();
            let mut level = Vec::new();
            for (i, rect) in self.levels[d - 1].iter().enumerate() {
                let cut = d - 1 - rect.first_row;
                let bounds = &rect.markers[cut];
                let mut parts = Vec::new();
                for w in bounds.windows(2) {
                    let (lo, hi) = ((w[0] + 1) as usize, w[1] as usize);
                    let piece = KRectangle {
                        width: hi + 1 - lo,
                        depth: d - 1,
                        first_row: rect.first_row,
                        rows: rect.rows[..=cut].iter().map(|r| r[lo..=hi].to_vec()).collect(),
                        markers: rect.markers[..=cut]
                            .iter()
                            .map(|m| m.iter().filter(|&&x| x >= w[0] && x <= w[1]).map(|x| x - w[0] - 1).collect())
                            .collect(),
                    };
                    let id = index.get(&piece).ok_or(BratteliError::UnknownComponent { depth: d, index: i })?;
                    parts.push(*id);
                }
                let covered = bounds.first() == Some(&-1) && bounds.last() == Some(&(rect.width as i64 - 1));
                if parts.is_empty() || !covered {
                    return Err(BratteliError::UnknownComponent { depth: d, index: i });
                }
                level.push(parts);
            }
            comps.push(level);
        }
        Ok(comps)
    }
}

/// A `k`-rectangle with flanking contexts: `left[j]` and `right[j]` have depth `k - 1 - j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Trapezoid {
    center: usize,
    left: Vec<usize>,
    right: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct TrapezoidOutput {
    /// Vertices are trapezoids, edges go to internal trapezoids.
    pub diagram: OrderedBratteliDiagram,
    /// Vertices are bare rectangles, edges go to their pieces.
    pub naive: OrderedBratteliDiagram,
    /// Per level and vertex, the rectangles making up each trapezoid, left to right by depth.
    pub descriptions: Vec<Vec<String>>,
}

/// Sequences of rectangle ids per depth obtained by expanding `seq` (at
/// depth `k`) downward, padding each depth with the given contexts.
fn expand(comps: &[Vec<Vec<usize>>], k: usize, seq: Vec<usize>, left: &[usize], right: &[usize]) -> Vec<Vec<usize>> {
    let mut seqs = vec![Vec::new(); k + 1];
    seqs[k] = seq;
    for d in (1..k).rev() {
        let j = k - 1 - d;
        let mut s: Vec<usize> = left.get(j).copied().into_iter().collect();
        s.extend(seqs[d + 1].iter().flat_map(|&x| comps[d + 1][x].iter().copied()));
        s.extend(right.get(j).copied());
        seqs[d] = s;
    }
    seqs
}

/// Contexts around the element `pos` of `seqs[k]`, read off the lower depths.
/// `pad` says whether each lower sequence carries one extra element on the left.
fn contexts(comps: &[Vec<Vec<usize>>], seqs: &[Vec<usize>], k: usize, pos: usize, pad: bool) -> Option<Trapezoid> {
    let (mut a, mut b) = (pos, pos);
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for d in (1..k).rev() {
        let offset = usize::from(pad);
        let len = |x: usize| comps[d + 1][seqs[d + 1][x]].len();
        let start = offset + (0..a).map(len).sum::<usize>();
        let end = start + (a..=b).map(len).sum::<usize>() - 1;
        if start == 0 || end + 1 >= seqs[d].len() {
            return None;
        }
        left.push(seqs[d][start - 1]);
        right.push(seqs[d][end + 1]);
        (a, b) = (start - 1, end + 1);
    }
    Some(Trapezoid { center: seqs[k][pos], left, right })
}

fn internal(comps: &[Vec<Vec<usize>>], k: usize, t: &Trapezoid) -> Vec<Trapezoid> {
    let seqs = expand(comps, k, vec![t.center], &t.left, &t.right);
    (0..comps[k][t.center].len())
        .map(|i| contexts(comps, &seqs, k - 1, 1 + i, true).expect("contexts lie inside the trapezoid"))
        .collect()
}

fn describe(t: &Trapezoid, k: usize) -> String {
    let mut parts: Vec<String> = t.left.iter().rev().enumerate().map(|(j, x)| format!("r{}.{x}", j + 1)).collect();
    parts.push(format!("[r{k}.{}]", t.center));
    parts.extend(t.right.iter().enumerate().map(|(j, x)| format!("r{}.{x}", k - 1 - j)));
    parts.join(" ")
}

/// Builds the diagram whose level-`k` vertices are the `k`-trapezoids that
/// occur (internally) below the top level, plus the naive rectangle diagram.
pub fn trapezoid_diagram(sys: &RectangleSystem, depth: usize) -> Result<TrapezoidOutput, BratteliError> {
    if depth == 0 || depth > sys.depth() {
        return Err(BratteliError::TooDeep { depth, max: sys.depth() });
    }
    sys.check_closed()?;
    let comps = sys.components()?;
    let widths: Vec<usize> = sys.levels[0].iter().map(|r| r.width).collect();

    // Top level: center with k-1 neighbours each side, in every legal chain.
    let adj = &sys.adjacency[depth - 1];
    let mut chains: Vec<Vec<usize>> = (0..sys.levels[depth - 1].len()).map(|i| vec![i]).collect();
    for _ in 0..2 * (depth - 1) {
        chains = chains
            .into_iter()
            .flat_map(|c| {
                let last = *c.last().expect("non-empty chain");
                adj.range((last, 0)..=(last, usize::MAX)).map(move |&(_, r)| {
                    let mut n = c.clone();
                    n.push(r);
                    n
                })
            })
            .collect();
    }
    let mut top = BTreeSet::new();
    for chain in chains {
        let seqs = expand(&comps, depth, chain, &[], &[]);
        if let Some(t) = contexts(&comps, &seqs, depth, depth - 1, false) {
            top.insert(t);
        }
    }

    let mut levels: Vec<Vec<Trapezoid>> = vec![Vec::new(); depth + 1];
    levels[depth] = top.into_iter().collect();
    let mut edges = vec![Vec::new(); depth + 1];
    for k in (2..=depth).rev() {
        let children: Vec<Vec<Trapezoid>> = levels[k].iter().map(|t| internal(&comps, k, t)).collect();
        let below: BTreeSet<Trapezoid> = children.iter().flatten().cloned().collect();
        levels[k - 1] = below.into_iter().collect();
        for (s, kids) in children.iter().enumerate() {
            for (order, kid) in kids.iter().enumerate() {
                let target = levels[k - 1].binary_search(kid).expect("child listed");
                edges[k].push(Edge { source: s, target, order });
            }
        }
    }
    for (s, t) in levels[1].iter().enumerate() {
        edges[1].extend((0..widths[t.center]).map(|order| Edge { source: s, target: 0, order }));
    }
    let mut names = vec![vec!["v0".to_string()]];
    let mut descriptions = vec![vec!["v0".to_string()]];
    for (k, level) in levels.iter().enumerate().skip(1) {
        names.push((0..level.len()).map(|i| format!("t{k}.{i}")).collect());
        descriptions.push(level.iter().map(|t| describe(t, k)).collect());
    }
    let diagram = OrderedBratteliDiagram::new(names, edges, None)?;

    // Naive: rectangles reachable from the top, edges to their pieces.
    let mut used: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); depth + 1];
    used[depth] = (0..sys.levels[depth - 1].len()).collect();
    for k in (2..=depth).rev() {
        used[k - 1] = used[k].iter().flat_map(|&r| comps[k][r].iter().copied()).collect();
    }
    let ids: Vec<Vec<usize>> = used.iter().map(|s| s.iter().copied().collect()).collect();
    let mut naive_edges = vec![Vec::new(); depth + 1];
    for k in 1..=depth {
        for (s, &r) in ids[k].iter().enumerate() {
            if k == 1 {
                naive_edges[1].extend((0..widths[r]).map(|order| Edge { source: s, target: 0, order }));
            } else {
                for (order, c) in comps[k][r].iter().enumerate() {
                    let target = ids[k - 1].binary_search(c).expect("piece listed");
                    naive_edges[k].push(Edge { source: s, target, order });
                }
            }
        }
    }
    let mut naive_names = vec![vec!["v0".to_string()]];
    naive_names.extend(ids.iter().enumerate().skip(1).map(|(k, l)| l.iter().map(|r| format!("r{k}.{r}")).collect()));
    let naive = OrderedBratteliDiagram::new(naive_names, naive_edges, None)?;
    Ok(TrapezoidOutput { diagram, naive, descriptions })
}
