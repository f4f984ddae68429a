//! Finite-depth evidence for decisiveness.
//!
//! A negative answer comes with a concrete witness and is conclusive; a
//! positive answer only says that no witness exists within the horizon
//! examined, and is reported as evidence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::path::{extendable, extremal_from};
use super::{BratteliError, Extremal, FinitePath, OrderedBratteliDiagram, TailPolicy, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    DecisiveEvidence,
    NonDecisive,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::DecisiveEvidence => "decisive-evidence",
            Status::NonDecisive => "non-decisive",
            Status::Inconclusive => "inconclusive",
        })
    }
}

/// Number of infinite extremal paths, when it settles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalCount {
    Finite(usize),
    Unbounded,
}

impl fmt::Display for ExtremalCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtremalCount::Finite(n) => write!(f, "{n}"),
            ExtremalCount::Unbounded => f.write_str("unboundedly many"),
        }
    }
}

/// Which partial map failed uniform continuity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Successor,
    Predecessor,
}

/// Two paths sharing an extremal prefix of depth `prefix_depth` whose images
/// under the Vershik map (or its inverse) differ already at level 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuityWitness {
    pub side: Side,
    pub prefix_depth: usize,
    pub vertex: String,
    pub y: FinitePath,
    pub z: FinitePath,
    pub y_image: FinitePath,
    pub z_image: FinitePath,
    /// First edge index where `y` and `z` differ; their distance is `2^-divergence`.
    pub divergence: usize,
    /// First edge index where the images differ.
    pub image_divergence: usize,
    pub y_labels: Vec<usize>,
    pub z_labels: Vec<usize>,
    pub y_image_labels: Vec<usize>,
    pub z_image_labels: Vec<usize>,
}

/// Interior of the set of maximal (or minimal) paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Interior {
    Empty,
    /// A number of isolated extremal points, each an open cylinder.
    Isolated(usize),
    /// A cylinder at `vertex` consisting of extremal paths and containing at least two paths.
    Large {
        level: usize,
        vertex: String,
    },
}

impl fmt::Display for Interior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interior::Empty => f.write_str("empty"),
            Interior::Isolated(n) => write!(f, "{n} isolated point(s)"),
            Interior::Large { level, vertex } => {
                write!(f, "cylinder at vertex {vertex} (level {level}) with many paths")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Count { max: ExtremalCount, min: ExtremalCount },
    Continuity(Box<ContinuityWitness>),
    Interior { max: Interior, min: Interior },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub notes: Vec<String>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.status)?;
        match &self.witness {
            None => {}
            Some(Witness::Count { max, min }) => writeln!(f, "count witness: {max} maximal, {min} minimal")?,
            Some(Witness::Continuity(w)) => {
                let side = match w.side {
                    Side::Successor => "successor",
                    Side::Predecessor => "predecessor",
                };
                writeln!(
                    f,
                    "continuity witness ({side}): common prefix of depth {} ending at {}",
                    w.prefix_depth, w.vertex
                )?;
                writeln!(f, "  y = {:?} -> {:?}", w.y_labels, w.y_image_labels)?;
                writeln!(f, "  z = {:?} -> {:?}", w.z_labels, w.z_image_labels)?;
                writeln!(f, "  d(y, z) = 2^-{}, images differ at level {}", w.divergence, w.image_divergence)?;
            }
            Some(Witness::Interior { max, min }) => {
                writeln!(f, "interior witness: maximal side {max}; minimal side {min}")?
            }
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// Runs the count, continuity and interior checks in that order and stops
/// at the first witness.
pub fn decisive_check(d: &OrderedBratteliDiagram, depth: usize, tail: TailPolicy) -> Result<Verdict, BratteliError> {
    let stationary = match tail {
        TailPolicy::StationaryRepeat => {
            if d.tail().is_none() {
                return Err(BratteliError::NotStationary);
            }
            true
        }
        TailPolicy::TruncateAtK => {
            if depth > d.depth() {
                return Err(BratteliError::TooDeep { depth, max: d.depth() });
            }
            false
        }
    };
    let mut notes = Vec::new();
    let period = d.tail().map_or(1, |t| t.period);

    if stationary {
        let (max, min) = (count(d, depth, Extremal::Max), count(d, depth, Extremal::Min));
        let mismatch = match (max, min) {
            (ExtremalCount::Finite(a), ExtremalCount::Finite(b)) => a != b,
            (ExtremalCount::Unbounded, ExtremalCount::Unbounded) => false,
            _ => true,
        };
        if mismatch {
            return Ok(Verdict { status: Status::NonDecisive, witness: Some(Witness::Count { max, min }), notes });
        }
    } else {
        notes.push("count check skipped: extremal counts only settle under a stationary tail".into());
    }

    let horizon = if stationary { d.horizon(depth) } else { depth };
    let ext = d.extended(horizon);
    let lo = depth.div_ceil(2).max(1);
    let hi = if stationary { depth } else { depth.saturating_sub(1) };
    if hi < lo || (stationary && hi + 1 - lo < period) {
        notes.push(format!("continuity window [{lo}, {hi}] is too short to be conclusive"));
    } else {
        for side in [Side::Successor, Side::Predecessor] {
            if let Some(w) = continuity(&ext, side, lo, hi) {
                return Ok(Verdict {
                    status: Status::NonDecisive,
                    witness: Some(Witness::Continuity(Box::new(w))),
                    notes,
                });
            }
        }
    }

    let top = if stationary { depth } else { depth / 2 };
    let max = interior(&ext, Extremal::Max, top);
    let min = interior(&ext, Extremal::Min, top);
    let consistent =
        matches!((&max, &min), (Interior::Empty, Interior::Empty) | (Interior::Isolated(1), Interior::Isolated(1)));
    if !consistent {
        return Ok(Verdict { status: Status::NonDecisive, witness: Some(Witness::Interior { max, min }), notes });
    }

    notes.push("assumes the set where the extension is forced is meager; not checkable at finite depth".into());
    let status = if stationary {
        notes.push("no witness up to the stabilized horizon; this is evidence, not proof".into());
        Status::DecisiveEvidence
    } else {
        notes.push("no witness within the truncation, but without a stationary tail nothing stabilizes".into());
        Status::Inconclusive
    };
    Ok(Verdict { status, witness: None, notes })
}

/// Number of depth-`depth` prefixes of infinite extremal paths, compared
/// one period deeper to see whether it has settled.
fn count(d: &OrderedBratteliDiagram, depth: usize, kind: Extremal) -> ExtremalCount {
    let period = d.tail().map_or(1, |t| t.period);
    let ext = d.extended(d.horizon(depth + period));
    let alive = extendable(&ext, kind);
    let at = |k: usize| alive[k].iter().filter(|&&a| a).count();
    if at(depth) == at(depth + period) {
        ExtremalCount::Finite(at(depth))
    } else {
        ExtremalCount::Unbounded
    }
}

/// How a level-1 image was reached from a vertex: directly through a
/// non-extremal in-edge, or via an extremal in-edge and a deeper vertex.
#[derive(Debug, Clone, Copy)]
enum Route {
    Direct(usize),
    Via(usize),
}

fn continuity(d: &OrderedBratteliDiagram, side: Side, lo: usize, hi: usize) -> Option<ContinuityWitness> {
    let (stop, refill) = match side {
        Side::Successor => (Extremal::Max, Extremal::Min),
        Side::Predecessor => (Extremal::Min, Extremal::Max),
    };
    let horizon = d.depth();
    let is_stop = |k: usize, e: usize| match stop {
        Extremal::Max => d.is_max_edge(k, e),
        Extremal::Min => d.is_min_edge(k, e),
    };
    let neighbour = |k: usize, e: usize| {
        let out = d.out_edges(Vertex::new(k, d.edge(k, e).source));
        let pos = out.iter().position(|&j| j == e).expect("edge in its out-list");
        match stop {
            Extremal::Max => out[pos + 1],
            Extremal::Min => out[pos - 1],
        }
    };
    // First edge of the refill path from each vertex.
    let mut first: Vec<Vec<usize>> = vec![Vec::new(); horizon + 1];
    for k in 1..=horizon {
        first[k] = d
            .vertices(k)
            .map(|v| {
                let out = d.out_edges(v);
                let e = match refill {
                    Extremal::Max => *out.last().expect("outgoing edge"),
                    Extremal::Min => out[0],
                };
                if k == 1 {
                    e
                } else {
                    first[k - 1][d.edge(k, e).target]
                }
            })
            .collect();
    }
    // images[k][x]: level-1 image edge -> route, over all continuations below x.
    let mut images: Vec<Vec<BTreeMap<usize, Route>>> = vec![Vec::new(); horizon + 1];
    images[horizon] = vec![BTreeMap::new(); d.level_size(horizon)];
    for k in (1..horizon).rev() {
        images[k] = d
            .vertices(k)
            .map(|x| {
                let mut found = BTreeMap::new();
                for &e in d.in_edges(x) {
                    if is_stop(k + 1, e) {
                        for &img in images[k + 1][d.edge(k + 1, e).source].keys() {
                            found.entry(img).or_insert(Route::Via(e));
                        }
                    } else {
                        let t = d.edge(k + 1, neighbour(k + 1, e)).target;
                        found.entry(first[k][t]).or_insert(Route::Direct(e));
                    }
                }
                found
            })
            .collect();
    }
    let split = |m: usize| d.vertices(m).find(|x| images[m][x.index].len() >= 2);
    if !(lo..=hi).all(|m| split(m).is_some()) {
        return None;
    }
    let x = split(hi)?;
    let follow = |img: usize| {
        let mut p = extremal_from(d, x, stop);
        let mut v = x;
        loop {
            match images[v.level][v.index][&img] {
                Route::Direct(e) => {
                    p.edges.push(e);
                    return p;
                }
                Route::Via(e) => {
                    p.edges.push(e);
                    v = Vertex::new(v.level + 1, d.edge(v.level + 1, e).source);
                }
            }
        }
    };
    let mut keys = images[hi][x.index].keys();
    let (a, b) = (*keys.next()?, *keys.next()?);
    let (y, z) = (follow(a), follow(b));
    let step = |p: &FinitePath| match side {
        Side::Successor => p.successor(d),
        Side::Predecessor => p.predecessor(d),
    };
    let (y_image, z_image) = (step(&y)?, step(&z)?);
    let diverge = |p: &FinitePath, q: &FinitePath| {
        p.edges.iter().zip(&q.edges).position(|(a, b)| a != b).map_or(p.depth().min(q.depth()) + 1, |i| i + 1)
    };
    Some(ContinuityWitness {
        side,
        prefix_depth: hi,
        vertex: d.name(x).to_string(),
        divergence: diverge(&y, &z),
        image_divergence: diverge(&y_image, &z_image),
        y_labels: y.labels(d),
        z_labels: z.labels(d),
        y_image_labels: y_image.labels(d),
        z_image_labels: z_image.labels(d),
        y,
        z,
        y_image,
        z_image,
    })
}

/// Classifies the interior of the extremal set from cylinders at levels `1..=top`.
fn interior(d: &OrderedBratteliDiagram, kind: Extremal, top: usize) -> Interior {
    let horizon = d.depth();
    let is_kind = |k: usize, e: usize| match kind {
        Extremal::Max => d.is_max_edge(k, e),
        Extremal::Min => d.is_min_edge(k, e),
    };
    // closed[k][x]: every edge entering the downward closure of x is extremal.
    let mut closed: Vec<Vec<bool>> = vec![Vec::new(); horizon + 1];
    let mut paths: Vec<Vec<u128>> = vec![Vec::new(); horizon + 1];
    closed[horizon] = vec![true; d.level_size(horizon)];
    paths[horizon] = vec![1; d.level_size(horizon)];
    for k in (1..horizon).rev() {
        closed[k] = d
            .vertices(k)
            .map(|x| d.in_edges(x).iter().all(|&e| is_kind(k + 1, e) && closed[k + 1][d.edge(k + 1, e).source]))
            .collect();
        paths[k] = d
            .vertices(k)
            .map(|x| {
                d.in_edges(x).iter().map(|&e| paths[k + 1][d.edge(k + 1, e).source]).fold(0u128, u128::saturating_add)
            })
            .collect();
    }
    let mut isolated = BTreeSet::new();
    for k in 1..=top.min(horizon.saturating_sub(1)) {
        for x in d.vertices(k) {
            if !closed[k][x.index] || paths[k][x.index] == 0 {
                continue;
            }
            if paths[k][x.index] >= 2 {
                return Interior::Large { level: k, vertex: d.name(x).to_string() };
            }
            // The unique path through x, down to the horizon.
            let mut p = extremal_from(d, x, kind);
            let mut v = x;
            while v.level < horizon {
                let e = *d
                    .in_edges(v)
                    .iter()
                    .find(|&&e| paths[v.level + 1][d.edge(v.level + 1, e).source] > 0)
                    .expect("a path continues below");
                p.edges.push(e);
                v = Vertex::new(v.level + 1, d.edge(v.level + 1, e).source);
            }
            isolated.insert(p);
        }
    }
    if isolated.is_empty() {
        Interior::Empty
    } else {
        Interior::Isolated(isolated.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn stationary(d: &OrderedBratteliDiagram) -> Verdict {
        decisive_check(d, 8, TailPolicy::StationaryRepeat).unwrap()
    }

    #[test]
    fn decisive_examples() {
        for d in [fixtures::example1(), fixtures::example2(), fixtures::odometer(1)] {
            let v = stationary(&d);
            assert_eq!(v.status, Status::DecisiveEvidence, "{v}");
            assert!(v.witness.is_none());
        }
    }

    #[test]
    fn example3_count() {
        let v = stationary(&fixtures::example3());
        assert_eq!(v.status, Status::NonDecisive);
        assert_eq!(v.witness, Some(Witness::Count { max: ExtremalCount::Finite(1), min: ExtremalCount::Finite(2) }));
        assert!(v.to_string().contains("1 maximal, 2 minimal"));
    }

    #[test]
    fn skew_continuity() {
        let v = stationary(&fixtures::skew(2));
        let Some(Witness::Continuity(w)) = v.witness else { panic!("{v}") };
        assert_eq!(w.image_divergence, 1);
        assert!(w.divergence > w.prefix_depth);
        assert_ne!(w.y_image.edges[0], w.z_image.edges[0]);
    }

    #[test]
    fn medynets_interior() {
        let d = fixtures::medynets(8);
        let v = decisive_check(&d, 8, TailPolicy::TruncateAtK).unwrap();
        assert_eq!(v.status, Status::NonDecisive);
        let Some(Witness::Interior { min: Interior::Large { vertex, .. }, .. }) = v.witness else { panic!("{v}") };
        assert_eq!(vertex, "u");
    }

    #[test]
    fn stationary_policy_needs_tail() {
        let d = fixtures::medynets(3);
        assert_eq!(decisive_check(&d, 3, TailPolicy::StationaryRepeat), Err(BratteliError::NotStationary));
    }

    #[test]
    fn truncated_odometer_is_inconclusive() {
        for k in 2..=10 {
            let v = decisive_check(&fixtures::odometer(k), k, TailPolicy::TruncateAtK).unwrap();
            assert!(v.witness.is_none());
            assert_eq!(v.status, Status::Inconclusive);
        }
    }
}
