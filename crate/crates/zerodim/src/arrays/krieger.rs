use std::collections::{BTreeSet, HashSet};

use super::ArrayError;
use crate::symbolic::{SubshiftSpec, Symbol, Word};

/// Default cap on the refined radius of cylinder computations.
pub const DEFAULT_RADIUS_CAP: usize = 6;

/// Clopen set given by the central windows `x[-r..=r]` it allows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderSet {
    pub radius: usize,
    pub patterns: BTreeSet<Word>,
}

impl CylinderSet {
    pub fn new(radius: usize, patterns: impl IntoIterator<Item = Word>) -> Self {
        CylinderSet { radius, patterns: patterns.into_iter().collect() }
    }

    /// The cylinder of all points whose coordinates `offset..offset+|w|`
    /// read `w`, presented at `radius`.
    pub fn from_block(spec: &SubshiftSpec, radius: usize, offset: i64, w: &Word) -> Self {
        let len = 2 * radius + 1;
        let lo = offset + radius as i64;
        let patterns = spec
            .language(len)
            .into_iter()
            .filter(|p| {
                (0..w.len()).all(|j| {
                    let i = lo + j as i64;
                    i >= 0 && (i as usize) < len && p.0[i as usize] == w.0[j]
                })
            })
            .collect();
        CylinderSet { radius, patterns }
    }

    pub fn width(&self) -> usize {
        2 * self.radius + 1
    }

    /// Center positions `i` of `w` with `w[i-r..=i+r]` in the set.
    pub fn occurrences(&self, w: &[Symbol]) -> Vec<usize> {
        Matcher::new(self).occurrences(w)
    }
}

/// Hashed view of a cylinder set for repeated lookups.
struct Matcher<'a> {
    radius: usize,
    lookup: HashSet<&'a [Symbol]>,
}

impl<'a> Matcher<'a> {
    fn new(set: &'a CylinderSet) -> Self {
        Matcher { radius: set.radius, lookup: set.patterns.iter().map(|p| p.0.as_slice()).collect() }
    }

    fn occurrences(&self, w: &[Symbol]) -> Vec<usize> {
        let r = self.radius;
        if w.len() < 2 * r + 1 {
            return Vec::new();
        }
        (r..w.len() - r).filter(|&i| self.lookup.contains(&w[i - r..=i + r])).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KriegerReport {
    pub n: usize,
    pub radius: usize,
    /// Number of consecutive centers that must contain an occurrence.
    pub window: usize,
    pub separated: bool,
    pub separation_witness: Option<Word>,
    /// Words of length `window + 2·radius` with no occurrence, sorted.
    pub uncovered: Vec<Word>,
}

impl KriegerReport {
    pub fn covered(&self) -> bool {
        self.uncovered.is_empty()
    }

    /// Uncovered words whose minimal period is below `n`, i.e. the words
    /// that follow a periodic orbit too short to carry an `n`-marker.
    pub fn periodic_uncovered(&self) -> impl Iterator<Item = &Word> {
        self.uncovered.iter().filter(move |w| w.minimal_period() < self.n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KriegerOutcome {
    pub marker: CylinderSet,
    pub report: KriegerReport,
}

/// An admissible word carrying two occurrences of `set` less than `n` apart.
fn check_separated(spec: &SubshiftSpec, set: &CylinderSet, n: usize) -> Option<Word> {
    if n < 2 {
        return None;
    }
    let m = Matcher::new(set);
    spec.language(set.width() + n - 1).into_iter().find(|w| m.occurrences(&w.0).windows(2).any(|p| p[1] - p[0] < n))
}

/// Builds an `n`-marker set from an `n`-separated cover by the rule
/// `F_1 = U_1`, `F_{j+1} = F_j ∪ (U_{j+1} \ ⋃_{|i|<n} T^{-i} F_j)`, then
/// certifies separation and coverage over windows of `2n - 1` centers.
pub fn krieger_markers(
    spec: &SubshiftSpec,
    n: usize,
    cover: &[CylinderSet],
    radius_cap: usize,
) -> Result<KriegerOutcome, ArrayError> {
    if n == 0 {
        return Err(ArrayError::ZeroSpacing);
    }
    for (i, u) in cover.iter().enumerate() {
        if let Some(j) = cover[..i].iter().position(|v| v == u) {
            return Err(ArrayError::DuplicateMember(j, i));
        }
        for p in &u.patterns {
            if p.len() != u.width() || !spec.is_admissible(p)? {
                return Err(ArrayError::BadPattern { member: i, pattern: p.clone() });
            }
        }
        if u.radius > radius_cap {
            return Err(ArrayError::RadiusOverflow { needed: u.radius, cap: radius_cap });
        }
        if let Some(witness) = check_separated(spec, u, n) {
            return Err(ArrayError::NotSeparated { member: i, n, witness });
        }
    }

    let mut f = match cover.first() {
        Some(u) => u.clone(),
        None => CylinderSet::new(0, []),
    };
    for u in cover.iter().skip(1) {
        let radius = (f.radius + n - 1).max(u.radius);
        if radius > radius_cap {
            return Err(ArrayError::RadiusOverflow { needed: radius, cap: radius_cap });
        }
        let old: HashSet<&[Symbol]> = f.patterns.iter().map(|p| p.0.as_slice()).collect();
        let new: HashSet<&[Symbol]> = u.patterns.iter().map(|p| p.0.as_slice()).collect();
        let (rf, ru) = (f.radius, u.radius);
        let in_f = |p: &[Symbol], c: usize| c >= rf && c + rf < p.len() && old.contains(&p[c - rf..=c + rf]);
        let patterns = spec
            .language(2 * radius + 1)
            .into_iter()
            .filter(|p| {
                let c = radius;
                if in_f(&p.0, c) {
                    return true;
                }
                new.contains(&p.0[c - ru..=c + ru]) && (c + 1 - n..c + n).all(|i| !in_f(&p.0, i))
            })
            .collect();
        f = CylinderSet { radius, patterns };
    }

    let window = 2 * n - 1;
    let separation_witness = check_separated(spec, &f, n);
    let m = Matcher::new(&f);
    let uncovered =
        spec.language(window + 2 * f.radius).into_iter().filter(|w| m.occurrences(&w.0).is_empty()).collect();
    Ok(KriegerOutcome {
        report: KriegerReport {
            n,
            radius: f.radius,
            window,
            separated: separation_witness.is_none(),
            separation_witness,
            uncovered,
        },
        marker: f,
    })
}

/// A cover made of all individually `n`-separated patterns at radius `r`,
/// grouped greedily (in lexicographic order) into `n`-separated members.
pub fn auto_cover(spec: &SubshiftSpec, n: usize, r: usize) -> Vec<CylinderSet> {
    let width = 2 * r + 1;
    let singles: Vec<Word> = spec
        .language(width)
        .into_iter()
        .filter(|p| check_separated(spec, &CylinderSet::new(r, [p.clone()]), n).is_none())
        .collect();
    // p at 0 and q at d (0 < d < n) can co-occur iff the overlap agrees and the union is admissible.
    let clash = |p: &Word, q: &Word| {
        (1..n).any(|d| {
            if d >= width {
                return gap_fillable(spec, p, q, d - width);
            }
            p.0[d..] == q.0[..width - d] && {
                let mut w = p.0.clone();
                w.extend_from_slice(&q.0[width - d..]);
                spec.is_admissible(&Word(w)).unwrap_or(false)
            }
        })
    };
    let mut groups: Vec<Vec<Word>> = Vec::new();
    for p in singles {
        match groups.iter_mut().find(|g| g.iter().all(|q| !clash(&p, q) && !clash(q, &p))) {
            Some(g) => g.push(p),
            None => groups.push(vec![p]),
        }
    }
    groups.into_iter().map(|g| CylinderSet::new(r, g)).collect()
}

/// Whether some admissible word reads `p`, then `gap` free symbols, then `q`.
fn gap_fillable(spec: &SubshiftSpec, p: &Word, q: &Word, gap: usize) -> bool {
    spec.language(gap).into_iter().any(|mid| {
        let mut w = p.0.clone();
        w.extend_from_slice(&mid.0);
        w.extend_from_slice(&q.0);
        spec.is_admissible(&Word(w)).unwrap_or(false)
    })
}
