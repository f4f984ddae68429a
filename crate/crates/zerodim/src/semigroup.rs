//! Numerical semigroups: Frobenius numbers, `{n, n+1}` decompositions and
//! deterministic gap filling.

use std::collections::BTreeSet;

use thiserror::Error;

/// Inputs above this bound are rejected to keep the DP table small.
pub const DP_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("generator set is empty")]
    Empty,
    #[error("generators must be positive")]
    ZeroGenerator,
    #[error("{0} is not representable by the given lengths")]
    Unrepresentable(u64),
    #[error("value {value} exceeds the DP bound {limit}")]
    TooLarge { value: u64, limit: u64 },
    #[error("block length n must be positive")]
    ZeroLength,
}

/// Finite set of positive generators, deduplicated and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet(BTreeSet<u64>);

impl GeneratorSet {
    pub fn new<I: IntoIterator<Item = u64>>(gens: I) -> Result<Self, SemigroupError> {
        let set: BTreeSet<u64> = gens.into_iter().collect();
        if set.is_empty() {
            return Err(SemigroupError::Empty);
        }
        if set.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        Ok(GeneratorSet(set))
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn min(&self) -> u64 {
        *self.0.first().expect("nonempty")
    }

    pub fn max(&self) -> u64 {
        *self.0.last().expect("nonempty")
    }

    pub fn gcd(&self) -> u64 {
        self.iter().fold(0, gcd)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobeniusResult {
    pub gcd: u64,
    /// g times the Frobenius number of the reduced set, or `-g` when the
    /// reduced set contains 1.
    pub frobenius: i64,
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Representability table for `0..=limit` over the given generators.
fn reachable(gens: &[u64], limit: u64) -> Vec<bool> {
    let mut table = vec![false; limit as usize + 1];
    table[0] = true;
    for v in 1..=limit as usize {
        table[v] = gens.iter().any(|&g| g as usize <= v && table[v - g as usize]);
    }
    table
}

pub fn frobenius(gens: &GeneratorSet) -> Result<FrobeniusResult, SemigroupError> {
    let g = gens.gcd();
    let reduced: Vec<u64> = gens.iter().map(|x| x / g).collect();
    if reduced[0] == 1 {
        return Ok(FrobeniusResult { gcd: g, frobenius: -(g as i64) });
    }
    // With coprime generators a < b every integer ≥ (a-1)(b-1) is representable.
    let bound = reduced[0] * reduced[reduced.len() - 1];
    if bound > DP_LIMIT {
        return Err(SemigroupError::TooLarge { value: bound, limit: DP_LIMIT });
    }
    let table = reachable(&reduced, bound);
    let largest = table.iter().rposition(|&r| !r).expect("1 is never representable here");
    Ok(FrobeniusResult { gcd: g, frobenius: largest as i64 * g as i64 })
}

/// Writes `m = p·n + q·(n+1)` with `p` as large as possible.
pub fn decompose_pq(m: u64, n: u64) -> Result<(u64, u64), SemigroupError> {
    if n == 0 {
        return Err(SemigroupError::ZeroLength);
    }
    // m - q(n+1) ≡ m - q (mod n), so q ≡ m (mod n); the least such q maximizes p.
    let q = m % n;
    match m.checked_sub(q * (n + 1)) {
        Some(rest) => Ok((rest / n, q)),
        None => Err(SemigroupError::Unrepresentable(m)),
    }
}

/// A deterministic multiset of `lengths` summing to `m`, sorted ascending.
///
/// Backtracking through the representability table always tries the largest
/// generator first, so equal inputs give equal outputs.
pub fn fill_length(m: u64, lengths: &GeneratorSet) -> Result<Vec<u64>, SemigroupError> {
    if m > DP_LIMIT {
        return Err(SemigroupError::TooLarge { value: m, limit: DP_LIMIT });
    }
    let gens: Vec<u64> = lengths.iter().collect();
    let table = reachable(&gens, m);
    if !table[m as usize] {
        return Err(SemigroupError::Unrepresentable(m));
    }
    let mut out = Vec::new();
    let mut rest = m;
    while rest > 0 {
        let g =
            lengths.iter().rev().find(|&g| g <= rest && table[(rest - g) as usize]).expect("table guarantees a step");
        out.push(g);
        rest -= g;
    }
    out.sort_unstable();
    Ok(out)
}
