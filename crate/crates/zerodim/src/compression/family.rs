use std::collections::BTreeMap;

use super::CompressionError;
use crate::symbolic::{Alphabet, SubshiftSpec, Symbol, Word};

/// Blocks `M_s·w` over `ℓ` symbols, where `M_s = 1 0^s` and `w` avoids `M_s`.
/// Every block starts with `M_s` and nothing else in a concatenation does,
/// so block boundaries are exactly the occurrences of `M_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFamily {
    pub ell: usize,
    pub s: usize,
    pub blocks: BTreeMap<usize, Vec<Word>>,
}

impl CodeFamily {
    pub fn new(ell: usize, s: usize) -> Result<Self, CompressionError> {
        if !(2..=10).contains(&ell) {
            return Err(CompressionError::BadEll(ell));
        }
        if s == 0 {
            return Err(CompressionError::ZeroMarker);
        }
        Ok(CodeFamily { ell, s, blocks: BTreeMap::new() })
    }

    pub fn marker(&self) -> Word {
        marker(self.s)
    }

    /// Blocks of length `n`, computed on first use.
    pub fn blocks(&mut self, n: usize) -> Result<&[Word], CompressionError> {
        if !self.blocks.contains_key(&n) {
            let b = build_family(self.ell, self.s, n)?;
            self.blocks.insert(n, b);
        }
        Ok(&self.blocks[&n])
    }

    /// `c(n)`.
    pub fn count(&mut self, n: usize) -> Result<usize, CompressionError> {
        Ok(self.blocks(n)?.len())
    }
}

fn marker(s: usize) -> Word {
    let mut m: Vec<Symbol> = vec![1];
    m.extend(std::iter::repeat_n(0, s));
    Word(m)
}

/// The length-`n` blocks of the family, in lexicographic order.
pub fn build_family(ell: usize, s: usize, n: usize) -> Result<Vec<Word>, CompressionError> {
    CodeFamily::new(ell, s)?;
    if n < s + 2 {
        return Err(CompressionError::TooShort { n, s });
    }
    let m = marker(s);
    let avoid = SubshiftSpec::forbidden(Alphabet::numeric(ell), [m.clone()]).expect("marker is a valid word");
    Ok(avoid.language(n - s - 1).into_iter().map(|w| Word([m.0.as_slice(), w.0.as_slice()].concat())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| w.0.iter().map(|s| s.to_string()).collect()).collect()
    }

    #[test]
    fn family_examples() {
        assert_eq!(render(&build_family(2, 1, 4).unwrap()), ["1000", "1001", "1011"]);
        assert_eq!(build_family(2, 1, 3).unwrap().len(), 2);
        assert_eq!(build_family(3, 1, 3).unwrap().len(), 3);
        assert_eq!(build_family(2, 1, 2), Err(CompressionError::TooShort { n: 2, s: 1 }));
        assert_eq!(build_family(1, 1, 5), Err(CompressionError::BadEll(1)));
    }

    #[test]
    fn golden_length_eight_capacity() {
        let best = (1..=6).map(|s| build_family(2, s, 8).unwrap().len()).max().unwrap();
        assert_eq!(best, 20);
    }
}
