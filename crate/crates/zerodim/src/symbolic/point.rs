use super::{Alphabet, Symbol, SymbolicError, Word};

/// An eventually periodic two-sided sequence: a central word placed on a
/// coordinate interval containing 0, flanked by repeating tails.
///
/// Right of the center the sequence reads `right right right ...`; left of
/// it the sequence reads `... left left left`, so the last symbol of `left`
/// sits immediately before the center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSidedPoint {
    center: Word,
    start: i64,
    left: Word,
    right: Word,
}

impl TwoSidedPoint {
    /// Panics if a tail is empty or the center does not cover coordinate 0.
    pub fn new(center: Word, start: i64, left: Word, right: Word) -> Self {
        assert!(!left.is_empty() && !right.is_empty(), "tails must be nonempty");
        let end = start + center.len() as i64 - 1;
        assert!(start <= 0 && end >= 0, "center must cover coordinate 0");
        TwoSidedPoint { center, start, left, right }
    }

    /// Eventually constant point with constant tails.
    pub fn constant_tails(center: Word, start: i64, left: Symbol, right: Symbol) -> Self {
        Self::new(center, start, Word(vec![left]), Word(vec![right]))
    }

    /// The constant sequence `s s s ...`.
    pub fn constant(s: Symbol) -> Self {
        Self::constant_tails(Word(vec![s]), 0, s, s)
    }

    pub fn check(&self, alphabet: &Alphabet) -> Result<(), SymbolicError> {
        alphabet.check(&self.center)?;
        alphabet.check(&self.left)?;
        alphabet.check(&self.right)
    }

    fn end(&self) -> i64 {
        self.start + self.center.len() as i64 - 1
    }

    pub fn at(&self, i: i64) -> Symbol {
        if i < self.start {
            let p = self.left.len() as i64;
            let back = self.start - i;
            self.left.0[(p - 1 - (back - 1).rem_euclid(p)) as usize]
        } else if i > self.end() {
            let p = self.right.len() as i64;
            self.right.0[((i - self.end() - 1).rem_euclid(p)) as usize]
        } else {
            self.center.0[(i - self.start) as usize]
        }
    }

    /// Symbols on `[a, b]`; empty when `a > b`.
    pub fn window_of(&self, a: i64, b: i64) -> Word {
        Word((a..=b).map(|i| self.at(i)).collect())
    }

    /// The left shift: `(Tx)_i = x_{i+1}`.
    pub fn shift(&self) -> Self {
        let a = (self.start - 1).min(0);
        let b = (self.end() - 1).max(0);
        let p = self.left.len() as i64;
        let q = self.right.len() as i64;
        TwoSidedPoint {
            center: self.window_of(a + 1, b + 1),
            start: a,
            left: self.window_of(a + 1 - p, a),
            right: self.window_of(b + 2, b + 1 + q),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sunny_side_up_window() {
        let x = TwoSidedPoint::constant_tails(Word(vec![1]), 0, 0, 0);
        assert_eq!(x.window_of(-1, 1), Word(vec![0, 1, 0]));
    }

    #[test]
    fn constant_window() {
        assert_eq!(TwoSidedPoint::constant(0).window_of(5, 7), Word(vec![0, 0, 0]));
    }

    #[test]
    fn periodic_defect_window() {
        let x = TwoSidedPoint::new(Word(vec![1, 1]), 0, Word(vec![1, 0]), Word(vec![0, 1]));
        assert_eq!(x.window_of(-2, 2), Word(vec![1, 0, 1, 1, 0]));
        assert_eq!(x.window_of(-5, 5), Word(vec![0, 1, 0, 1, 0, 1, 1, 0, 1, 0, 1]));
    }

    #[test]
    fn shift_moves_window() {
        let x = TwoSidedPoint::new(Word(vec![1, 1]), 0, Word(vec![1, 0, 0]), Word(vec![0, 1]));
        let mut y = x.clone();
        for t in 1..12 {
            y = y.shift();
            assert_eq!(y.window_of(-6, 6), x.window_of(-6 + t, 6 + t));
        }
    }
}
