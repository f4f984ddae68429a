//! Subshift presentations, finite languages and block entropy.

mod automaton;
mod format;
mod point;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use automaton::FactorAutomaton;
pub use format::{parse_subshift, write_subshift};
pub use point::TwoSidedPoint;

/// Index of a symbol in its alphabet's declared order.
pub type Symbol = u32;

/// Largest memory accepted when converting between presentation modes.
pub const MAX_MEMORY: usize = 8;

/// Largest number of words of length `m` enumerated during a conversion.
const MAX_CONVERSION_WORDS: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("duplicate token `{0}` in alphabet")]
    DuplicateToken(String),
    #[error("token `{0}` is not in the alphabet")]
    UnknownToken(String),
    #[error("symbol index {index} is outside an alphabet of size {size}")]
    SymbolOutOfRange { index: Symbol, size: usize },
    #[error("forbidden words must be nonempty")]
    EmptyForbiddenWord,
    #[error("allowed words must all have length {expected}, found length {found}")]
    RaggedAllowedWords { expected: usize, found: usize },
    #[error("memory {0} must be at least 1")]
    ZeroMemory(usize),
    #[error("memory {memory} exceeds the conversion cap {cap}")]
    MemoryTooLarge { memory: usize, cap: usize },
    #[error("the language has no words of length {0}")]
    EmptyLanguage(usize),
    #[error("block length must be positive")]
    ZeroLength,
}

/// Ordered finite set of distinct tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<I, S>(tokens: I) -> Result<Self, SymbolicError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        if tokens.is_empty() {
            return Err(SymbolicError::EmptyAlphabet);
        }
        let mut index = HashMap::with_capacity(tokens.len());
        for (i, t) in tokens.iter().enumerate() {
            if index.insert(t.clone(), i as Symbol).is_some() {
                return Err(SymbolicError::DuplicateToken(t.clone()));
            }
        }
        Ok(Alphabet { tokens, index })
    }

    /// The alphabet `{0, 1, ..., k-1}` written with decimal tokens.
    pub fn numeric(k: usize) -> Self {
        Alphabet::new((0..k).map(|i| i.to_string())).expect("k >= 1")
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn token(&self, s: Symbol) -> &str {
        &self.tokens[s as usize]
    }

    pub fn symbol(&self, token: &str) -> Result<Symbol, SymbolicError> {
        self.index.get(token).copied().ok_or_else(|| SymbolicError::UnknownToken(token.to_string()))
    }

    /// True when every token is a single character, so words can be written bare.
    pub fn is_compact(&self) -> bool {
        self.tokens.iter().all(|t| t.chars().count() == 1)
    }

    /// Parses a bare (compact alphabets) or comma-joined word.
    pub fn parse_word(&self, text: &str) -> Result<Word, SymbolicError> {
        let syms = if self.is_compact() && !text.contains(',') {
            text.chars().map(|c| self.symbol(c.encode_utf8(&mut [0; 4]))).collect::<Result<Vec<_>, _>>()?
        } else {
            text.split(',').filter(|t| !t.is_empty()).map(|t| self.symbol(t)).collect::<Result<Vec<_>, _>>()?
        };
        Ok(Word(syms))
    }

    pub fn render(&self, w: &Word) -> String {
        let sep = if self.is_compact() { "" } else { "," };
        w.0.iter().map(|&s| self.token(s)).collect::<Vec<_>>().join(sep)
    }

    pub fn check(&self, w: &Word) -> Result<(), SymbolicError> {
        match w.0.iter().find(|&&s| s as usize >= self.len()) {
            Some(&index) => Err(SymbolicError::SymbolOutOfRange { index, size: self.len() }),
            None => Ok(()),
        }
    }
}

/// Finite sequence of symbol indices, ordered lexicographically.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    /// Positions at which `pattern` occurs as a factor.
    pub fn occurrences<'a>(&'a self, pattern: &'a [Symbol]) -> impl Iterator<Item = usize> + 'a {
        let n = pattern.len();
        (0..(self.len() + 1).saturating_sub(n.max(1))).filter(move |&i| n > 0 && &self.0[i..i + n] == pattern)
    }

    pub fn contains_factor(&self, pattern: &[Symbol]) -> bool {
        self.occurrences(pattern).next().is_some()
    }

    /// Smallest p ≥ 1 with w_i = w_{i+p} throughout.
    pub fn minimal_period(&self) -> usize {
        let n = self.len();
        (1..=n).find(|&p| (p..n).all(|i| self.0[i] == self.0[i - p])).unwrap_or(n.max(1))
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// The two presentation modes of a subshift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    Forbidden(BTreeSet<Word>),
    Allowed { memory: usize, words: BTreeSet<Word> },
}

/// A subshift given by an alphabet and a finite constraint.
#[derive(Debug, Clone)]
pub struct SubshiftSpec {
    alphabet: Alphabet,
    constraint: Constraint,
    automaton: FactorAutomaton,
}

impl SubshiftSpec {
    pub fn full(alphabet: Alphabet) -> Self {
        Self::forbidden(alphabet, std::iter::empty::<Word>()).expect("no words to check")
    }

    pub fn forbidden<I>(alphabet: Alphabet, words: I) -> Result<Self, SymbolicError>
    where
        I: IntoIterator<Item = Word>,
    {
        let words: BTreeSet<Word> = words.into_iter().collect();
        for w in &words {
            if w.is_empty() {
                return Err(SymbolicError::EmptyForbiddenWord);
            }
            alphabet.check(w)?;
        }
        let automaton = FactorAutomaton::new(alphabet.len(), words.iter());
        Ok(SubshiftSpec { alphabet, constraint: Constraint::Forbidden(words), automaton })
    }

    /// Allowed-blocks presentation; the complement of `words` among all words
    /// of length `memory` is computed here and becomes the forbidden set.
    pub fn allowed<I>(alphabet: Alphabet, memory: usize, words: I) -> Result<Self, SymbolicError>
    where
        I: IntoIterator<Item = Word>,
    {
        if memory == 0 {
            return Err(SymbolicError::ZeroMemory(memory));
        }
        check_conversion_size(alphabet.len(), memory)?;
        let words: BTreeSet<Word> = words.into_iter().collect();
        for w in &words {
            if w.len() != memory {
                return Err(SymbolicError::RaggedAllowedWords { expected: memory, found: w.len() });
            }
            alphabet.check(w)?;
        }
        let complement: Vec<Word> = all_words(alphabet.len(), memory).filter(|w| !words.contains(w)).collect();
        let automaton = FactorAutomaton::new(alphabet.len(), complement.iter());
        Ok(SubshiftSpec { alphabet, constraint: Constraint::Allowed { memory, words }, automaton })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn constraint(&self) -> &Constraint {
        &self.constraint
    }

    /// Longest constraint word; 1 for the full shift.
    pub fn memory(&self) -> usize {
        match &self.constraint {
            Constraint::Forbidden(ws) => ws.iter().map(Word::len).max().unwrap_or(1),
            Constraint::Allowed { memory, .. } => *memory,
        }
    }

    /// Allowed blocks of length `memory()`, converting from the forbidden presentation.
    pub fn allowed_blocks(&self) -> Result<BTreeSet<Word>, SymbolicError> {
        match &self.constraint {
            Constraint::Allowed { words, .. } => Ok(words.clone()),
            Constraint::Forbidden(_) => {
                let m = self.memory();
                check_conversion_size(self.alphabet.len(), m)?;
                Ok(self.language(m).into_iter().collect())
            }
        }
    }

    /// All admissible words of length `n`, sorted.
    ///
    /// In allowed mode, words shorter than the memory are the factors of allowed words.
    pub fn language(&self, n: usize) -> Vec<Word> {
        if let Constraint::Allowed { memory, words } = &self.constraint {
            if n < *memory {
                let factors: BTreeSet<Word> =
                    words.iter().flat_map(|w| (0..=w.len() - n).map(move |i| Word(w.0[i..i + n].to_vec()))).collect();
                return factors.into_iter().collect();
            }
        }
        self.automaton.words(n)
    }

    /// |B_n|, computed without materializing the language.
    pub fn language_count(&self, n: usize) -> u128 {
        if let Constraint::Allowed { memory, .. } = &self.constraint {
            if n < *memory {
                return self.language(n).len() as u128;
            }
        }
        self.automaton.count(n)
    }

    /// (1/n)·log₂|B_n|.
    pub fn entropy_estimate(&self, n: usize) -> Result<f64, SymbolicError> {
        if n == 0 {
            return Err(SymbolicError::ZeroLength);
        }
        let c = self.language_count(n);
        if c == 0 {
            return Err(SymbolicError::EmptyLanguage(n));
        }
        Ok((c as f64).log2() / n as f64)
    }

    pub fn is_admissible(&self, w: &Word) -> Result<bool, SymbolicError> {
        self.alphabet.check(w)?;
        if let Constraint::Allowed { memory, words } = &self.constraint {
            if w.len() < *memory {
                return Ok(words.iter().any(|b| b.contains_factor(&w.0)) || w.is_empty());
            }
        }
        Ok(self.automaton.accepts(&w.0))
    }
}

fn check_conversion_size(k: usize, m: usize) -> Result<(), SymbolicError> {
    let size = (k as u128).checked_pow(m as u32);
    if m > MAX_MEMORY || size.is_none_or(|s| s > MAX_CONVERSION_WORDS as u128) {
        return Err(SymbolicError::MemoryTooLarge { memory: m, cap: MAX_MEMORY });
    }
    Ok(())
}

/// All `k^n` words of length `n` in lexicographic order.
pub fn all_words(k: usize, n: usize) -> impl Iterator<Item = Word> {
    let total = (k as u128).pow(n as u32);
    (0..total).map(move |mut i| {
        let mut v = vec![0; n];
        for slot in v.iter_mut().rev() {
            *slot = (i % k as u128) as Symbol;
            i /= k as u128;
        }
        Word(v)
    })
}
