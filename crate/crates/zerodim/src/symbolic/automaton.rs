use std::collections::VecDeque;

use super::{Symbol, Word};

/// Complete DFA recognizing words with no factor from a finite set,
/// built from the trie of that set with failure links.
#[derive(Debug, Clone)]
pub(crate) struct FactorAutomaton {
    k: usize,
    delta: Vec<Vec<usize>>,
    dead: Vec<bool>,
}

impl FactorAutomaton {
    pub(crate) fn new<'a, I>(k: usize, forbidden: I) -> Self
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let mut goto: Vec<Vec<Option<usize>>> = vec![vec![None; k]];
        let mut dead = vec![false];
        for w in forbidden {
            let mut s = 0;
            for &c in &w.0 {
                s = match goto[s][c as usize] {
                    Some(t) => t,
                    None => {
                        goto.push(vec![None; k]);
                        dead.push(false);
                        let t = goto.len() - 1;
                        goto[s][c as usize] = Some(t);
                        t
                    }
                };
            }
            dead[s] = true;
        }

        let n = goto.len();
        let mut delta = vec![vec![0; k]; n];
        let mut fail = vec![0; n];
        let mut queue = VecDeque::new();
        for c in 0..k {
            match goto[0][c] {
                Some(t) => {
                    delta[0][c] = t;
                    queue.push_back(t);
                }
                None => delta[0][c] = 0,
            }
        }
        while let Some(s) = queue.pop_front() {
            dead[s] = dead[s] || dead[fail[s]];
            for c in 0..k {
                match goto[s][c] {
                    Some(t) => {
                        fail[t] = delta[fail[s]][c];
                        delta[s][c] = t;
                        queue.push_back(t);
                    }
                    None => delta[s][c] = delta[fail[s]][c],
                }
            }
        }
        FactorAutomaton { k, delta, dead }
    }

    pub(crate) fn accepts(&self, w: &[Symbol]) -> bool {
        let mut s = 0;
        for &c in w {
            s = self.delta[s][c as usize];
            if self.dead[s] {
                return false;
            }
        }
        true
    }

    pub(crate) fn words(&self, n: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut buf = Vec::with_capacity(n);
        self.walk(0, n, &mut buf, &mut out);
        out
    }

    fn walk(&self, s: usize, n: usize, buf: &mut Vec<Symbol>, out: &mut Vec<Word>) {
        if buf.len() == n {
            out.push(Word(buf.clone()));
            return;
        }
        for c in 0..self.k {
            let t = self.delta[s][c];
            if !self.dead[t] {
                buf.push(c as Symbol);
                self.walk(t, n, buf, out);
                buf.pop();
            }
        }
    }

    pub(crate) fn count(&self, n: usize) -> u128 {
        let mut cur = vec![0u128; self.delta.len()];
        cur[0] = 1;
        for _ in 0..n {
            let mut next = vec![0u128; self.delta.len()];
            for (s, &c) in cur.iter().enumerate().filter(|(_, c)| **c > 0) {
                for &t in &self.delta[s] {
                    if !self.dead[t] {
                        next[t] = next[t].saturating_add(c);
                    }
                }
            }
            cur = next;
        }
        cur.iter().fold(0u128, |a, &b| a.saturating_add(b))
    }
}
