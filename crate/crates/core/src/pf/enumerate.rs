//! Streaming lexicographic enumeration of `PF_n` and `PPF_n`.
//!
//! The iterator walks `[n]^n` in lexicographic order depth-first, pruning
//! any prefix that can no longer be completed, so the work is proportional
//! to the number of objects produced rather than to `n^n`.

use crate::error::{Error, Result};
use crate::pf::PrefVector;

/// Upper bound on `n` for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumLimit(pub usize);

impl EnumLimit {
    pub const DEFAULT: EnumLimit = EnumLimit(9);

    pub fn check(self, n: usize) -> Result<()> {
        if n > self.0 {
            Err(Error::LimitExceeded { n, limit: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for EnumLimit {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Lexicographic stream of parking functions (or prime parking functions)
/// of a fixed length.
#[derive(Clone, Debug)]
pub struct PfIter {
    n: usize,
    prime: bool,
    max_value: u32,
    prefix: Vec<u32>,
    counts: Vec<usize>,
    started: bool,
    done: bool,
}

impl PfIter {
    fn new(n: usize, prime: bool) -> Self {
        let max_value = if prime && n >= 2 { n - 1 } else { n } as u32;
        PfIter {
            n,
            prime,
            max_value,
            prefix: Vec::with_capacity(n),
            counts: vec![0; n + 2],
            started: false,
            done: n == 0,
        }
    }

    /// Whether the current prefix extends to a full object. The free slots
    /// can all be filled with 1, which is the most helpful choice.
    fn feasible(&self) -> bool {
        let free = self.n - self.prefix.len();
        let mut cum = free;
        for i in 1..self.n {
            cum += self.counts[i];
            let need = if self.prime { i + 1 } else { i };
            if cum < need {
                return false;
            }
        }
        true
    }

    fn push(&mut self, v: u32) {
        self.prefix.push(v);
        self.counts[v as usize] += 1;
    }

    fn pop(&mut self) -> Option<u32> {
        let v = self.prefix.pop()?;
        self.counts[v as usize] -= 1;
        Some(v)
    }

    /// Advances to the next object and returns it without allocating.
    pub fn next_slice(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        let mut cand = if self.started {
            match self.pop() {
                Some(v) => v + 1,
                None => unreachable!("a full prefix was emitted"),
            }
        } else {
            self.started = true;
            1
        };
        loop {
            // Raising an entry only lowers the prefix counts, so once a value
            // fails every larger value fails too.
            let exhausted = cand > self.max_value || {
                self.push(cand);
                let ok = self.feasible();
                if !ok {
                    self.pop();
                }
                !ok
            };
            if exhausted {
                match self.pop() {
                    Some(v) => cand = v + 1,
                    None => {
                        self.done = true;
                        return None;
                    }
                }
                continue;
            }
            if self.prefix.len() == self.n {
                return Some(&self.prefix);
            }
            cand = 1;
        }
    }

    /// Calls `f` on every remaining object.
    pub fn for_each_slice(mut self, mut f: impl FnMut(&[u32])) {
        while let Some(s) = self.next_slice() {
            f(s);
        }
    }
}

impl Iterator for PfIter {
    type Item = PrefVector;
    fn next(&mut self) -> Option<PrefVector> {
        self.next_slice().map(|s| PrefVector::from_trusted(s.to_vec()))
    }
}

fn check_len(n: usize, limit: EnumLimit) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("length must be at least 1".into()));
    }
    limit.check(n)
}

/// All of `PF_n` in lexicographic order.
pub fn enumerate_pf(n: usize, limit: EnumLimit) -> Result<PfIter> {
    check_len(n, limit)?;
    Ok(PfIter::new(n, false))
}

/// All of `PPF_n` in lexicographic order.
pub fn enumerate_ppf(n: usize, limit: EnumLimit) -> Result<PfIter> {
    check_len(n, limit)?;
    Ok(PfIter::new(n, true))
}
