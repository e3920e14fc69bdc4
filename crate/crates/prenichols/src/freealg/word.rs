//! Interned words in the free algebra.
//!
//! Words are canonical shared storage: each distinct letter sequence is
//! stored once and handles compare by identity. Degree-8 computations touch
//! on the order of 10^4 words, so hashing full sequences on every map lookup
//! would dominate otherwise.

use std::collections::HashMap;
use std::sync::RwLock;

use once_cell::sync::Lazy;

use crate::braiding::MultiDegree;

/// A word in the generators `x_1 .. x_theta`, stored as 1-based letter
/// indices. The empty word is the unit.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word(u32);

struct Interner {
    lookup: HashMap<&'static [u8], u32>,
    words: Vec<&'static [u8]>,
}

static INTERNER: Lazy<RwLock<Interner>> = Lazy::new(|| {
    let empty: &'static [u8] = Box::leak(Box::new([]));
    let mut lookup = HashMap::new();
    lookup.insert(empty, 0u32);
    RwLock::new(Interner {
        lookup,
        words: vec![empty],
    })
});

impl Word {
    pub fn empty() -> Word {
        Word(0)
    }

    pub fn new(letters: &[u8]) -> Word {
        if letters.is_empty() {
            return Word(0);
        }
        {
            let guard = INTERNER.read().unwrap();
            if let Some(&id) = guard.lookup.get(letters) {
                return Word(id);
            }
        }
        let mut guard = INTERNER.write().unwrap();
        if let Some(&id) = guard.lookup.get(letters) {
            return Word(id);
        }
        let stored: &'static [u8] = Box::leak(letters.to_vec().into_boxed_slice());
        let id = guard.words.len() as u32;
        guard.words.push(stored);
        guard.lookup.insert(stored, id);
        Word(id)
    }

    pub fn generator(i: u8) -> Word {
        Word::new(&[i])
    }

    pub fn letters(&self) -> &'static [u8] {
        INTERNER.read().unwrap().words[self.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.letters().len()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn concat(&self, other: &Word) -> Word {
        if self.is_empty() {
            return *other;
        }
        if other.is_empty() {
            return *self;
        }
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(self.letters());
        v.extend_from_slice(other.letters());
        Word::new(&v)
    }

    pub fn degree(&self, rank: usize) -> MultiDegree {
        let mut d = vec![0u32; rank];
        for &l in self.letters() {
            d[(l - 1) as usize] += 1;
        }
        MultiDegree(d)
    }

    /// Degree-lexicographic order with `x_1 < x_2 < ... < x_theta`: first by
    /// length, ties broken lexicographically on the letters.
    pub fn deglex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        let a = self.letters();
        let b = other.letters();
        a.len().cmp(&b.len()).then_with(|| a.cmp(b))
    }

    /// Split off the first letter; `None` for the unit.
    pub fn split_first(&self) -> Option<(u8, Word)> {
        let l = self.letters();
        l.split_first().map(|(&h, rest)| (h, Word::new(rest)))
    }

    /// Split off the last letter; `None` for the unit.
    pub fn split_last(&self) -> Option<(Word, u8)> {
        let l = self.letters();
        l.split_last().map(|(&t, rest)| (Word::new(rest), t))
    }
}

impl std::fmt::Debug for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        write!(f, "x")?;
        for &l in self.letters() {
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// All words of the given multidegree, in descending deglex order (the order
/// used for pivot selection in the quotient engine).
pub fn words_of_degree(degree: &MultiDegree) -> Vec<Word> {
    let rank = degree.rank();
    let total = degree.total() as usize;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(total);
    let mut remaining = degree.0.clone();
    fn rec(
        rank: usize,
        total: usize,
        current: &mut Vec<u8>,
        remaining: &mut Vec<u32>,
        out: &mut Vec<Word>,
    ) {
        if current.len() == total {
            out.push(Word::new(current));
            return;
        }
        // descending letter order produces descending lexicographic output
        for i in (0..rank).rev() {
            if remaining[i] > 0 {
                remaining[i] -= 1;
                current.push((i + 1) as u8);
                rec(rank, total, current, remaining, out);
                current.pop();
                remaining[i] += 1;
            }
        }
    }
    rec(rank, total, &mut current, &mut remaining, &mut out);
    out
}

/// Number of words of the given multidegree (a multinomial coefficient),
/// saturating at `usize::MAX`.
pub fn word_count(degree: &MultiDegree) -> usize {
    let mut count: u128 = 1;
    let mut placed: u128 = 0;
    for &b in &degree.0 {
        for k in 1..=(b as u128) {
            placed += 1;
            count = count.saturating_mul(placed) / k;
            if count > usize::MAX as u128 {
                return usize::MAX;
            }
        }
    }
    count as usize
}
