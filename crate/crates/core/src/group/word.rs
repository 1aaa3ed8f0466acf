//! Words over the generators of a finitely presented group.

use std::fmt;

use crate::space::rose_edge_name;

/// One letter: a generator index with a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenLetter {
    pub gen: usize,
    pub inverse: bool,
}

impl GenLetter {
    pub fn new(gen: usize) -> GenLetter {
        GenLetter {
            gen,
            inverse: false,
        }
    }

    pub fn inv(gen: usize) -> GenLetter {
        GenLetter { gen, inverse: true }
    }

    pub fn inverted(self) -> GenLetter {
        GenLetter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn cancels(self, other: GenLetter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A word: a sequence of signed generator letters. No reduction is implied
/// by the type; [`Word::free_reduce`] produces the freely reduced form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word(pub Vec<GenLetter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn single(letter: GenLetter) -> Word {
        Word(vec![letter])
    }

    /// `gen` raised to `exp` (negative exponents invert).
    pub fn power(gen: usize, exp: i64) -> Word {
        let letter = if exp >= 0 {
            GenLetter::new(gen)
        } else {
            GenLetter::inv(gen)
        };
        Word(vec![letter; exp.unsigned_abs() as usize])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn inverted(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverted()).collect())
    }

    /// Cancels adjacent mutually inverse letters until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<GenLetter> = Vec::with_capacity(self.0.len());
        for &letter in &self.0 {
            match stack.last() {
                Some(&top) if top.cancels(letter) => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        Word(stack)
    }

    /// Freely reduces, then strips mutually inverse first/last letters.
    /// The result generates the same normal closure.
    pub fn cyclically_reduce(&self) -> Word {
        let mut w = self.free_reduce().0;
        while w.len() >= 2 && w[0].cancels(*w.last().unwrap()) {
            w.remove(0);
            w.pop();
        }
        Word(w)
    }

    /// The rotation starting at letter `k`.
    pub fn rotation(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return Word::empty();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// All rotations of the word and of its inverse, deduplicated.
    pub fn all_rotations_with_inverse(&self) -> Vec<Word> {
        let mut out = Vec::new();
        let inv = self.inverted();
        for k in 0..self.0.len().max(1) {
            for base in [self, &inv] {
                let rot = base.rotation(k);
                if !out.contains(&rot) {
                    out.push(rot);
                }
            }
        }
        out
    }

    /// True if the words are equal up to rotation, possibly after inverting.
    pub fn cyclically_equal(&self, other: &Word) -> bool {
        if self.0.len() != other.0.len() {
            return false;
        }
        self.all_rotations_with_inverse().contains(other)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Exponent sum per generator, for a group on `k` generators.
    pub fn exponent_sums(&self, k: usize) -> Vec<i64> {
        let mut sums = vec![0i64; k];
        for l in &self.0 {
            sums[l.gen] += if l.inverse { -1 } else { 1 };
        }
        sums
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let n = self.0.iter().map(|l| l.gen).max().unwrap_or(0) + 1;
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                let name = rose_edge_name(l.gen, n.clamp(2, 27));
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}
