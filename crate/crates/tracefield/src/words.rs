//! Reduced words over a generating set and their matrix products,
//! enumerated lazily in shortlex order.
//!
//! Letters are (generator index, exponent) with exponent +1 or -1, ordered
//! g0 < g0^-1 < g1 < g1^-1 < ...; words are ordered by length, then
//! lexicographically. Products are built incrementally along the prefix
//! tree, so each new word costs one matrix multiplication.

use crate::error::Result;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// A reduced word: no letter is followed by its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<(usize, i8)>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: vec![] }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends a letter, reducing a trailing inverse pair if one forms.
    pub fn push_reduced(&mut self, gen: usize, exp: i8) {
        debug_assert!(exp == 1 || exp == -1);
        if let Some(&(g, e)) = self.letters.last() {
            if g == gen && e == -exp {
                self.letters.pop();
                return;
            }
        }
        self.letters.push((gen, exp));
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|&(g, e)| (g, -e))
                .collect(),
        }
    }

    /// Evaluates the word on concrete generators.
    pub fn evaluate<T: Scalar>(&self, gens: &[Matrix<T>]) -> Result<Matrix<T>> {
        let n = gens.first().map(|m| m.n()).unwrap_or(3);
        let sample = gens
            .first()
            .map(|m| m.sample().clone())
            .expect("empty generator list");
        let mut acc = Matrix::identity_like(&sample, n);
        for &(g, e) in &self.letters {
            let m = if e == 1 {
                gens[g].clone()
            } else {
                gens[g].inverse()?
            };
            acc = acc.mul(&m);
        }
        Ok(acc)
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, &(g, e)) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, ".")?;
            }
            if e == 1 {
                write!(f, "g{g}")?;
            } else {
                write!(f, "g{g}'")?;
            }
        }
        Ok(())
    }
}

/// Lazy shortlex stream of (word, matrix) pairs for all nonempty reduced
/// words up to `max_len`. Use [`with_empty`] to prepend the identity.
pub struct WordStream<T> {
    /// The most recently generated level; starts as [empty word], which is
    /// never emitted.
    level: Vec<(Word, Matrix<T>)>,
    pos: usize,
    len: usize,
    max_len: usize,
    emitting: bool,
    gens: Vec<Matrix<T>>,
    inverses: Vec<Matrix<T>>,
}

/// All nonempty reduced words of length at most `max_len`, shortlex order.
pub fn enumerate_words<T: Scalar>(
    gens: &[Matrix<T>],
    max_len: usize,
) -> Result<WordStream<T>> {
    assert!(!gens.is_empty(), "need at least one generator");
    let inverses: Result<Vec<_>> = gens.iter().map(|g| g.inverse()).collect();
    let sample = gens[0].sample().clone();
    let id = Matrix::identity_like(&sample, gens[0].n());
    Ok(WordStream {
        level: vec![(Word::empty(), id)],
        pos: 0,
        len: 0,
        max_len,
        emitting: false,
        gens: gens.to_vec(),
        inverses: inverses?,
    })
}

/// The identity (empty word) followed by `enumerate_words`.
pub fn with_empty<T: Scalar>(
    gens: &[Matrix<T>],
    max_len: usize,
) -> Result<Vec<(Word, Matrix<T>)>> {
    let sample = gens[0].sample().clone();
    let id = Matrix::identity_like(&sample, gens[0].n());
    let mut out = vec![(Word::empty(), id)];
    out.extend(enumerate_words(gens, max_len)?);
    Ok(out)
}

impl<T: Scalar> Iterator for WordStream<T> {
    type Item = (Word, Matrix<T>);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if self.emitting && self.pos < self.level.len() {
                let item = self.level[self.pos].clone();
                self.pos += 1;
                return Some(item);
            }
            if self.len >= self.max_len {
                return None;
            }
            // grow the next level from the current one
            self.len += 1;
            let mut next = Vec::with_capacity(self.level.len() * 2 * self.gens.len());
            for (w, m) in &self.level {
                for g in 0..self.gens.len() {
                    for (e, mat) in [(1i8, &self.gens[g]), (-1i8, &self.inverses[g])] {
                        if let Some(&(lg, le)) = w.letters.last() {
                            if lg == g && le == -e {
                                continue; // would not be reduced
                            }
                        }
                        let mut nw = w.clone();
                        nw.letters.push((g, e));
                        next.push((nw, m.mul(mat)));
                    }
                }
            }
            self.level = next;
            self.pos = 0;
            self.emitting = true;
        }
    }
}
