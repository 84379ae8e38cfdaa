//! Explicit edit balls.
//!
//! A ball is built deletions first, then insertions. Any word reachable
//! within the budgets is reachable in that order, so the order does not
//! change the set.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::bounds::AlphabetSize;
use crate::error::{Error, Result};

use super::word::count_words;
use super::{EnumerationCap, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthMode {
    /// Only words of length `n - deletions + insertions`.
    ExactFinalLength,
    /// Every word within the budgets, of any length.
    AllLengths,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallSpec {
    pub center: Word,
    pub insertions: usize,
    pub deletions: usize,
    pub length_mode: LengthMode,
}

impl BallSpec {
    pub fn new(center: Word, insertions: usize, deletions: usize, length_mode: LengthMode) -> Self {
        BallSpec {
            center,
            insertions,
            deletions,
            length_mode,
        }
    }

    /// Words of the longest admissible length, the enumeration size guard.
    pub fn budget(&self) -> u128 {
        count_words(self.center.q(), self.center.len() + self.insertions)
    }
}

type Layer = HashSet<Vec<u16>>;

fn delete_one(layer: &Layer) -> Layer {
    let mut out = Layer::new();
    for w in layer {
        for i in 0..w.len() {
            // deleting inside a run gives the same word
            if i > 0 && w[i] == w[i - 1] {
                continue;
            }
            let mut v = Vec::with_capacity(w.len() - 1);
            v.extend_from_slice(&w[..i]);
            v.extend_from_slice(&w[i + 1..]);
            out.insert(v);
        }
    }
    out
}

fn insert_one(layer: &Layer, q: u16) -> Layer {
    let mut out = Layer::new();
    for w in layer {
        for pos in 0..=w.len() {
            for s in 0..q {
                let mut v = Vec::with_capacity(w.len() + 1);
                v.extend_from_slice(&w[..pos]);
                v.push(s);
                v.extend_from_slice(&w[pos..]);
                out.insert(v);
            }
        }
    }
    out
}

/// All words obtainable from the center within the ball's budgets.
pub fn enumerate_ball(spec: &BallSpec, cap: EnumerationCap) -> Result<BTreeSet<Word>> {
    let center = &spec.center;
    if spec.deletions > center.len() {
        return Err(Error::domain(format!(
            "{} deletions exceed center length {}",
            spec.deletions,
            center.len()
        )));
    }
    cap.check(spec.budget())?;
    let q = center.q();
    let qs = q.get() as u16;

    let mut layer: Layer = std::iter::once(center.symbols().to_vec()).collect();
    let mut deleted = layer.clone();
    for _ in 0..spec.deletions {
        layer = delete_one(&layer);
        deleted.extend(layer.iter().cloned());
    }

    let out: Layer = match spec.length_mode {
        LengthMode::ExactFinalLength => {
            for _ in 0..spec.insertions {
                layer = insert_one(&layer, qs);
            }
            layer
        }
        LengthMode::AllLengths => {
            let mut all = deleted.clone();
            let mut frontier = deleted;
            for _ in 0..spec.insertions {
                frontier = insert_one(&frontier, qs);
                all.extend(frontier.iter().cloned());
            }
            all
        }
    };
    Ok(out.into_iter().map(|s| Word::from_raw(q, s)).collect())
}

/// Number of supersequences of length exactly `n + t` of any fixed word of
/// length `n`: `sum_{i=0}^{t} C(n+t, i) (q-1)^i`.
pub fn supersequence_count_exact_length(n: usize, t: usize, q: AlphabetSize) -> BigUint {
    let total = BigUint::from(n + t);
    let base = BigUint::from(q.get() - 1);
    let mut power = BigUint::one();
    let mut sum = BigUint::zero();
    for i in 0..=t {
        sum += binomial(total.clone(), BigUint::from(i)) * &power;
        power *= &base;
    }
    sum
}
