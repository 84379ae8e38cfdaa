//! The adversary's alphabet-reduction deletion strategies.

use serde::Serialize;

use crate::error::{Error, Result};

use super::Word;

/// Removes the `d` least frequent symbols (smaller symbol first on ties)
/// and returns the survivors in increasing order.
fn reduce(q: u32, x: &[u16], d: u32) -> (Vec<u16>, Vec<u16>) {
    let mut freq = vec![0usize; q as usize];
    for &s in x {
        freq[s as usize] += 1;
    }
    let mut order: Vec<u16> = (0..q as u16).collect();
    order.sort_by_key(|&s| (freq[s as usize], s));
    let mut keep = vec![true; q as usize];
    for &s in &order[..d as usize] {
        keep[s as usize] = false;
    }
    let mut out: Vec<u16> = x.iter().copied().filter(|&s| keep[s as usize]).collect();
    // n - floor(nd/q) == ceil(n(1 - d/q))
    let target = x.len() - x.len() * d as usize / q as usize;
    out.truncate(target);
    let survivors = (0..q as u16).filter(|&s| keep[s as usize]).collect();
    (out, survivors)
}

/// Deletes every occurrence of the `d` least frequent symbols of `x`, then
/// truncates to `ceil(n(1 - d/q))` symbols.
pub fn alphabet_reduction(x: &Word, d: u32) -> Result<Word> {
    let q = x.q();
    if d >= q.get() {
        return Err(Error::domain(format!("cannot remove {d} of {q} symbols")));
    }
    Ok(Word::from_raw(q, reduce(q.get(), x.symbols(), d).0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoSegmentReduction {
    pub word: Word,
    /// Length of the first input segment, `ceil(alpha n)`.
    pub split: usize,
    /// Output length of the first segment.
    pub first_len: usize,
    pub sigma0: Vec<u16>,
    pub sigma1: Vec<u16>,
}

/// Reduces the first `ceil(alpha n)` symbols by `d` and the rest by `d + 1`.
pub fn two_segment_reduction(x: &Word, d: u32, alpha: f64) -> Result<TwoSegmentReduction> {
    let q = x.q();
    if d + 1 > q.get() {
        return Err(Error::domain(format!("d + 1 = {} exceeds q = {q}", d + 1)));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain(format!("alpha = {alpha} must lie in (0, 1]")));
    }
    let n = x.len();
    let split = ((alpha * n as f64 - 1e-9).ceil().max(0.0) as usize).min(n);
    let (head, tail) = x.symbols().split_at(split);
    let (mut out, sigma0) = reduce(q.get(), head, d);
    let first_len = out.len();
    let (rest, sigma1) = reduce(q.get(), tail, d + 1);
    out.extend(rest);
    Ok(TwoSegmentReduction {
        word: Word::from_raw(q, out),
        split,
        first_len,
        sigma0,
        sigma1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::AlphabetSize;
    use crate::oracles::word::all_words_of_length as all_words;
    use num_integer::binomial;
    use std::collections::HashSet;

    fn q(n: u32) -> AlphabetSize {
        AlphabetSize::new(n).unwrap()
    }

    #[test]
    fn examples() {
        let x = Word::parse("00011", q(2)).unwrap();
        assert_eq!(alphabet_reduction(&x, 0).unwrap(), x);
        assert_eq!(alphabet_reduction(&x, 1).unwrap().to_string(), "000");
        // ties remove the smaller symbol
        let t = Word::parse("0101", q(2)).unwrap();
        assert_eq!(alphabet_reduction(&t, 1).unwrap().to_string(), "11");
        // truncation when the removed symbols were rare
        let r = Word::parse("000000", q(3)).unwrap();
        assert_eq!(alphabet_reduction(&r, 1).unwrap().to_string(), "0000");
        assert!(alphabet_reduction(&x, 2).is_err());
    }

    #[test]
    fn full_alpha_matches_single_reduction() {
        for x in all_words(q(3), 6) {
            for d in 0..3 {
                let two = two_segment_reduction(&x, d, 1.0).unwrap();
                assert_eq!(two.word, alphabet_reduction(&x, d).unwrap());
            }
        }
    }

    #[test]
    fn reduced_words_have_exact_length_and_few_values() {
        for (nq, n) in [(2u32, 8usize), (3, 7), (4, 5)] {
            for d in 1..nq {
                let target = n - n * d as usize / nq as usize;
                let mut seen = HashSet::new();
                for x in all_words(q(nq), n) {
                    let y = alphabet_reduction(&x, d).unwrap();
                    assert_eq!(y.len(), target);
                    seen.insert(y);
                }
                let bound = binomial(nq as u64, d as u64) * ((nq - d) as u64).pow(target as u32);
                assert!(seen.len() as u64 <= bound);
            }
        }
    }

    #[test]
    fn two_segment_budget_and_count() {
        for n in 1..=8usize {
            for d in 0..2u32 {
                for alpha in [0.25, 0.5, 0.7] {
                    let mut seen = HashSet::new();
                    let mut shape = None;
                    for x in all_words(q(3), n) {
                        let r = two_segment_reduction(&x, d, alpha).unwrap();
                        let deleted = n - r.word.len();
                        let share = alpha * d as f64 / 3.0 + (1.0 - alpha) * (d + 1) as f64 / 3.0;
                        assert!(deleted <= (n as f64 * share).ceil() as usize + 2);
                        let lens = (r.first_len, r.word.len() - r.first_len);
                        assert!(shape.is_none() || shape == Some(lens));
                        shape = Some(lens);
                        seen.insert(r.word);
                    }
                    let (n0, n1) = shape.unwrap();
                    let bound = binomial(3u64, d as u64)
                        * binomial(3u64, d as u64 + 1)
                        * (3 - d as u64).pow(n0 as u32)
                        * (2 - d as u64).pow(n1 as u32);
                    assert!(seen.len() as u64 <= bound, "n={n} d={d} alpha={alpha}");
                }
            }
        }
    }
}
