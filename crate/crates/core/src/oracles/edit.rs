use crate::error::Result;

use super::Word;

/// Length of the longest common subsequence.
pub fn lcs(a: &Word, b: &Word) -> Result<usize> {
    a.ensure_same_alphabet(b)?;
    Ok(lcs_len(a.symbols(), b.symbols()))
}

pub(crate) fn lcs_len(a: &[u16], b: &[u16]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for &x in a {
        for (j, &y) in b.iter().enumerate() {
            cur[j + 1] = if x == y {
                prev[j] + 1
            } else {
                cur[j].max(prev[j + 1])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Whether `w` is obtainable from `x` by at most `max_del` deletions and at
/// most `max_ins` insertions.
///
/// With `l = lcs(x, w)` the cheapest route deletes `|x| - l` symbols and
/// inserts `|w| - l`, and no route uses fewer of either.
pub fn reachable(x: &Word, w: &Word, max_del: usize, max_ins: usize) -> Result<bool> {
    x.ensure_same_alphabet(w)?;
    Ok(reachable_raw(x.symbols(), w.symbols(), max_del, max_ins))
}

pub(crate) fn reachable_raw(x: &[u16], w: &[u16], max_del: usize, max_ins: usize) -> bool {
    if w.len() + max_del < x.len() || w.len() > x.len() + max_ins {
        return false;
    }
    let l = lcs_len(x, w);
    x.len() - l <= max_del && w.len() - l <= max_ins
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::AlphabetSize;
    use proptest::prelude::*;

    fn w(s: &str, q: u32) -> Word {
        Word::parse(s, AlphabetSize::new(q).unwrap()).unwrap()
    }

    #[test]
    fn lcs_examples() {
        assert_eq!(lcs(&w("0101", 2), &w("11", 2)).unwrap(), 2);
        assert_eq!(lcs(&w("0110", 2), &w("0110", 2)).unwrap(), 4);
        assert_eq!(lcs(&w("012", 3), &w("210", 3)).unwrap(), 1);
        assert_eq!(lcs(&w("", 3), &w("210", 3)).unwrap(), 0);
        assert!(lcs(&w("01", 2), &w("01", 3)).is_err());
    }

    #[test]
    fn reach_examples() {
        let x = w("0110", 2);
        assert!(reachable(&x, &x, 0, 0).unwrap());
        assert!(reachable(&w("000", 2), &w("00", 2), 1, 0).unwrap());
        assert!(!reachable(&w("111", 2), &w("00", 2), 1, 0).unwrap());
        assert!(reachable(&w("01", 2), &w("10", 2), 1, 1).unwrap());
        assert!(!reachable(&w("01", 2), &w("10", 2), 1, 0).unwrap());
    }

    fn word_strategy() -> impl Strategy<Value = Vec<u16>> {
        prop::collection::vec(0u16..3, 0..7)
    }

    proptest! {
        #[test]
        fn reach_is_monotone(x in word_strategy(), y in word_strategy(), d in 0usize..4, i in 0usize..4) {
            if reachable_raw(&x, &y, d, i) {
                prop_assert!(reachable_raw(&x, &y, d + 1, i));
                prop_assert!(reachable_raw(&x, &y, d, i + 1));
            }
        }

        #[test]
        fn lcs_is_symmetric_and_bounded(x in word_strategy(), y in word_strategy()) {
            let l = lcs_len(&x, &y);
            prop_assert_eq!(l, lcs_len(&y, &x));
            prop_assert!(l <= x.len().min(y.len()));
        }
    }
}
