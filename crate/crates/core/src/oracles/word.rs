use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bounds::AlphabetSize;
use crate::error::{Error, Result};

/// Environment variable overriding [`EnumerationCap::default`].
pub const CAP_ENV: &str = "INSDEL_ENUM_CAP";

/// Upper limit on the number of states a brute-force oracle may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCap(pub u128);

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap(10_000_000)
    }
}

impl EnumerationCap {
    /// Default cap, overridden by `INSDEL_ENUM_CAP` when it parses.
    pub fn from_env() -> Self {
        std::env::var(CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(EnumerationCap)
            .unwrap_or_default()
    }

    pub fn check(self, required: u128) -> Result<()> {
        if required > self.0 {
            Err(Error::Budget {
                required,
                cap: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// `q^len`, saturating at `u128::MAX`.
pub(crate) fn count_words(q: AlphabetSize, len: usize) -> u128 {
    (q.get() as u128)
        .checked_pow(len as u32)
        .unwrap_or(u128::MAX)
}

/// A string over `{0, .., q-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    q: AlphabetSize,
    symbols: Vec<u16>,
}

impl Word {
    pub fn new(q: AlphabetSize, symbols: Vec<u16>) -> Result<Self> {
        if q.get() > u16::MAX as u32 + 1 {
            return Err(Error::domain(format!(
                "alphabet size {q} too large for words"
            )));
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s as u32 >= q.get()) {
            return Err(Error::domain(format!(
                "symbol {bad} not in alphabet of size {q}"
            )));
        }
        Ok(Word { q, symbols })
    }

    pub(crate) fn from_raw(q: AlphabetSize, symbols: Vec<u16>) -> Self {
        debug_assert!(symbols.iter().all(|&s| (s as u32) < q.get()));
        Word { q, symbols }
    }

    /// Base-36 digits for `q <= 36`, comma-separated integers otherwise.
    pub fn parse(s: &str, q: AlphabetSize) -> Result<Self> {
        let s = s.trim();
        let symbols = if q.get() <= 36 {
            s.chars()
                .map(|c| {
                    c.to_digit(36)
                        .map(|v| v as u16)
                        .ok_or_else(|| Error::Parse(format!("`{c}` is not a base-36 symbol")))
                })
                .collect::<Result<Vec<_>>>()?
        } else if s.is_empty() {
            Vec::new()
        } else {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u16>()
                        .map_err(|e| Error::Parse(format!("`{t}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Word::new(q, symbols)
    }

    /// The `index`-th word of length `len` in lexicographic order.
    pub fn from_index(q: AlphabetSize, len: usize, mut index: u128) -> Self {
        let base = q.get() as u128;
        let mut symbols = vec![0u16; len];
        for slot in symbols.iter_mut().rev() {
            *slot = (index % base) as u16;
            index /= base;
        }
        Word { q, symbols }
    }

    pub fn q(&self) -> AlphabetSize {
        self.q
    }

    pub fn symbols(&self) -> &[u16] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Applies a symbol permutation `perm[s]`.
    pub fn relabel(&self, perm: &[u16]) -> Word {
        Word {
            q: self.q,
            symbols: self.symbols.iter().map(|&s| perm[s as usize]).collect(),
        }
    }

    pub(crate) fn ensure_same_alphabet(&self, other: &Word) -> Result<()> {
        if self.q != other.q {
            return Err(Error::AlphabetMismatch(self.q.get(), other.q.get()));
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.get() <= 36 {
            for &s in &self.symbols {
                let c = char::from_digit(s as u32, 36).expect("symbol below 36");
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

/// Every word of length `len`, in lexicographic order.
pub fn all_words_of_length(q: AlphabetSize, len: usize) -> impl Iterator<Item = Word> {
    let total = count_words(q, len);
    (0..total).map(move |i| Word::from_index(q, len, i))
}

/// A finite code: distinct words of a common length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallCode {
    q: AlphabetSize,
    n: usize,
    codewords: Vec<Word>,
}

impl SmallCode {
    pub fn new(codewords: Vec<Word>) -> Result<Self> {
        let first = codewords
            .first()
            .ok_or_else(|| Error::domain("a code needs a codeword"))?;
        let (q, n) = (first.q(), first.len());
        for w in &codewords {
            first.ensure_same_alphabet(w)?;
            if w.len() != n {
                return Err(Error::domain(format!(
                    "codeword {w} has length {} != {n}",
                    w.len()
                )));
            }
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = codewords.iter().find(|w| !seen.insert(*w)) {
            return Err(Error::domain(format!("duplicate codeword {dup}")));
        }
        Ok(SmallCode { q, n, codewords })
    }

    pub fn q(&self) -> AlphabetSize {
        self.q
    }

    pub fn block_length(&self) -> usize {
        self.n
    }

    pub fn codewords(&self) -> &[Word] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// `log_q |C| / n`.
    pub fn rate(&self) -> f64 {
        (self.codewords.len() as f64).ln() / self.q.as_f64().ln() / self.n as f64
    }

    pub fn relabel(&self, perm: &[u16]) -> SmallCode {
        SmallCode {
            q: self.q,
            n: self.n,
            codewords: self.codewords.iter().map(|w| w.relabel(perm)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: u32) -> AlphabetSize {
        AlphabetSize::new(n).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let w = Word::parse("0120", q(3)).unwrap();
        assert_eq!(w.symbols(), &[0, 1, 2, 0]);
        assert_eq!(w.to_string(), "0120");
        assert!(Word::parse("013", q(3)).is_err());
        assert!(Word::parse("0-1", q(3)).is_err());
        let big = Word::parse("3, 40,0", q(50)).unwrap();
        assert_eq!(big.symbols(), &[3, 40, 0]);
        assert_eq!(big.to_string(), "3,40,0");
        assert!(Word::parse("", q(50)).unwrap().is_empty());
        let hex = Word::parse("az", q(36)).unwrap();
        assert_eq!(hex.symbols(), &[10, 35]);
    }

    #[test]
    fn index_order_is_lexicographic() {
        let words: Vec<String> = all_words_of_length(q(2), 2)
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["00", "01", "10", "11"]);
    }

    #[test]
    fn code_validation() {
        let w = |s| Word::parse(s, q(2)).unwrap();
        assert!(SmallCode::new(vec![]).is_err());
        assert!(SmallCode::new(vec![w("00"), w("000")]).is_err());
        assert!(SmallCode::new(vec![w("01"), w("01")]).is_err());
        let c = SmallCode::new(vec![w("000"), w("111")]).unwrap();
        assert!((c.rate() - 1.0 / 3.0).abs() < 1e-15);
        let other = Word::parse("01", q(3)).unwrap();
        assert!(SmallCode::new(vec![w("00"), other]).is_err());
    }

    #[test]
    fn cap_checks() {
        let cap = EnumerationCap(10);
        assert!(cap.check(10).is_ok());
        assert!(matches!(
            cap.check(11),
            Err(Error::Budget {
                required: 11,
                cap: 10
            })
        ));
    }
}
