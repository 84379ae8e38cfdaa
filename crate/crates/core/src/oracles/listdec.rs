//! Brute-force list-decoding checks for small codes.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

use super::ball::{enumerate_ball, BallSpec, LengthMode};
use super::edit::reachable_raw;
use super::word::{all_words_of_length as all_words, count_words};
use super::{EnumerationCap, SmallCode, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Ok,
    Violated { witness: Word, codewords: Vec<Word> },
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }
}

/// `floor(rate * n)`, tolerant of rates like 1/3 that miss in binary.
pub fn error_budget(rate: f64, n: usize) -> Result<usize> {
    if rate.is_nan() || rate < 0.0 || rate.is_infinite() {
        return Err(Error::domain(format!(
            "error rate {rate} must be nonnegative"
        )));
    }
    Ok((rate * n as f64 + 1e-9).floor() as usize)
}

/// Checks `|D(w)| <= list_cap` for every word `w` of length between
/// `n - floor(delta n)` and `n + floor(gamma n)`.
///
/// Words are scanned by increasing length, lexicographically within a length;
/// the first word with too many preimages is the witness.
pub fn check_list_decodable(
    code: &SmallCode,
    gamma: f64,
    delta: f64,
    list_cap: usize,
    cap: EnumerationCap,
) -> Result<Verdict> {
    let n = code.block_length();
    let max_del = error_budget(delta, n)?.min(n);
    let max_ins = error_budget(gamma, n)?;
    check_with_budgets(code, max_del, max_ins, list_cap, cap)
}

pub fn check_with_budgets(
    code: &SmallCode,
    max_del: usize,
    max_ins: usize,
    list_cap: usize,
    cap: EnumerationCap,
) -> Result<Verdict> {
    let n = code.block_length();
    if max_del > n {
        return Err(Error::domain(format!(
            "{max_del} deletions exceed block length {n}"
        )));
    }
    if list_cap >= code.len() {
        return Ok(Verdict::Ok);
    }
    let lengths = n - max_del..=n + max_ins;
    let budget = lengths
        .clone()
        .map(|len| count_words(code.q(), len))
        .fold(0u128, u128::saturating_add);
    cap.check(budget)?;
    for len in lengths {
        for w in all_words(code.q(), len) {
            let hits: Vec<&Word> = code
                .codewords()
                .iter()
                .filter(|x| reachable_raw(x.symbols(), w.symbols(), max_del, max_ins))
                .collect();
            if hits.len() > list_cap {
                return Ok(Verdict::Violated {
                    witness: w,
                    codewords: hits.into_iter().cloned().collect(),
                });
            }
        }
    }
    Ok(Verdict::Ok)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ListSizeReport {
    pub max_list_size: usize,
    /// A received word attaining the maximum (the smallest such word).
    pub witness: Option<Word>,
    /// Distinct received words reachable from some codeword.
    pub words_examined: u64,
}

/// Largest list over all received words, via the union of the codewords'
/// edit balls. Only words that some codeword reaches can have nonempty lists,
/// so this visits far fewer words than a full scan.
pub fn max_list_size(
    code: &SmallCode,
    max_del: usize,
    max_ins: usize,
    cap: EnumerationCap,
) -> Result<ListSizeReport> {
    let mut counts: HashMap<Word, usize> = HashMap::new();
    for x in code.codewords() {
        let spec = BallSpec::new(x.clone(), max_ins, max_del, LengthMode::AllLengths);
        for w in enumerate_ball(&spec, cap)? {
            *counts.entry(w).or_default() += 1;
        }
    }
    let best = counts
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)));
    Ok(ListSizeReport {
        max_list_size: best.map_or(0, |(_, &c)| c),
        witness: best.map(|(w, _)| w.clone()),
        words_examined: counts.len() as u64,
    })
}
