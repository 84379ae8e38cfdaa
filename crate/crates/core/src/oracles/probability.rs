//! Probability that a uniformly random word contains a fixed subsequence.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::Word;

fn check_length(y: &Word, m: usize) -> Result<()> {
    if m < y.len() {
        return Err(Error::domain(format!(
            "length {m} is shorter than the pattern ({})",
            y.len()
        )));
    }
    Ok(())
}

/// Forward DP over "longest matched prefix of `y`" states.
pub fn containment_probability_dp(y: &Word, m: usize) -> Result<BigRational> {
    check_length(y, m)?;
    let k = y.len();
    let q = BigInt::from(y.q().get());
    let hit = BigRational::new(BigInt::one(), q.clone());
    let miss = BigRational::new(q.clone() - 1, q);
    let mut state = vec![BigRational::zero(); k + 1];
    state[0] = BigRational::one();
    for _ in 0..m {
        let mut next = vec![BigRational::zero(); k + 1];
        next[k] = state[k].clone();
        for j in 0..k {
            if state[j].is_zero() {
                continue;
            }
            next[j + 1] += &state[j] * &hit;
            next[j] += &state[j] * &miss;
        }
        state = next;
    }
    Ok(state.swap_remove(k))
}

/// Sum over the positions `a_1 < .. < a_k` of the leftmost occurrence of
/// `y`: each tuple has probability `q^-k (1 - 1/q)^(a_k - k)`, and whatever
/// follows `a_k` is free.
pub fn containment_probability_leftmost(y: &Word, m: usize) -> Result<BigRational> {
    check_length(y, m)?;
    let k = y.len();
    if k == 0 {
        return Ok(BigRational::one());
    }
    let q = BigInt::from(y.q().get());
    let hit = BigRational::new(BigInt::one(), q.clone()).pow(k as i32);
    let miss = BigRational::new(q.clone() - 1, q);
    let miss_powers: Vec<BigRational> = (0..=m - k).map(|e| miss.clone().pow(e as i32)).collect();
    let mut total = BigRational::zero();
    for positions in (1..=m).combinations(k) {
        let last = *positions.last().expect("k > 0");
        total += &miss_powers[last - k];
    }
    Ok(total * hit)
}

/// Exact containment probability; both computations must agree.
pub fn containment_probability(y: &Word, m: usize) -> Result<BigRational> {
    let dp = containment_probability_dp(y, m)?;
    let sum = containment_probability_leftmost(y, m)?;
    if dp != sum {
        return Err(Error::OracleDisagreement(format!(
            "containment of {y} in length {m}: dp {dp} vs leftmost sum {sum}"
        )));
    }
    Ok(dp)
}
