//! Seeded Monte Carlo runs on uniformly random codes.
//!
//! Trial `i` draws from `ChaCha8Rng::seed_from_u64(seed)` switched to stream
//! `i`, so every trial is independent of scheduling and the report is a pure
//! function of the configuration, whether trials run serially or in parallel.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::AlphabetSize;
use crate::error::{Error, Result};
use crate::oracles::edit::reachable_raw;
use crate::oracles::word::count_words;
use crate::oracles::{error_budget, max_list_size, EnumerationCap, SmallCode, Word};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub q: AlphabetSize,
    pub n: usize,
    pub gamma: f64,
    pub delta: f64,
    pub rate_target: f64,
    /// The list size `L` a code must not exceed.
    pub list_cap: usize,
    pub trials: u32,
    pub seed: u64,
    /// When set, received words are sampled (this many per trial) instead of
    /// enumerated exhaustively.
    #[serde(default)]
    pub received_samples: Option<u64>,
}

impl McConfig {
    /// `q^ceil(rate_target n)`.
    pub fn code_size(&self) -> Result<u128> {
        if !(0.0..=1.0).contains(&self.rate_target) {
            return Err(Error::domain(format!(
                "rate target {} outside [0, 1]",
                self.rate_target
            )));
        }
        let k = (self.rate_target * self.n as f64 - 1e-9).ceil().max(0.0) as usize;
        Ok(count_words(self.q, k))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trial: u32,
    pub max_list_size: usize,
    pub witness: Option<Word>,
    pub words_examined: u64,
    pub violated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McReport {
    pub code_size: u64,
    pub max_del: usize,
    pub max_ins: usize,
    pub violations: u32,
    pub max_list_size: usize,
    pub words_examined: u64,
    pub trials: Vec<TrialReport>,
}

fn random_code(cfg: &McConfig, size: usize, rng: &mut ChaCha8Rng) -> Result<SmallCode> {
    let total = count_words(cfg.q, cfg.n);
    let total = usize::try_from(total).map_err(|_| Error::Budget {
        required: total,
        cap: usize::MAX as u128,
    })?;
    let mut picks = index::sample(rng, total, size).into_vec();
    picks.sort_unstable();
    let words = picks
        .into_iter()
        .map(|i| Word::from_index(cfg.q, cfg.n, i as u128))
        .collect();
    SmallCode::new(words)
}

/// Applies `dels` deletions then `ins` insertions at uniform positions.
fn corrupt(x: &Word, dels: usize, ins: usize, rng: &mut ChaCha8Rng) -> Vec<u16> {
    let mut s = x.symbols().to_vec();
    for _ in 0..dels.min(s.len()) {
        let i = rng.random_range(0..s.len());
        s.remove(i);
    }
    let q = x.q().get() as u16;
    for _ in 0..ins {
        let i = rng.random_range(0..=s.len());
        s.insert(i, rng.random_range(0..q));
    }
    s
}

fn run_trial(
    cfg: &McConfig,
    trial: u32,
    size: usize,
    max_del: usize,
    max_ins: usize,
    cap: EnumerationCap,
) -> Result<TrialReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(trial as u64);
    let code = random_code(cfg, size, &mut rng)?;
    let (max_list, witness, examined) = match cfg.received_samples {
        None => {
            let r = max_list_size(&code, max_del, max_ins, cap)?;
            (r.max_list_size, r.witness, r.words_examined)
        }
        Some(samples) => {
            let mut best: (usize, Option<Word>) = (0, None);
            for _ in 0..samples {
                let x = &code.codewords()[rng.random_range(0..code.len())];
                let dels = rng.random_range(0..=max_del);
                let ins = rng.random_range(0..=max_ins);
                let w = corrupt(x, dels, ins, &mut rng);
                let list = code
                    .codewords()
                    .iter()
                    .filter(|c| reachable_raw(c.symbols(), &w, max_del, max_ins))
                    .count();
                if list > best.0 {
                    best = (list, Some(Word::from_raw(cfg.q, w)));
                }
            }
            (best.0, best.1, samples)
        }
    };
    Ok(TrialReport {
        trial,
        max_list_size: max_list,
        witness,
        words_examined: examined,
        violated: max_list > cfg.list_cap,
    })
}

pub fn run_inner_bound_mc(cfg: &McConfig) -> Result<McReport> {
    run_inner_bound_mc_with_cap(cfg, EnumerationCap::from_env())
}

pub fn run_inner_bound_mc_with_cap(cfg: &McConfig, cap: EnumerationCap) -> Result<McReport> {
    if cfg.n == 0 {
        return Err(Error::domain("block length must be positive"));
    }
    let size = cfg.code_size()?;
    let total = count_words(cfg.q, cfg.n);
    if size > total {
        return Err(Error::domain(format!(
            "{size} codewords do not fit in {total} words"
        )));
    }
    cap.check(size)?;
    let max_del = error_budget(cfg.delta, cfg.n)?;
    let max_ins = error_budget(cfg.gamma, cfg.n)?;
    if max_del > cfg.n {
        return Err(Error::domain(format!(
            "deletion rate {} exceeds 1",
            cfg.delta
        )));
    }
    if cfg.received_samples.is_none() {
        cap.check(count_words(cfg.q, cfg.n + max_ins))?;
    }
    let size = size as usize;
    let trials = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, t, size, max_del, max_ins, cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(McReport {
        code_size: size as u64,
        max_del,
        max_ins,
        violations: trials.iter().filter(|t| t.violated).count() as u32,
        max_list_size: trials.iter().map(|t| t.max_list_size).max().unwrap_or(0),
        words_examined: trials.iter().map(|t| t.words_examined).sum(),
        trials,
    })
}
