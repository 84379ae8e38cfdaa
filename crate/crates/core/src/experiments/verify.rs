//! A fast self-check over the invariants, for the `verify` subcommand.
//!
//! These are reduced-size versions of the acceptance suite: small grids and
//! small oracle instances, so the whole run takes a few seconds.

use num_bigint::BigUint;
use serde::Serialize;

use crate::bounds::{f_hessian, f_value, inner_bound, insertion_only_bound, AlphabetSize};
use crate::error::Result;
use crate::geometry::{linear_outer_bound, ResiliencePolygon};
use crate::optimizer::{
    combined_value, interpolated_outer_bound, optimal_gamma0, stationarity_residual, Gamma0Method,
    InterpolationSetup,
};
use crate::oracles::{
    all_words_of_length, check_list_decodable, containment_probability, enumerate_ball,
    supersequence_count_exact_length, BallSpec, EnumerationCap, LengthMode, SmallCode, Word,
};

use super::mc::{run_inner_bound_mc_with_cap, McConfig};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> Result<(bool, String)>;

const CHECKS: [(&str, Check); 10] = [
    ("insertion-only projection", insertion_projection),
    ("deletion-only projection", deletion_projection),
    ("zero level on the polygon", zero_level),
    ("linear bound spot value", linear_spot),
    ("supersequence count", supersequence_count),
    ("containment probability", containment),
    ("hessian certificate", hessian),
    ("optimal split", optimal_split),
    ("inner below outer", ordering),
    ("list decoding and monte carlo", list_decoding),
];

pub fn run_verify_suite() -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|&(name, check)| match check() {
            Ok((passed, detail)) => CheckOutcome {
                name,
                passed,
                detail,
            },
            Err(e) => CheckOutcome {
                name,
                passed: false,
                detail: e.to_string(),
            },
        })
        .collect()
}

fn alphabets(hi: u32) -> impl Iterator<Item = AlphabetSize> {
    (2..=hi).map(|q| AlphabetSize::new(q).expect("q >= 2"))
}

fn insertion_projection() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for q in alphabets(8) {
        for i in 0..=100 {
            let gamma = q.max_gamma() * i as f64 / 100.0;
            let a = combined_value(q, gamma, 0.0)?.rate;
            let b = insertion_only_bound(q, gamma)?.rate;
            worst = worst.max((a - b).abs());
        }
    }
    Ok((worst <= 1e-12, format!("max deviation {worst:.2e}")))
}

fn deletion_projection() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for q in alphabets(16) {
        let qf = q.as_f64();
        for d in 0..q.get() {
            let keep = 1.0 - d as f64 / qf;
            let expected = keep * (1.0 - q.log(qf / (qf - d as f64)));
            let got = combined_value(q, 0.0, d as f64 / qf)?.rate;
            worst = worst.max((got - expected.max(0.0)).abs());
        }
    }
    Ok((worst <= 1e-12, format!("max deviation {worst:.2e}")))
}

fn zero_level() -> Result<(bool, String)> {
    let mut worst_edge = 0.0f64;
    let mut min_inside = f64::INFINITY;
    for q in alphabets(6) {
        for (a, b) in ResiliencePolygon::new(q).outer_edges() {
            for i in 0..=50 {
                let t = i as f64 / 50.0;
                let (g, d) = (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1));
                worst_edge = worst_edge.max(interpolated_outer_bound(q, g, d)?.rate);
                min_inside = min_inside.min(interpolated_outer_bound(q, 0.99 * g, 0.99 * d)?.rate);
            }
        }
    }
    Ok((
        worst_edge <= 1e-6 && min_inside > 0.0,
        format!("max on edges {worst_edge:.2e}, min inside {min_inside:.2e}"),
    ))
}

fn linear_spot() -> Result<(bool, String)> {
    let v = linear_outer_bound(AlphabetSize::new(2)?, 0.25, 0.125)?;
    Ok((v.rate == 0.5, format!("rate {}", v.rate)))
}

fn supersequence_count() -> Result<(bool, String)> {
    let cap = EnumerationCap::default();
    let mut checked = 0;
    for q in alphabets(3) {
        for n in 0..=4 {
            for t in 0..=2 {
                let expected = supersequence_count_exact_length(n, t, q);
                for x in all_words_of_length(q, n) {
                    let spec = BallSpec::new(x, t, 0, LengthMode::ExactFinalLength);
                    if BigUint::from(enumerate_ball(&spec, cap)?.len()) != expected {
                        return Ok((false, format!("q={q} n={n} t={t}")));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok((true, format!("{checked} centers")))
}

fn containment() -> Result<(bool, String)> {
    let mut checked = 0;
    for q in alphabets(3) {
        for k in 0..=3 {
            for y in all_words_of_length(q, k) {
                for m in k..=6 {
                    // errors if the two routes disagree
                    containment_probability(&y, m)?;
                    checked += 1;
                }
            }
        }
    }
    Ok((true, format!("{checked} cases")))
}

fn hessian() -> Result<(bool, String)> {
    let h = 1e-5;
    let mut worst = 0.0f64;
    let mut psd = true;
    for q in alphabets(8) {
        for i in 1..10 {
            let delta = q.max_delta() * i as f64 / 10.0;
            let cap = (1.0 - delta) * (q.as_f64() * (1.0 - delta) - 1.0);
            for j in 1..10 {
                let gamma = cap * j as f64 / 10.0;
                let hs = f_hessian(q, gamma, delta)?;
                psd &= hs.is_psd(1e-9);
                let f = |g: f64, d: f64| f_value(q, g, d);
                let f0 = f(gamma, delta)?;
                let fd11 = (f(gamma + h, delta)? - 2.0 * f0 + f(gamma - h, delta)?) / (h * h);
                let rel = (fd11 - hs.h11).abs() / hs.h11.abs().max(1.0);
                worst = worst.max(rel);
            }
        }
    }
    Ok((
        worst <= 1e-4 && psd,
        format!("max relative error {worst:.2e}, psd {psd}"),
    ))
}

fn optimal_split() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let mut count = 0;
    for q in alphabets(8).skip(1) {
        for i in 1..8 {
            let delta = q.max_delta() * i as f64 / 8.0;
            let setup = InterpolationSetup::new(q, delta)?;
            for j in 1..6 {
                let gamma = setup.capacity() * j as f64 / 6.0;
                let split = optimal_gamma0(q, gamma, delta)?;
                if split.method == Gamma0Method::StationaryRoot {
                    worst =
                        worst.max(stationarity_residual(&setup, split.gamma0, split.gamma1).abs());
                    count += 1;
                }
            }
        }
    }
    Ok((
        worst <= 1e-9,
        format!("{count} interior optima, max residual {worst:.2e}"),
    ))
}

fn ordering() -> Result<(bool, String)> {
    let mut worst = f64::NEG_INFINITY;
    for q in alphabets(8) {
        for i in 0..=20 {
            let delta = q.max_delta() * i as f64 / 20.0;
            for j in 0..=20 {
                let gamma = q.max_gamma() * j as f64 / 20.0;
                let inner = inner_bound(q, gamma, delta)?.rate;
                let outer = interpolated_outer_bound(q, gamma, delta)?.rate;
                worst = worst.max(inner - outer);
            }
        }
    }
    Ok((worst <= 1e-9, format!("max inner - outer {worst:.2e}")))
}

fn list_decoding() -> Result<(bool, String)> {
    let q2 = AlphabetSize::new(2)?;
    let code = SmallCode::new(vec![Word::parse("000", q2)?, Word::parse("111", q2)?])?;
    let ok = check_list_decodable(&code, 0.0, 1.0 / 3.0, 1, EnumerationCap::default())?.is_ok();
    let rate = 0.5 * inner_bound(q2, 0.0, 0.25)?.rate;
    let cfg = McConfig {
        q: q2,
        n: 12,
        gamma: 0.0,
        delta: 0.25,
        rate_target: rate,
        list_cap: 8,
        trials: 4,
        seed: 1,
        received_samples: None,
    };
    let a = run_inner_bound_mc_with_cap(&cfg, EnumerationCap::default())?;
    let b = run_inner_bound_mc_with_cap(&cfg, EnumerationCap::default())?;
    let passed = ok && a == b && a.violations == 0;
    Ok((
        passed,
        format!("repetition code ok: {ok}, mc violations {}", a.violations),
    ))
}
