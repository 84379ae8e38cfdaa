use insdel_bounds::experiments::evaluate_bound;
use insdel_bounds::optimizer::InterpolationSetup;
use insdel_bounds::oracles::all_words_of_length;
use insdel_bounds::{
    check_list_decodable, combined_outer_bound, deletion_only_piecewise_bound, enumerate_ball,
    f_value, inner_bound, insertion_only_bound, interpolated_bound_at_split,
    interpolated_outer_bound, linear_outer_bound, optimal_gamma0, q_ary_entropy, reachable,
    spoke_bound, AlphabetSize, BallSpec, BoundSource, EnumerationCap, LengthMode, SmallCode,
    SurfaceGrid, Word,
};
use num_bigint::BigUint;
use num_integer::binomial;
use proptest::prelude::*;

fn q(n: u32) -> AlphabetSize {
    AlphabetSize::new(n).unwrap()
}

const OUTER: [BoundSource; 3] = [
    BoundSource::LinearOuter,
    BoundSource::InterpolatedOuter,
    BoundSource::CombinedOuter,
];

#[test]
fn entropy_is_concave_with_peak_one() {
    for n in 2..=10 {
        let a = q(n);
        let xs: Vec<f64> = (0..=1000).map(|i| i as f64 / 1000.0).collect();
        let hs: Vec<f64> = xs.iter().map(|&x| q_ary_entropy(x, a).unwrap()).collect();
        for w in hs.windows(3) {
            assert!(w[0] + w[2] <= 2.0 * w[1] + 1e-12);
        }
        let peak = 1.0 - 1.0 / n as f64;
        assert!((q_ary_entropy(peak, a).unwrap() - 1.0).abs() <= 1e-12);
        assert!(hs.iter().all(|&h| h <= 1.0 + 1e-12));
    }
}

#[test]
fn spokes_meet_the_deletion_curve_at_breakpoints() {
    for n in 2..=16 {
        for d in 0..n {
            let s = spoke_bound(q(n), d, 0.0).unwrap();
            let p = deletion_only_piecewise_bound(q(n), d as f64 / n as f64).unwrap();
            assert_eq!(s.rate, p.rate, "q={n} d={d}");
        }
    }
}

#[test]
fn f_decreases_in_gamma() {
    for n in 2..=8 {
        let a = q(n);
        let qf = n as f64;
        for i in 0..20 {
            let delta = (1.0 - 1.0 / qf) * i as f64 / 20.0;
            let cap = (1.0 - delta) * (qf - qf * delta - 1.0);
            let vals: Vec<f64> = (0..=200)
                .map(|j| f_value(a, cap * j as f64 / 200.0, delta).unwrap())
                .collect();
            for w in vals.windows(2) {
                assert!(w[1] < w[0], "q={n} delta={delta}");
            }
        }
    }
}

#[test]
fn linear_bound_vanishes_exactly_off_the_interior() {
    for n in 2..=6 {
        let a = q(n);
        let qf = n as f64;
        for i in 0..=40 {
            let delta = i as f64 / 40.0;
            for j in 0..=40 {
                let gamma = (qf - 1.0) * j as f64 / 40.0;
                let rate = linear_outer_bound(a, gamma, delta).unwrap().rate;
                let edge = edge_gamma(n, delta);
                if delta >= 1.0 - 1.0 / qf || gamma >= edge + 1e-12 {
                    assert_eq!(rate, 0.0, "q={n} ({gamma}, {delta})");
                } else if gamma < edge - 1e-9 {
                    assert!(rate > 0.0, "q={n} ({gamma}, {delta})");
                }
            }
        }
    }
}

/// Outer edge of the resilience polygon at deletion rate `delta`.
fn edge_gamma(n: u32, delta: f64) -> f64 {
    let qf = n as f64;
    let t = (delta * qf).min(qf - 1.0);
    let k = t.floor().min(qf - 2.0);
    let i = qf - k;
    let w = t - k;
    (1.0 - w) * i * (i - 1.0) / qf + w * (i - 1.0) * (i - 2.0) / qf
}

#[test]
fn combined_zero_level_tracks_the_polygon() {
    for n in 2..=8 {
        let a = q(n);
        let m = n as f64 - 1.0;
        for k in 0..1000 {
            let delta = m / n as f64 * k as f64 / 999.0;
            let edge = edge_gamma(n, delta);
            let on = combined_outer_bound(a, edge.min(m), delta)
                .unwrap()
                .value
                .rate;
            assert!(on <= 1e-6, "q={n} delta={delta}: {on}");
            if edge > 1e-6 {
                let inside = combined_outer_bound(a, edge - 1e-6, delta)
                    .unwrap()
                    .value
                    .rate;
                assert!(inside > 0.0, "q={n} delta={delta}");
            }
        }
    }
}

#[test]
fn outer_surfaces_are_monotone_and_above_inner() {
    for n in 2..=8 {
        let a = q(n);
        let inner = SurfaceGrid::evaluate(a, BoundSource::Inner, 100).unwrap();
        for source in OUTER {
            let g = SurfaceGrid::evaluate(a, source, 100).unwrap();
            for i in 0..100 {
                for j in 0..100 {
                    let c = g.cell(i, j).rate;
                    assert!(
                        inner.cell(i, j).rate <= c + 1e-9,
                        "{source} q={n} ({i},{j})"
                    );
                    if j + 1 < 100 {
                        assert!(
                            g.cell(i, j + 1).rate <= c + 1e-9,
                            "{source} q={n} gamma step ({i},{j})"
                        );
                    }
                    if i + 1 < 100 {
                        assert!(
                            g.cell(i + 1, j).rate <= c + 1e-9,
                            "{source} q={n} delta step ({i},{j})"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn deletion_balls_depend_on_the_center() {
    let a = q(2);
    let size = |s: &str| {
        let spec = BallSpec::new(
            Word::parse(s, a).unwrap(),
            0,
            2,
            LengthMode::ExactFinalLength,
        );
        enumerate_ball(&spec, EnumerationCap::default())
            .unwrap()
            .len()
    };
    assert_ne!(size("0000"), size("0101"));
}

/// Exact-length ball of `n` symbols with `dn` deletions and `gn` insertions,
/// against the counting bound and the entropy exponent.
#[test]
fn insdel_ball_growth() {
    let a = q(2);
    let (gamma, delta) = (0.25, 0.25);
    let exponent = |n: usize| {
        let e = q_ary_entropy(delta, a).unwrap()
            + (1.0 - delta + gamma) * q_ary_entropy(gamma / (1.0 - delta + gamma), a).unwrap();
        e + (gamma * n as f64 + 1.0).log2() / n as f64
    };
    let mut previous = 0.0;
    for n in [4usize, 8, 12] {
        let (t_d, t_i) = (n / 4, n / 4);
        let center = Word::new(a, (0..n).map(|i| (i % 2) as u16).collect()).unwrap();
        let spec = BallSpec::new(center, t_i, t_d, LengthMode::ExactFinalLength);
        let size = enumerate_ball(&spec, EnumerationCap::default())
            .unwrap()
            .len();
        let len = n - t_d + t_i;
        let counted: BigUint = binomial(BigUint::from(n), BigUint::from(t_d))
            * (0..=t_i)
                .map(|i| binomial(BigUint::from(len), BigUint::from(i)))
                .sum::<BigUint>();
        assert!(BigUint::from(size) <= counted, "n={n}");
        let growth = (size as f64).log2() / n as f64;
        assert!(growth <= exponent(n), "n={n}: {growth} > {}", exponent(n));
        assert!(growth >= previous, "n={n}: growth fell");
        previous = growth;
    }
}

#[test]
fn ball_agrees_with_reachability_both_ways() {
    let a = q(2);
    let center = Word::parse("01101", a).unwrap();
    let spec = BallSpec::new(center.clone(), 2, 2, LengthMode::AllLengths);
    let ball = enumerate_ball(&spec, EnumerationCap::default()).unwrap();
    for len in 0..=8 {
        for w in all_words_of_length(a, len) {
            assert_eq!(
                ball.contains(&w),
                reachable(&center, &w, 2, 2).unwrap(),
                "{w}"
            );
        }
    }
}

fn point() -> impl Strategy<Value = (u32, f64, f64)> {
    (2u32..=9).prop_flat_map(|n| {
        let qf = n as f64;
        (Just(n), 0.0..=qf - 1.0, 0.0..=1.0 - 1.0 / qf)
    })
}

fn small_code() -> impl Strategy<Value = (u32, Vec<Vec<u16>>)> {
    (2u32..=3, 2usize..=5).prop_flat_map(|(n_q, n)| {
        let word = prop::collection::vec(0..n_q as u16, n);
        (Just(n_q), prop::collection::btree_set(word, 2..=4))
            .prop_map(|(n_q, set)| (n_q, set.into_iter().collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn insertion_only_is_the_delta_zero_slice(n in 2u32..=12, t in 0.0f64..=1.0) {
        let gamma = (n as f64 - 1.0) * t;
        let a = insertion_only_bound(q(n), gamma).unwrap().raw.unwrap();
        let f = f_value(q(n), gamma, 0.0).unwrap();
        prop_assert!((a - f).abs() <= 1e-12);
    }

    #[test]
    fn spoke_is_f_on_its_line(n in 3u32..=12, d_frac in 0.0f64..1.0, t in 0.0f64..=1.0) {
        let d = ((n - 1) as f64 * d_frac) as u32;
        let keep = 1.0 - d as f64 / n as f64;
        let zero = (n - d) as f64 - 1.0;
        let gp = zero * t;
        let s = spoke_bound(q(n), d, gp).unwrap().raw.unwrap();
        let f = f_value(q(n), gp * keep, d as f64 / n as f64).unwrap();
        prop_assert!((s - f).abs() <= 1e-12, "{s} vs {f}");
    }

    #[test]
    fn inner_never_exceeds_any_outer((n, gamma, delta) in point()) {
        let a = q(n);
        let inner = inner_bound(a, gamma, delta).unwrap().rate;
        for source in OUTER {
            let outer = evaluate_bound(source, a, gamma, delta).unwrap().rate;
            prop_assert!(inner <= outer + 1e-9, "{source}: {inner} > {outer}");
        }
        let ins = insertion_only_bound(a, gamma).unwrap().rate;
        prop_assert!(inner_bound(a, gamma, 0.0).unwrap().rate <= ins + 1e-9);
        let del = deletion_only_piecewise_bound(a, delta).unwrap().rate;
        prop_assert!(inner_bound(a, 0.0, delta).unwrap().rate <= del + 1e-9);
    }

    #[test]
    fn any_split_is_no_better_than_the_optimum((n, gamma, delta) in point(), t in 0.0f64..=1.0) {
        let a = q(n);
        let setup = InterpolationSetup::new(a, delta).unwrap();
        prop_assume!(setup.n1_weight > 0.0);
        let best = interpolated_outer_bound(a, gamma, delta).unwrap().raw.unwrap();
        // gamma0 spans every split that keeps gamma1 >= 0
        let hi = gamma / setup.n0_weight;
        match interpolated_bound_at_split(a, gamma, delta, hi * t) {
            Ok(v) => prop_assert!(v >= best - 1e-12, "split {v} < optimum {best}"),
            Err(insdel_bounds::Error::DegenerateSpoke { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn optimized_bound_is_convex_between_spokes(
        n in 3u32..=8, d_frac in 0.0f64..1.0, ta in 0.0f64..=1.0, tb in 0.0f64..=1.0, lam in 0.0f64..=1.0,
    ) {
        let a = q(n);
        let qf = n as f64;
        let d = ((n - 2) as f64 * d_frac) as u32;
        let (da, db) = (d as f64 / qf, (d + 1) as f64 / qf);
        let ga = (1.0 - da) * ((n - d) as f64 - 1.0) * ta;
        let gb = (1.0 - db) * ((n - d - 1) as f64 - 1.0) * tb;
        let va = interpolated_outer_bound(a, ga, da).unwrap().rate;
        let vb = interpolated_outer_bound(a, gb, db).unwrap().rate;
        let mid = interpolated_outer_bound(a, lam * ga + (1.0 - lam) * gb, lam * da + (1.0 - lam) * db)
            .unwrap()
            .rate;
        prop_assert!(mid <= lam * va + (1.0 - lam) * vb + 1e-9);
    }

    #[test]
    fn stationarity_at_interior_optima((n, gamma, delta) in point()) {
        let split = optimal_gamma0(q(n), gamma, delta).unwrap();
        if split.method == insdel_bounds::Gamma0Method::StationaryRoot {
            let setup = InterpolationSetup::new(q(n), delta).unwrap();
            let r = insdel_bounds::optimizer::stationarity_residual(&setup, split.gamma0, split.gamma1);
            prop_assert!(r.abs() <= 1e-9);
        }
    }

    #[test]
    fn outer_bounds_are_monotone((n, gamma, delta) in point(), dg in 0.0f64..0.5, dd in 0.0f64..0.1) {
        let a = q(n);
        let g2 = (gamma + dg).min(n as f64 - 1.0);
        let d2 = (delta + dd).min(1.0 - 1.0 / n as f64);
        for source in OUTER {
            let base = evaluate_bound(source, a, gamma, delta).unwrap().rate;
            prop_assert!(evaluate_bound(source, a, g2, delta).unwrap().rate <= base + 1e-9);
            prop_assert!(evaluate_bound(source, a, gamma, d2).unwrap().rate <= base + 1e-9);
        }
    }

    #[test]
    fn verdicts_ignore_symbol_names(
        (n_q, words) in small_code(), shift in 0u16..3, gi in 0usize..3, di in 0usize..3, l in 1usize..=2,
    ) {
        let a = q(n_q);
        let code = SmallCode::new(words.into_iter().map(|w| Word::new(a, w).unwrap()).collect()).unwrap();
        // a cyclic shift is a permutation of the alphabet
        let perm: Vec<u16> = (0..n_q as u16).map(|s| (s + shift) % n_q as u16).collect();
        let (gamma, delta) = ([0.0, 0.2, 0.4][gi], [0.0, 0.2, 0.4][di]);
        let cap = EnumerationCap::default();
        let before = check_list_decodable(&code, gamma, delta, l, cap).unwrap();
        let after = check_list_decodable(&code.relabel(&perm), gamma, delta, l, cap).unwrap();
        prop_assert_eq!(before.is_ok(), after.is_ok());
    }
}
