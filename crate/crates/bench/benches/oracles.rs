use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use insdel_bounds::{
    containment_probability, enumerate_ball, lcs, AlphabetSize, BallSpec, EnumerationCap,
    LengthMode, Word,
};

fn oracles(c: &mut Criterion) {
    let q3 = AlphabetSize::new(3).unwrap();
    let a = Word::parse("012210120102", q3).unwrap();
    let b = Word::parse("210012021120", q3).unwrap();
    c.bench_function("lcs n=12", |bench| {
        bench.iter(|| lcs(black_box(&a), black_box(&b)))
    });

    let spec = BallSpec::new(
        Word::parse("012210", q3).unwrap(),
        2,
        1,
        LengthMode::AllLengths,
    );
    c.bench_function("ball q=3 n=6 +2 -1", |bench| {
        bench.iter(|| enumerate_ball(black_box(&spec), EnumerationCap::default()))
    });

    let y = Word::parse("01210", q3).unwrap();
    c.bench_function("containment |y|=5 m=9", |bench| {
        bench.iter(|| containment_probability(black_box(&y), 9))
    });
}

criterion_group!(benches, oracles);
criterion_main!(benches);
