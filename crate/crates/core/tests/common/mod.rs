#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use supeval::{validate_samples, SampleSet, ScoredSample};

/// Fixed-seed proptest configuration so every run draws the same cases.
pub fn seeded(cases: u32, seed: u64) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flags {
    None,
    All,
    Partial,
}

/// Raw draw for one sample: score, outlier label, correctness.
pub type Row = (f64, bool, bool);

pub fn rows(tie_heavy: bool, max: usize) -> BoxedStrategy<Vec<Row>> {
    let score: BoxedStrategy<f64> =
        if tie_heavy { (0..6i32).prop_map(f64::from).boxed() } else { (-1e3..1e3f64).boxed() };
    proptest::collection::vec((score, any::<bool>(), proptest::bool::weighted(0.8)), 2..=max).boxed()
}

/// Builds a valid set, forcing one inlier and one outlier. Ids are the row
/// index, so ties are broken in string order ("s10" < "s9").
pub fn build(rows: &[Row], flags: Flags) -> SampleSet {
    let samples = rows
        .iter()
        .enumerate()
        .map(|(i, &(score, outlier, correct))| {
            let is_outlier = match i {
                0 => false,
                1 => true,
                _ => outlier,
            };
            let prediction_correct = match flags {
                _ if is_outlier => None,
                Flags::None => None,
                Flags::All => Some(correct),
                Flags::Partial => (i != 0).then_some(correct),
            };
            ScoredSample { sample_id: format!("s{i}"), anomaly_score: score, is_outlier, prediction_correct }
        })
        .collect();
    validate_samples(samples).unwrap()
}

pub fn any_case(max: usize) -> impl Strategy<Value = (SampleSet, Flags, f64)> {
    let flags = prop_oneof![Just(Flags::None), Just(Flags::All), Just(Flags::Partial)];
    let baseline = prop_oneof![0.0..=1.0f64, Just(1.0), Just(0.5), Just(0.0)];
    (any::<bool>(), flags, baseline)
        .prop_flat_map(move |(tie_heavy, flags, b)| (rows(tie_heavy, max), Just(flags), Just(b)))
        .prop_map(|(rows, flags, b)| (build(&rows, flags), flags, b))
}

/// Deterministic instance `seed`: about half tie-heavy, every inlier flagged.
/// Scores are multiples of 1/8 so simple transforms stay exact.
pub fn instance(seed: u64, max: usize) -> SampleSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=max);
    let levels = if rng.random::<bool>() { 6 } else { 4000 };
    let rows: Vec<Row> = (0..n)
        .map(|_| {
            let outlier = rng.random::<bool>();
            let level = rng.random_range(0..levels) + if outlier { levels / 4 } else { 0 };
            (f64::from(level) / 8.0, outlier, rng.random::<f64>() < 0.8)
        })
        .collect();
    build(&rows, Flags::All)
}

pub fn relabel(set: &SampleSet, f: impl Fn(&ScoredSample) -> ScoredSample) -> SampleSet {
    validate_samples(set.samples().iter().map(f).collect()).unwrap()
}
