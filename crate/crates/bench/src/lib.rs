//! Shared inputs for the benchmarks.

use ltl2nba::{parse, sample_formulas, Formula};

/// Hand-picked formulas, named for the benchmark ids.
pub const FIXED: &[(&str, &str)] = &[
    ("until", "a U b"),
    ("always-two-untils", "G(b U c & d U e)"),
    ("response", "G(a -> F b)"),
    ("fairness", "G F a -> G F b"),
    ("nested", "(a U (b R (c U d))) & G(X a | F c)"),
];

pub fn fixed() -> Vec<(&'static str, Formula)> {
    FIXED
        .iter()
        .map(|(name, text)| (*name, parse(text).expect("bench formula parses")))
        .collect()
}

/// A reproducible batch of random formulas.
pub fn batch(count: usize, max_size: usize, ap: usize) -> Vec<Formula> {
    sample_formulas(0xbe4c, count, max_size, ap)
}
