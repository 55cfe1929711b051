use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Atom, Formula};

/// Relative weights of node kinds, in tenths of a percent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleWeights {
    pub literal: u32,
    pub and: u32,
    pub or: u32,
    pub until: u32,
    pub release: u32,
    pub next: u32,
}

impl Default for SampleWeights {
    fn default() -> Self {
        SampleWeights {
            literal: 400,
            and: 125,
            or: 125,
            until: 125,
            release: 125,
            next: 100,
        }
    }
}

#[derive(Clone, Copy)]
enum Kind {
    Literal,
    And,
    Or,
    Until,
    Release,
    Next,
}

/// Deterministic random NNF formulas.
///
/// Size counts printed nodes: a negative literal `!a` is two nodes, so the
/// only formulas of size 1 are positive atoms.
pub struct Sampler {
    rng: ChaCha8Rng,
    weights: SampleWeights,
    ap: Vec<String>,
}

impl Sampler {
    pub fn new(seed: u64, ap_count: usize) -> Self {
        Self::with_weights(seed, ap_count, SampleWeights::default())
    }

    pub fn with_weights(seed: u64, ap_count: usize, weights: SampleWeights) -> Self {
        assert!(ap_count >= 1, "need at least one proposition");
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            weights,
            ap: proposition_names(ap_count),
        }
    }

    /// One formula with at most `max_size` nodes, atoms tagged left to right.
    pub fn formula(&mut self, max_size: usize) -> Formula {
        assert!(max_size >= 1);
        self.grow(max_size).0.retag_occurrences()
    }

    fn pick(&mut self, budget: usize) -> Kind {
        let w = self.weights;
        let mut options = vec![(Kind::Literal, w.literal)];
        if budget >= 2 {
            options.push((Kind::Next, w.next));
        }
        if budget >= 3 {
            options.extend([
                (Kind::And, w.and),
                (Kind::Or, w.or),
                (Kind::Until, w.until),
                (Kind::Release, w.release),
            ]);
        }
        let total: u32 = options.iter().map(|(_, w)| w).sum();
        let mut roll = self.rng.random_range(0..total.max(1));
        for (kind, weight) in options {
            if roll < weight {
                return kind;
            }
            roll -= weight;
        }
        Kind::Literal
    }

    /// Returns the formula and its size.
    fn grow(&mut self, budget: usize) -> (Formula, usize) {
        match self.pick(budget) {
            Kind::Literal => {
                let name = self.ap[self.rng.random_range(0..self.ap.len())].clone();
                let positive = budget < 2 || self.rng.random_bool(0.5);
                let size = if positive { 1 } else { 2 };
                (Formula::literal(Atom::new(name, 0), positive), size)
            }
            Kind::Next => {
                let (f, n) = self.grow(budget - 1);
                (Formula::next(f), n + 1)
            }
            kind => {
                let left_budget = self.rng.random_range(1..=budget - 2);
                let (l, ln) = self.grow(left_budget);
                let (r, rn) = self.grow(budget - 1 - ln);
                let f = match kind {
                    Kind::And => Formula::and(l, r),
                    Kind::Or => Formula::or(l, r),
                    Kind::Until => Formula::until(l, r),
                    _ => Formula::release(l, r),
                };
                (f, ln + rn + 1)
            }
        }
    }
}

/// `a`, `b`, ... for small alphabets, `p0`, `p1`, ... beyond 26.
pub fn proposition_names(count: usize) -> Vec<String> {
    if count <= 26 {
        (0..count)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        (0..count).map(|i| format!("p{i}")).collect()
    }
}

pub fn sample_formulas(seed: u64, count: usize, max_size: usize, ap_count: usize) -> Vec<Formula> {
    let mut s = Sampler::new(seed, ap_count);
    (0..count).map(|_| s.formula(max_size)).collect()
}
