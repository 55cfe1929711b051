//! Oracle checks behind `--verify`.

use std::sync::Arc;

use ltl2nba::{
    accepts_lasso, enumerate_lassos, eval_lasso, expansion_set, is_empty, product, translate,
    Bounds, Construction, Emptiness, Formula, LassoWord, Mode, Options, TranslateError,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::json::SCHEMA_VERSION;

/// Counterexamples kept per formula.
const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct GridConfig {
    pub max_stem: usize,
    pub max_loop: usize,
}

#[derive(Serialize)]
pub struct Report {
    pub version: u32,
    pub mode: Mode,
    pub grid: GridConfig,
    pub formulas: Vec<FormulaReport>,
    pub summary: Summary,
}

#[derive(Serialize)]
pub struct Summary {
    pub formulas: usize,
    pub passed: usize,
    pub failed: usize,
    /// Formulas the requested construction does not apply to.
    pub skipped: usize,
}

#[derive(Serialize)]
pub struct FormulaReport {
    pub formula: String,
    pub construction: Option<Construction>,
    /// Set when the formula was skipped.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Checks>,
}

#[derive(Serialize)]
pub struct Checks {
    pub oracle: OracleCheck,
    pub complement: ComplementCheck,
    pub bounds: BoundsCheck,
}

#[derive(Serialize)]
pub struct OracleCheck {
    pub pass: bool,
    pub lassos: usize,
    pub mismatches: usize,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Serialize)]
pub struct Counterexample {
    pub lasso: LassoWord,
    /// Truth of the formula on the lasso; the automaton said the opposite.
    pub expected: bool,
}

#[derive(Serialize)]
pub struct ComplementCheck {
    pub pass: bool,
    /// A word accepted by both the automaton and its complement.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<LassoWord>,
}

#[derive(Serialize)]
pub struct BoundsCheck {
    pub pass: bool,
    pub n: usize,
    pub expansion_set: usize,
    pub special_bound: u128,
    pub general_bound: u128,
    pub states: usize,
}

pub fn verify_one(
    f: &Formula,
    ap: &[Arc<str>],
    mode: Mode,
    opts: &Options,
    grid: GridConfig,
) -> FormulaReport {
    let t = match translate(f, mode, opts) {
        Ok(t) => t,
        Err(e @ TranslateError::ModeMismatch { .. }) => {
            return FormulaReport {
                formula: f.to_string(),
                construction: None,
                error: Some(e.to_string()),
                pass: false,
                checks: None,
            }
        }
    };
    let a = &t.automaton;

    let mut mismatches = 0;
    let mut lassos = 0;
    let mut counterexamples = Vec::new();
    for w in enumerate_lassos(ap, grid.max_stem, grid.max_loop) {
        lassos += 1;
        let expected = eval_lasso(f, &w);
        if accepts_lasso(a, &w) != expected {
            mismatches += 1;
            if counterexamples.len() < MAX_COUNTEREXAMPLES {
                counterexamples.push(Counterexample { lasso: w, expected });
            }
        }
    }
    let oracle = OracleCheck {
        pass: mismatches == 0,
        lassos,
        mismatches,
        counterexamples,
    };

    // the negation of a release-free formula is until-free and vice versa
    let negated = translate(&f.negate(), Mode::Auto, opts)
        .expect("auto mode always applies")
        .automaton;
    let witness = match is_empty(&product(a, &negated)) {
        Emptiness::Empty => None,
        Emptiness::NonEmpty(w) => Some(w),
    };
    let complement = ComplementCheck {
        pass: witness.is_none(),
        witness,
    };

    let b = Bounds::of(f);
    let ef = expansion_set(f).len();
    let states = a.state_count();
    let bounds = BoundsCheck {
        pass: ef as u128 <= b.special && states as u128 <= b.for_construction(t.construction),
        n: b.n,
        expansion_set: ef,
        special_bound: b.special,
        general_bound: b.general,
        states,
    };

    FormulaReport {
        formula: f.to_string(),
        construction: Some(t.construction),
        error: None,
        pass: oracle.pass && complement.pass && bounds.pass,
        checks: Some(Checks {
            oracle,
            complement,
            bounds,
        }),
    }
}

pub fn verify(
    formulas: &[Formula],
    ap: &[Arc<str>],
    mode: Mode,
    opts: &Options,
    grid: GridConfig,
) -> Report {
    let formulas: Vec<FormulaReport> = formulas
        .par_iter()
        .map(|f| verify_one(f, ap, mode, opts, grid))
        .collect();
    let skipped = formulas.iter().filter(|r| r.error.is_some()).count();
    let passed = formulas.iter().filter(|r| r.pass).count();
    Report {
        version: SCHEMA_VERSION,
        mode,
        grid,
        summary: Summary {
            formulas: formulas.len(),
            passed,
            failed: formulas.len() - passed - skipped,
            skipped,
        },
        formulas,
    }
}
