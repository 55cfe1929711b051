//! JSON rendering of a translation.

use ltl2nba::{Bounds, Construction, Formula, Stats, Translation};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct AutomatonDoc {
    pub version: u32,
    pub formula: String,
    pub construction: Construction,
    pub ap: Vec<String>,
    pub initial: usize,
    pub stats: Stats,
    pub bounds: Bounds,
    pub states: Vec<StateDoc>,
}

#[derive(Serialize)]
pub struct StateDoc {
    pub id: usize,
    pub formula: String,
    pub process: Vec<String>,
    pub pending: bool,
    pub accepting: bool,
    pub transitions: Vec<EdgeDoc>,
}

#[derive(Serialize)]
pub struct EdgeDoc {
    /// Conjunction of literals; empty means `True`.
    pub label: Vec<String>,
    pub target: usize,
}

pub fn automaton(f: &Formula, t: &Translation) -> AutomatonDoc {
    let a = &t.automaton;
    let states = a
        .states()
        .iter()
        .enumerate()
        .map(|(id, s)| StateDoc {
            id,
            formula: s.formula.to_string(),
            process: s.process.erased().iter().map(|l| l.to_string()).collect(),
            pending: s.pending,
            accepting: a.is_accepting(id),
            transitions: a
                .transitions(id)
                .iter()
                .map(|e| EdgeDoc {
                    label: e.label.erased().iter().map(|l| l.to_string()).collect(),
                    target: e.target,
                })
                .collect(),
        })
        .collect();
    AutomatonDoc {
        version: SCHEMA_VERSION,
        formula: f.to_string(),
        construction: t.construction,
        ap: a.ap().iter().map(|p| p.to_string()).collect(),
        initial: a.initial(),
        stats: a.stats(),
        bounds: Bounds::of(f),
        states,
    }
}
