//! Obligation sets and finite-word satisfaction.
//!
//! An obligation is a set of literals whose repeated fulfilment witnesses
//! that a looping formula keeps being satisfied. [`sat_once`] is the
//! set-level satisfaction check; [`FiniteSat`] lifts it to finite words by
//! searching expansion paths and is only used to test the construction.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::expand::Expander;
use crate::formula::{Formula, Node, StateFormula};
use crate::literal::{Letter, Lit, LiteralSet};

/// A duplicate-free set of obligations.
pub type ObligationSet = BTreeSet<LiteralSet>;

pub fn obligation_set(f: &Formula) -> ObligationSet {
    match f.node() {
        Node::True => BTreeSet::from([LiteralSet::empty()]),
        Node::False => BTreeSet::new(),
        Node::Literal(l) => BTreeSet::from([LiteralSet::singleton(Lit::from(l))]),
        Node::Next(g) => obligation_set(g),
        Node::Or(l, r) => {
            let mut out = obligation_set(l);
            out.extend(obligation_set(r));
            out
        }
        Node::And(l, r) => pairwise_unions(&obligation_set(l), &obligation_set(r)),
        Node::Until(_, r) | Node::Release(_, r) => obligation_set(r),
    }
}

/// Obligation set of a conjunction of state conjuncts.
pub fn state_obligation_set(state: &StateFormula) -> ObligationSet {
    state
        .iter()
        .fold(BTreeSet::from([LiteralSet::empty()]), |acc, f| {
            pairwise_unions(&acc, &obligation_set(f))
        })
}

fn pairwise_unions(left: &ObligationSet, right: &ObligationSet) -> ObligationSet {
    let mut out = BTreeSet::new();
    for a in left {
        for b in right {
            out.insert(a.union(b));
        }
    }
    out
}

/// Drops every obligation that strictly contains another one.
pub fn minimize(os: &ObligationSet) -> ObligationSet {
    os.iter()
        .filter(|o| !os.iter().any(|p| p != *o && p.is_subset(o)))
        .cloned()
        .collect()
}

/// Literals mentioned by any obligation.
pub fn relevant_literals(os: &ObligationSet) -> LiteralSet {
    os.iter().fold(LiteralSet::empty(), |acc, o| acc.union(o))
}

/// Whether some obligation is contained in `seen`.
pub fn discharged(os: &ObligationSet, seen: &LiteralSet) -> bool {
    os.iter().any(|o| o.is_subset(seen))
}

/// `S ⊨_f f` for a set of fulfilled literals.
pub fn sat_once(set: &LiteralSet, f: &Formula) -> bool {
    match f.node() {
        Node::True => true,
        Node::False => false,
        Node::Literal(l) => set.contains(&Lit::from(l)),
        Node::Next(g) => sat_once(set, g),
        Node::And(l, r) => sat_once(set, l) && sat_once(set, r),
        Node::Or(l, r) => sat_once(set, l) || sat_once(set, r),
        Node::Until(_, r) | Node::Release(_, r) => sat_once(set, r),
    }
}

pub fn sat_once_state(set: &LiteralSet, state: &StateFormula) -> bool {
    state.iter().all(|f| sat_once(set, f))
}

/// Memoized obligation data per state formula.
#[derive(Default)]
pub struct ObligationCache {
    minimize: bool,
    table: HashMap<StateFormula, Arc<(ObligationSet, LiteralSet)>>,
}

impl ObligationCache {
    pub fn new(minimize: bool) -> Self {
        ObligationCache {
            minimize,
            table: HashMap::new(),
        }
    }

    /// The obligation set of `state` and the literals it mentions.
    pub fn get(&mut self, state: &StateFormula) -> Arc<(ObligationSet, LiteralSet)> {
        if let Some(e) = self.table.get(state) {
            return e.clone();
        }
        let mut os = state_obligation_set(state);
        if self.minimize {
            os = minimize(&os);
        }
        let relevant = relevant_literals(&os);
        let entry = Arc::new((os, relevant));
        self.table.insert(state.clone(), entry.clone());
        entry
    }
}

/// How `X g` is read by finite satisfaction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NextRule {
    /// `S ⊨_f X g` iff `S ⊨_f g` over the whole gathered set.
    #[default]
    PassThrough,
    /// `X g` is checked against the labels gathered from the next step on.
    Shift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("finite satisfaction search exceeded {0} paths")]
pub struct WidthExceeded(pub usize);

/// Finite-word satisfaction `η ⊨_f φ` by exhaustive path search.
#[derive(Clone, Copy, Debug)]
pub struct FiniteSat {
    pub max_width: usize,
    pub next_rule: NextRule,
}

impl Default for FiniteSat {
    fn default() -> Self {
        FiniteSat {
            max_width: 10_000,
            next_rule: NextRule::PassThrough,
        }
    }
}

impl FiniteSat {
    pub fn check(
        &self,
        expander: &mut Expander,
        word: &[Letter],
        state: &StateFormula,
    ) -> Result<bool, WidthExceeded> {
        match self.next_rule {
            NextRule::PassThrough => self.check_gathered(expander, word, state),
            NextRule::Shift => self.check_shifted(expander, word, state),
        }
    }

    // Paths that reach the same formula with the same gathered set are
    // interchangeable, so the frontier is a set.
    fn check_gathered(
        &self,
        expander: &mut Expander,
        word: &[Letter],
        state: &StateFormula,
    ) -> Result<bool, WidthExceeded> {
        let mut frontier = BTreeSet::from([(state.clone(), LiteralSet::empty())]);
        for letter in word {
            let mut next = BTreeSet::new();
            for (s, gathered) in &frontier {
                for c in expander.dnf(s).iter() {
                    if c.label.satisfied_by(letter) {
                        next.insert((c.next.clone(), gathered.union(&c.label)));
                        if next.len() > self.max_width {
                            return Err(WidthExceeded(self.max_width));
                        }
                    }
                }
            }
            frontier = next;
        }
        Ok(frontier
            .iter()
            .any(|(_, gathered)| sat_once_state(gathered, state)))
    }

    fn check_shifted(
        &self,
        expander: &mut Expander,
        word: &[Letter],
        state: &StateFormula,
    ) -> Result<bool, WidthExceeded> {
        let mut frontier: BTreeSet<(StateFormula, Vec<LiteralSet>)> =
            BTreeSet::from([(state.clone(), Vec::new())]);
        for letter in word {
            let mut next = BTreeSet::new();
            for (s, labels) in &frontier {
                for c in expander.dnf(s).iter() {
                    if c.label.satisfied_by(letter) {
                        let mut labels = labels.clone();
                        labels.push(c.label.clone());
                        next.insert((c.next.clone(), labels));
                        if next.len() > self.max_width {
                            return Err(WidthExceeded(self.max_width));
                        }
                    }
                }
            }
            frontier = next;
        }
        Ok(frontier
            .iter()
            .any(|(_, labels)| state.iter().all(|f| sat_shifted(labels, 0, f))))
    }
}

fn sat_shifted(labels: &[LiteralSet], from: usize, f: &Formula) -> bool {
    match f.node() {
        Node::True => true,
        Node::False => false,
        Node::Literal(l) => {
            let lit = Lit::from(l);
            labels.iter().skip(from).any(|s| s.contains(&lit))
        }
        Node::Next(g) => sat_shifted(labels, from + 1, g),
        Node::And(l, r) => sat_shifted(labels, from, l) && sat_shifted(labels, from, r),
        Node::Or(l, r) => sat_shifted(labels, from, l) || sat_shifted(labels, from, r),
        Node::Until(_, r) | Node::Release(_, r) => sat_shifted(labels, from, r),
    }
}

/// `η ⊨_f φ` with the default search settings.
pub fn sat_f(word: &[Letter], state: &StateFormula) -> Result<bool, WidthExceeded> {
    FiniteSat::default().check(&mut Expander::new(), word, state)
}
