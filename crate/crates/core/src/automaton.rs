//! Büchi automata built from the expansion of a formula.
//!
//! Release-free and Until-free formulas get the plain expansion graph with
//! a syntactic acceptance condition. Everything else goes through the
//! general construction, whose states pair a formula with a process set of
//! literals fulfilled since the last time an obligation was discharged.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::expand::{is_release_free, is_until_free, pow2, Clauses, Expander};
use crate::formula::{cf, cl, ConjunctSet, Formula, StateFormula};
use crate::literal::LiteralSet;
use crate::obligation::{discharged, ObligationCache};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub label: LiteralSet,
    pub target: usize,
}

/// A state-based Büchi automaton over `2^ap` with symbolic labels.
#[derive(Clone, Debug)]
pub struct BuchiAutomaton<S = State> {
    pub(crate) ap: Vec<Arc<str>>,
    pub(crate) states: Vec<S>,
    pub(crate) initial: usize,
    pub(crate) accepting: BTreeSet<usize>,
    pub(crate) transitions: Vec<Vec<Transition>>,
}

impl<S> BuchiAutomaton<S> {
    /// Panics if a transition target is out of range or a label is
    /// contradictory.
    pub fn new(
        ap: Vec<Arc<str>>,
        states: Vec<S>,
        initial: usize,
        accepting: BTreeSet<usize>,
        transitions: Vec<Vec<Transition>>,
    ) -> Self {
        let n = states.len();
        assert!(initial < n, "initial state out of range");
        assert_eq!(transitions.len(), n, "one transition list per state");
        assert!(accepting.iter().all(|&s| s < n));
        for t in transitions.iter().flatten() {
            assert!(t.target < n, "transition target out of range");
            assert!(t.label.is_consistent(), "contradictory label {:?}", t.label);
        }
        BuchiAutomaton {
            ap,
            states,
            initial,
            accepting,
            transitions,
        }
    }

    pub fn ap(&self) -> &[Arc<str>] {
        &self.ap
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting.contains(&s)
    }

    pub fn transitions(&self, s: usize) -> &[Transition] {
        &self.transitions[s]
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.iter().map(Vec::len).sum()
    }

    pub fn stats(&self) -> Stats {
        Stats {
            states: self.states.len(),
            transitions: self.transition_count(),
            accepting: self.accepting.len(),
            ap_count: self.ap.len(),
        }
    }

    /// States that can reach an accepting state lying on a cycle.
    pub fn live_states(&self) -> BTreeSet<usize> {
        let n = self.states.len();
        let mut preds = vec![Vec::new(); n];
        for (s, ts) in self.transitions.iter().enumerate() {
            for t in ts {
                preds[t.target].push(s);
            }
        }
        let mut live = BTreeSet::new();
        let mut queue: VecDeque<usize> = self
            .accepting
            .iter()
            .copied()
            .filter(|&s| self.on_cycle(s))
            .collect();
        live.extend(queue.iter().copied());
        while let Some(s) = queue.pop_front() {
            for &p in &preds[s] {
                if live.insert(p) {
                    queue.push_back(p);
                }
            }
        }
        live
    }

    fn on_cycle(&self, start: usize) -> bool {
        let mut seen = vec![false; self.states.len()];
        let mut stack: Vec<usize> = self.transitions[start].iter().map(|t| t.target).collect();
        while let Some(s) = stack.pop() {
            if s == start {
                return true;
            }
            if !std::mem::replace(&mut seen[s], true) {
                stack.extend(self.transitions[s].iter().map(|t| t.target));
            }
        }
        false
    }
}

impl<S: Clone> BuchiAutomaton<S> {
    /// Removes states that cannot reach an accepting cycle. The initial
    /// state is always kept; relative state order is preserved.
    pub fn prune_dead(&self) -> Self {
        let mut keep = self.live_states();
        keep.insert(self.initial);
        let index: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let states = keep.iter().map(|&s| self.states[s].clone()).collect();
        let transitions = keep
            .iter()
            .map(|&s| {
                self.transitions[s]
                    .iter()
                    .filter_map(|t| {
                        index.get(&t.target).map(|&target| Transition {
                            label: t.label.clone(),
                            target,
                        })
                    })
                    .collect()
            })
            .collect();
        let accepting = self
            .accepting
            .iter()
            .filter_map(|s| index.get(s).copied())
            .collect();
        BuchiAutomaton::new(
            self.ap.clone(),
            states,
            index[&self.initial],
            accepting,
            transitions,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub states: usize,
    pub transitions: usize,
    pub accepting: usize,
    pub ap_count: usize,
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "states={} transitions={} accepting={}",
            self.states, self.transitions, self.accepting
        )
    }
}

/// A state of a translated automaton.
///
/// `pending` marks a general-mode state whose process set is empty only
/// because nothing relevant was fulfilled yet; such states are never
/// accepting. It is always `false` for the special constructions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub formula: StateFormula,
    pub process: LiteralSet,
    pub pending: bool,
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.formula)?;
        if self.pending {
            f.write_str(" | {true}")
        } else if !self.process.is_empty() {
            write!(f, " | {:?}", self.process)
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Auto,
    General,
    ReleaseFree,
    UntilFree,
}

/// The construction actually used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    ReleaseFree,
    UntilFree,
    General,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::ReleaseFree => "release-free",
            Construction::UntilFree => "until-free",
            Construction::General => "general",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Merge general-mode states with equal clause sets and process sets.
    pub merge: bool,
    /// Keep only obligation literals of the target formula in process sets.
    pub restrict_process: bool,
    /// Drop non-minimal obligations before the discharge test.
    pub minimize_obligations: bool,
    /// Remove states that cannot reach an accepting cycle.
    pub prune_dead: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            merge: true,
            restrict_process: true,
            minimize_obligations: false,
            prune_dead: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("formula `{formula}` is not {expected}")]
    ModeMismatch {
        formula: String,
        expected: Construction,
    },
}

/// A translated automaton together with the construction that built it.
#[derive(Clone, Debug)]
pub struct Translation {
    pub automaton: BuchiAutomaton,
    pub construction: Construction,
}

/// Size bounds for a root formula with `n` subformulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub n: usize,
    /// `2^(n+1)`: expansion set and special constructions.
    pub special: u128,
    /// `2^(2n+1)`: general construction.
    pub general: u128,
}

impl Bounds {
    pub fn of(root: &Formula) -> Self {
        let n = cl(root).len() - 1;
        Bounds {
            n,
            special: pow2(n + 1),
            general: pow2(2 * n + 1),
        }
    }

    pub fn for_construction(&self, c: Construction) -> u128 {
        match c {
            Construction::General => self.general,
            Construction::ReleaseFree | Construction::UntilFree => self.special,
        }
    }
}

/// Expansion graph of `root` with the acceptance condition of `mode`.
pub fn build_special(root: &Formula, mode: Construction) -> Result<BuchiAutomaton, TranslateError> {
    build_special_with(&mut Expander::new(), root, mode)
}

pub fn build_special_with(
    expander: &mut Expander,
    root: &Formula,
    mode: Construction,
) -> Result<BuchiAutomaton, TranslateError> {
    let applicable = match mode {
        Construction::ReleaseFree => is_release_free(root),
        Construction::UntilFree => is_until_free(root),
        Construction::General => false,
    };
    if !applicable {
        return Err(TranslateError::ModeMismatch {
            formula: root.to_string(),
            expected: mode,
        });
    }
    let mut graph = Graph::default();
    graph.intern(
        cf(root),
        State {
            formula: cf(root),
            process: LiteralSet::empty(),
            pending: false,
        },
    );
    while let Some(s) = graph.queue.pop_front() {
        let formula = graph.states[s].formula.clone();
        for c in expander.dnf(&formula).iter() {
            let target = graph.intern(
                c.next.clone(),
                State {
                    formula: c.next.clone(),
                    process: LiteralSet::empty(),
                    pending: false,
                },
            );
            graph.transitions[s].push(Transition {
                label: c.label.clone(),
                target,
            });
        }
    }
    let accepting = match mode {
        Construction::ReleaseFree => graph
            .states
            .iter()
            .position(|s| s.formula.is_empty())
            .into_iter()
            .collect(),
        _ => (0..graph.states.len()).collect(),
    };
    Ok(graph.finish(root, accepting))
}

/// The general ⟨formula, process set⟩ construction.
pub fn build_general(root: &Formula, opts: &Options) -> BuchiAutomaton {
    build_general_with(&mut Expander::new(), root, opts)
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum GeneralKey {
    Formula(StateFormula, LiteralSet, bool),
    Clauses(Clauses, LiteralSet, bool),
}

pub fn build_general_with(
    expander: &mut Expander,
    root: &Formula,
    opts: &Options,
) -> BuchiAutomaton {
    let mut obligations = ObligationCache::new(opts.minimize_obligations);
    let key_of = |expander: &mut Expander, s: &State| {
        if opts.merge {
            GeneralKey::Clauses(expander.dnf(&s.formula), s.process.clone(), s.pending)
        } else {
            GeneralKey::Formula(s.formula.clone(), s.process.clone(), s.pending)
        }
    };
    let mut graph = Graph::default();
    let init = State {
        formula: cf(root),
        process: LiteralSet::empty(),
        pending: false,
    };
    let k = key_of(expander, &init);
    graph.intern(k, init);
    while let Some(s) = graph.queue.pop_front() {
        let source = graph.states[s].clone();
        for c in expander.dnf(&source.formula).iter() {
            let entry = obligations.get(&c.next);
            let (os, relevant) = (&entry.0, &entry.1);
            let seen = source.process.union(&c.label);
            let target = if discharged(os, &seen) {
                State {
                    formula: c.next.clone(),
                    process: LiteralSet::empty(),
                    pending: false,
                }
            } else {
                let process = if opts.restrict_process {
                    seen.intersection(relevant)
                } else {
                    seen
                };
                let pending = process.is_empty();
                State {
                    formula: c.next.clone(),
                    process,
                    pending,
                }
            };
            let k = key_of(expander, &target);
            let target = graph.intern(k, target);
            graph.transitions[s].push(Transition {
                label: c.label.clone(),
                target,
            });
        }
    }
    let accepting = graph
        .states
        .iter()
        .enumerate()
        .filter(|(_, s)| s.process.is_empty() && !s.pending)
        .map(|(i, _)| i)
        .collect();
    graph.finish(root, accepting)
}

/// Translates `root`. `Auto` prefers the Release-free construction, then
/// the Until-free one, then the general one.
pub fn translate(
    root: &Formula,
    mode: Mode,
    opts: &Options,
) -> Result<Translation, TranslateError> {
    let mut expander = Expander::new();
    let construction = match mode {
        Mode::Auto if is_release_free(root) => Construction::ReleaseFree,
        Mode::Auto if is_until_free(root) => Construction::UntilFree,
        Mode::Auto | Mode::General => Construction::General,
        Mode::ReleaseFree => Construction::ReleaseFree,
        Mode::UntilFree => Construction::UntilFree,
    };
    let automaton = match construction {
        Construction::General => build_general_with(&mut expander, root, opts),
        special => build_special_with(&mut expander, root, special)?,
    };
    let automaton = if opts.prune_dead {
        automaton.prune_dead()
    } else {
        automaton
    };
    Ok(Translation {
        automaton,
        construction,
    })
}

struct Graph<K> {
    index: HashMap<K, usize>,
    states: Vec<State>,
    transitions: Vec<Vec<Transition>>,
    queue: VecDeque<usize>,
}

impl<K> Default for Graph<K> {
    fn default() -> Self {
        Graph {
            index: HashMap::new(),
            states: Vec::new(),
            transitions: Vec::new(),
            queue: VecDeque::new(),
        }
    }
}

impl<K: std::hash::Hash + Eq> Graph<K> {
    fn intern(&mut self, key: K, state: State) -> usize {
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        let i = self.states.len();
        self.index.insert(key, i);
        self.states.push(state);
        self.transitions.push(Vec::new());
        self.queue.push_back(i);
        i
    }

    fn finish(self, root: &Formula, accepting: BTreeSet<usize>) -> BuchiAutomaton {
        BuchiAutomaton::new(
            root.propositions(),
            self.states,
            0,
            accepting,
            self.transitions,
        )
    }
}

impl BuchiAutomaton {
    /// The distinct state formulas, in state order.
    pub fn state_formulas(&self) -> Vec<ConjunctSet> {
        let mut seen = BTreeSet::new();
        self.states
            .iter()
            .filter(|s| seen.insert(s.formula.clone()))
            .map(|s| s.formula.clone())
            .collect()
    }
}
