use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::automaton::{BuchiAutomaton, Transition};

/// A state of an intersection automaton. `phase` 0 waits for the left
/// automaton to accept, phase 1 for the right one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProductState {
    pub left: usize,
    pub right: usize,
    pub phase: u8,
}

impl fmt::Display for ProductState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.left, self.right, self.phase)
    }
}

/// Büchi intersection with the two-phase flag construction. Only states
/// reachable from the initial pair are built; labels are conjoined and
/// contradictory pairs dropped.
pub fn product<A, B>(a: &BuchiAutomaton<A>, b: &BuchiAutomaton<B>) -> BuchiAutomaton<ProductState> {
    let mut ap: Vec<Arc<str>> = a.ap().to_vec();
    for p in b.ap() {
        if !ap.contains(p) {
            ap.push(p.clone());
        }
    }
    let init = ProductState {
        left: a.initial(),
        right: b.initial(),
        phase: 0,
    };
    let mut index = HashMap::from([(init, 0)]);
    let mut states = vec![init];
    let mut transitions: Vec<Vec<Transition>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        let s = states[i];
        let phase = match s.phase {
            0 if a.is_accepting(s.left) => 1,
            1 if b.is_accepting(s.right) => 0,
            p => p,
        };
        for ta in a.transitions(s.left) {
            for tb in b.transitions(s.right) {
                let Some(label) = ta.label.conjoin(&tb.label) else {
                    continue;
                };
                let t = ProductState {
                    left: ta.target,
                    right: tb.target,
                    phase,
                };
                let target = *index.entry(t).or_insert_with(|| {
                    states.push(t);
                    transitions.push(Vec::new());
                    queue.push_back(states.len() - 1);
                    states.len() - 1
                });
                transitions[i].push(Transition { label, target });
            }
        }
    }
    let accepting: BTreeSet<usize> = states
        .iter()
        .enumerate()
        .filter(|(_, s)| s.phase == 0 && a.is_accepting(s.left))
        .map(|(i, _)| i)
        .collect();
    BuchiAutomaton::new(ap, states, 0, accepting, transitions)
}
