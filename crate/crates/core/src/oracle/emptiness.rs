use crate::automaton::BuchiAutomaton;
use crate::literal::{Letter, LiteralSet};

use super::LassoWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Emptiness {
    Empty,
    /// An accepted lasso.
    NonEmpty(LassoWord),
}

impl Emptiness {
    pub fn is_empty(&self) -> bool {
        matches!(self, Emptiness::Empty)
    }
}

/// Nested depth-first search for a reachable accepting cycle.
///
/// The inner search starts from each accepting state in DFS postorder and
/// shares its visited set across seeds, so every state is explored at most
/// twice.
pub fn is_empty<S>(a: &BuchiAutomaton<S>) -> Emptiness {
    let n = a.state_count();
    let mut outer_seen = vec![false; n];
    let mut inner_seen = vec![false; n];
    // (state, next edge), plus the label of the edge into each frame
    let mut stack: Vec<(usize, usize)> = vec![(a.initial(), 0)];
    let mut stem: Vec<LiteralSet> = Vec::new();
    outer_seen[a.initial()] = true;

    while let Some(&mut (s, ref mut edge)) = stack.last_mut() {
        if let Some(t) = a.transitions(s).get(*edge) {
            *edge += 1;
            if !outer_seen[t.target] {
                outer_seen[t.target] = true;
                stem.push(t.label.clone());
                stack.push((t.target, 0));
            }
            continue;
        }
        if a.is_accepting(s) {
            if let Some(cycle) = find_cycle(a, s, &mut inner_seen) {
                return Emptiness::NonEmpty(LassoWord::new(
                    stem.iter().map(LiteralSet::minimal_letter).collect(),
                    cycle
                        .iter()
                        .map(LiteralSet::minimal_letter)
                        .collect::<Vec<Letter>>(),
                ));
            }
        }
        stack.pop();
        stem.pop();
    }
    Emptiness::Empty
}

/// Labels of a nonempty path from `seed` back to itself, if one exists
/// outside `seen`.
fn find_cycle<S>(a: &BuchiAutomaton<S>, seed: usize, seen: &mut [bool]) -> Option<Vec<LiteralSet>> {
    let mut stack: Vec<(usize, usize)> = vec![(seed, 0)];
    let mut labels: Vec<LiteralSet> = Vec::new();
    seen[seed] = true;
    while let Some(&mut (s, ref mut edge)) = stack.last_mut() {
        let Some(t) = a.transitions(s).get(*edge) else {
            stack.pop();
            labels.pop();
            continue;
        };
        *edge += 1;
        if t.target == seed {
            labels.push(t.label.clone());
            return Some(labels);
        }
        if !seen[t.target] {
            seen[t.target] = true;
            labels.push(t.label.clone());
            stack.push((t.target, 0));
        }
    }
    None
}
