//! Disjunctive normal form and formula expansion.
//!
//! Every formula is equivalent to a disjunction of clauses `α ∧ X ψ`, where
//! `α` is a conjunction of literals and `ψ` is a conjunction of literal,
//! `U`, `R` and `X` formulas. The clauses of a state formula are its
//! outgoing transitions; [`Expander::expansion_set`] collects every state
//! formula reachable that way.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::formula::{cf, cl, ConjunctSet, Formula, Node, StateFormula};
use crate::literal::{Letter, Lit, LiteralSet};

/// One disjunct `label ∧ X next`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause {
    pub label: LiteralSet,
    pub next: ConjunctSet,
}

impl Clause {
    fn conjoin(&self, other: &Clause) -> Option<Clause> {
        Some(Clause {
            label: self.label.conjoin(&other.label)?,
            next: self.next.union(&other.next),
        })
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} & X({})", self.label, self.next)
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}, {:?}>", self.label, self.next)
    }
}

pub type Clauses = Arc<[Clause]>;

fn canonical(mut clauses: Vec<Clause>) -> Vec<Clause> {
    clauses.sort();
    clauses.dedup();
    clauses
}

impl Clause {
    /// `other` implies `self`: its label and next-state conjuncts are
    /// supersets of ours.
    pub fn subsumes(&self, other: &Clause) -> bool {
        self.label.is_subset(&other.label) && self.next.is_subset(&other.next)
    }
}

/// Drops clauses implied by another clause of the same disjunction.
fn drop_subsumed(clauses: Vec<Clause>) -> Vec<Clause> {
    let keep: Vec<bool> = clauses
        .iter()
        .enumerate()
        .map(|(i, c)| {
            !clauses
                .iter()
                .enumerate()
                .any(|(j, d)| j != i && d.subsumes(c))
        })
        .collect();
    clauses
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}

fn cross(left: &[Clause], right: &[Clause]) -> Vec<Clause> {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for l in left {
        for r in right {
            if let Some(c) = l.conjoin(r) {
                out.push(c);
            }
        }
    }
    out
}

/// Splits `f` into the conjunct sets of its disjuncts, so that no member
/// is rooted at `Or`. Sets that would contain `False` are dropped.
fn disjunctive_forms(f: &Formula) -> Vec<ConjunctSet> {
    match f.node() {
        Node::True => vec![ConjunctSet::empty()],
        Node::False => vec![],
        Node::Or(l, r) => {
            let mut out = disjunctive_forms(l);
            out.extend(disjunctive_forms(r));
            out
        }
        Node::And(l, r) => {
            let rs = disjunctive_forms(r);
            let mut out = Vec::new();
            for a in disjunctive_forms(l) {
                for b in &rs {
                    out.push(a.union(b));
                }
            }
            out
        }
        _ => vec![cf(f)],
    }
}

/// Memoizing DNF calculator for one translation job.
///
/// Not shared between threads; parallel jobs each own an `Expander`.
///
/// Clauses implied by another clause of the same DNF are dropped unless
/// the expander was built with [`Expander::unreduced`]. Dropping them keeps
/// the disjunction equivalent and is what makes, e.g., `b U c ∧ G(b U c ∧
/// d U e)` and `G(b U c ∧ d U e)` share one set of four clauses.
pub struct Expander {
    subsume: bool,
    by_formula: HashMap<Formula, Clauses>,
    by_state: HashMap<StateFormula, Clauses>,
}

impl Default for Expander {
    fn default() -> Self {
        Expander {
            subsume: true,
            by_formula: HashMap::new(),
            by_state: HashMap::new(),
        }
    }
}

impl Expander {
    pub fn new() -> Self {
        Self::default()
    }

    /// Keeps every clause produced by the expansion rules.
    pub fn unreduced() -> Self {
        Expander {
            subsume: false,
            ..Self::default()
        }
    }

    fn finish(&self, clauses: Vec<Clause>) -> Clauses {
        let clauses = canonical(clauses);
        if self.subsume {
            drop_subsumed(clauses).into()
        } else {
            clauses.into()
        }
    }

    /// Clauses of a single formula.
    pub fn dnf_formula(&mut self, f: &Formula) -> Clauses {
        if let Some(c) = self.by_formula.get(f) {
            return c.clone();
        }
        let clauses: Vec<Clause> = match f.node() {
            Node::True => vec![Clause {
                label: LiteralSet::empty(),
                next: ConjunctSet::empty(),
            }],
            Node::False => vec![],
            Node::Literal(l) => vec![Clause {
                label: LiteralSet::singleton(Lit::from(l)),
                next: ConjunctSet::empty(),
            }],
            Node::Next(arg) => disjunctive_forms(arg)
                .into_iter()
                .map(|next| Clause {
                    label: LiteralSet::empty(),
                    next,
                })
                .collect(),
            Node::Or(l, r) => {
                let mut out = self.dnf_formula(l).to_vec();
                out.extend(self.dnf_formula(r).iter().cloned());
                out
            }
            Node::And(l, r) => {
                let l = self.dnf_formula(l);
                let r = self.dnf_formula(r);
                cross(&l, &r)
            }
            // l U r  =  r  ∨  (l ∧ X(l U r))
            Node::Until(l, r) => {
                let mut out = self.dnf_formula(r).to_vec();
                out.extend(self.postpone(l, f));
                out
            }
            // l R r  =  (l ∧ r)  ∨  (r ∧ X(l R r))
            Node::Release(l, r) => {
                let lc = self.dnf_formula(l);
                let rc = self.dnf_formula(r);
                let mut out = cross(&lc, &rc);
                out.extend(self.postpone(r, f));
                out
            }
        };
        let clauses = self.finish(clauses);
        self.by_formula.insert(f.clone(), clauses.clone());
        clauses
    }

    /// Clauses of `now ∧ X later`.
    fn postpone(&mut self, now: &Formula, later: &Formula) -> Vec<Clause> {
        let later = ConjunctSet::singleton(later.clone());
        self.dnf_formula(now)
            .iter()
            .map(|c| Clause {
                label: c.label.clone(),
                next: c.next.union(&later),
            })
            .collect()
    }

    /// Clauses of a state formula: the product over its conjuncts.
    pub fn dnf(&mut self, state: &StateFormula) -> Clauses {
        if let Some(c) = self.by_state.get(state) {
            return c.clone();
        }
        let mut acc = vec![Clause {
            label: LiteralSet::empty(),
            next: ConjunctSet::empty(),
        }];
        for f in state {
            let fc = self.dnf_formula(f);
            acc = cross(&acc, &fc);
            if acc.is_empty() {
                break;
            }
        }
        let clauses = self.finish(acc);
        self.by_state.insert(state.clone(), clauses.clone());
        clauses
    }

    /// Targets of the clauses whose label `letter` satisfies.
    pub fn successors(&mut self, state: &StateFormula, letter: &Letter) -> BTreeSet<StateFormula> {
        self.dnf(state)
            .iter()
            .filter(|c| c.label.satisfied_by(letter))
            .map(|c| c.next.clone())
            .collect()
    }

    /// Every state formula reachable from `cf(root)` in one or more steps.
    pub fn expansion_set(&mut self, root: &Formula) -> BTreeSet<StateFormula> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([cf(root)]);
        while let Some(s) = queue.pop_front() {
            for c in self.dnf(&s).iter() {
                if seen.insert(c.next.clone()) {
                    queue.push_back(c.next.clone());
                }
            }
        }
        debug_assert!(
            (seen.len() as u128) <= pow2(cl(root).len()),
            "expansion set exceeds 2^(n+1)"
        );
        seen
    }
}

/// `2^k`, saturating.
pub fn pow2(k: usize) -> u128 {
    if k >= 128 {
        u128::MAX
    } else {
        1u128 << k
    }
}

/// Clauses of `f` with a fresh memo table.
pub fn dnf(state: &StateFormula) -> Vec<Clause> {
    Expander::new().dnf(state).to_vec()
}

pub fn expansion_set(root: &Formula) -> BTreeSet<StateFormula> {
    Expander::new().expansion_set(root)
}

pub fn is_until_free(f: &Formula) -> bool {
    !f.contains_until()
}

pub fn is_release_free(f: &Formula) -> bool {
    !f.contains_release()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    fn lits(names: &[&str]) -> LiteralSet {
        names
            .iter()
            .map(|n| match n.strip_prefix('!') {
                Some(n) => Lit::neg(n),
                None => Lit::pos(n),
            })
            .collect()
    }

    fn state(text: &str) -> StateFormula {
        cf(&parse(text).unwrap().without_occurrences())
    }

    fn clause(label: &[&str], next: &str) -> Clause {
        Clause {
            label: lits(label),
            next: state(next),
        }
    }

    #[test]
    fn until_clauses() {
        let got = dnf(&state("a U b"));
        assert_eq!(
            got,
            canonical(vec![clause(&["b"], "True"), clause(&["a"], "a U b")])
        );
    }

    #[test]
    fn globally_until_clauses() {
        let got = dnf(&state("G (a U b)"));
        let want = canonical(vec![
            clause(&["b"], "G (a U b)"),
            clause(&["a"], "a U b & G (a U b)"),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn always_two_untils_clauses() {
        let phi1 = "G (b U c & d U e)";
        let got = dnf(&state(phi1));
        let want = canonical(vec![
            clause(&["c", "e"], phi1),
            clause(&["b", "e"], &format!("b U c & {phi1}")),
            clause(&["c", "d"], &format!("d U e & {phi1}")),
            clause(&["b", "d"], &format!("b U c & d U e & {phi1}")),
        ]);
        assert_eq!(got, want);
        for other in [
            format!("b U c & {phi1}"),
            format!("d U e & {phi1}"),
            format!("b U c & d U e & {phi1}"),
        ] {
            assert_eq!(dnf(&state(&other)), want, "{other}");
        }
    }

    #[test]
    fn unreduced_keeps_implied_clauses() {
        let phi1 = "G (b U c & d U e)";
        let phi2 = state(&format!("b U c & {phi1}"));
        let raw = Expander::unreduced().dnf(&phi2);
        assert_eq!(raw.len(), 6);
        assert!(raw.contains(&clause(
            &["b", "c", "d"],
            &format!("b U c & d U e & {phi1}")
        )));
        assert_eq!(Expander::new().dnf(&phi2).len(), 4);
    }

    #[test]
    fn subsumption_order() {
        let weak = clause(&["a"], "b U c");
        let strong = clause(&["a", "b"], "b U c & X d");
        assert!(weak.subsumes(&strong));
        assert!(!strong.subsumes(&weak));
        // a | a & b  keeps only a
        assert_eq!(dnf(&state("a | a & b")), vec![clause(&["a"], "True")]);
    }

    #[test]
    fn constants() {
        assert_eq!(dnf(&ConjunctSet::empty()), vec![clause(&[], "True")]);
        assert!(dnf(&state("False")).is_empty());
    }

    #[test]
    fn next_over_disjunction_splits() {
        let got = dnf(&state("X (a | b & X c)"));
        assert_eq!(
            got,
            canonical(vec![clause(&[], "a"), clause(&[], "b & X c")])
        );
    }

    #[test]
    fn contradictory_labels_are_dropped() {
        assert!(dnf(&state("a & !a")).is_empty());
        assert_eq!(
            dnf(&state("(a | b) & !a")),
            vec![clause(&["!a", "b"], "True")]
        );
    }

    #[test]
    fn successors_follow_labels() {
        let mut ex = Expander::new();
        let s = state("a U b");
        assert_eq!(
            ex.successors(&s, &Letter::new(["b"])),
            BTreeSet::from([ConjunctSet::empty()])
        );
        assert!(ex.successors(&s, &Letter::new::<&str>([])).is_empty());
        assert_eq!(ex.successors(&s, &Letter::new(["a", "b"])).len(), 2);

        let phi1 = state("G (b U c & d U e)");
        assert_eq!(
            ex.successors(&phi1, &Letter::new(["c", "e"])),
            BTreeSet::from([phi1.clone()])
        );
    }

    #[test]
    fn expansion_sets() {
        assert_eq!(
            expansion_set(&parse("a U b").unwrap().without_occurrences()),
            BTreeSet::from([state("a U b"), ConjunctSet::empty()])
        );
        assert_eq!(
            expansion_set(&parse("a").unwrap()),
            BTreeSet::from([ConjunctSet::empty()])
        );
        let phi1 = "G (b U c & d U e)";
        let ef = expansion_set(&parse(phi1).unwrap().without_occurrences());
        assert_eq!(
            ef,
            BTreeSet::from([
                state(phi1),
                state(&format!("b U c & {phi1}")),
                state(&format!("d U e & {phi1}")),
                state(&format!("b U c & d U e & {phi1}")),
            ])
        );
    }

    #[test]
    fn freedom_checks() {
        let f = parse("a U b").unwrap();
        assert!(is_release_free(&f) && !is_until_free(&f));
        assert!(!is_release_free(&parse("G (a U b)").unwrap()));
        let f = parse("a & X b").unwrap();
        assert!(is_release_free(&f) && is_until_free(&f));
    }

    #[test]
    fn dnf_is_deterministic() {
        let s = state("G (a U b) & (c R d | X e)");
        assert_eq!(dnf(&s), dnf(&s));
        let mut ex = Expander::new();
        assert_eq!(ex.dnf(&s), ex.dnf(&s));
    }
}
