use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::automaton::BuchiAutomaton;
use crate::formula::{Formula, Node};
use crate::literal::{Letter, Lit};

/// The ultimately periodic word `stem · cycle^ω`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LassoWord {
    pub stem: Vec<Letter>,
    pub cycle: Vec<Letter>,
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(None)?;
        for name in self.iter() {
            seq.serialize_element(&**name)?;
        }
        seq.end()
    }
}

impl LassoWord {
    /// Panics on an empty cycle.
    pub fn new(stem: Vec<Letter>, cycle: Vec<Letter>) -> Self {
        assert!(!cycle.is_empty(), "lasso cycle must be nonempty");
        LassoWord { stem, cycle }
    }

    /// Number of distinct positions, `|stem| + |cycle|`.
    pub fn positions(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    /// Successor position; the last cycle position wraps to the first.
    pub fn succ(&self, i: usize) -> usize {
        if i + 1 < self.positions() {
            i + 1
        } else {
            self.stem.len()
        }
    }

    pub fn letter(&self, i: usize) -> &Letter {
        if i < self.stem.len() {
            &self.stem[i]
        } else {
            &self.cycle[i - self.stem.len()]
        }
    }

    /// The suffix starting at position 1, as a lasso.
    pub fn shift(&self) -> LassoWord {
        if self.stem.is_empty() {
            let mut cycle = self.cycle.clone();
            cycle.rotate_left(1);
            LassoWord::new(Vec::new(), cycle)
        } else {
            LassoWord::new(self.stem[1..].to_vec(), self.cycle.clone())
        }
    }
}

impl fmt::Debug for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.stem {
            write!(f, "{l:?}")?;
        }
        f.write_str("(")?;
        for l in &self.cycle {
            write!(f, "{l:?}")?;
        }
        f.write_str(")^w")
    }
}

/// Truth of `f` at position 0 of `w`.
pub fn eval_lasso(f: &Formula, w: &LassoWord) -> bool {
    let mut memo = HashMap::new();
    truth_table(f, w, &mut memo)[0]
}

/// Truth of `f` at every position of `w`. `U` is a least and `R` a
/// greatest fixpoint over the successor function, iterated to stability.
fn truth_table(
    f: &Formula,
    w: &LassoWord,
    memo: &mut HashMap<Formula, Arc<Vec<bool>>>,
) -> Arc<Vec<bool>> {
    if let Some(t) = memo.get(f) {
        return t.clone();
    }
    let m = w.positions();
    let table: Vec<bool> = match f.node() {
        Node::True => vec![true; m],
        Node::False => vec![false; m],
        Node::Literal(l) => {
            let lit = Lit::from(l);
            (0..m).map(|i| lit.holds_in(w.letter(i))).collect()
        }
        Node::Next(g) => {
            let g = truth_table(g, w, memo);
            (0..m).map(|i| g[w.succ(i)]).collect()
        }
        Node::And(l, r) => {
            let (l, r) = (truth_table(l, w, memo), truth_table(r, w, memo));
            (0..m).map(|i| l[i] && r[i]).collect()
        }
        Node::Or(l, r) => {
            let (l, r) = (truth_table(l, w, memo), truth_table(r, w, memo));
            (0..m).map(|i| l[i] || r[i]).collect()
        }
        Node::Until(l, r) => {
            let (l, r) = (truth_table(l, w, memo), truth_table(r, w, memo));
            fixpoint(w, false, |i, v| r[i] || (l[i] && v[w.succ(i)]))
        }
        Node::Release(l, r) => {
            let (l, r) = (truth_table(l, w, memo), truth_table(r, w, memo));
            fixpoint(w, true, |i, v| r[i] && (l[i] || v[w.succ(i)]))
        }
    };
    let table = Arc::new(table);
    memo.insert(f.clone(), table.clone());
    table
}

fn fixpoint(w: &LassoWord, start: bool, step: impl Fn(usize, &[bool]) -> bool) -> Vec<bool> {
    let m = w.positions();
    let mut v = vec![start; m];
    loop {
        let mut changed = false;
        // Walking backwards settles the stem in one pass.
        for i in (0..m).rev() {
            let x = step(i, &v);
            if x != v[i] {
                v[i] = x;
                changed = true;
            }
        }
        if !changed {
            return v;
        }
    }
}

/// Whether `a` has an accepting run on `w`: some accepting state is
/// visited infinitely often in the product of `a` with the positions of `w`.
pub fn accepts_lasso<S>(a: &BuchiAutomaton<S>, w: &LassoWord) -> bool {
    let m = w.positions();
    let node = |s: usize, p: usize| s * m + p;
    let total = a.state_count() * m;
    let succs = |n: usize| {
        let (s, p) = (n / m, n % m);
        let letter = w.letter(p);
        let q = w.succ(p);
        a.transitions(s)
            .iter()
            .filter(move |t| t.label.satisfied_by(letter))
            .map(move |t| node(t.target, q))
    };

    let mut reachable = vec![false; total];
    let start = node(a.initial(), 0);
    reachable[start] = true;
    let mut stack = vec![start];
    while let Some(n) = stack.pop() {
        for t in succs(n) {
            if !std::mem::replace(&mut reachable[t], true) {
                stack.push(t);
            }
        }
    }

    (0..total)
        .filter(|&n| reachable[n] && a.is_accepting(n / m))
        .any(|n| {
            let mut seen = vec![false; total];
            let mut stack: Vec<usize> = succs(n).collect();
            while let Some(x) = stack.pop() {
                if x == n {
                    return true;
                }
                if !std::mem::replace(&mut seen[x], true) {
                    stack.extend(succs(x));
                }
            }
            false
        })
}

/// `Σ_{s ≤ max_stem} Σ_{1 ≤ l ≤ max_cycle} (2^|ap|)^(s+l)`.
pub fn lasso_count(ap_len: usize, max_stem: usize, max_cycle: usize) -> u128 {
    let letters = 1u128 << ap_len;
    let mut total = 0;
    for s in 0..=max_stem {
        for l in 1..=max_cycle {
            total += letters.pow((s + l) as u32);
        }
    }
    total
}

/// Every lasso with `|stem| ≤ max_stem` and `1 ≤ |cycle| ≤ max_cycle`
/// over `2^ap`, shortest stems first.
pub fn enumerate_lassos(
    ap: &[Arc<str>],
    max_stem: usize,
    max_cycle: usize,
) -> impl Iterator<Item = LassoWord> + '_ {
    let letters = 1usize << ap.len();
    (0..=max_stem)
        .flat_map(move |s| (1..=max_cycle).map(move |l| (s, l)))
        .flat_map(move |(s, l)| {
            let count = letters.pow((s + l) as u32);
            (0..count).map(move |mut code| {
                let mut word = Vec::with_capacity(s + l);
                for _ in 0..s + l {
                    word.push(Letter::from_mask(ap, code % letters));
                    code /= letters;
                }
                let cycle = word.split_off(s);
                LassoWord::new(word, cycle)
            })
        })
}
