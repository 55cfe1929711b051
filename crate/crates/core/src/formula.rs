//! LTL formulas in negation normal form.
//!
//! A [`Formula`] is an immutable, reference-counted syntax tree. Equality,
//! hashing and ordering are structural, so two independently built trees
//! for the same formula are interchangeable. Negation only appears inside
//! [`Literal`]s; derived operators (`F`, `G`, `->`, `<->`) are removed by
//! the parser before a `Formula` is ever built.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// An atomic proposition at one syntactic position of the input.
///
/// `occurrence` distinguishes repeated uses of the same proposition, so the
/// two `a`s of `a U a` are different formula nodes. Alphabet-level matching
/// only looks at `name`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub name: Arc<str>,
    pub occurrence: u32,
}

impl Atom {
    pub fn new(name: impl Into<Arc<str>>, occurrence: u32) -> Self {
        Atom {
            name: name.into(),
            occurrence,
        }
    }
}

/// A possibly negated atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

/// Node shapes. The variant order is the kind rank of the canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    True,
    False,
    Literal(Literal),
    Next(Formula),
    And(Formula, Formula),
    Or(Formula, Formula),
    Until(Formula, Formula),
    Release(Formula, Formula),
}

/// An NNF formula. Cloning is cheap; subtrees are shared.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Formula(Arc<Node>);

impl Formula {
    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn tt() -> Self {
        Formula(Arc::new(Node::True))
    }

    pub fn ff() -> Self {
        Formula(Arc::new(Node::False))
    }

    pub fn literal(atom: Atom, positive: bool) -> Self {
        Formula(Arc::new(Node::Literal(Literal { atom, positive })))
    }

    /// Positive literal with occurrence tag 0; handy in tests.
    pub fn atom(name: &str) -> Self {
        Self::literal(Atom::new(name, 0), true)
    }

    pub fn next(arg: Formula) -> Self {
        Formula(Arc::new(Node::Next(arg)))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula(Arc::new(Node::And(l, r)))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula(Arc::new(Node::Or(l, r)))
    }

    pub fn until(l: Formula, r: Formula) -> Self {
        Formula(Arc::new(Node::Until(l, r)))
    }

    pub fn release(l: Formula, r: Formula) -> Self {
        Formula(Arc::new(Node::Release(l, r)))
    }

    /// `F f`, i.e. `True U f`.
    pub fn eventually(f: Formula) -> Self {
        Self::until(Self::tt(), f)
    }

    /// `G f`, i.e. `False R f`.
    pub fn always(f: Formula) -> Self {
        Self::release(Self::ff(), f)
    }

    pub fn is_true(&self) -> bool {
        matches!(self.node(), Node::True)
    }

    pub fn is_false(&self) -> bool {
        matches!(self.node(), Node::False)
    }

    pub fn children(&self) -> impl Iterator<Item = &Formula> {
        let (a, b) = match self.node() {
            Node::True | Node::False | Node::Literal(_) => (None, None),
            Node::Next(f) => (Some(f), None),
            Node::And(l, r) | Node::Or(l, r) | Node::Until(l, r) | Node::Release(l, r) => {
                (Some(l), Some(r))
            }
        };
        a.into_iter().chain(b)
    }

    /// NNF of the negation, by pushing the negation through the dualities.
    pub fn negate(&self) -> Formula {
        match self.node() {
            Node::True => Formula::ff(),
            Node::False => Formula::tt(),
            Node::Literal(l) => Formula::literal(l.atom.clone(), !l.positive),
            Node::Next(f) => Formula::next(f.negate()),
            Node::And(l, r) => Formula::or(l.negate(), r.negate()),
            Node::Or(l, r) => Formula::and(l.negate(), r.negate()),
            Node::Until(l, r) => Formula::release(l.negate(), r.negate()),
            Node::Release(l, r) => Formula::until(l.negate(), r.negate()),
        }
    }

    /// Number of nodes in the tree (shared subtrees counted per use).
    pub fn size(&self) -> usize {
        1 + self.children().map(Formula::size).sum::<usize>()
    }

    pub fn contains_until(&self) -> bool {
        matches!(self.node(), Node::Until(..)) || self.children().any(Formula::contains_until)
    }

    pub fn contains_release(&self) -> bool {
        matches!(self.node(), Node::Release(..)) || self.children().any(Formula::contains_release)
    }

    /// Distinct proposition names in left-to-right order of first use.
    pub fn propositions(&self) -> Vec<Arc<str>> {
        fn walk(f: &Formula, out: &mut Vec<Arc<str>>) {
            if let Node::Literal(l) = f.node() {
                if !out.contains(&l.atom.name) {
                    out.push(l.atom.name.clone());
                }
            }
            for c in f.children() {
                walk(c, out);
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// The same formula with every occurrence tag set to 0.
    pub fn without_occurrences(&self) -> Formula {
        self.map_atoms(&mut |a| Atom::new(a.name.clone(), 0))
    }

    /// Re-tag atoms 0, 1, 2, ... in left-to-right order.
    pub fn retag_occurrences(&self) -> Formula {
        let mut next = 0;
        self.map_atoms(&mut |a| {
            let atom = Atom::new(a.name.clone(), next);
            next += 1;
            atom
        })
    }

    fn map_atoms(&self, f: &mut impl FnMut(&Atom) -> Atom) -> Formula {
        match self.node() {
            Node::True | Node::False => self.clone(),
            Node::Literal(l) => Formula::literal(f(&l.atom), l.positive),
            Node::Next(a) => Formula::next(a.map_atoms(f)),
            Node::And(l, r) => {
                let l = l.map_atoms(f);
                Formula::and(l, r.map_atoms(f))
            }
            Node::Or(l, r) => {
                let l = l.map_atoms(f);
                Formula::or(l, r.map_atoms(f))
            }
            Node::Until(l, r) => {
                let l = l.map_atoms(f);
                Formula::until(l, r.map_atoms(f))
            }
            Node::Release(l, r) => {
                let l = l.map_atoms(f);
                Formula::release(l, r.map_atoms(f))
            }
        }
    }

    /// Top-level conjuncts.
    pub fn conjuncts(&self) -> ConjunctSet {
        cf(self)
    }

    /// Subformula closure plus `True`.
    pub fn closure(&self) -> BTreeSet<Formula> {
        cl(self)
    }

    fn precedence(&self) -> u8 {
        match self.node() {
            Node::Or(..) => 1,
            Node::And(..) => 2,
            Node::Until(..) | Node::Release(..) => 3,
            Node::Next(_) => 4,
            Node::True | Node::False | Node::Literal(_) => 5,
        }
    }
}

/// Flattens nested conjunctions. `True` conjuncts vanish, so `cf(True)` is
/// the empty set.
pub fn cf(f: &Formula) -> ConjunctSet {
    fn walk(f: &Formula, out: &mut Vec<Formula>) {
        match f.node() {
            Node::True => {}
            Node::And(l, r) => {
                walk(l, out);
                walk(r, out);
            }
            _ => out.push(f.clone()),
        }
    }
    let mut out = Vec::new();
    walk(f, &mut out);
    ConjunctSet::from_vec(out)
}

/// All subformulas of `f`, plus `True`.
pub fn cl(f: &Formula) -> BTreeSet<Formula> {
    fn walk(f: &Formula, out: &mut BTreeSet<Formula>) {
        if out.insert(f.clone()) {
            for c in f.children() {
                walk(c, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    out.insert(Formula::tt());
    walk(f, &mut out);
    out
}

/// A canonical, duplicate-free set of conjuncts, none rooted at `And` or
/// equal to `True`. The empty set stands for `True`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjunctSet(Vec<Formula>);

/// Automaton states are identified by their conjunct sets.
pub type StateFormula = ConjunctSet;

impl ConjunctSet {
    pub fn empty() -> Self {
        ConjunctSet(Vec::new())
    }

    /// Canonicalizes `items`. Callers are expected to pass non-`And`
    /// formulas; use [`cf`] on arbitrary input.
    pub fn from_vec(mut items: Vec<Formula>) -> Self {
        items.sort();
        items.dedup();
        ConjunctSet(items)
    }

    pub fn singleton(f: Formula) -> Self {
        cf(&f)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// `true` when this set denotes `True`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.0.binary_search(f).is_ok()
    }

    pub fn is_subset(&self, other: &ConjunctSet) -> bool {
        self.0.iter().all(|f| other.contains(f))
    }

    pub fn union(&self, other: &ConjunctSet) -> ConjunctSet {
        let mut items = Vec::with_capacity(self.0.len() + other.0.len());
        items.extend(self.0.iter().cloned());
        items.extend(other.0.iter().cloned());
        ConjunctSet::from_vec(items)
    }

    pub fn with(&self, f: Formula) -> ConjunctSet {
        self.union(&cf(&f))
    }

    /// Right-nested conjunction of the members, `True` when empty.
    pub fn to_formula(&self) -> Formula {
        let mut it = self.0.iter().rev();
        match it.next() {
            None => Formula::tt(),
            Some(last) => it.fold(last.clone(), |acc, f| Formula::and(f.clone(), acc)),
        }
    }
}

impl<'a> IntoIterator for &'a ConjunctSet {
    type Item = &'a Formula;
    type IntoIter = std::slice::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for ConjunctSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("True");
        }
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write_child(f, c, 3)?;
        }
        Ok(())
    }
}

impl fmt::Debug for ConjunctSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        f.write_str(&self.atom.name)
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, min: u8) -> fmt::Result {
    if child.precedence() < min {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

// Parenthesization mirrors the parser: `&` and `|` associate to the left,
// `U` and `R` to the right, unary operators bind tightest.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::True => f.write_str("True"),
            Node::False => f.write_str("False"),
            Node::Literal(l) => write!(f, "{l}"),
            Node::Next(a) => {
                f.write_str("X ")?;
                write_child(f, a, 4)
            }
            Node::And(l, r) => {
                write_child(f, l, 2)?;
                f.write_str(" & ")?;
                write_child(f, r, 3)
            }
            Node::Or(l, r) => {
                write_child(f, l, 1)?;
                f.write_str(" | ")?;
                write_child(f, r, 2)
            }
            Node::Until(l, r) => {
                write_child(f, l, 4)?;
                f.write_str(" U ")?;
                write_child(f, r, 3)
            }
            Node::Release(l, r) => {
                write_child(f, l, 4)?;
                f.write_str(" R ")?;
                write_child(f, r, 3)
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
