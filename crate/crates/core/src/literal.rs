//! Alphabet-level literals, literal sets (transition labels, obligations,
//! process sets) and alphabet symbols.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::formula::Literal;

/// A literal occurrence: `(name, polarity, occurrence tag)`.
///
/// Sets of literals compare tags, so `a` on the left of `a U a` is a
/// different obligation from the `a` on its right. Alphabet-level checks
/// ([`Lit::holds_in`], consistency) look at the name and polarity only.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub name: Arc<str>,
    pub positive: bool,
    pub occurrence: u32,
}

impl Lit {
    pub fn new(name: impl Into<Arc<str>>, positive: bool) -> Self {
        Lit::tagged(name, positive, 0)
    }

    pub fn tagged(name: impl Into<Arc<str>>, positive: bool, occurrence: u32) -> Self {
        Lit {
            name: name.into(),
            positive,
            occurrence,
        }
    }

    pub fn pos(name: &str) -> Self {
        Lit::new(name, true)
    }

    pub fn neg(name: &str) -> Self {
        Lit::new(name, false)
    }

    pub fn complement(&self) -> Lit {
        Lit::tagged(self.name.clone(), !self.positive, self.occurrence)
    }

    pub fn erased(&self) -> Lit {
        Lit::new(self.name.clone(), self.positive)
    }

    pub fn holds_in(&self, letter: &Letter) -> bool {
        letter.contains(&self.name) == self.positive
    }
}

impl From<&Literal> for Lit {
    fn from(l: &Literal) -> Self {
        Lit::tagged(l.atom.name.clone(), l.positive, l.atom.occurrence)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        f.write_str(&self.name)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")?;
        if self.occurrence != 0 {
            write!(f, "@{}", self.occurrence)?;
        }
        Ok(())
    }
}

/// A set of literals read as a conjunction. The empty set is `True`.
///
/// Transition labels and obligations are always consistent; process sets
/// and the accumulated sets of finite satisfaction may mix polarities
/// because they collect literals over several steps.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiteralSet(BTreeSet<Lit>);

impl LiteralSet {
    pub fn empty() -> Self {
        LiteralSet(BTreeSet::new())
    }

    pub fn singleton(l: Lit) -> Self {
        LiteralSet(BTreeSet::from([l]))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Lit> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: &Lit) -> bool {
        self.0.contains(l)
    }

    pub fn insert(&mut self, l: Lit) -> bool {
        self.0.insert(l)
    }

    /// No proposition occurs with both polarities, whatever the tags.
    pub fn is_consistent(&self) -> bool {
        let positive: BTreeSet<&str> = self
            .0
            .iter()
            .filter(|l| l.positive)
            .map(|l| &*l.name)
            .collect();
        self.0
            .iter()
            .all(|l| l.positive || !positive.contains(&*l.name))
    }

    /// The same constraint on letters, with occurrence tags dropped.
    pub fn erased(&self) -> LiteralSet {
        LiteralSet(self.0.iter().map(Lit::erased).collect())
    }

    pub fn is_subset(&self, other: &LiteralSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &LiteralSet) -> LiteralSet {
        LiteralSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &LiteralSet) -> LiteralSet {
        LiteralSet(self.0.intersection(&other.0).cloned().collect())
    }

    /// Conjunction of two labels, or `None` when it is contradictory.
    pub fn conjoin(&self, other: &LiteralSet) -> Option<LiteralSet> {
        let out = self.union(other);
        out.is_consistent().then_some(out)
    }

    /// `letter ⊨ self`: positive literals present, negative ones absent.
    pub fn satisfied_by(&self, letter: &Letter) -> bool {
        self.0.iter().all(|l| l.holds_in(letter))
    }

    /// The smallest letter satisfying a consistent label: its positive atoms.
    pub fn minimal_letter(&self) -> Letter {
        self.0
            .iter()
            .filter(|l| l.positive)
            .map(|l| l.name.clone())
            .collect()
    }
}

impl FromIterator<Lit> for LiteralSet {
    fn from_iter<T: IntoIterator<Item = Lit>>(iter: T) -> Self {
        LiteralSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a LiteralSet {
    type Item = &'a Lit;
    type IntoIter = std::collections::btree_set::Iter<'a, Lit>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Alphabet-level rendering: tags are dropped and duplicates merged.
impl fmt::Display for LiteralSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("True");
        }
        for (i, l) in self.erased().0.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LiteralSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

/// An alphabet symbol: the set of propositions that hold.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(BTreeSet<Arc<str>>);

impl Letter {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Self {
        Letter(names.into_iter().map(|s| Arc::from(s.as_ref())).collect())
    }

    /// The letter whose bit `i` in `mask` selects `ap[i]`.
    pub fn from_mask(ap: &[Arc<str>], mask: usize) -> Self {
        Letter(
            ap.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, n)| n.clone())
                .collect(),
        )
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<str>> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<Arc<str>> for Letter {
    fn from_iter<T: IntoIterator<Item = Arc<str>>>(iter: T) -> Self {
        Letter(iter.into_iter().collect())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(n)?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjoin_rejects_contradiction() {
        let a = LiteralSet::singleton(Lit::pos("a"));
        let na = LiteralSet::singleton(Lit::neg("a"));
        assert!(a.conjoin(&na).is_none());
        let b = LiteralSet::singleton(Lit::pos("b"));
        assert_eq!(a.conjoin(&b).unwrap().len(), 2);
    }

    #[test]
    fn satisfaction() {
        let label: LiteralSet = [Lit::pos("a"), Lit::neg("b")].into_iter().collect();
        assert!(label.satisfied_by(&Letter::new(["a"])));
        assert!(!label.satisfied_by(&Letter::new(["a", "b"])));
        assert!(!label.satisfied_by(&Letter::new::<&str>([])));
        assert!(LiteralSet::empty().satisfied_by(&Letter::new(["z"])));
        assert_eq!(label.minimal_letter(), Letter::new(["a"]));
    }

    #[test]
    fn tags_matter_for_membership_only() {
        let a1 = Lit::tagged("a", true, 1);
        let a2 = Lit::tagged("a", true, 2);
        let both: LiteralSet = [a1.clone(), a2.clone()].into_iter().collect();
        assert_eq!(both.len(), 2);
        assert!(!LiteralSet::singleton(a1.clone()).is_subset(&LiteralSet::singleton(a2)));
        assert!(both.satisfied_by(&Letter::new(["a"])));
        assert_eq!(both.to_string(), "a");
        let clash =
            LiteralSet::singleton(a1).conjoin(&LiteralSet::singleton(Lit::tagged("a", false, 3)));
        assert!(clash.is_none());
    }

    #[test]
    fn mask_letters() {
        let ap: Vec<Arc<str>> = vec!["a".into(), "b".into()];
        assert_eq!(Letter::from_mask(&ap, 0b10), Letter::new(["b"]));
        assert_eq!(Letter::from_mask(&ap, 0b11), Letter::new(["a", "b"]));
    }
}
