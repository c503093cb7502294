use fixedbitset::FixedBitSet;

use crate::ring::Elem;

/// A subset of a ring or module carrier, stored as a bitset over element indices.
///
/// Equality, hashing and ordering depend only on the members, which makes
/// `ElemSet` the canonical key for ideals and submodules.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElemSet(FixedBitSet);

impl ElemSet {
    pub fn new(universe: usize) -> Self {
        ElemSet(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElemSet(bits)
    }

    pub fn from_elems(universe: usize, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut set = Self::new(universe);
        for e in elems {
            set.insert(e);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, e: Elem) {
        self.0.insert(e.index());
    }

    /// Inserts `e`, returning true if it was not present.
    pub fn put(&mut self, e: Elem) -> bool {
        !self.0.put(e.index())
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.0.contains(e.index())
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.0.ones().map(|i| Elem(i as u32))
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut out = self.clone();
        out.0.union_with(&other.0);
        out
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut out = self.clone();
        out.0.intersect_with(&other.0);
        out
    }

    pub fn difference(&self, other: &ElemSet) -> ElemSet {
        let mut out = self.clone();
        out.0.difference_with(&other.0);
        out
    }

    pub fn complement(&self) -> ElemSet {
        let mut out = self.clone();
        out.0.toggle_range(..);
        out
    }

    pub fn comparable(&self, other: &ElemSet) -> bool {
        self.is_subset(other) || other.is_subset(self)
    }

    pub fn first(&self) -> Option<Elem> {
        self.0.minimum().map(|i| Elem(i as u32))
    }
}

/// Grows the additive subgroup `set` (with member list `members`) to the subgroup
/// generated by it and `y`, adding whole cosets at a time.
pub(crate) fn extend_subgroup(add: impl Fn(Elem, Elem) -> Elem, set: &mut ElemSet, members: &mut Vec<Elem>, y: Elem) {
    if set.contains(y) {
        return;
    }
    let base = members.clone();
    let mut c = y;
    while !set.contains(c) {
        for &h in &base {
            let e = add(h, c);
            if set.put(e) {
                members.push(e);
            }
        }
        c = add(c, y);
    }
}
