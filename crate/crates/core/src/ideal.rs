//! Ideals of a finite ring: generation, arithmetic, enumeration and the prime spectrum.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::elemset::{extend_subgroup, ElemSet};
use crate::error::{input, Error, Result};
use crate::predicates;
use crate::ring::construct::coset_classes;
use crate::ring::{Elem, FiniteRing};

/// Ring-independent part of an ideal, as stored in ring caches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IdealData {
    pub(crate) generators: Vec<Elem>,
    pub(crate) members: ElemSet,
}

/// An ideal: a canonical member set plus the generators it was built from.
///
/// Equality compares member sets only; generator lists are not canonical.
#[derive(Clone)]
pub struct Ideal {
    ring: FiniteRing,
    generators: Vec<Elem>,
    members: ElemSet,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.members == other.members
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{} in {}", self.fmt_generators(), self.ring.name())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_generators())
    }
}

/// Principal ideals `xR`, indexed by `x`.
pub(crate) fn principal_sets(ring: &FiniteRing) -> &Vec<ElemSet> {
    ring.cache().principal.get_or_init(|| {
        ring.elements()
            .map(|x| ElemSet::from_elems(ring.size(), ring.elements().map(|r| ring.mul(x, r))))
            .collect()
    })
}

pub(crate) fn subgroup_sum(ring: &FiniteRing, a: &ElemSet, b: &ElemSet) -> ElemSet {
    let mut set = a.clone();
    let mut members = a.to_vec();
    for y in b.iter() {
        extend_subgroup(|p, q| ring.add(p, q), &mut set, &mut members, y);
    }
    set
}

impl Ideal {
    pub(crate) fn from_data(ring: &FiniteRing, data: &IdealData) -> Ideal {
        Ideal {
            ring: ring.clone(),
            generators: data.generators.clone(),
            members: data.members.clone(),
        }
    }

    pub(crate) fn data(&self) -> IdealData {
        IdealData {
            generators: self.generators.clone(),
            members: self.members.clone(),
        }
    }

    /// Smallest ideal containing `gens`.
    pub fn generated(ring: &FiniteRing, gens: &[Elem]) -> Ideal {
        let principal = principal_sets(ring);
        let mut set = ElemSet::from_elems(ring.size(), [ring.zero()]);
        let mut members = vec![ring.zero()];
        for &g in gens {
            for y in principal[g.index()].iter() {
                extend_subgroup(|p, q| ring.add(p, q), &mut set, &mut members, y);
            }
        }
        let generators = gens.iter().copied().filter(|&g| g != Elem::ZERO).collect();
        Ideal {
            ring: ring.clone(),
            generators,
            members: set,
        }
    }

    pub fn principal(ring: &FiniteRing, x: Elem) -> Ideal {
        Ideal::generated(ring, &[x])
    }

    pub fn zero(ring: &FiniteRing) -> Ideal {
        Ideal::generated(ring, &[])
    }

    pub fn unit(ring: &FiniteRing) -> Ideal {
        Ideal::generated(ring, &[ring.one()])
    }

    /// Wraps a member set already known to be an ideal, choosing generators greedily.
    pub(crate) fn from_members(ring: &FiniteRing, members: ElemSet) -> Ideal {
        let principal = principal_sets(ring);
        let mut covered = ElemSet::from_elems(ring.size(), [ring.zero()]);
        let mut covered_list = vec![ring.zero()];
        let mut generators = Vec::new();
        for x in members.iter() {
            if covered.contains(x) {
                continue;
            }
            generators.push(x);
            for y in principal[x.index()].iter() {
                extend_subgroup(|p, q| ring.add(p, q), &mut covered, &mut covered_list, y);
            }
        }
        debug_assert_eq!(covered, members);
        Ideal {
            ring: ring.clone(),
            generators,
            members,
        }
    }

    /// Like [`Ideal::from_members`] but checks closure under `+` and ring multiplication.
    pub fn from_members_checked(ring: &FiniteRing, members: ElemSet) -> Result<Ideal> {
        if members.universe() != ring.size() || !members.contains(ring.zero()) {
            return input("not an ideal: missing zero or wrong carrier");
        }
        for a in members.iter() {
            for b in members.iter() {
                if !members.contains(ring.add(a, b)) {
                    return Err(Error::Validation(format!(
                        "not an ideal: {} + {} escapes",
                        ring.fmt_elem(a),
                        ring.fmt_elem(b)
                    )));
                }
            }
            for r in ring.elements() {
                if !members.contains(ring.mul(r, a)) {
                    return Err(Error::Validation(format!(
                        "not an ideal: {} * {} escapes",
                        ring.fmt_elem(r),
                        ring.fmt_elem(a)
                    )));
                }
            }
        }
        Ok(Ideal::from_members(ring, members))
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_proper(&self) -> bool {
        !self.contains(self.ring.one())
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn fmt_generators(&self) -> String {
        if self.generators.is_empty() {
            return "(0)".to_string();
        }
        let gens: Vec<String> = self.generators.iter().map(|&g| self.ring.fmt_elem(g)).collect();
        format!("({})", gens.join(", "))
    }

    pub fn fmt_members(&self) -> String {
        self.ring.fmt_set(&self.members)
    }

    fn same_ring(&self, other: &Ideal, op: &str) -> Result<()> {
        if self.ring != other.ring {
            return input(format!("{op}: ideals live in different rings"));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other, "ideal sum")?;
        let members = subgroup_sum(&self.ring, &self.members, &other.members);
        let mut generators = self.generators.clone();
        for &g in &other.generators {
            if !generators.contains(&g) {
                generators.push(g);
            }
        }
        Ok(Ideal {
            ring: self.ring.clone(),
            generators,
            members,
        })
    }

    /// Product ideal, generated by pairwise products of generators.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other, "ideal product")?;
        let mut gens = Vec::new();
        for &a in &self.generators {
            for &b in &other.generators {
                let p = self.ring.mul(a, b);
                if !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        Ok(Ideal::generated(&self.ring, &gens))
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other, "ideal intersection")?;
        Ok(Ideal::from_members(&self.ring, self.members.intersection(&other.members)))
    }

    /// `x * I` as a set (an ideal, since `I` is one).
    pub fn scaled(&self, x: Elem) -> Ideal {
        let members = ElemSet::from_elems(self.ring.size(), self.members.iter().map(|a| self.ring.mul(x, a)));
        Ideal::from_members(&self.ring, members)
    }

    /// Tests primality through the quotient: no two nonzero classes multiply to zero.
    /// Returns a witness pair `(a, b)` with `a, b` outside and `ab` inside on failure.
    pub fn prime_witness(&self) -> Option<PrimeFailure> {
        if !self.is_proper() {
            return Some(PrimeFailure::NotProper);
        }
        let (reps, class_of) = coset_classes(&self.ring, &self.members);
        for &a in &reps[1..] {
            for &b in &reps[1..] {
                if class_of[self.ring.mul(a, b).index()] == 0 {
                    return Some(PrimeFailure::ZeroDivisors(a, b));
                }
            }
        }
        None
    }

    pub fn is_prime(&self) -> bool {
        self.prime_witness().is_none()
    }

    /// Maximal iff the quotient is a field.
    pub fn is_maximal(&self) -> bool {
        if !self.is_proper() {
            return false;
        }
        let (reps, class_of) = coset_classes(&self.ring, &self.members);
        let one_class = class_of[self.ring.one().index()];
        reps[1..]
            .iter()
            .all(|&a| reps.iter().any(|&b| class_of[self.ring.mul(a, b).index()] == one_class))
    }

    /// Regular iff some member is a non-zero-divisor.
    pub fn is_regular(&self) -> bool {
        let zd = predicates::zero_divisors(&self.ring);
        self.members.iter().any(|x| !zd.contains(x))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeFailure {
    NotProper,
    ZeroDivisors(Elem, Elem),
}

pub fn ideal_generated(ring: &FiniteRing, gens: &[Elem]) -> Ideal {
    Ideal::generated(ring, gens)
}

pub fn annihilator(ring: &FiniteRing, x: Elem) -> Ideal {
    let members = ElemSet::from_elems(ring.size(), ring.elements().filter(|&r| ring.mul(r, x) == Elem::ZERO));
    Ideal::from_members(ring, members)
}

/// Every ideal exactly once, ordered by size and then by member set.
///
/// Built as the closure of the principal ideals under sums.
pub fn all_ideals(ring: &FiniteRing) -> Result<Vec<Ideal>> {
    let data = ring
        .cache()
        .ideals
        .get_or_init(|| enumerate_ideals(ring).map(Arc::new))
        .clone()?;
    Ok(data.iter().map(|d| Ideal::from_data(ring, d)).collect())
}

fn enumerate_ideals(ring: &FiniteRing) -> Result<Vec<IdealData>> {
    let cap = ring.limits().max_ideals;
    let principal = principal_sets(ring);
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut gens_of: Vec<(Elem, &ElemSet)> = Vec::new();
    for x in ring.elements() {
        if seen.insert(principal[x.index()].clone()) {
            gens_of.push((x, &principal[x.index()]));
        }
    }
    gens_of.sort_by(|a, b| (a.1.len(), a.1).cmp(&(b.1.len(), b.1)));
    if seen.len() > cap {
        return Err(Error::ResourceCap { what: "ideal count", limit: cap });
    }
    let mut found: Vec<IdealData> = gens_of
        .iter()
        .map(|&(x, set)| IdealData {
            generators: if x == Elem::ZERO { vec![] } else { vec![x] },
            members: set.clone(),
        })
        .collect();
    let mut queue: VecDeque<usize> = (0..found.len()).collect();
    while let Some(i) = queue.pop_front() {
        let base = found[i].clone();
        for &(x, p) in &gens_of {
            if p.is_subset(&base.members) {
                continue;
            }
            let sum = subgroup_sum(ring, &base.members, p);
            if seen.insert(sum.clone()) {
                if seen.len() > cap {
                    return Err(Error::ResourceCap { what: "ideal count", limit: cap });
                }
                let mut generators = base.generators.clone();
                generators.push(x);
                found.push(IdealData { generators, members: sum });
                queue.push_back(found.len() - 1);
            }
        }
    }
    found.sort_by(|a, b| (a.members.len(), &a.members).cmp(&(b.members.len(), &b.members)));
    Ok(found)
}

pub fn is_prime(ideal: &Ideal) -> bool {
    ideal.is_prime()
}

pub fn is_maximal(ideal: &Ideal) -> bool {
    ideal.is_maximal()
}

/// Maximal ideals, one per primitive idempotent `e`: `{x : xe is nilpotent}`.
pub fn max_spec(ring: &FiniteRing) -> Vec<Ideal> {
    let data = ring.cache().maximal.get_or_init(|| {
        let nil = predicates::nilpotents(ring);
        let idempotents: Vec<Elem> = ring
            .elements()
            .filter(|&e| e != Elem::ZERO && ring.mul(e, e) == e)
            .collect();
        let primitive = idempotents
            .iter()
            .copied()
            .filter(|&e| idempotents.iter().all(|&f| f == e || ring.mul(f, e) != f));
        let mut out: Vec<IdealData> = primitive
            .map(|e| {
                let members = ElemSet::from_elems(ring.size(), ring.elements().filter(|&x| nil.contains(ring.mul(x, e))));
                Ideal::from_members(ring, members).data()
            })
            .collect();
        out.sort_by(|a, b| (a.members.len(), &a.members).cmp(&(b.members.len(), &b.members)));
        out
    });
    data.iter().map(|d| Ideal::from_data(ring, d)).collect()
}

/// Prime ideals. In a finite ring every prime is maximal (a finite domain is a
/// field), so this coincides with [`max_spec`].
pub fn spec(ring: &FiniteRing) -> Vec<Ideal> {
    max_spec(ring)
}

pub fn jacobson(ring: &FiniteRing) -> Ideal {
    let members = max_spec(ring)
        .iter()
        .fold(ElemSet::full(ring.size()), |acc, m| acc.intersection(m.members()));
    Ideal::from_members(ring, members)
}

/// Primes containing `ideal`.
pub fn variety(ideal: &Ideal) -> Vec<Ideal> {
    spec(ideal.ring()).into_iter().filter(|p| ideal.is_subset(p)).collect()
}

pub fn is_local(ring: &FiniteRing) -> bool {
    max_spec(ring).len() == 1
}
