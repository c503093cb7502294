//! Finite modules over finite rings, submodule lattices and localization.
//!
//! Localization is realized as a quotient: in a finite ring every regular element
//! is a unit, so `R_U` is `R/K` with `K = {r : ur = 0 for some u in U}`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use crate::elemset::{extend_subgroup, ElemSet};
use crate::error::{input, Error, Result};
use crate::ideal::{max_spec, spec, Ideal};
use crate::predicates;
use crate::ring::{make_quotient, Elem, Encoding, FiniteRing, RingHom};

enum ModuleKind {
    /// An ideal of `ring`, carried by its sorted members.
    Ideal {
        ring: FiniteRing,
        elems: Vec<Elem>,
        index_of: Vec<u32>,
    },
    Product {
        left: FiniteModule,
        right: FiniteModule,
    },
    /// `inner` viewed over the domain of `hom`.
    Via {
        hom: RingHom,
        inner: FiniteModule,
    },
    /// `inner` modulo a submodule, with minimal coset representatives.
    Quotient {
        inner: FiniteModule,
        reps: Vec<Elem>,
        class_of: Vec<u32>,
    },
}

struct ModuleTables {
    add: Vec<u32>,
    act: Vec<u32>,
}

struct ModuleData {
    id: u64,
    name: String,
    base: FiniteRing,
    size: usize,
    kind: ModuleKind,
    neg: Vec<u32>,
    tables: Option<ModuleTables>,
    cyclic: OnceLock<Vec<ElemSet>>,
    submodules: OnceLock<Result<Arc<Vec<ElemSet>>>>,
}

static NEXT_MODULE_ID: AtomicU64 = AtomicU64::new(1);

/// A finite module over a finite ring. Index `0` is the zero element.
#[derive(Clone)]
pub struct FiniteModule(Arc<ModuleData>);

impl PartialEq for FiniteModule {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for FiniteModule {}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteModule({} over {}, size {})", self.0.name, self.0.base.name(), self.0.size)
    }
}

impl fmt::Display for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)
    }
}

fn split(a: Elem, n: usize) -> (Elem, Elem) {
    (Elem((a.index() / n) as u32), Elem((a.index() % n) as u32))
}

fn join(l: Elem, r: Elem, n: usize) -> Elem {
    Elem((l.index() * n + r.index()) as u32)
}

impl ModuleKind {
    fn add_raw(&self, a: Elem, b: Elem) -> Elem {
        match self {
            ModuleKind::Ideal { ring, elems, index_of } => {
                Elem(index_of[ring.add(elems[a.index()], elems[b.index()]).index()])
            }
            ModuleKind::Product { left, right } => {
                let n = right.size();
                let ((l1, r1), (l2, r2)) = (split(a, n), split(b, n));
                join(left.add(l1, l2), right.add(r1, r2), n)
            }
            ModuleKind::Via { inner, .. } => inner.add(a, b),
            ModuleKind::Quotient { inner, reps, class_of } => {
                Elem(class_of[inner.add(reps[a.index()], reps[b.index()]).index()])
            }
        }
    }

    fn act_raw(&self, r: Elem, m: Elem) -> Elem {
        match self {
            ModuleKind::Ideal { ring, elems, index_of } => Elem(index_of[ring.mul(r, elems[m.index()]).index()]),
            ModuleKind::Product { left, right } => {
                let n = right.size();
                let (a, b) = split(m, n);
                join(left.act(r, a), right.act(r, b), n)
            }
            ModuleKind::Via { hom, inner } => inner.act(hom.apply(r), m),
            ModuleKind::Quotient { inner, reps, class_of } => Elem(class_of[inner.act(r, reps[m.index()]).index()]),
        }
    }

    fn neg_raw(&self, a: Elem) -> Elem {
        match self {
            ModuleKind::Ideal { ring, elems, index_of } => Elem(index_of[ring.neg(elems[a.index()]).index()]),
            ModuleKind::Product { left, right } => {
                let n = right.size();
                let (l, r) = split(a, n);
                join(left.neg(l), right.neg(r), n)
            }
            ModuleKind::Via { inner, .. } => inner.neg(a),
            ModuleKind::Quotient { inner, reps, class_of } => Elem(class_of[inner.neg(reps[a.index()]).index()]),
        }
    }
}

impl FiniteModule {
    fn build(name: String, base: &FiniteRing, size: usize, kind: ModuleKind) -> Result<FiniteModule> {
        base.limits().check_ring_size(size)?;
        let neg = (0..size).map(|a| kind.neg_raw(Elem(a as u32)).0).collect();
        let tables = if size <= 1024 && size * base.size() <= 1 << 22 {
            let mut add = Vec::with_capacity(size * size);
            for a in 0..size as u32 {
                for b in 0..size as u32 {
                    add.push(kind.add_raw(Elem(a), Elem(b)).0);
                }
            }
            let mut act = Vec::with_capacity(size * base.size());
            for r in base.elements() {
                for m in 0..size as u32 {
                    act.push(kind.act_raw(r, Elem(m)).0);
                }
            }
            Some(ModuleTables { add, act })
        } else {
            None
        };
        Ok(FiniteModule(Arc::new(ModuleData {
            id: NEXT_MODULE_ID.fetch_add(1, Ordering::Relaxed),
            name,
            base: base.clone(),
            size,
            kind,
            neg,
            tables,
            cyclic: OnceLock::new(),
            submodules: OnceLock::new(),
        })))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn base(&self) -> &FiniteRing {
        &self.0.base
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn is_zero_module(&self) -> bool {
        self.0.size == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.size as u32).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.add[a.index() * self.0.size + b.index()]),
            None => self.0.kind.add_raw(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.index()])
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Scalar action `r * m`.
    #[inline]
    pub fn act(&self, r: Elem, m: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.act[r.index() * self.0.size + m.index()]),
            None => self.0.kind.act_raw(r, m),
        }
    }

    pub fn encode(&self, m: Elem) -> Encoding {
        match &self.0.kind {
            ModuleKind::Ideal { ring, elems, .. } => ring.encode(elems[m.index()]),
            ModuleKind::Product { left, right } => {
                let (a, b) = split(m, right.size());
                Encoding::Pair(Box::new(left.encode(a)), Box::new(right.encode(b)))
            }
            ModuleKind::Via { inner, .. } => inner.encode(m),
            ModuleKind::Quotient { inner, reps, .. } => Encoding::Coset(Box::new(inner.encode(reps[m.index()]))),
        }
    }

    pub fn decode(&self, enc: &Encoding) -> Option<Elem> {
        match (&self.0.kind, enc) {
            (ModuleKind::Ideal { ring, index_of, .. }, _) => {
                let e = ring.decode(enc)?;
                let i = index_of[e.index()];
                (i != u32::MAX).then_some(Elem(i))
            }
            (ModuleKind::Product { left, right }, Encoding::Pair(a, b)) => {
                Some(join(left.decode(a)?, right.decode(b)?, right.size()))
            }
            (ModuleKind::Via { inner, .. }, _) => inner.decode(enc),
            (ModuleKind::Quotient { inner, reps, class_of }, Encoding::Coset(e)) => {
                let m = inner.decode(e)?;
                let c = class_of[m.index()];
                (reps[c as usize] == m).then_some(Elem(c))
            }
            _ => None,
        }
    }

    pub fn fmt_elem(&self, m: Elem) -> String {
        match &self.0.kind {
            ModuleKind::Ideal { ring, elems, .. } => ring.fmt_elem(elems[m.index()]),
            ModuleKind::Product { left, right } => {
                let (a, b) = split(m, right.size());
                format!("({}, {})", left.fmt_elem(a), right.fmt_elem(b))
            }
            ModuleKind::Via { inner, .. } => inner.fmt_elem(m),
            ModuleKind::Quotient { inner, reps, .. } => format!("[{}]", inner.fmt_elem(reps[m.index()])),
        }
    }

    pub fn fmt_set(&self, set: &ElemSet) -> String {
        let items: Vec<String> = set.iter().map(|m| self.fmt_elem(m)).collect();
        format!("{{{}}}", items.join(", "))
    }

    /// For modules carried by an ideal: the ring element behind `m`.
    pub fn ring_element(&self, m: Elem) -> Option<Elem> {
        match &self.0.kind {
            ModuleKind::Ideal { elems, .. } => Some(elems[m.index()]),
            ModuleKind::Via { inner, .. } => inner.ring_element(m),
            _ => None,
        }
    }

    /// Inverse of [`FiniteModule::ring_element`].
    pub fn from_ring_element(&self, e: Elem) -> Option<Elem> {
        match &self.0.kind {
            ModuleKind::Ideal { index_of, .. } => {
                let i = *index_of.get(e.index())?;
                (i != u32::MAX).then_some(Elem(i))
            }
            ModuleKind::Via { inner, .. } => inner.from_ring_element(e),
            _ => None,
        }
    }

    /// `(f, B)` when this module is a ring `B` viewed over the base through `f`.
    pub fn as_ring_extension(&self) -> Option<(RingHom, FiniteRing)> {
        match &self.0.kind {
            ModuleKind::Ideal { ring, elems, .. } if elems.len() == ring.size() => {
                Some((RingHom::identity(ring), ring.clone()))
            }
            ModuleKind::Via { hom, inner } => match &inner.0.kind {
                ModuleKind::Ideal { ring, elems, .. } if elems.len() == ring.size() => Some((hom.clone(), ring.clone())),
                _ => None,
            },
            _ => None,
        }
    }

    /// Exhaustive check of the module axioms.
    pub fn check_axioms(&self) -> Result<()> {
        let base = &self.0.base;
        let fail = |what: &str| Err(Error::Validation(format!("module {}: {} fails", self.name(), what)));
        for a in self.elements() {
            if self.add(a, self.zero()) != a || self.add(a, self.neg(a)) != self.zero() {
                return fail("additive identity/inverse");
            }
            if self.act(base.one(), a) != a {
                return fail("unital action");
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return fail("additive commutativity");
                }
                for c in self.elements() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity");
                    }
                }
                for r in base.elements() {
                    if self.act(r, self.add(a, b)) != self.add(self.act(r, a), self.act(r, b)) {
                        return fail("distributivity over module addition");
                    }
                }
            }
            for r in base.elements() {
                for s in base.elements() {
                    if self.act(base.add(r, s), a) != self.add(self.act(r, a), self.act(s, a)) {
                        return fail("distributivity over ring addition");
                    }
                    if self.act(base.mul(r, s), a) != self.act(r, self.act(s, a)) {
                        return fail("associativity of the action");
                    }
                }
            }
        }
        Ok(())
    }

    /// Cyclic submodules `Rm`, indexed by `m`.
    pub(crate) fn cyclic_sets(&self) -> &Vec<ElemSet> {
        self.0.cyclic.get_or_init(|| {
            self.elements()
                .map(|m| ElemSet::from_elems(self.size(), self.0.base.elements().map(|r| self.act(r, m))))
                .collect()
        })
    }
}

/// `I` as an `R`-module.
pub fn module_from_ideal(ring: &FiniteRing, ideal: &Ideal) -> Result<FiniteModule> {
    if ideal.ring() != ring {
        return input("module_from_ideal: ideal belongs to a different ring");
    }
    let elems: Vec<Elem> = ideal.members().iter().collect();
    let mut index_of = vec![u32::MAX; ring.size()];
    for (i, e) in elems.iter().enumerate() {
        index_of[e.index()] = i as u32;
    }
    let name = if ideal.contains(ring.one()) {
        ring.name().to_string()
    } else {
        format!("{}{}", ideal.fmt_generators(), ring.name())
    };
    FiniteModule::build(name, ring, elems.len(), ModuleKind::Ideal { ring: ring.clone(), elems, index_of })
}

/// `R` as a module over itself.
pub fn module_from_ring(ring: &FiniteRing) -> FiniteModule {
    module_from_ideal(ring, &Ideal::unit(ring)).expect("unit ideal module")
}

/// `R/I` as an `R`-module.
pub fn module_quotient(ring: &FiniteRing, ideal: &Ideal) -> Result<FiniteModule> {
    if ideal.ring() != ring {
        return input("module_quotient: ideal belongs to a different ring");
    }
    let whole = module_from_ring(ring);
    let name = format!("{}/{}", ring.name(), ideal.fmt_generators());
    quotient_by(&whole, ideal.members(), name)
}

pub fn module_product(left: &FiniteModule, right: &FiniteModule) -> Result<FiniteModule> {
    if left.base() != right.base() {
        return input("module_product: modules over different rings");
    }
    let size = left.size().saturating_mul(right.size());
    FiniteModule::build(
        format!("({} x {})", left.name(), right.name()),
        left.base(),
        size,
        ModuleKind::Product {
            left: left.clone(),
            right: right.clone(),
        },
    )
}

/// Restriction of scalars: `M` over the codomain of `f` becomes a module over its domain.
pub fn module_via_hom(f: &RingHom, module: &FiniteModule) -> Result<FiniteModule> {
    if f.codomain() != module.base() {
        return input("module_via_hom: module is not over the codomain of the hom");
    }
    if f.is_identity() {
        return Ok(module.clone());
    }
    FiniteModule::build(
        format!("{} over {}", module.name(), f.domain().name()),
        f.domain(),
        module.size(),
        ModuleKind::Via {
            hom: f.clone(),
            inner: module.clone(),
        },
    )
}

/// `M/N` for a submodule member set `N`.
pub(crate) fn quotient_by(module: &FiniteModule, sub: &ElemSet, name: String) -> Result<FiniteModule> {
    if sub.len() == 1 {
        return Ok(module.clone());
    }
    let mut class_of = vec![u32::MAX; module.size()];
    let mut reps = Vec::new();
    let members: Vec<Elem> = sub.iter().collect();
    for a in module.elements() {
        if class_of[a.index()] != u32::MAX {
            continue;
        }
        let k = reps.len() as u32;
        reps.push(a);
        for &n in &members {
            class_of[module.add(a, n).index()] = k;
        }
    }
    FiniteModule::build(
        name,
        module.base(),
        reps.len(),
        ModuleKind::Quotient {
            inner: module.clone(),
            reps,
            class_of,
        },
    )
}

/// A submodule: canonical member set plus generators.
#[derive(Clone)]
pub struct Submodule {
    module: FiniteModule,
    generators: Vec<Elem>,
    members: ElemSet,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.module == other.module && self.members == other.members
    }
}

impl Eq for Submodule {}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule{} of {}", self.module.fmt_set(&self.members), self.module.name())
    }
}

fn span(module: &FiniteModule, start: &ElemSet, gens: impl IntoIterator<Item = Elem>) -> ElemSet {
    let cyclic = module.cyclic_sets();
    let mut set = start.clone();
    let mut list = start.to_vec();
    for g in gens {
        for y in cyclic[g.index()].iter() {
            extend_subgroup(|a, b| module.add(a, b), &mut set, &mut list, y);
        }
    }
    set
}

impl Submodule {
    pub fn generated(module: &FiniteModule, gens: &[Elem]) -> Submodule {
        let zero = ElemSet::from_elems(module.size(), [module.zero()]);
        Submodule {
            module: module.clone(),
            generators: gens.iter().copied().filter(|&g| g != Elem::ZERO).collect(),
            members: span(module, &zero, gens.iter().copied()),
        }
    }

    /// Wraps a member set known to be a submodule.
    pub fn from_members(module: &FiniteModule, members: ElemSet) -> Submodule {
        Submodule {
            module: module.clone(),
            generators: Vec::new(),
            members,
        }
    }

    pub fn whole(module: &FiniteModule) -> Submodule {
        Submodule {
            module: module.clone(),
            generators: Vec::new(),
            members: ElemSet::full(module.size()),
        }
    }

    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, m: Elem) -> bool {
        self.members.contains(m)
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        Submodule {
            module: self.module.clone(),
            generators: self.generators.iter().chain(&other.generators).copied().collect(),
            members: span(&self.module, &self.members, other.members.iter()),
        }
    }

    pub fn intersection(&self, other: &Submodule) -> Submodule {
        Submodule {
            module: self.module.clone(),
            generators: Vec::new(),
            members: self.members.intersection(&other.members),
        }
    }

    /// `r * N`.
    pub fn scaled(&self, r: Elem) -> Submodule {
        let members = ElemSet::from_elems(self.module.size(), self.members.iter().map(|m| self.module.act(r, m)));
        Submodule {
            module: self.module.clone(),
            generators: self.generators.iter().map(|&g| self.module.act(r, g)).collect(),
            members,
        }
    }
}

/// `r * M` as a member set.
pub fn scaled_module(module: &FiniteModule, r: Elem) -> ElemSet {
    ElemSet::from_elems(module.size(), module.elements().map(|m| module.act(r, m)))
}

/// `Z(M) = {r : r m = 0 for some nonzero m}`.
pub fn zero_divisors_on(module: &FiniteModule) -> ElemSet {
    let base = module.base();
    ElemSet::from_elems(
        base.size(),
        base.elements()
            .filter(|&r| module.elements().skip(1).any(|m| module.act(r, m) == Elem::ZERO)),
    )
}

/// Every element is killed by some regular element of the base ring.
pub fn is_torsion(module: &FiniteModule) -> bool {
    let regular = predicates::regular_elements(module.base());
    module
        .elements()
        .all(|m| regular.iter().any(|t| module.act(t, m) == Elem::ZERO))
}

/// All submodules, ordered by size and then member set.
pub fn submodules(module: &FiniteModule) -> Result<Vec<Submodule>> {
    let sets = module
        .0
        .submodules
        .get_or_init(|| enumerate_submodules(module).map(Arc::new))
        .clone()?;
    Ok(sets
        .iter()
        .map(|s| Submodule {
            module: module.clone(),
            generators: Vec::new(),
            members: s.clone(),
        })
        .collect())
}

fn enumerate_submodules(module: &FiniteModule) -> Result<Vec<ElemSet>> {
    let cap = module.base().limits().max_submodules;
    let cyclic = module.cyclic_sets();
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut gens: Vec<&ElemSet> = Vec::new();
    for m in module.elements() {
        if seen.insert(cyclic[m.index()].clone()) {
            gens.push(&cyclic[m.index()]);
        }
    }
    if seen.len() > cap {
        return Err(Error::ResourceCap { what: "submodule count", limit: cap });
    }
    let mut found: Vec<ElemSet> = gens.iter().map(|&s| s.clone()).collect();
    let mut queue: VecDeque<usize> = (0..found.len()).collect();
    while let Some(i) = queue.pop_front() {
        let base = found[i].clone();
        for &c in &gens {
            if c.is_subset(&base) {
                continue;
            }
            let mut set = base.clone();
            let mut list = base.to_vec();
            for y in c.iter() {
                extend_subgroup(|a, b| module.add(a, b), &mut set, &mut list, y);
            }
            if seen.insert(set.clone()) {
                if seen.len() > cap {
                    return Err(Error::ResourceCap { what: "submodule count", limit: cap });
                }
                found.push(set);
                queue.push_back(found.len() - 1);
            }
        }
    }
    found.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(found)
}

/// Submodules totally ordered by inclusion. Every submodule is a sum of cyclic
/// ones, so comparability of cyclic submodules suffices.
pub fn is_uniserial(module: &FiniteModule) -> bool {
    let mut distinct: Vec<&ElemSet> = Vec::new();
    let mut seen = HashSet::new();
    for s in module.cyclic_sets() {
        if seen.insert(s) {
            distinct.push(s);
        }
    }
    distinct
        .iter()
        .enumerate()
        .all(|(i, a)| distinct[i + 1..].iter().all(|b| a.comparable(b)))
}

/// `(N + L) ∩ K = (N ∩ K) + (L ∩ K)` for all submodule triples.
pub fn has_distributive_lattice(module: &FiniteModule) -> Result<bool> {
    Ok(distributive_failure(module)?.is_none())
}

/// A triple `(N, L, K)` violating distributivity, if any.
pub fn distributive_failure(module: &FiniteModule) -> Result<Option<(Submodule, Submodule, Submodule)>> {
    let subs = submodules(module)?;
    let n = subs.len();
    let index: HashMap<&ElemSet, usize> = subs.iter().enumerate().map(|(i, s)| (s.members(), i)).collect();
    let mut join = vec![0usize; n * n];
    let mut meet = vec![0usize; n * n];
    for i in 0..n {
        for j in i..n {
            let s = span(module, subs[i].members(), subs[j].members().iter());
            let m = subs[i].members().intersection(subs[j].members());
            let (js, ms) = (index[&s], index[&m]);
            join[i * n + j] = js;
            join[j * n + i] = js;
            meet[i * n + j] = ms;
            meet[j * n + i] = ms;
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            let ab = join[a * n + b];
            for c in 0..n {
                if meet[ab * n + c] != join[meet[a * n + c] * n + meet[b * n + c]] {
                    return Ok(Some((subs[a].clone(), subs[b].clone(), subs[c].clone())));
                }
            }
        }
    }
    Ok(None)
}

/// A multiplicatively closed subset containing 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativeSet {
    ring: FiniteRing,
    members: ElemSet,
}

impl MultiplicativeSet {
    /// Closure of `elems ∪ {1}` under multiplication.
    pub fn new(ring: &FiniteRing, elems: impl IntoIterator<Item = Elem>) -> MultiplicativeSet {
        let mut members = ElemSet::from_elems(ring.size(), [ring.one()]);
        let mut list = vec![ring.one()];
        let mut queue: VecDeque<Elem> = elems.into_iter().collect();
        while let Some(x) = queue.pop_front() {
            if !members.put(x) {
                continue;
            }
            let snapshot = list.clone();
            list.push(x);
            for y in snapshot.into_iter().chain([x]) {
                let p = ring.mul(x, y);
                if !members.contains(p) {
                    queue.push_back(p);
                }
            }
        }
        MultiplicativeSet { ring: ring.clone(), members }
    }

    /// `R ∖ p`.
    pub fn complement(prime: &Ideal) -> MultiplicativeSet {
        let ring = prime.ring();
        MultiplicativeSet {
            ring: ring.clone(),
            members: prime.members().complement(),
        }
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }
}

/// `K = {r : ur = 0 for some u in U}`.
pub fn localization_kernel(set: &MultiplicativeSet) -> Ideal {
    let ring = set.ring();
    let members = ElemSet::from_elems(
        ring.size(),
        ring.elements()
            .filter(|&r| set.members().iter().any(|u| ring.mul(u, r) == Elem::ZERO)),
    );
    Ideal::from_members(ring, members)
}

/// `R_U` realized as `R/K`, with the canonical map.
pub fn localize_ring(ring: &FiniteRing, set: &MultiplicativeSet) -> Result<(FiniteRing, RingHom)> {
    if set.ring() != ring {
        return input("localize: multiplicative set belongs to a different ring");
    }
    let kernel = localization_kernel(set);
    if !kernel.is_proper() {
        return Err(Error::Invariant(format!(
            "localization of {} at a set containing 0 is the zero ring",
            ring.name()
        )));
    }
    let (target, map) = make_quotient(ring, &kernel)?;
    let units = predicates::units(&target);
    if let Some(u) = set.members().iter().find(|&u| !units.contains(map.apply(u))) {
        return Err(Error::Invariant(format!(
            "image of {} is not a unit in the localization of {}",
            ring.fmt_elem(u),
            ring.name()
        )));
    }
    Ok((target, map))
}

pub fn localize_at_prime(ring: &FiniteRing, prime: &Ideal) -> Result<(FiniteRing, RingHom)> {
    if prime.ring() != ring {
        return input("localize_at_prime: ideal belongs to a different ring");
    }
    if !prime.is_prime() {
        return input(format!("localize_at_prime: {} is not prime", prime.fmt_generators()));
    }
    localize_ring(ring, &MultiplicativeSet::complement(prime))
}

/// `K_M = {m : um = 0 for some u in U}`.
pub fn module_localization_kernel(module: &FiniteModule, set: &MultiplicativeSet) -> ElemSet {
    ElemSet::from_elems(
        module.size(),
        module
            .elements()
            .filter(|&m| set.members().iter().any(|u| module.act(u, m) == Elem::ZERO)),
    )
}

/// `M_U` realized as `M/K_M`, still a module over the base ring.
pub fn localize_module(module: &FiniteModule, set: &MultiplicativeSet) -> Result<FiniteModule> {
    if set.ring() != module.base() {
        return input("localize_module: multiplicative set is not in the base ring");
    }
    let kernel = module_localization_kernel(module, set);
    quotient_by(module, &kernel, format!("{}_U", module.name()))
}

pub fn localize_module_at_prime(module: &FiniteModule, prime: &Ideal) -> Result<FiniteModule> {
    if !prime.is_prime() {
        return input(format!("localize_module: {} is not prime", prime.fmt_generators()));
    }
    localize_module(module, &MultiplicativeSet::complement(prime))
}

/// Primes `p` with `M_p != 0`.
pub fn support(module: &FiniteModule) -> Vec<Ideal> {
    spec(module.base())
        .into_iter()
        .filter(|p| module_localization_kernel(module, &MultiplicativeSet::complement(p)).len() < module.size())
        .collect()
}

/// For every maximal `m` in the support and every `r` nonzero in `R_m`: `r M_m = M_m`.
pub fn is_locally_divisible(module: &FiniteModule) -> bool {
    let base = module.base();
    for m in max_spec(base) {
        let set = MultiplicativeSet::complement(&m);
        let kernel = module_localization_kernel(module, &set);
        if kernel.len() == module.size() {
            continue;
        }
        let ring_kernel = localization_kernel(&set);
        for r in base.elements().filter(|&r| !ring_kernel.contains(r)) {
            // r M + K_M = M
            let scaled = scaled_module(module, r);
            let covered = span(module, &kernel, scaled.iter());
            if covered.len() != module.size() {
                return false;
            }
        }
    }
    true
}
