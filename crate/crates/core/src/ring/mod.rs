//! Finite commutative rings with identity.
//!
//! Every ring carries a finite carrier indexed `0..size`. Index `0` is always
//! the zero element. Arithmetic is table-driven for small carriers and
//! computed through the construction otherwise.

pub(crate) mod construct;
mod hom;
mod poly;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::ideal::IdealData;
use crate::module::FiniteModule;

pub use construct::{make_poly_quotient, make_product, make_quotient, make_zmod, make_zmod_with};
pub use hom::{hom_from_generators, make_hom, RingHom};
pub use poly::Polynomial;

/// Index of an element inside its ring's carrier.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Canonical, construction-dependent description of an element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Encoding {
    Residue(u64),
    Coeffs(Vec<Encoding>),
    Pair(Box<Encoding>, Box<Encoding>),
    Coset(Box<Encoding>),
}

/// Size caps for enumeration-based algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_ring_size: usize,
    pub max_ideals: usize,
    pub max_submodules: usize,
    pub table_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ring_size: 65536,
            max_ideals: 100_000,
            max_submodules: 10_000,
            table_cap: 4096,
        }
    }
}

impl Limits {
    pub(crate) fn check_ring_size(&self, size: usize) -> Result<()> {
        if size > self.max_ring_size {
            return Err(Error::ResourceCap {
                what: "ring size",
                limit: self.max_ring_size,
            });
        }
        Ok(())
    }
}

/// How a ring was built. Determines element encodings and on-demand arithmetic.
pub enum Construction {
    Zmod {
        modulus: u64,
    },
    /// `base[X]/(modulus)`; `modulus` holds the low coefficients of a monic polynomial.
    PolyQuotient {
        base: FiniteRing,
        low: Vec<Elem>,
    },
    Product {
        left: FiniteRing,
        right: FiniteRing,
    },
    Quotient {
        parent: FiniteRing,
        ideal: ElemSet,
        generators: Vec<Elem>,
        reps: Vec<Elem>,
        class_of: Vec<u32>,
    },
    /// Subring of `left x right` on the listed pairs, sorted by pair index.
    Amalgam {
        left: FiniteRing,
        right: FiniteRing,
        pairs: Vec<(Elem, Elem)>,
        lookup: Vec<u32>,
    },
    TrivialExtension {
        base: FiniteRing,
        module: FiniteModule,
    },
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
}

#[derive(Default)]
pub(crate) struct RingCache {
    pub(crate) units: OnceLock<ElemSet>,
    pub(crate) zero_divisors: OnceLock<ElemSet>,
    pub(crate) nilpotents: OnceLock<ElemSet>,
    pub(crate) principal: OnceLock<Vec<ElemSet>>,
    pub(crate) maximal: OnceLock<Vec<IdealData>>,
    pub(crate) ideals: OnceLock<Result<Arc<Vec<IdealData>>>>,
}

struct RingData {
    id: u64,
    name: String,
    size: usize,
    one: Elem,
    limits: Limits,
    construction: Construction,
    tables: Option<Tables>,
    neg: Vec<u32>,
    cache: RingCache,
}

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

/// A finite commutative ring with identity. Cheap to clone; immutable.
#[derive(Clone)]
pub struct FiniteRing(Arc<RingData>);

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, size {})", self.0.name, self.0.size)
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    pub(crate) fn build(name: String, size: usize, limits: Limits, construction: Construction) -> Result<FiniteRing> {
        limits.check_ring_size(size)?;
        if size < 2 {
            return Err(Error::Input("zero ring rejected (one = zero)".into()));
        }
        let one = construction.one_raw();
        if one == Elem::ZERO {
            return Err(Error::Input("zero ring rejected (one = zero)".into()));
        }
        let neg = (0..size).map(|a| construction.neg_raw(Elem(a as u32)).0).collect();
        let tables = if size <= limits.table_cap.min(1 << 16) {
            let mut add = Vec::with_capacity(size * size);
            let mut mul = Vec::with_capacity(size * size);
            for a in 0..size {
                for b in 0..size {
                    let (x, y) = (Elem(a as u32), Elem(b as u32));
                    add.push(construction.add_raw(x, y).0 as u16);
                    mul.push(construction.mul_raw(x, y).0 as u16);
                }
            }
            Some(Tables { add, mul })
        } else {
            None
        };
        Ok(FiniteRing(Arc::new(RingData {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            name,
            size,
            one,
            limits,
            construction,
            tables,
            neg,
            cache: RingCache::default(),
        })))
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn limits(&self) -> Limits {
        self.0.limits
    }

    pub fn construction(&self) -> &Construction {
        &self.0.construction
    }

    pub fn has_tables(&self) -> bool {
        self.0.tables.is_some()
    }

    pub(crate) fn cache(&self) -> &RingCache {
        &self.0.cache
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.size as u32).map(Elem)
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        self.0.one
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.add[a.index() * self.0.size + b.index()] as u32),
            None => self.0.construction.add_raw(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.mul[a.index() * self.0.size + b.index()] as u32),
            None => self.0.construction.mul_raw(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, mut exp: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// The element `n * 1`.
    pub fn from_int(&self, n: i64) -> Elem {
        let mut acc = self.zero();
        let mut step = self.one();
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, step);
            }
            step = self.add(step, step);
            k >>= 1;
        }
        if n < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }

    /// The class of the indeterminate `X`, for polynomial quotients and their quotients.
    pub fn indeterminate(&self) -> Option<Elem> {
        match &self.0.construction {
            Construction::PolyQuotient { base, low } => {
                let q = base.size();
                if low.len() >= 2 {
                    Some(Elem(q as u32))
                } else {
                    // X = -low[0] when the modulus is linear
                    Some(base.neg(low[0]))
                }
            }
            Construction::Quotient { parent, class_of, .. } => parent.indeterminate().map(|x| Elem(class_of[x.index()])),
            _ => None,
        }
    }

    pub fn encode(&self, a: Elem) -> Encoding {
        self.0.construction.encode(a)
    }

    pub fn decode(&self, enc: &Encoding) -> Option<Elem> {
        let found = self.0.construction.decode(enc)?;
        (found.index() < self.0.size).then_some(found)
    }

    pub fn fmt_elem(&self, a: Elem) -> String {
        self.0.construction.fmt_elem(a)
    }

    pub fn fmt_set(&self, set: &ElemSet) -> String {
        let items: Vec<String> = set.iter().map(|e| self.fmt_elem(e)).collect();
        format!("{{{}}}", items.join(", "))
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        crate::predicates::units(self).contains(a)
    }

    /// Exhaustive check of the commutative ring axioms. Cubic in the carrier size.
    pub fn check_axioms(&self) -> Result<()> {
        let fail = |what: &str, els: &[Elem]| -> Result<()> {
            let shown: Vec<String> = els.iter().map(|&e| self.fmt_elem(e)).collect();
            Err(Error::Validation(format!("{} fails at ({})", what, shown.join(", "))))
        };
        let (zero, one) = (self.zero(), self.one());
        if zero == one {
            return fail("one != zero", &[zero]);
        }
        for a in self.elements() {
            if self.add(a, zero) != a {
                return fail("additive identity", &[a]);
            }
            if self.mul(a, one) != a {
                return fail("multiplicative identity", &[a]);
            }
            if self.add(a, self.neg(a)) != zero {
                return fail("additive inverse", &[a]);
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return fail("additive commutativity", &[a, b]);
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return fail("multiplicative commutativity", &[a, b]);
                }
                for c in self.elements() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity", &[a, b, c]);
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail("multiplicative associativity", &[a, b, c]);
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("distributivity", &[a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }
}

fn split_pair(a: Elem, right_size: usize) -> (Elem, Elem) {
    let i = a.index();
    (Elem((i / right_size) as u32), Elem((i % right_size) as u32))
}

fn join_pair(l: Elem, r: Elem, right_size: usize) -> Elem {
    Elem((l.index() * right_size + r.index()) as u32)
}

impl Construction {
    fn digits(base: &FiniteRing, degree: usize, a: Elem) -> Vec<Elem> {
        let q = base.size();
        let mut i = a.index();
        let mut out = Vec::with_capacity(degree);
        for _ in 0..degree {
            out.push(Elem((i % q) as u32));
            i /= q;
        }
        out
    }

    fn undigits(base: &FiniteRing, digits: &[Elem]) -> Elem {
        let q = base.size();
        let mut i = 0usize;
        for d in digits.iter().rev() {
            i = i * q + d.index();
        }
        Elem(i as u32)
    }

    fn one_raw(&self) -> Elem {
        match self {
            Construction::Zmod { .. } => Elem(1),
            // constant polynomials occupy the lowest digit
            Construction::PolyQuotient { base, .. } => base.one(),
            Construction::Product { left, right } => join_pair(left.one(), right.one(), right.size()),
            Construction::Quotient { parent, class_of, .. } => Elem(class_of[parent.one().index()]),
            Construction::Amalgam { left, right, lookup, .. } => {
                Elem(lookup[join_pair(left.one(), right.one(), right.size()).index()])
            }
            Construction::TrivialExtension { base, module } => join_pair(base.one(), module.zero(), module.size()),
        }
    }

    fn neg_raw(&self, a: Elem) -> Elem {
        match self {
            Construction::Zmod { modulus } => Elem(((modulus - a.0 as u64) % modulus) as u32),
            Construction::PolyQuotient { base, low } => {
                let ds: Vec<Elem> = Self::digits(base, low.len(), a).into_iter().map(|c| base.neg(c)).collect();
                Self::undigits(base, &ds)
            }
            Construction::Product { left, right } => {
                let (l, r) = split_pair(a, right.size());
                join_pair(left.neg(l), right.neg(r), right.size())
            }
            Construction::Quotient { parent, reps, class_of, .. } => Elem(class_of[parent.neg(reps[a.index()]).index()]),
            Construction::Amalgam { left, right, pairs, lookup } => {
                let (l, r) = pairs[a.index()];
                Elem(lookup[join_pair(left.neg(l), right.neg(r), right.size()).index()])
            }
            Construction::TrivialExtension { base, module } => {
                let (r, m) = split_pair(a, module.size());
                join_pair(base.neg(r), module.neg(m), module.size())
            }
        }
    }

    fn add_raw(&self, a: Elem, b: Elem) -> Elem {
        match self {
            Construction::Zmod { modulus } => Elem(((a.0 as u64 + b.0 as u64) % modulus) as u32),
            Construction::PolyQuotient { base, low } => {
                let d = low.len();
                let (x, y) = (Self::digits(base, d, a), Self::digits(base, d, b));
                let s: Vec<Elem> = x.iter().zip(&y).map(|(&p, &q)| base.add(p, q)).collect();
                Self::undigits(base, &s)
            }
            Construction::Product { left, right } => {
                let n = right.size();
                let ((l1, r1), (l2, r2)) = (split_pair(a, n), split_pair(b, n));
                join_pair(left.add(l1, l2), right.add(r1, r2), n)
            }
            Construction::Quotient { parent, reps, class_of, .. } => {
                Elem(class_of[parent.add(reps[a.index()], reps[b.index()]).index()])
            }
            Construction::Amalgam { left, right, pairs, lookup } => {
                let ((l1, r1), (l2, r2)) = (pairs[a.index()], pairs[b.index()]);
                Elem(lookup[join_pair(left.add(l1, l2), right.add(r1, r2), right.size()).index()])
            }
            Construction::TrivialExtension { base, module } => {
                let n = module.size();
                let ((r1, m1), (r2, m2)) = (split_pair(a, n), split_pair(b, n));
                join_pair(base.add(r1, r2), module.add(m1, m2), n)
            }
        }
    }

    fn mul_raw(&self, a: Elem, b: Elem) -> Elem {
        match self {
            Construction::Zmod { modulus } => Elem(((a.0 as u64 * b.0 as u64) % modulus) as u32),
            Construction::PolyQuotient { base, low } => {
                let d = low.len();
                let (x, y) = (Self::digits(base, d, a), Self::digits(base, d, b));
                let mut prod = vec![base.zero(); 2 * d - 1];
                for (i, &p) in x.iter().enumerate() {
                    if p == Elem::ZERO {
                        continue;
                    }
                    for (j, &q) in y.iter().enumerate() {
                        prod[i + j] = base.add(prod[i + j], base.mul(p, q));
                    }
                }
                // X^d = -(low[0] + low[1] X + ... + low[d-1] X^(d-1))
                for k in (d..2 * d - 1).rev() {
                    let c = prod[k];
                    if c == Elem::ZERO {
                        continue;
                    }
                    prod[k] = Elem::ZERO;
                    for (i, &m) in low.iter().enumerate() {
                        let t = k - d + i;
                        prod[t] = base.sub(prod[t], base.mul(c, m));
                    }
                }
                Self::undigits(base, &prod[..d])
            }
            Construction::Product { left, right } => {
                let n = right.size();
                let ((l1, r1), (l2, r2)) = (split_pair(a, n), split_pair(b, n));
                join_pair(left.mul(l1, l2), right.mul(r1, r2), n)
            }
            Construction::Quotient { parent, reps, class_of, .. } => {
                Elem(class_of[parent.mul(reps[a.index()], reps[b.index()]).index()])
            }
            Construction::Amalgam { left, right, pairs, lookup } => {
                let ((l1, r1), (l2, r2)) = (pairs[a.index()], pairs[b.index()]);
                Elem(lookup[join_pair(left.mul(l1, l2), right.mul(r1, r2), right.size()).index()])
            }
            Construction::TrivialExtension { base, module } => {
                let n = module.size();
                let ((r1, m1), (r2, m2)) = (split_pair(a, n), split_pair(b, n));
                let m = module.add(module.act(r1, m2), module.act(r2, m1));
                join_pair(base.mul(r1, r2), m, n)
            }
        }
    }

    fn encode(&self, a: Elem) -> Encoding {
        match self {
            Construction::Zmod { .. } => Encoding::Residue(a.0 as u64),
            Construction::PolyQuotient { base, low } => {
                Encoding::Coeffs(Self::digits(base, low.len(), a).into_iter().map(|c| base.encode(c)).collect())
            }
            Construction::Product { left, right } => {
                let (l, r) = split_pair(a, right.size());
                Encoding::Pair(Box::new(left.encode(l)), Box::new(right.encode(r)))
            }
            Construction::Quotient { parent, reps, .. } => Encoding::Coset(Box::new(parent.encode(reps[a.index()]))),
            Construction::Amalgam { left, right, pairs, .. } => {
                let (l, r) = pairs[a.index()];
                Encoding::Pair(Box::new(left.encode(l)), Box::new(right.encode(r)))
            }
            Construction::TrivialExtension { base, module } => {
                let (r, m) = split_pair(a, module.size());
                Encoding::Pair(Box::new(base.encode(r)), Box::new(module.encode(m)))
            }
        }
    }

    fn decode(&self, enc: &Encoding) -> Option<Elem> {
        match (self, enc) {
            (Construction::Zmod { modulus }, Encoding::Residue(v)) => (v < modulus).then_some(Elem(*v as u32)),
            (Construction::PolyQuotient { base, low }, Encoding::Coeffs(cs)) => {
                if cs.len() != low.len() {
                    return None;
                }
                let ds: Option<Vec<Elem>> = cs.iter().map(|c| base.decode(c)).collect();
                Some(Self::undigits(base, &ds?))
            }
            (Construction::Product { left, right }, Encoding::Pair(l, r)) => {
                Some(join_pair(left.decode(l)?, right.decode(r)?, right.size()))
            }
            (Construction::Quotient { parent, reps, class_of, .. }, Encoding::Coset(inner)) => {
                let p = parent.decode(inner)?;
                let c = class_of[p.index()];
                // only the canonical representative is a valid encoding
                (reps[c as usize] == p).then_some(Elem(c))
            }
            (Construction::Amalgam { left, right, lookup, .. }, Encoding::Pair(l, r)) => {
                let idx = lookup[join_pair(left.decode(l)?, right.decode(r)?, right.size()).index()];
                (idx != u32::MAX).then_some(Elem(idx))
            }
            (Construction::TrivialExtension { base, module }, Encoding::Pair(r, m)) => {
                Some(join_pair(base.decode(r)?, module.decode(m)?, module.size()))
            }
            _ => None,
        }
    }

    fn fmt_elem(&self, a: Elem) -> String {
        match self {
            Construction::Zmod { .. } => a.0.to_string(),
            Construction::PolyQuotient { base, low } => {
                let ds = Self::digits(base, low.len(), a);
                fmt_poly(base, &ds)
            }
            Construction::Product { left, right } => {
                let (l, r) = split_pair(a, right.size());
                format!("({}, {})", left.fmt_elem(l), right.fmt_elem(r))
            }
            Construction::Quotient { parent, reps, .. } => format!("[{}]", parent.fmt_elem(reps[a.index()])),
            Construction::Amalgam { left, right, pairs, .. } => {
                let (l, r) = pairs[a.index()];
                format!("({}, {})", left.fmt_elem(l), right.fmt_elem(r))
            }
            Construction::TrivialExtension { base, module } => {
                let (r, m) = split_pair(a, module.size());
                format!("({}, {})", base.fmt_elem(r), module.fmt_elem(m))
            }
        }
    }
}

/// Formats a coefficient vector (low degree first) as a polynomial in `X`.
pub(crate) fn fmt_poly(base: &FiniteRing, coeffs: &[Elem]) -> String {
    fmt_poly_in(base, coeffs, "X")
}

/// Polynomial in `var`; coefficients that are themselves expressions get parentheses.
pub(crate) fn fmt_poly_in(base: &FiniteRing, coeffs: &[Elem], var: &str) -> String {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == Elem::ZERO {
            continue;
        }
        let coef = base.fmt_elem(c);
        let nested = k > 0 && var != "X" && coef.contains(['*', 'X']);
        let coef = if nested || coef.contains(['+', ' ', '-']) { format!("({coef})") } else { coef };
        let term = match (k, c == base.one()) {
            (0, _) => coef,
            (1, true) => var.to_string(),
            (1, false) => format!("{coef}*{var}"),
            (_, true) => format!("{var}^{k}"),
            (_, false) => format!("{coef}*{var}^{k}"),
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}
