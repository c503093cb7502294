//! Ring-theoretic predicates: units, zero-divisors, Prüfer, Gaussian,
//! arithmetical and chain conditions.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::ideal::{all_ideals, jacobson, max_spec, principal_sets, subgroup_sum, Ideal};
use crate::module::{localization_kernel, localize_at_prime, MultiplicativeSet};
use crate::ring::{Elem, FiniteRing, Polynomial};

pub fn units(ring: &FiniteRing) -> &ElemSet {
    ring.cache().units.get_or_init(|| {
        let one = ring.one();
        ElemSet::from_elems(
            ring.size(),
            ring.elements().filter(|&a| ring.elements().any(|b| ring.mul(a, b) == one)),
        )
    })
}

/// `Z(R)`: elements killing some nonzero element. Contains 0.
pub fn zero_divisors(ring: &FiniteRing) -> &ElemSet {
    ring.cache().zero_divisors.get_or_init(|| {
        ElemSet::from_elems(
            ring.size(),
            ring.elements()
                .filter(|&a| ring.elements().skip(1).any(|b| ring.mul(a, b) == Elem::ZERO)),
        )
    })
}

pub fn regular_elements(ring: &FiniteRing) -> ElemSet {
    zero_divisors(ring).complement()
}

pub fn nilpotents(ring: &FiniteRing) -> &ElemSet {
    ring.cache().nilpotents.get_or_init(|| {
        let n = ring.size() as u64;
        ElemSet::from_elems(ring.size(), ring.elements().filter(|&a| ring.pow(a, n) == Elem::ZERO))
    })
}

/// Every element is a unit or a zero-divisor.
pub fn is_total_quotient_ring(ring: &FiniteRing) -> bool {
    units(ring).union(zero_divisors(ring)).len() == ring.size()
}

pub fn is_domain(ring: &FiniteRing) -> bool {
    zero_divisors(ring).len() == 1
}

pub fn is_field(ring: &FiniteRing) -> bool {
    units(ring).len() == ring.size() - 1
}

pub fn is_local(ring: &FiniteRing) -> bool {
    crate::ideal::is_local(ring)
}

/// `Z(R) ⊆ Jac(R)`.
pub fn zero_divisors_in_jacobson(ring: &FiniteRing) -> bool {
    zero_divisors(ring).is_subset(jacobson(ring).members())
}

fn require_maximal(ring: &FiniteRing, m: &Ideal) -> Result<()> {
    if m.ring() != ring || !m.is_maximal() {
        return Err(Error::Precondition(format!("{} is not a maximal ideal of {}", m, ring.name())));
    }
    Ok(())
}

/// Ideals containing a regular element: the upward closure of the regular
/// principal ideals under sums with principal ideals.
pub fn regular_ideals(ring: &FiniteRing) -> Vec<ElemSet> {
    let principal = principal_sets(ring);
    let regular = regular_elements(ring);
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let mut stack: Vec<ElemSet> = Vec::new();
    for x in regular.iter() {
        if seen.insert(principal[x.index()].clone()) {
            stack.push(principal[x.index()].clone());
        }
    }
    let mut out = Vec::new();
    while let Some(i) = stack.pop() {
        for y in ring.elements() {
            if i.contains(y) {
                continue;
            }
            let s = subgroup_sum(ring, &i, &principal[y.index()]);
            if seen.insert(s.clone()) {
                stack.push(s);
            }
        }
        out.push(i);
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

/// Regular total order property at a maximal ideal: for every pair of ideals with
/// one of them regular, the localizations are comparable.
///
/// Comparability of `I_m` with every principal `yR_m` implies comparability with
/// every ideal, so the second ideal ranges over principal ideals only.
pub fn regular_total_order(ring: &FiniteRing, m: &Ideal) -> Result<bool> {
    require_maximal(ring, m)?;
    let kernel = localization_kernel(&MultiplicativeSet::complement(m));
    let principal = principal_sets(ring);
    for i in regular_ideals(ring) {
        let il = subgroup_sum(ring, &i, kernel.members());
        for y in ring.elements() {
            let yl = subgroup_sum(ring, &principal[y.index()], kernel.members());
            if !il.comparable(&yl) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Regular total order property checked on all pairs of ideals. Quadratic in the
/// number of ideals; the reference for [`regular_total_order`].
pub fn regular_total_order_by_pairs(ring: &FiniteRing, m: &Ideal) -> Result<bool> {
    require_maximal(ring, m)?;
    let kernel = localization_kernel(&MultiplicativeSet::complement(m));
    let ideals = all_ideals(ring)?;
    let localized: Vec<(bool, ElemSet)> = ideals
        .iter()
        .map(|i| (i.is_regular(), subgroup_sum(ring, i.members(), kernel.members())))
        .collect();
    for (ri, a) in &localized {
        for (rj, b) in &localized {
            if (*ri || *rj) && !a.comparable(b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Principal pairs `xR_m`, `yR_m` with `x` regular are comparable.
/// Requires `Z(R) ⊆ Jac(R)`.
pub fn regular_total_order_fast(ring: &FiniteRing, m: &Ideal) -> Result<bool> {
    require_maximal(ring, m)?;
    if !zero_divisors_in_jacobson(ring) {
        return Err(Error::Precondition(format!("Z({}) is not contained in the Jacobson radical", ring.name())));
    }
    let kernel = localization_kernel(&MultiplicativeSet::complement(m));
    let principal = principal_sets(ring);
    let localized: Vec<ElemSet> = ring
        .elements()
        .map(|y| subgroup_sum(ring, &principal[y.index()], kernel.members()))
        .collect();
    let regular = regular_elements(ring);
    let ok = regular
        .iter()
        .all(|x| localized.iter().all(|b| localized[x.index()].comparable(b)));
    Ok(ok)
}

/// Prüfer via the regular total order property at every maximal ideal.
pub fn is_prufer(ring: &FiniteRing) -> Result<bool> {
    for m in max_spec(ring) {
        if !regular_total_order(ring, &m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Two distinct principal ideals that are not comparable, if any.
pub fn chain_failure(ring: &FiniteRing) -> Option<(Elem, Elem)> {
    let principal = principal_sets(ring);
    let mut reps: Vec<Elem> = Vec::new();
    let mut seen = HashSet::new();
    for x in ring.elements() {
        if seen.insert(&principal[x.index()]) {
            reps.push(x);
        }
    }
    for (i, &x) in reps.iter().enumerate() {
        for &y in &reps[i + 1..] {
            if !principal[x.index()].comparable(&principal[y.index()]) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Ideals totally ordered. Every ideal is a sum of principal ideals, so principal
/// comparability suffices.
pub fn is_chain_ring(ring: &FiniteRing) -> bool {
    chain_failure(ring).is_none()
}

/// Chain ring at every localization at a maximal ideal.
pub fn is_arithmetical(ring: &FiniteRing) -> Result<bool> {
    for m in max_spec(ring) {
        let (local, _) = localize_at_prime(ring, &m)?;
        if !is_chain_ring(&local) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_valuation_domain(ring: &FiniteRing) -> bool {
    is_domain(ring) && is_chain_ring(ring)
}

/// Which half of the local pair test failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PairCondition {
    /// `(a,b)^2` equals neither `(a^2)` nor `(b^2)`.
    SquareNotPrincipal,
    /// `(a,b)^2 = (a^2)` and `ab = 0` but `b^2 != 0`.
    ZeroProduct,
}

/// A re-checkable violation of the Gaussian property.
#[derive(Clone, Debug)]
pub enum GaussianWitness {
    Pair {
        a: Elem,
        b: Elem,
        condition: PairCondition,
        ab_squared: Ideal,
        a_squared: Ideal,
        b_squared: Ideal,
    },
    Content {
        f: Polynomial,
        g: Polynomial,
        content_fg: Ideal,
        content_product: Ideal,
    },
}

impl GaussianWitness {
    /// Recomputes the recorded data from scratch and confirms the violation.
    pub fn recheck(&self) -> bool {
        match self {
            GaussianWitness::Pair {
                a,
                b,
                condition,
                ab_squared,
                a_squared,
                b_squared,
            } => {
                let ring = ab_squared.ring();
                let (a, b) = (*a, *b);
                let (aa, ab, bb) = (ring.mul(a, a), ring.mul(a, b), ring.mul(b, b));
                let pair = Ideal::generated(ring, &[aa, ab, bb]);
                let pa = Ideal::principal(ring, aa);
                let pb = Ideal::principal(ring, bb);
                if pair != *ab_squared || pa != *a_squared || pb != *b_squared {
                    return false;
                }
                match condition {
                    PairCondition::SquareNotPrincipal => pair != pa && pair != pb,
                    PairCondition::ZeroProduct => pair == pa && ab == Elem::ZERO && bb != Elem::ZERO,
                }
            }
            GaussianWitness::Content {
                f,
                g,
                content_fg,
                content_product,
            } => {
                let fg = f.mul(g);
                let c = fg.content();
                let p = f.content().product(&g.content()).expect("same ring");
                c == *content_fg && p == *content_product && c != p
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GaussianWitness::Pair {
                a,
                b,
                condition,
                ab_squared,
                a_squared,
                b_squared,
            } => {
                let ring = ab_squared.ring();
                let what = match condition {
                    PairCondition::SquareNotPrincipal => "(a,b)^2 is neither (a^2) nor (b^2)",
                    PairCondition::ZeroProduct => "(a,b)^2 = (a^2) and ab = 0 but b^2 != 0",
                };
                format!(
                    "a = {}, b = {} in {}: {}; (a,b)^2 = {}, (a^2) = {}, (b^2) = {}",
                    ring.fmt_elem(*a),
                    ring.fmt_elem(*b),
                    ring.name(),
                    what,
                    short(ab_squared),
                    short(a_squared),
                    short(b_squared)
                )
            }
            GaussianWitness::Content {
                f,
                g,
                content_fg,
                content_product,
            } => format!(
                "f = {}, g = {}: c(fg) = {} but c(f)c(g) = {}",
                f,
                g,
                short(content_fg),
                short(content_product)
            ),
        }
    }
}

/// Member list for small ideals, generators and size otherwise.
fn short(ideal: &Ideal) -> String {
    if ideal.len() <= 8 {
        ideal.fmt_members()
    } else {
        format!("{} ({} elements)", ideal, ideal.len())
    }
}

/// The pair characterization of Gaussian local rings. `Ok(None)` means Gaussian.
pub fn gaussian_local_test(ring: &FiniteRing) -> Result<Option<GaussianWitness>> {
    if !is_local(ring) {
        return Err(Error::Precondition(format!("{} is not local", ring.name())));
    }
    let principal = principal_sets(ring);
    for a in ring.elements() {
        let aa = ring.mul(a, a);
        let pa = &principal[aa.index()];
        for b in ring.elements() {
            let (ab, bb) = (ring.mul(a, b), ring.mul(b, b));
            let pb = &principal[bb.index()];
            let eq_a = pa.contains(ab) && pa.contains(bb);
            let eq_b = pb.contains(ab) && pb.contains(aa);
            let condition = if !eq_a && !eq_b {
                Some(PairCondition::SquareNotPrincipal)
            } else if eq_a && ab == Elem::ZERO && bb != Elem::ZERO {
                Some(PairCondition::ZeroProduct)
            } else {
                None
            };
            if let Some(condition) = condition {
                return Ok(Some(GaussianWitness::Pair {
                    a,
                    b,
                    condition,
                    ab_squared: Ideal::generated(ring, &[aa, ab, bb]),
                    a_squared: Ideal::principal(ring, aa),
                    b_squared: Ideal::principal(ring, bb),
                }));
            }
        }
    }
    Ok(None)
}

/// A maximal ideal and a pair witness in the localization there, if `R` is not Gaussian.
pub fn gaussian_failure(ring: &FiniteRing) -> Result<Option<(Ideal, GaussianWitness)>> {
    for m in max_spec(ring) {
        let (local, _) = localize_at_prime(ring, &m)?;
        if let Some(w) = gaussian_local_test(&local)? {
            return Ok(Some((m, w)));
        }
    }
    Ok(None)
}

/// Gaussian, decided through the local pair test at every maximal ideal.
pub fn is_gaussian(ring: &FiniteRing) -> Result<bool> {
    Ok(gaussian_failure(ring)?.is_none())
}

pub fn content(p: &Polynomial) -> Ideal {
    p.content()
}

/// Outcome of [`gaussian_direct_check`].
#[derive(Clone, Debug)]
pub struct DirectCheck {
    /// Highest degree covered exhaustively, if any.
    pub exhaustive_degree: Option<usize>,
    pub samples: usize,
    pub seed: u64,
    pub witness: Option<GaussianWitness>,
}

impl DirectCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

struct ContentChecker<'a> {
    ring: &'a FiniteRing,
    principal: &'a [ElemSet],
}

impl ContentChecker<'_> {
    /// `c(fg) = c(f)c(g)`. Since `c(fg) ⊆ c(f)c(g)` always, it suffices that every
    /// product of coefficients lies in `c(fg)`.
    fn holds(&self, f: &[Elem], g: &[Elem], fg: &mut Vec<Elem>) -> bool {
        let ring = self.ring;
        fg.clear();
        fg.resize(f.len() + g.len() - 1, Elem::ZERO);
        for (i, &a) in f.iter().enumerate() {
            if a == Elem::ZERO {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                fg[i + j] = ring.add(fg[i + j], ring.mul(a, b));
            }
        }
        let mut ideal: Option<ElemSet> = None;
        for &a in f {
            for &b in g {
                let p = ring.mul(a, b);
                if p == Elem::ZERO || fg.iter().any(|&c| self.principal[c.index()].contains(p)) {
                    continue;
                }
                let set = ideal.get_or_insert_with(|| Ideal::generated(ring, fg).members().clone());
                if !set.contains(p) {
                    return false;
                }
            }
        }
        true
    }
}

fn witness_for(ring: &FiniteRing, f: &[Elem], g: &[Elem]) -> GaussianWitness {
    let f = Polynomial::new(ring, f.to_vec());
    let g = Polynomial::new(ring, g.to_vec());
    let content_fg = f.mul(&g).content();
    let content_product = f.content().product(&g.content()).expect("same ring");
    GaussianWitness::Content {
        f,
        g,
        content_fg,
        content_product,
    }
}

/// Tests `c(fg) = c(f)c(g)` directly on polynomials of degree at most `max_degree`.
///
/// Degrees `d` with `|R|^(2(d+1)) <= 10^6` are covered exhaustively. If `max_degree`
/// itself is not, `sample_budget` random pairs of degree up to `max_degree` follow,
/// drawn from a generator seeded with `seed`.
pub fn gaussian_direct_check(ring: &FiniteRing, max_degree: usize, sample_budget: usize, seed: u64) -> Result<DirectCheck> {
    if max_degree < 1 {
        return Err(Error::Input("gaussian_direct_check: max_degree must be at least 1".into()));
    }
    let n = ring.size() as f64;
    let feasible = (1..=max_degree)
        .take_while(|&d| n.powi(2 * (d as i32 + 1)) <= 1e6)
        .last();
    let checker = ContentChecker {
        ring,
        principal: principal_sets(ring),
    };
    let mut buf = Vec::new();
    let mut report = DirectCheck {
        exhaustive_degree: feasible,
        samples: 0,
        seed,
        witness: None,
    };
    if let Some(d) = feasible {
        let polys = all_polys(ring, d);
        for f in &polys {
            for g in &polys {
                if !checker.holds(f, g, &mut buf) {
                    report.witness = Some(witness_for(ring, f, g));
                    return Ok(report);
                }
            }
        }
        if d == max_degree {
            return Ok(report);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = ring.size() as u32;
    for _ in 0..sample_budget {
        let df = rng.random_range(1..=max_degree);
        let dg = rng.random_range(1..=max_degree);
        let f: Vec<Elem> = (0..=df).map(|_| Elem(rng.random_range(0..size))).collect();
        let g: Vec<Elem> = (0..=dg).map(|_| Elem(rng.random_range(0..size))).collect();
        report.samples += 1;
        if !checker.holds(&f, &g, &mut buf) {
            report.witness = Some(witness_for(ring, &f, &g));
            return Ok(report);
        }
    }
    Ok(report)
}

fn all_polys(ring: &FiniteRing, degree: usize) -> Vec<Vec<Elem>> {
    let n = ring.size();
    let total = n.pow(degree as u32 + 1);
    (0..total)
        .map(|mut k| {
            (0..=degree)
                .map(|_| {
                    let c = Elem((k % n) as u32);
                    k /= n;
                    c
                })
                .collect()
        })
        .collect()
}
