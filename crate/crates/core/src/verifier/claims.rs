use std::cell::RefCell;
use std::collections::HashMap;

use crate::amalgam::{
    amalgam_max_expected, amalgam_spec_expected, lemma_conditions, localization_iso, mult_set_t, prime_lift_p,
    prime_lift_q, star_sets, AmalgamInstance, LocalizationCase, Shape,
};
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::ideal::{jacobson, max_spec, spec, Ideal};
use crate::module::{
    has_distributive_lattice, is_locally_divisible, is_uniserial, localize_at_prime, module_localization_kernel,
    support, zero_divisors_on, FiniteModule, MultiplicativeSet, Submodule,
};
use crate::predicates::{
    chain_failure, gaussian_failure, is_domain, regular_elements, regular_total_order, units, zero_divisors,
};
use crate::ring::{Elem, FiniteRing};

use super::{Check, ClaimId, Conclusion, Instance, Scope};

/// Per-instance evaluation state; facts shared between claims are computed once.
pub(crate) struct Ctx<'a> {
    inst: &'a Instance,
    memo: RefCell<HashMap<String, Check>>,
}

impl<'a> Ctx<'a> {
    pub(crate) fn new(inst: &'a Instance) -> Ctx<'a> {
        Ctx {
            inst,
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub(crate) fn instance(&self) -> &Instance {
        self.inst
    }

    fn fact(&self, key: &str, compute: impl FnOnce() -> Result<Check>) -> Result<Check> {
        if let Some(c) = self.memo.borrow().get(key) {
            return Ok(c.clone());
        }
        let c = compute()?;
        self.memo.borrow_mut().insert(key.to_string(), c.clone());
        Ok(c)
    }

    fn amalgam(&self, claim: ClaimId) -> Result<&AmalgamInstance> {
        self.inst.amalgam().ok_or_else(|| Error::Shape {
            claim: claim.as_str().to_string(),
            expected: "an amalgamation",
        })
    }

    fn ring_fact(&self, ring: &FiniteRing, label: &str, prop: RingProp) -> Result<Check> {
        let key = format!("{label}.{prop:?}");
        self.fact(&key, || ring_prop(ring, label, prop))
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) enum RingProp {
    Prufer,
    Gaussian,
    Chain,
    Arithmetical,
    ValuationDomain,
    Domain,
    Local,
    TotalQuotient,
    ZeroDivisorsInJacobson,
}

fn zero_product_pair(ring: &FiniteRing) -> Option<(Elem, Elem)> {
    let nonzero = || ring.elements().skip(1);
    nonzero().find_map(|a| nonzero().find(|&b| ring.mul(a, b) == Elem::ZERO).map(|b| (a, b)))
}

pub(crate) fn ring_prop(ring: &FiniteRing, label: &str, prop: RingProp) -> Result<Check> {
    let el = |x: Elem| ring.fmt_elem(x);
    Ok(match prop {
        RingProp::Prufer => {
            let mut failure = None;
            for m in max_spec(ring) {
                if !regular_total_order(ring, &m)? {
                    failure = Some(format!("regular total order fails at {m}"));
                    break;
                }
            }
            Check::with(format!("{label} Prüfer"), failure)
        }
        RingProp::Gaussian => Check::with(
            format!("{label} Gaussian"),
            gaussian_failure(ring)?.map(|(m, w)| format!("at {m}: {}", w.describe())),
        ),
        RingProp::Chain => Check::with(
            format!("{label} chain ring"),
            chain_failure(ring).map(|(x, y)| format!("({}) and ({}) are incomparable", el(x), el(y))),
        ),
        RingProp::Arithmetical => {
            let mut failure = None;
            for m in max_spec(ring) {
                let (local, pi) = localize_at_prime(ring, &m)?;
                if let Some((x, y)) = chain_failure(&local) {
                    let lift = |z: Elem| ring.elements().find(|&a| pi.apply(a) == z).expect("onto");
                    failure = Some(format!(
                        "localization at {m} is not a chain ring: ({}) and ({}) are incomparable",
                        el(lift(x)),
                        el(lift(y))
                    ));
                    break;
                }
            }
            Check::with(format!("{label} arithmetical"), failure)
        }
        RingProp::ValuationDomain => {
            let failure = match zero_product_pair(ring) {
                Some((a, b)) => Some(format!("{}·{} = 0", el(a), el(b))),
                None => chain_failure(ring).map(|(x, y)| format!("({}) and ({}) are incomparable", el(x), el(y))),
            };
            Check::with(format!("{label} valuation domain"), failure)
        }
        RingProp::Domain => Check::with(
            format!("{label} domain"),
            zero_product_pair(ring).map(|(a, b)| format!("{}·{} = 0", el(a), el(b))),
        ),
        RingProp::Local => {
            let max = max_spec(ring);
            Check::with(
                format!("{label} local"),
                (max.len() != 1).then(|| {
                    let shown: Vec<String> = max.iter().map(|m| m.to_string()).collect();
                    format!("maximal ideals {}", shown.join(", "))
                }),
            )
        }
        RingProp::TotalQuotient => {
            let (u, z) = (units(ring), zero_divisors(ring));
            let bad = ring.elements().find(|&x| !u.contains(x) && !z.contains(x));
            Check::with(
                format!("{label} total quotient ring"),
                bad.map(|x| format!("{} is neither a unit nor a zero-divisor", el(x))),
            )
        }
        RingProp::ZeroDivisorsInJacobson => {
            let jac = jacobson(ring);
            let bad = zero_divisors(ring).iter().find(|&z| !jac.contains(z));
            Check::with(
                format!("Z({label}) ⊆ Jac({label})"),
                bad.map(|z| format!("{} is a zero-divisor outside Jac", el(z))),
            )
        }
    })
}

/// Conjunction of named parts; the witness names the first failing part.
fn all(name: &str, parts: Vec<Check>) -> Check {
    match parts.into_iter().find(|p| !p.holds) {
        None => Check::new(name, true),
        Some(p) => {
            let w = match p.witness {
                Some(w) => format!("{} fails: {w}", p.name),
                None => format!("{} fails", p.name),
            };
            Check::failing(name, w)
        }
    }
}

fn side_text(tag: &str, c: &Check) -> String {
    match (&c.witness, c.holds) {
        (Some(w), false) => format!("{tag} {} = false [{w}]", c.name),
        _ => format!("{tag} {} = {}", c.name, c.holds),
    }
}

fn combine(holds: bool, lhs: &Check, rhs: &Check) -> Conclusion {
    let witness = (!holds || !lhs.holds || !rhs.holds).then(|| format!("{}; {}", side_text("lhs", lhs), side_text("rhs", rhs)));
    Conclusion { holds, witness }
}

fn implies(lhs: Check, rhs: Check) -> Conclusion {
    combine(!lhs.holds || rhs.holds, &lhs, &rhs)
}

fn iff(lhs: Check, rhs: Check) -> Conclusion {
    combine(lhs.holds == rhs.holds, &lhs, &rhs)
}

fn plain(c: Check) -> Conclusion {
    Conclusion {
        holds: c.holds,
        witness: c.witness,
    }
}

fn fmt_set(ring: &FiniteRing, set: &ElemSet) -> String {
    ring.fmt_set(set)
}

/// `{s m} + K = M` for every scalar `s`; returns the first scalar where it fails.
fn scaling_failure(module: &FiniteModule, kernel: &ElemSet, scalars: impl IntoIterator<Item = Elem>) -> Option<Elem> {
    let k = Submodule::from_members(module, kernel.clone());
    let whole = Submodule::whole(module);
    scalars
        .into_iter()
        .find(|&s| whole.scaled(s).sum(&k).len() != module.size())
}

/// `J_T = f(r) J_T` for every maximal `m` of `R` and regular `r`.
fn stable_t(inst: &AmalgamInstance) -> Result<Check> {
    let (r, f) = (inst.r(), inst.f());
    let module = inst.j_module_over_s();
    let regular: Vec<Elem> = regular_elements(r).iter().collect();
    for m in max_spec(r) {
        let t = mult_set_t(inst, &m)?;
        let kernel = module_localization_kernel(&module, &t);
        if let Some(x) = scaling_failure(&module, &kernel, regular.iter().map(|&x| f.apply(x))) {
            return Ok(Check::failing(
                "J_{T_m} = f(r)J_{T_m} for all m, r regular",
                format!("m = {m}, r = {}", r.fmt_elem(x)),
            ));
        }
    }
    Ok(Check::new("J_{T_m} = f(r)J_{T_m} for all m, r regular", true))
}

/// `M_m = r M_m` for every maximal `m` of the base and regular `r`.
fn module_stable(module: &FiniteModule, name: &str) -> Check {
    let base = module.base();
    let regular: Vec<Elem> = regular_elements(base).iter().collect();
    for m in max_spec(base) {
        let kernel = module_localization_kernel(module, &MultiplicativeSet::complement(&m));
        if let Some(x) = scaling_failure(module, &kernel, regular.iter().copied()) {
            return Check::failing(name, format!("m = {m}, r = {}", base.fmt_elem(x)));
        }
    }
    Check::new(name, true)
}

/// `J = f(r)J` for all `r` in `scalars`.
fn j_scaling(inst: &AmalgamInstance, name: &str, scalars: impl IntoIterator<Item = Elem>) -> Check {
    let (r, s, f, j) = (inst.r(), inst.s(), inst.f(), inst.j());
    for x in scalars {
        let scaled = j.scaled(f.apply(x));
        if scaled.len() != j.len() {
            return Check::failing(
                name,
                format!("a = {}: f(a)J = {} ≠ J", r.fmt_elem(x), fmt_set(s, scaled.members())),
            );
        }
    }
    Check::new(name, true)
}

fn f_reg_to_reg(inst: &AmalgamInstance) -> Check {
    let (r, f) = (inst.r(), inst.f());
    let zs = zero_divisors(inst.s());
    let bad = regular_elements(r).iter().find(|&x| zs.contains(f.apply(x)));
    Check::with(
        "f(Reg(R)) ⊆ Reg(S)",
        bad.map(|x| format!("f({}) is a zero-divisor of S", r.fmt_elem(x))),
    )
}

fn star(inst: &AmalgamInstance) -> Check {
    let a = inst.a();
    let (s1, s2) = star_sets(inst);
    let expected = s1.union(&s2);
    let z = zero_divisors(a);
    let bad = z.difference(&expected).first().map(|x| (x, true)).or_else(|| expected.difference(z).first().map(|x| (x, false)));
    Check::with(
        "condition ⋆",
        bad.map(|(x, in_z)| {
            if in_z {
                format!("{} ∈ Z(A) ∖ (S1 ∪ S2)", a.fmt_elem(x))
            } else {
                format!("{} ∈ (S1 ∪ S2) ∖ Z(A)", a.fmt_elem(x))
            }
        }),
    )
}

fn zd_inclusion(inst: &AmalgamInstance) -> Check {
    let a = inst.a();
    let (s1, s2) = star_sets(inst);
    let bad = zero_divisors(a).difference(&s1.union(&s2)).first();
    Check::with(
        "Z(A) ⊆ S1 ∪ S2",
        bad.map(|x| format!("{} ∈ Z(A) ∖ (S1 ∪ S2)", a.fmt_elem(x))),
    )
}

fn j_subset(inst: &AmalgamInstance, name: &str, target: &ElemSet) -> Check {
    let s = inst.s();
    let bad = inst.j().members().difference(target).first();
    Check::with(name, bad.map(|y| format!("{} ∈ J", s.fmt_elem(y))))
}

fn j_in_jac_s(inst: &AmalgamInstance) -> Check {
    j_subset(inst, "J ⊆ Jac(S)", jacobson(inst.s()).members())
}

fn j_in_image(inst: &AmalgamInstance) -> Check {
    j_subset(inst, "J ⊆ f(R)", &inst.f().image())
}

fn j_in_image_and_jac(inst: &AmalgamInstance) -> Check {
    let target = inst.f().image().intersection(jacobson(inst.s()).members());
    j_subset(inst, "J ⊆ f(R) ∩ Jac(S)", &target)
}

fn j_nonzero(inst: &AmalgamInstance) -> Check {
    Check::with("J ≠ 0", inst.j().is_zero().then(|| "J = 0".to_string()))
}

fn j_zero(inst: &AmalgamInstance) -> Check {
    let s = inst.s();
    Check::with(
        "J = 0",
        inst.j()
            .members()
            .iter()
            .nth(1)
            .map(|y| format!("{} ∈ J", s.fmt_elem(y))),
    )
}

fn j_square_zero(inst: &AmalgamInstance) -> Check {
    let s = inst.s();
    let members: Vec<Elem> = inst.j().members().iter().collect();
    for &x in &members {
        for &y in &members {
            let p = s.mul(x, y);
            if p != Elem::ZERO {
                return Check::failing(
                    "J² = 0",
                    format!("{}·{} = {}", s.fmt_elem(x), s.fmt_elem(y), s.fmt_elem(p)),
                );
            }
        }
    }
    Check::new("J² = 0", true)
}

fn j_uniserial(inst: &AmalgamInstance) -> Check {
    Check::new("J uniserial over R", is_uniserial(&inst.j_module_over_r()))
}

fn is_dup(inst: &AmalgamInstance) -> Check {
    Check::with(
        "instance is a duplication",
        (!inst.is_duplication()).then(|| format!("{} is not the identity of R", inst.label())),
    )
}

fn trivext_module(inst: &AmalgamInstance) -> (Check, Option<&FiniteModule>) {
    let m = inst.trivial_extension_module();
    (
        Check::with(
            "instance is a trivial extension",
            m.is_none().then(|| "not built as R ⋉ M".to_string()),
        ),
        m,
    )
}

/// `f(r)J = f(r)²J` for every `r` in `Jac(R)`.
fn gauss_scaling(inst: &AmalgamInstance) -> Check {
    let (r, s, f, j) = (inst.r(), inst.s(), inst.f(), inst.j());
    let name = "f(r)J = f(r)²J for r ∈ m";
    for x in jacobson(r).members().iter() {
        let fx = f.apply(x);
        let once = j.scaled(fx);
        let twice = j.scaled(s.mul(fx, fx));
        if once != twice {
            return Check::failing(
                name,
                format!(
                    "r = {}: f(r)J = {} but f(r)²J = {}",
                    r.fmt_elem(x),
                    fmt_set(s, once.members()),
                    fmt_set(s, twice.members())
                ),
            );
        }
    }
    Check::new(name, true)
}

/// For `m ∈ Max(R) ∩ V(f⁻¹(J))`: `J_m² = 0` and `f(r)J_m = f(r)²J_m` for `r ∈ m`,
/// with `J_m` the localization of `J` as an `R`-module.
fn gauss_local_parts(inst: &AmalgamInstance) -> (Check, Check) {
    let (r, s) = (inst.r(), inst.s());
    let module = inst.j_module_over_r();
    let members: Vec<Elem> = module.elements().collect();
    let to_ring = |x: Elem| module.ring_element(x).expect("J is carried by S");
    let from_ring = |y: Elem| module.from_ring_element(y).expect("product stays in J");
    let fj = inst.f_inverse_j();
    let mut square = Check::new("J_m² = 0 for m ∈ Max(R) ∩ V(f⁻¹(J))", true);
    let mut scaling = Check::new("f(r)J_m = f(r)²J_m for m ∈ Max(R) ∩ V(f⁻¹(J)), r ∈ m", true);
    for m in max_spec(r).iter().filter(|m| fj.is_subset(m)) {
        let kernel = module_localization_kernel(&module, &MultiplicativeSet::complement(m));
        if square.holds {
            'pairs: for &x in &members {
                for &y in &members {
                    let p = s.mul(to_ring(x), to_ring(y));
                    if !kernel.contains(from_ring(p)) {
                        square.holds = false;
                        square.witness = Some(format!(
                            "m = {m}: {}·{} = {} is nonzero in J_m",
                            s.fmt_elem(to_ring(x)),
                            s.fmt_elem(to_ring(y)),
                            s.fmt_elem(p)
                        ));
                        break 'pairs;
                    }
                }
            }
        }
        if scaling.holds {
            let k = Submodule::from_members(&module, kernel.clone());
            let whole = Submodule::whole(&module);
            for x in m.members().iter() {
                let once = whole.scaled(x).sum(&k);
                let twice = whole.scaled(r.mul(x, x)).sum(&k);
                if once.members() != twice.members() {
                    scaling.holds = false;
                    scaling.witness = Some(format!("m = {m}, r = {}: f(r)J_m ≠ f(r)²J_m", r.fmt_elem(x)));
                    break;
                }
            }
        }
    }
    (square, scaling)
}

/// `J = (f(a) + j)J` for every nonzero `a` of `R` and `j` of `J`.
fn chain_scaling(inst: &AmalgamInstance) -> Check {
    let (r, s, f, j) = (inst.r(), inst.s(), inst.f(), inst.j());
    let name = "J = (f(a)+j)J for a ≠ 0, j ∈ J";
    for a in r.elements().skip(1) {
        for y in j.members().iter() {
            let t = s.add(f.apply(a), y);
            if j.scaled(t).len() != j.len() {
                return Check::failing(name, format!("a = {}, j = {}", r.fmt_elem(a), s.fmt_elem(y)));
            }
        }
    }
    Check::new(name, true)
}

fn supp_domains(inst: &AmalgamInstance) -> Result<Check> {
    let r = inst.r();
    for p in support(&inst.j_module_over_r()) {
        let (rp, _) = localize_at_prime(r, &p)?;
        if !is_domain(&rp) {
            return Ok(Check::failing("R_p domain for p ∈ Supp(J)", format!("p = {p}")));
        }
    }
    Ok(Check::new("R_p domain for p ∈ Supp(J)", true))
}

fn jm_zero_on_v(inst: &AmalgamInstance) -> Check {
    let r = inst.r();
    let module = inst.j_module_over_r();
    let fj = inst.f_inverse_j();
    let max = max_spec(r);
    let bad = max.iter().find(|m| {
        fj.is_subset(m) && module_localization_kernel(&module, &MultiplicativeSet::complement(m)).len() != module.size()
    });
    Check::with(
        "J_m = 0 for m ∈ Max(R) ∩ V(f⁻¹(J))",
        bad.map(|m| format!("J_m ≠ 0 at m = {m}")),
    )
}

fn sq_chain_off_v(inst: &AmalgamInstance) -> Result<Check> {
    let s = inst.s();
    for q in max_spec(s).iter().filter(|q| !inst.j().is_subset(q)) {
        let (sq, _) = localize_at_prime(s, q)?;
        if chain_failure(&sq).is_some() {
            return Ok(Check::failing("S_q chain for q ∈ Max(S) ∖ V(J)", format!("q = {q}")));
        }
    }
    Ok(Check::new("S_q chain for q ∈ Max(S) ∖ V(J)", true))
}

fn loc_reg(ring: &FiniteRing) -> Result<Check> {
    let name = "r/1 ∈ Reg(R_m) ⇔ r ∈ Reg(R) for all m";
    let regular = regular_elements(ring);
    for m in max_spec(ring) {
        let (rm, pi) = localize_at_prime(ring, &m)?;
        let zm = zero_divisors(&rm);
        if let Some(x) = ring.elements().find(|&x| zm.contains(pi.apply(x)) == regular.contains(x)) {
            return Ok(Check::failing(name, format!("m = {m}, r = {}", ring.fmt_elem(x))));
        }
    }
    Ok(Check::new(name, true))
}

/// Regular total order at `m` agrees with comparability of `xR_m`, `yR_m` for `x` regular.
fn rto_fast(ring: &FiniteRing) -> Result<Check> {
    let name = "regular total order ⇔ regular principal comparability, at every m";
    let regular = regular_elements(ring);
    for m in max_spec(ring) {
        let full = regular_total_order(ring, &m)?;
        let (rm, pi) = localize_at_prime(ring, &m)?;
        let principal: Vec<Ideal> = rm.elements().map(|y| Ideal::principal(&rm, y)).collect();
        let fast = regular
            .iter()
            .all(|x| principal.iter().all(|b| principal[pi.apply(x).index()].members().comparable(b.members())));
        if full != fast {
            return Ok(Check::failing(name, format!("m = {m}: full = {full}, principal = {fast}")));
        }
    }
    Ok(Check::new(name, true))
}

fn spec_matches(inst: &AmalgamInstance, maximal: bool) -> Check {
    let (found, expected, name) = if maximal {
        (max_spec(inst.a()), amalgam_max_expected(inst), "Max(A) matches the lifts")
    } else {
        (spec(inst.a()), amalgam_spec_expected(inst), "Spec(A) matches the lifts")
    };
    let missing = expected.iter().find(|p| !found.contains(p));
    let extra = found.iter().find(|p| !expected.contains(p));
    let failure = match (missing, extra) {
        (Some(p), _) => Some(format!("predicted {p} not found")),
        (None, Some(p)) => Some(format!("{p} not predicted")),
        _ => None,
    };
    Check::with(name, failure)
}

/// Verifies the isomorphism at each prime selected by `sources`, expecting `case`.
fn loc_isos(inst: &AmalgamInstance, lifts: Vec<Ideal>, case: LocalizationCase, name: &str) -> Result<Check> {
    for p in lifts {
        match localization_iso(inst, &p) {
            Ok(iso) if iso.case == case => {}
            Ok(iso) => {
                return Ok(Check::failing(name, format!("{p} classified as {:?}", iso.case)));
            }
            Err(Error::Invariant(msg)) => return Ok(Check::failing(name, format!("at {p}: {msg}"))),
            Err(e) => return Err(e),
        }
    }
    Ok(Check::new(name, true))
}

fn q_lifts(inst: &AmalgamInstance) -> Result<Vec<Ideal>> {
    spec(inst.s())
        .iter()
        .filter(|q| !inst.j().is_subset(q))
        .map(|q| prime_lift_q(inst, q).map(|l| l.lifted))
        .collect()
}

fn p_lifts(inst: &AmalgamInstance, on: bool) -> Result<Vec<Ideal>> {
    let fj = inst.f_inverse_j();
    spec(inst.r())
        .iter()
        .filter(|p| fj.is_subset(p) == on)
        .map(|p| prime_lift_p(inst, p).map(|l| l.lifted))
        .collect()
}

fn exists(name: &str, found: bool) -> Check {
    Check::with(name, (!found).then(|| "none".to_string()))
}

fn domain_extension(module: Option<&FiniteModule>) -> (Check, Option<(crate::ring::RingHom, FiniteRing)>) {
    let name = "M = B for a domain extension R ⊆ B";
    let Some(module) = module else {
        return (Check::failing(name, "not a trivial extension"), None);
    };
    match module.as_ring_extension() {
        None => (Check::failing(name, format!("{} is not a ring over R", module.name())), None),
        Some((hom, b)) => {
            if !hom.is_injective() {
                (Check::failing(name, "R → B is not injective"), None)
            } else if let Some((x, y)) = zero_product_pair(&b) {
                (
                    Check::failing(name, format!("{}·{} = 0 in {}", b.fmt_elem(x), b.fmt_elem(y), b.name())),
                    None,
                )
            } else {
                (Check::new(name, true), Some((hom, b)))
            }
        }
    }
}

pub(crate) fn evaluate(ctx: &Ctx<'_>, claim: ClaimId) -> Result<(Vec<Check>, Conclusion)> {
    use ClaimId::*;
    if claim.scope() == Scope::Ring {
        let ring = ctx.inst.ring();
        let label = if ctx.inst.amalgam().is_some() { "A" } else { "R" };
        let hyp = ctx.ring_fact(ring, label, RingProp::ZeroDivisorsInJacobson)?;
        let concl = match claim {
            LLocReg => ctx.fact("loc_reg", || loc_reg(ring))?,
            LRtoFast => ctx.fact("rto_fast", || rto_fast(ring))?,
            _ => unreachable!("ring-scoped claims"),
        };
        return Ok((vec![hyp], plain(concl)));
    }
    let inst = ctx.amalgam(claim)?;
    let (r, a) = (inst.r(), inst.a());
    let ring = |x: &FiniteRing, label: &str, p: RingProp| ctx.ring_fact(x, label, p);
    let fact = |key: &str, f: &dyn Fn() -> Check| ctx.fact(key, || Ok(f()));
    let prufer_a = || ring(a, "A", RingProp::Prufer);
    let prufer_r = || ring(r, "R", RingProp::Prufer);
    let freg = || fact("freg", &|| f_reg_to_reg(inst));
    let star_c = || fact("star", &|| star(inst));
    let stable = || ctx.fact("stable_t", || stable_t(inst));
    Ok(match claim {
        LZdInc => (vec![], plain(fact("zd_inc", &|| zd_inclusion(inst))?)),
        LZdEq1 | LZdEq2 | LZdEq3 | LZdEq4 => {
            let conds = lemma_conditions(inst);
            let (holds, name) = match claim {
                LZdEq1 => (conds.zr_into_j, "f(Z(R)) ⊆ J and f⁻¹(J) ≠ 0"),
                LZdEq2 => (conds.zr_kills_j, "f(Z(R))J = 0 and f⁻¹(J) ≠ 0"),
                LZdEq3 => (conds.j_in_image, "J ⊆ f(R)"),
                _ => (conds.j_torsion, "J torsion over R"),
            };
            (vec![Check::new(name, holds)], plain(star_c()?.renamed("Z(A) = S1 ∪ S2")))
        }
        RTrivext => {
            let (hyp, module) = trivext_module(inst);
            let concl = match (module, inst.shape()) {
                (Some(m), Shape::TrivialExtension { iso, .. }) => {
                    let t = iso.codomain();
                    let zr = zero_divisors(r);
                    let zm = zero_divisors_on(m);
                    let formula = ElemSet::from_elems(
                        t.size(),
                        t.elements().filter(|x| {
                            let rr = Elem((x.index() / m.size()) as u32);
                            zr.contains(rr) || zm.contains(rr)
                        }),
                    );
                    let zt = zero_divisors(t);
                    let bad = zt.difference(&formula).first().or_else(|| formula.difference(zt).first());
                    let formula_check = Check::with(
                        "Z(R ⋉ M) = (Z(R) ∪ Z(M)) ⋉ M",
                        bad.map(|x| format!("differs at {}", t.fmt_elem(x))),
                    );
                    all("⋆ and the zero-divisor formula", vec![star_c()?, formula_check])
                }
                _ => all("⋆ and the zero-divisor formula", vec![star_c()?]),
            };
            (vec![hyp], plain(concl))
        }
        RSpec => (vec![], plain(fact("spec", &|| spec_matches(inst, false))?)),
        RMax => (vec![], plain(fact("max", &|| spec_matches(inst, true))?)),
        RLocA => {
            let lifts = q_lifts(inst)?;
            let hyp = exists("some q ∈ Spec(S) ∖ V(J)", !lifts.is_empty());
            let c = loc_isos(inst, lifts, LocalizationCase::QType, "A_q̄ ≅ S_q")?;
            (vec![hyp], plain(c))
        }
        RLocB => {
            let lifts = p_lifts(inst, false)?;
            let hyp = exists("some p ∈ Spec(R) ∖ V(f⁻¹(J))", !lifts.is_empty());
            let c = loc_isos(inst, lifts, LocalizationCase::PTypeOff, "A_p' ≅ R_p")?;
            (vec![hyp], plain(c))
        }
        RLocC => {
            let lifts = p_lifts(inst, true)?;
            let hyp = exists("some p ∈ V(f⁻¹(J))", !lifts.is_empty());
            let c = loc_isos(inst, lifts, LocalizationCase::PTypeOn, "A_p' ≅ R_p ⋈ J_{T_p}")?;
            (vec![hyp], plain(c))
        }
        TMain1 => {
            let rhs = all("R Prüfer and J_T stable", vec![prufer_r()?, stable()?]);
            (vec![freg()?], implies(prufer_a()?, rhs))
        }
        TMain2 => {
            let lhs = all("R Prüfer and J_T stable", vec![prufer_r()?, stable()?]);
            let hyps = vec![freg()?, star_c()?, ring(a, "A", RingProp::ZeroDivisorsInJacobson)?];
            (hyps, implies(lhs, prufer_a()?))
        }
        CLocal1 | CLocal2 => {
            let mut hyps = vec![
                ring(r, "R", RingProp::Local)?,
                fact("j_jac", &|| j_in_jac_s(inst))?,
                freg()?,
            ];
            let side = all(
                "R Prüfer and J = f(r)J",
                vec![prufer_r()?, j_scaling(inst, "J = f(r)J for r regular", regular_elements(r).iter())],
            );
            if claim == CLocal1 {
                (hyps, implies(prufer_a()?, side))
            } else {
                hyps.push(star_c()?);
                (hyps, implies(side, prufer_a()?))
            }
        }
        CDup1 | CDup2 | CDupLocal => {
            let mut hyps = vec![is_dup(inst)];
            let stable_i = if claim == CDupLocal {
                j_scaling(inst, "I = rI for r regular", regular_elements(r).iter())
            } else {
                module_stable(&inst.j_module_over_r(), "I_m = rI_m for all m, r regular")
            };
            let side = all("R Prüfer and I stable", vec![prufer_r()?, stable_i]);
            match claim {
                CDup1 => (hyps, implies(prufer_a()?, side)),
                CDup2 => {
                    hyps.push(ring(r, "R", RingProp::ZeroDivisorsInJacobson)?);
                    let i_jac = j_subset(inst, "I ⊆ Jac(R)", jacobson(r).members());
                    hyps.push(i_jac);
                    (hyps, implies(side, prufer_a()?))
                }
                _ => {
                    hyps.push(ring(r, "R", RingProp::Local)?);
                    (hyps, iff(prufer_a()?, side))
                }
            }
        }
        CTrivext1 | CTrivext2 => {
            let (shape, module) = trivext_module(inst);
            let zm = match module {
                Some(m) => {
                    let zr = zero_divisors(r);
                    let bad = zero_divisors_on(m).difference(zr).first();
                    Check::with("Z(M) ⊆ Z(R)", bad.map(|x| format!("{} ∈ Z(M) ∖ Z(R)", r.fmt_elem(x))))
                }
                None => Check::failing("Z(M) ⊆ Z(R)", "no module"),
            };
            let stable_m = match module {
                Some(m) => module_stable(m, "M_m = rM_m for all m, r regular"),
                None => module_stable(&inst.j_module_over_r(), "M_m = rM_m for all m, r regular"),
            };
            let side = all("R Prüfer and M stable", vec![prufer_r()?, stable_m]);
            let mut hyps = vec![shape, zm];
            if claim == CTrivext1 {
                (hyps, implies(prufer_a()?, side))
            } else {
                hyps.push(ring(r, "R", RingProp::ZeroDivisorsInJacobson)?);
                (hyps, implies(side, prufer_a()?))
            }
        }
        CDomainExt => {
            let (shape, module) = trivext_module(inst);
            let (ext, data) = domain_extension(module);
            let hyps = vec![shape, ring(r, "R", RingProp::Domain)?, ext];
            let divisible = match &data {
                Some((hom, b)) => {
                    let bad = r.elements().skip(1).find(|&x| {
                        let fx = hom.apply(x);
                        b.elements().map(|y| b.mul(fx, y)).collect::<std::collections::HashSet<_>>().len() != b.size()
                    });
                    Check::with("aB = B for a ≠ 0", bad.map(|x| format!("a = {}", r.fmt_elem(x))))
                }
                None => Check::failing("aB = B for a ≠ 0", "no extension ring"),
            };
            let rhs = all(
                "R Prüfer domain and aB = B",
                vec![prufer_r()?, ring(r, "R", RingProp::Domain)?, divisible],
            );
            (hyps, iff(prufer_a()?, rhs))
        }
        PTqr1 => {
            let hyps = vec![fact("j_jac", &|| j_in_jac_s(inst))?, star_c()?];
            (hyps, implies(ring(r, "R", RingProp::TotalQuotient)?, ring(a, "A", RingProp::TotalQuotient)?))
        }
        PTqr2 => (
            vec![freg()?],
            implies(ring(a, "A", RingProp::TotalQuotient)?, ring(r, "R", RingProp::TotalQuotient)?),
        ),
        TGaussFwd | TGaussBwd => {
            let hyps = vec![ring(r, "R", RingProp::Local)?, fact("j_fr_jac", &|| j_in_image_and_jac(inst))?];
            let rhs = all(
                "R Gaussian, J² = 0, f(r)J = f(r)²J",
                vec![
                    ring(r, "R", RingProp::Gaussian)?,
                    fact("j_sq", &|| j_square_zero(inst))?,
                    gauss_scaling(inst),
                ],
            );
            let gauss_a = ring(a, "A", RingProp::Gaussian)?;
            if claim == TGaussFwd {
                (hyps, implies(gauss_a, rhs))
            } else {
                (hyps, implies(rhs, gauss_a))
            }
        }
        CGaussLoc => {
            let hyps = vec![fact("j_fr_jac", &|| j_in_image_and_jac(inst))?];
            let (square, scaling) = gauss_local_parts(inst);
            let rhs = all(
                "R Gaussian, J_m² = 0, f(r)J_m = f(r)²J_m",
                vec![ring(r, "R", RingProp::Gaussian)?, square, scaling],
            );
            (hyps, iff(ring(a, "A", RingProp::Gaussian)?, rhs))
        }
        TChainFwd | TChainBwd => {
            let mut hyps = vec![j_nonzero(inst)];
            let side = all(
                "R valuation domain and J = (f(a)+j)J",
                vec![ring(r, "R", RingProp::ValuationDomain)?, chain_scaling(inst)],
            );
            let chain_a = ring(a, "A", RingProp::Chain)?;
            if claim == TChainFwd {
                (hyps, implies(chain_a, side))
            } else {
                hyps.push(fact("j_uni", &|| j_uniserial(inst))?);
                (hyps, implies(side, chain_a))
            }
        }
        CChainSq0 => {
            let hyps = vec![j_nonzero(inst), fact("j_sq", &|| j_square_zero(inst))?];
            let nonzero = r.elements().skip(1);
            let rhs = all(
                "R valuation domain, J uniserial, J = f(a)J",
                vec![
                    ring(r, "R", RingProp::ValuationDomain)?,
                    fact("j_uni", &|| j_uniserial(inst))?,
                    j_scaling(inst, "J = f(a)J for a ≠ 0", nonzero),
                ],
            );
            (hyps, iff(ring(a, "A", RingProp::Chain)?, rhs))
        }
        CChainFR | CDupChain => {
            let hyp = if claim == CChainFR { j_in_image(inst) } else { is_dup(inst) };
            let rhs = all("R chain and J = 0", vec![ring(r, "R", RingProp::Chain)?, j_zero(inst)]);
            (vec![hyp], iff(ring(a, "A", RingProp::Chain)?, rhs))
        }
        CArith1 => {
            let hyps = vec![j_nonzero(inst), fact("j_sq", &|| j_square_zero(inst))?];
            let module = inst.j_module_over_r();
            let rhs = all(
                "R arithmetical, R_p domain on Supp(J), J locally divisible, J distributive",
                vec![
                    ring(r, "R", RingProp::Arithmetical)?,
                    supp_domains(inst)?,
                    Check::new("J locally divisible", is_locally_divisible(&module)),
                    Check::new("J distributive", has_distributive_lattice(&module)?),
                ],
            );
            (hyps, iff(ring(a, "A", RingProp::Arithmetical)?, rhs))
        }
        CArith2 => {
            let hyps = vec![j_in_image(inst)];
            let rhs = all(
                "R arithmetical, J_m = 0 on V(f⁻¹(J)), S_q chain off V(J)",
                vec![ring(r, "R", RingProp::Arithmetical)?, jm_zero_on_v(inst), sq_chain_off_v(inst)?],
            );
            (hyps, iff(ring(a, "A", RingProp::Arithmetical)?, rhs))
        }
        LLocReg | LRtoFast => unreachable!("handled above"),
    })
}

/// Computed value of a knowledge-base attribute on a finite instance. `None` for
/// names outside the vocabulary or entities the instance lacks.
pub(crate) fn atom_value(inst: &AmalgamInstance, entity: &str, attribute: &str) -> Result<Option<bool>> {
    use crate::predicates::{is_field, is_total_quotient_ring};
    let ring = match entity {
        "R" => Some(inst.r()),
        "S" => Some(inst.s()),
        "A" => Some(inst.a()),
        _ => None,
    };
    if let Some(ring) = ring {
        let prop = match attribute {
            "is_domain" => Some(RingProp::Domain),
            "is_local" => Some(RingProp::Local),
            "is_valuation_domain" => Some(RingProp::ValuationDomain),
            "is_prufer" => Some(RingProp::Prufer),
            "is_gaussian" => Some(RingProp::Gaussian),
            "is_arithmetical" => Some(RingProp::Arithmetical),
            "is_chain" => Some(RingProp::Chain),
            "Z_subset_Jac" => Some(RingProp::ZeroDivisorsInJacobson),
            _ => None,
        };
        if let Some(p) = prop {
            return Ok(Some(ring_prop(ring, entity, p)?.holds));
        }
        match (entity, attribute) {
            (_, "is_field") => return Ok(Some(is_field(ring))),
            (_, "is_total_quotient") => return Ok(Some(is_total_quotient_ring(ring))),
            ("A", "condition_star") => return Ok(Some(star(inst).holds)),
            ("A", "is_duplication") => return Ok(Some(inst.is_duplication())),
            ("A", "is_trivial_extension") => return Ok(Some(inst.trivial_extension_module().is_some())),
            ("S", "chain_off_V_J") => return Ok(Some(sq_chain_off_v(inst)?.holds)),
            _ => return Ok(None),
        }
    }
    let r = inst.r();
    let module = || inst.trivial_extension_module().cloned().unwrap_or_else(|| inst.j_module_over_r());
    let value = match (entity, attribute) {
        ("f", "f_reg_to_reg") => f_reg_to_reg(inst).holds,
        ("f", "f_surjective") => inst.f().is_surjective(),
        ("J", "J_proper") => inst.j().is_proper(),
        ("J", "J_nonzero") => !inst.j().is_zero(),
        ("J", "J_subset_Jac_S") => j_in_jac_s(inst).holds,
        ("J", "J_subset_fR") => j_in_image(inst).holds,
        ("J", "J_square_zero") => j_square_zero(inst).holds,
        ("J", "J_uniserial") => j_uniserial(inst).holds,
        ("J", "J_locally_divisible") => is_locally_divisible(&inst.j_module_over_r()),
        ("J", "J_distributive") => has_distributive_lattice(&inst.j_module_over_r())?,
        ("J", "J_stable_under_regular_scaling") => stable_t(inst)?.holds,
        ("J", "J_module_stable") => module_stable(&module(), "").holds,
        ("J", "J_regular_scaling") => j_scaling(inst, "", regular_elements(r).iter()).holds,
        ("J", "J_gauss_scaling") => gauss_scaling(inst).holds,
        ("J", "J_chain_scaling") => chain_scaling(inst).holds,
        ("J", "J_nonzero_scaling") => j_scaling(inst, "", r.elements().skip(1)).holds,
        ("J", "J_local_square_zero") => gauss_local_parts(inst).0.holds,
        ("J", "J_local_gauss_scaling") => gauss_local_parts(inst).1.holds,
        ("J", "J_local_zero") => jm_zero_on_v(inst).holds,
        ("J", "J_support_domains") => supp_domains(inst)?.holds,
        ("J", "J_zero_divisors_in_Z_R") => zero_divisors_on(&module()).is_subset(zero_divisors(r)),
        ("J", "J_domain_extension") => domain_extension(inst.trivial_extension_module()).0.holds,
        ("J", "J_divisible_extension") => match domain_extension(inst.trivial_extension_module()).1 {
            None => return Ok(None),
            Some((hom, b)) => r.elements().skip(1).all(|x| {
                let fx = hom.apply(x);
                b.elements().map(|y| b.mul(fx, y)).collect::<std::collections::HashSet<_>>().len() == b.size()
            }),
        },
        _ => return Ok(None),
    };
    Ok(Some(value))
}
