//! Amalgamated algebras `R ⋈^f J`, amalgamated duplications and trivial extensions.

use std::fmt;

use crate::elemset::ElemSet;
use crate::error::{input, Error, Result};
use crate::ideal::{spec, Ideal};
use crate::module::{
    is_torsion, localize_at_prime, localize_ring, module_from_ideal, module_via_hom, FiniteModule, MultiplicativeSet,
};
use crate::predicates::zero_divisors;
use crate::ring::{make_hom, Construction, Elem, FiniteRing, RingHom};

/// Structural special case an instance was built as.
#[derive(Clone, Debug)]
pub enum Shape {
    General,
    Duplication,
    TrivialExtension { module: FiniteModule, iso: RingHom },
}

/// `A = R ⋈^f J = {(r, f(r) + j)}` together with its structure maps.
#[derive(Clone)]
pub struct AmalgamInstance {
    f: RingHom,
    j: Ideal,
    a: FiniteRing,
    proj_r: RingHom,
    proj_s: RingHom,
    embed: RingHom,
    shape: Shape,
    label: String,
}

impl fmt::Debug for AmalgamInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AmalgamInstance({})", self.digest())
    }
}

fn hom_label(f: &RingHom) -> &'static str {
    if f.is_identity() {
        "identity"
    } else if f.is_bijective() {
        "isomorphism"
    } else if f.is_surjective() {
        "surjection"
    } else if f.is_injective() {
        "inclusion"
    } else {
        "hom"
    }
}

/// The amalgamation of `R` with `S` along `J` with respect to `f: R -> S`.
pub fn amalgamation(f: &RingHom, j: &Ideal) -> Result<AmalgamInstance> {
    build(f, j, Shape::General)
}

fn build(f: &RingHom, j: &Ideal, shape: Shape) -> Result<AmalgamInstance> {
    let (r, s) = (f.domain(), f.codomain());
    if j.ring() != s {
        return input("amalgamation: J is not an ideal of the codomain of f");
    }
    if !j.is_proper() {
        return input("amalgamation: J must be a proper ideal");
    }
    let limits = r.limits();
    let size = r.size().saturating_mul(j.len());
    limits.check_ring_size(size)?;
    let ambient = r.size().saturating_mul(s.size());
    if ambient > u32::MAX as usize / 2 {
        return Err(Error::ResourceCap { what: "ring size", limit: limits.max_ring_size });
    }
    let mut pairs = Vec::with_capacity(size);
    for x in r.elements() {
        let fx = f.apply(x);
        let mut row: Vec<Elem> = j.members().iter().map(|y| s.add(fx, y)).collect();
        row.sort();
        pairs.extend(row.into_iter().map(|y| (x, y)));
    }
    let mut lookup = vec![u32::MAX; ambient];
    for (i, &(x, y)) in pairs.iter().enumerate() {
        lookup[x.index() * s.size() + y.index()] = i as u32;
    }
    let name = format!("{}⋈{}", r.name(), j.fmt_generators());
    let proj_r_map = pairs.iter().map(|p| p.0).collect();
    let proj_s_map = pairs.iter().map(|p| p.1).collect();
    let embed_map: Vec<Elem> = r
        .elements()
        .map(|x| Elem(lookup[x.index() * s.size() + f.apply(x).index()]))
        .collect();
    let a = FiniteRing::build(
        name,
        size,
        limits,
        Construction::Amalgam {
            left: r.clone(),
            right: s.clone(),
            pairs,
            lookup,
        },
    )?;
    let proj_r = make_hom(&a, r, proj_r_map)?;
    let proj_s = make_hom(&a, s, proj_s_map)?;
    let embed = make_hom(r, &a, embed_map)?;
    Ok(AmalgamInstance {
        label: hom_label(f).to_string(),
        f: f.clone(),
        j: j.clone(),
        a,
        proj_r,
        proj_s,
        embed,
        shape,
    })
}

/// `R ⋈ I`: the amalgamation along `I` with `S = R` and `f` the identity.
pub fn duplication(ring: &FiniteRing, ideal: &Ideal) -> Result<AmalgamInstance> {
    if ideal.ring() != ring {
        return input("duplication: ideal belongs to a different ring");
    }
    build(&RingHom::identity(ring), ideal, Shape::Duplication)
}

/// The ring `R ⋉ M` on pairs `(r, m)` with `(r, m)(r', m') = (rr', rm' + r'm)`.
pub fn trivial_extension_ring(ring: &FiniteRing, module: &FiniteModule) -> Result<FiniteRing> {
    if module.base() != ring {
        return input("trivext: module is not over the given ring");
    }
    let size = ring.size().saturating_mul(module.size());
    FiniteRing::build(
        format!("{}⋉{}", ring.name(), module.name()),
        size,
        ring.limits(),
        Construction::TrivialExtension {
            base: ring.clone(),
            module: module.clone(),
        },
    )
}

/// `R ⋉ M` and its realization as `R ⋈^ι (0 ⋉ M)`, with the isomorphism
/// `(r, ι(r) + (0, m)) ↦ (r, m)` verified.
pub fn trivial_extension(ring: &FiniteRing, module: &FiniteModule) -> Result<(FiniteRing, AmalgamInstance)> {
    let t = trivial_extension_ring(ring, module)?;
    let m = module.size();
    let iota = make_hom(ring, &t, ring.elements().map(|r| Elem((r.index() * m) as u32)).collect())?;
    let j = Ideal::from_members(&t, ElemSet::from_elems(t.size(), (0..m as u32).map(Elem)));
    let mut inst = build(&iota, &j, Shape::General)?;
    let map = inst
        .a
        .elements()
        .map(|a| {
            let (r, s) = inst.pair(a);
            let mm = s.index() % m;
            Elem((r.index() * m + mm) as u32)
        })
        .collect();
    let iso = make_hom(&inst.a, &t, map)?;
    if !iso.is_bijective() {
        return Err(Error::Invariant("trivial extension isomorphism is not bijective".into()));
    }
    inst.shape = Shape::TrivialExtension {
        module: module.clone(),
        iso,
    };
    inst.label = "ι".to_string();
    Ok((t, inst))
}

impl AmalgamInstance {
    pub fn r(&self) -> &FiniteRing {
        self.f.domain()
    }

    pub fn s(&self) -> &FiniteRing {
        self.f.codomain()
    }

    pub fn f(&self) -> &RingHom {
        &self.f
    }

    pub fn j(&self) -> &Ideal {
        &self.j
    }

    /// The amalgamated ring.
    pub fn a(&self) -> &FiniteRing {
        &self.a
    }

    pub fn proj_r(&self) -> &RingHom {
        &self.proj_r
    }

    pub fn proj_s(&self) -> &RingHom {
        &self.proj_s
    }

    pub fn embed(&self) -> &RingHom {
        &self.embed
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_duplication(&self) -> bool {
        self.r() == self.s() && self.f.is_identity()
    }

    /// The module `M` when the instance is `R ⋉ M` realized as an amalgamation.
    pub fn trivial_extension_module(&self) -> Option<&FiniteModule> {
        match &self.shape {
            Shape::TrivialExtension { module, .. } => Some(module),
            _ => None,
        }
    }

    /// `(r, s)` coordinates of an element of `A`.
    pub fn pair(&self, a: Elem) -> (Elem, Elem) {
        (self.proj_r.apply(a), self.proj_s.apply(a))
    }

    /// The element `(r, s)` of `A`, if the pair belongs to it.
    pub fn element(&self, r: Elem, s: Elem) -> Option<Elem> {
        match self.a.construction() {
            Construction::Amalgam { lookup, right, .. } => {
                let i = lookup[r.index() * right.size() + s.index()];
                (i != u32::MAX).then_some(Elem(i))
            }
            _ => None,
        }
    }

    /// `(0, j)` for `j` in `J`.
    pub fn j_element(&self, j: Elem) -> Elem {
        self.element(Elem::ZERO, j).expect("(0, j) lies in A")
    }

    /// `f^{-1}(J)`, an ideal of `R`.
    pub fn f_inverse_j(&self) -> Ideal {
        Ideal::from_members(self.r(), self.f.preimage(self.j.members()))
    }

    /// `J` as an `S`-module.
    pub fn j_module_over_s(&self) -> FiniteModule {
        module_from_ideal(self.s(), &self.j).expect("J is an ideal of S")
    }

    /// `J` as an `R`-module through `f`.
    pub fn j_module_over_r(&self) -> FiniteModule {
        module_via_hom(&self.f, &self.j_module_over_s()).expect("f lands in S")
    }

    /// `"R ⋈^f J"` with the rings, ideal generators and hom spelled out.
    pub fn digest(&self) -> String {
        let kind = match &self.shape {
            Shape::General => "amalgam",
            Shape::Duplication => "dup",
            Shape::TrivialExtension { .. } => "trivext",
        };
        match &self.shape {
            Shape::TrivialExtension { module, .. } => {
                format!("{kind}(R={}, M={})", self.r().name(), module.name())
            }
            Shape::Duplication => format!("{kind}(R={}, I={})", self.r().name(), self.j.fmt_generators()),
            Shape::General => format!(
                "{kind}(R={}, S={}, J={}, f={})",
                self.r().name(),
                self.s().name(),
                self.j.fmt_generators(),
                self.label
            ),
        }
    }
}

/// `S1 = {(r, f(r)+j) : r ∈ Z(R)}` and `S2 = {(r, f(r)+j) : j'(f(r)+j) = 0 for some nonzero j' ∈ J}`.
pub fn star_sets(inst: &AmalgamInstance) -> (ElemSet, ElemSet) {
    let a = inst.a();
    let (s, zr) = (inst.s(), zero_divisors(inst.r()));
    let nonzero_j: Vec<Elem> = inst.j.members().iter().skip(1).collect();
    let s1 = ElemSet::from_elems(a.size(), a.elements().filter(|&x| zr.contains(inst.proj_r.apply(x))));
    let s2 = ElemSet::from_elems(
        a.size(),
        a.elements().filter(|&x| {
            let y = inst.proj_s.apply(x);
            nonzero_j.iter().any(|&jj| s.mul(jj, y) == Elem::ZERO)
        }),
    );
    (s1, s2)
}

/// `Z(A) = S1 ∪ S2`.
pub fn has_condition_star(inst: &AmalgamInstance) -> bool {
    let (s1, s2) = star_sets(inst);
    *zero_divisors(inst.a()) == s1.union(&s2)
}

/// The four sufficient conditions for `Z(A) = S1 ∪ S2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LemmaConditions {
    /// `f(Z(R)) ⊆ J` and `f^{-1}(J) != 0`.
    pub zr_into_j: bool,
    /// `f(Z(R))J = 0` and `f^{-1}(J) != 0`.
    pub zr_kills_j: bool,
    /// `J ⊆ f(R)`.
    pub j_in_image: bool,
    /// `J` is a torsion `R`-module.
    pub j_torsion: bool,
}

impl LemmaConditions {
    pub fn as_array(&self) -> [bool; 4] {
        [self.zr_into_j, self.zr_kills_j, self.j_in_image, self.j_torsion]
    }

    pub fn any(&self) -> bool {
        self.as_array().iter().any(|&b| b)
    }
}

pub fn lemma_conditions(inst: &AmalgamInstance) -> LemmaConditions {
    let (r, s, f, j) = (inst.r(), inst.s(), inst.f(), inst.j());
    let zr = zero_divisors(r);
    let preimage_nonzero = f.preimage(j.members()).len() > 1;
    let zr_into_j = zr.iter().all(|z| j.contains(f.apply(z)));
    let zr_kills_j = zr
        .iter()
        .all(|z| j.members().iter().all(|y| s.mul(f.apply(z), y) == Elem::ZERO));
    let image = f.image();
    LemmaConditions {
        zr_into_j: zr_into_j && preimage_nonzero,
        zr_kills_j: zr_kills_j && preimage_nonzero,
        j_in_image: j.members().is_subset(&image),
        j_torsion: is_torsion(&inst.j_module_over_r()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiftKind {
    /// `p' = {(r, f(r)+j) : r ∈ p}` for a prime `p` of `R`.
    P,
    /// `q̄ = {(r, f(r)+j) : f(r)+j ∈ q}` for a prime `q` of `S` not containing `J`.
    Q,
}

#[derive(Clone, Debug)]
pub struct PrimeLift {
    pub kind: LiftKind,
    pub source: Ideal,
    pub lifted: Ideal,
}

pub fn prime_lift_p(inst: &AmalgamInstance, p: &Ideal) -> Result<PrimeLift> {
    if p.ring() != inst.r() || !p.is_prime() {
        return input(format!("prime_lift_p: {} is not a prime of R", p));
    }
    let members = inst.proj_r.preimage(p.members());
    Ok(PrimeLift {
        kind: LiftKind::P,
        source: p.clone(),
        lifted: Ideal::from_members(inst.a(), members),
    })
}

pub fn prime_lift_q(inst: &AmalgamInstance, q: &Ideal) -> Result<PrimeLift> {
    if q.ring() != inst.s() || !q.is_prime() {
        return input(format!("prime_lift_q: {} is not a prime of S", q));
    }
    if inst.j.is_subset(q) {
        return input(format!("prime_lift_q: {} contains J", q));
    }
    let members = inst.proj_s.preimage(q.members());
    Ok(PrimeLift {
        kind: LiftKind::Q,
        source: q.clone(),
        lifted: Ideal::from_members(inst.a(), members),
    })
}

/// All lifts `p'` over `Spec(R)` and `q̄` over `Spec(S) ∖ V(J)`.
pub fn prime_lifts(inst: &AmalgamInstance) -> Vec<PrimeLift> {
    let mut out: Vec<PrimeLift> = spec(inst.r())
        .iter()
        .map(|p| prime_lift_p(inst, p).expect("prime of R"))
        .collect();
    out.extend(
        spec(inst.s())
            .iter()
            .filter(|q| !inst.j.is_subset(q))
            .map(|q| prime_lift_q(inst, q).expect("prime of S outside V(J)")),
    );
    out
}

fn sorted(mut ideals: Vec<Ideal>) -> Vec<Ideal> {
    ideals.sort_by(|a, b| (a.len(), a.members()).cmp(&(b.len(), b.members())));
    ideals.dedup();
    ideals
}

/// The primes of `A` as predicted by the lifts.
pub fn amalgam_spec_expected(inst: &AmalgamInstance) -> Vec<Ideal> {
    sorted(prime_lifts(inst).into_iter().map(|l| l.lifted).collect())
}

/// The maximal ideals of `A` as predicted: `p'` for `p ∈ Max(R)` and `q̄` for `q ∈ Max(S) ∖ V(J)`.
pub fn amalgam_max_expected(inst: &AmalgamInstance) -> Vec<Ideal> {
    let mut out: Vec<Ideal> = crate::ideal::max_spec(inst.r())
        .iter()
        .map(|p| prime_lift_p(inst, p).expect("maximal ideal of R").lifted)
        .collect();
    out.extend(
        crate::ideal::max_spec(inst.s())
            .iter()
            .filter(|q| !inst.j.is_subset(q))
            .map(|q| prime_lift_q(inst, q).expect("maximal ideal of S outside V(J)").lifted),
    );
    sorted(out)
}

/// `T_p = f(R ∖ p) + J`, closed under multiplication.
pub fn mult_set_t(inst: &AmalgamInstance, p: &Ideal) -> Result<MultiplicativeSet> {
    if p.ring() != inst.r() || !p.is_prime() {
        return input(format!("mult_set_T: {} is not a prime of R", p));
    }
    let (s, f) = (inst.s(), inst.f());
    let elems: Vec<Elem> = inst
        .r()
        .elements()
        .filter(|&x| !p.contains(x))
        .flat_map(|x| inst.j.members().iter().map(move |y| s.add(f.apply(x), y)))
        .collect();
    Ok(MultiplicativeSet::new(s, elems))
}

/// Which of the three descriptions of `A_P` applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocalizationCase {
    /// `P = q̄`: `A_P ≅ S_q`.
    QType,
    /// `P = p'` with `f^{-1}(J) ⊄ p`: `A_P ≅ R_p`.
    PTypeOff,
    /// `P = p'` with `f^{-1}(J) ⊆ p`: `A_P ≅ R_p ⋈^{f_p} J_{T_p}`.
    PTypeOn,
}

/// A verified isomorphism from `A_P` onto the described target.
#[derive(Clone, Debug)]
pub struct LocalizationIso {
    pub case: LocalizationCase,
    pub prime: Ideal,
    pub source: FiniteRing,
    pub target: FiniteRing,
    pub map: RingHom,
    /// The amalgamation `R_p ⋈^{f_p} J_{T_p}` in the third case.
    pub target_instance: Option<AmalgamInstance>,
}

/// Builds the map on `A_P` induced by `phi` on representatives, checking that it
/// is well defined.
fn induced(pi: &RingHom, phi: impl Fn(Elem) -> Elem, target: &FiniteRing) -> Result<RingHom> {
    let source = pi.codomain();
    let mut table = vec![None; source.size()];
    for a in pi.domain().elements() {
        let v = phi(a);
        match table[pi.apply(a).index()] {
            None => table[pi.apply(a).index()] = Some(v),
            Some(w) if w == v => {}
            Some(_) => {
                return Err(Error::Invariant(format!(
                    "localization map not well defined at {}",
                    pi.domain().fmt_elem(a)
                )))
            }
        }
    }
    let map = table.into_iter().map(|v| v.expect("projection is onto")).collect();
    make_hom(source, target, map).map_err(|e| Error::Invariant(format!("localization map is not a hom: {e}")))
}

fn classify(inst: &AmalgamInstance, prime: &Ideal) -> Result<(LocalizationCase, Ideal)> {
    for q in spec(inst.s()).iter().filter(|q| !inst.j.is_subset(q)) {
        let lift = prime_lift_q(inst, q)?;
        if lift.lifted == *prime {
            return Ok((LocalizationCase::QType, q.clone()));
        }
    }
    let p = Ideal::from_members(inst.r(), inst.proj_r.image_of(prime.members()));
    let lift = prime_lift_p(inst, &p)?;
    if lift.lifted != *prime {
        return input(format!("localization_iso: {} is not a prime of A", prime));
    }
    if inst.f_inverse_j().is_subset(&p) {
        Ok((LocalizationCase::PTypeOn, p))
    } else {
        Ok((LocalizationCase::PTypeOff, p))
    }
}

/// The explicit isomorphism describing `A_P`, verified to be a bijective hom.
pub fn localization_iso(inst: &AmalgamInstance, prime: &Ideal) -> Result<LocalizationIso> {
    if prime.ring() != inst.a() || !prime.is_prime() {
        return input(format!("localization_iso: {} is not a prime of A", prime));
    }
    let (case, source_prime) = classify(inst, prime)?;
    let (ap, pi) = localize_at_prime(inst.a(), prime)?;
    let (target, map, target_instance) = match case {
        LocalizationCase::QType => {
            // (r, f(r)+j)/1 ↦ (f(r)+j)/1
            let (sq, ps) = localize_at_prime(inst.s(), &source_prime)?;
            let map = induced(&pi, |a| ps.apply(inst.proj_s.apply(a)), &sq)?;
            (sq, map, None)
        }
        LocalizationCase::PTypeOff => {
            // (r, f(r)+j)/1 ↦ r/1
            let (rp, pr) = localize_at_prime(inst.r(), &source_prime)?;
            let map = induced(&pi, |a| pr.apply(inst.proj_r.apply(a)), &rp)?;
            (rp, map, None)
        }
        LocalizationCase::PTypeOn => {
            let (_, pr) = localize_at_prime(inst.r(), &source_prime)?;
            let t = mult_set_t(inst, &source_prime)?;
            let (st, ps) = localize_ring(inst.s(), &t)?;
            // f_p(r/1) = f(r)/1
            let fp = induced(&pr, |x| ps.apply(inst.f.apply(x)), &st)?;
            let jt = Ideal::from_members(&st, ps.image_of(inst.j.members()));
            let target = amalgamation(&fp, &jt)
                .map_err(|e| Error::Invariant(format!("J_T is not a proper ideal of S_T: {e}")))?;
            // (r, f(r)+j)/1 ↦ (r/1, (f(r)+j)/1)
            let map = induced(
                &pi,
                |a| {
                    let (x, y) = inst.pair(a);
                    target
                        .element(pr.apply(x), ps.apply(y))
                        .unwrap_or(Elem(u32::MAX))
                },
                target.a(),
            )?;
            (target.a().clone(), map, Some(target))
        }
    };
    if !map.is_bijective() {
        return Err(Error::Invariant(format!(
            "localization of {} at {} is not isomorphic to {}",
            inst.a().name(),
            prime,
            target.name()
        )));
    }
    Ok(LocalizationIso {
        case,
        prime: prime.clone(),
        source: ap,
        target,
        map,
        target_instance,
    })
}
