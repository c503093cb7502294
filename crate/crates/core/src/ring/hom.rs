use std::collections::VecDeque;
use std::sync::Arc;

use crate::elemset::ElemSet;
use crate::error::{input, Error, Result};

use super::{Elem, FiniteRing};

/// A ring homomorphism whose axioms were checked on every element pair.
#[derive(Clone, Debug)]
pub struct RingHom {
    domain: FiniteRing,
    codomain: FiniteRing,
    map: Arc<Vec<Elem>>,
}

impl RingHom {
    pub fn identity(ring: &FiniteRing) -> RingHom {
        RingHom {
            domain: ring.clone(),
            codomain: ring.clone(),
            map: Arc::new(ring.elements().collect()),
        }
    }

    pub fn domain(&self) -> &FiniteRing {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteRing {
        &self.codomain
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a.index()]
    }

    pub fn table(&self) -> &[Elem] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && self.map.iter().enumerate().all(|(i, e)| e.index() == i)
    }

    pub fn image_of(&self, set: &ElemSet) -> ElemSet {
        ElemSet::from_elems(self.codomain.size(), set.iter().map(|a| self.apply(a)))
    }

    pub fn image(&self) -> ElemSet {
        ElemSet::from_elems(self.codomain.size(), self.map.iter().copied())
    }

    pub fn preimage(&self, set: &ElemSet) -> ElemSet {
        ElemSet::from_elems(self.domain.size(), self.domain.elements().filter(|&a| set.contains(self.apply(a))))
    }

    pub fn kernel(&self) -> ElemSet {
        ElemSet::from_elems(self.domain.size(), self.domain.elements().filter(|&a| self.apply(a) == Elem::ZERO))
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.codomain.size()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.size() == self.codomain.size() && self.is_injective()
    }

    pub fn compose(&self, next: &RingHom) -> Result<RingHom> {
        if next.domain != self.codomain {
            return input("hom composition: codomain/domain mismatch");
        }
        Ok(RingHom {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            map: Arc::new(self.map.iter().map(|&a| next.apply(a)).collect()),
        })
    }
}

/// Verifies `map` as a ring homomorphism `domain -> codomain`.
pub fn make_hom(domain: &FiniteRing, codomain: &FiniteRing, map: Vec<Elem>) -> Result<RingHom> {
    if map.len() != domain.size() {
        return input(format!(
            "hom: map covers {} elements but the domain has {}",
            map.len(),
            domain.size()
        ));
    }
    if let Some(bad) = map.iter().find(|e| e.index() >= codomain.size()) {
        return input(format!("hom: image index {} outside the codomain", bad.0));
    }
    let f = |a: Elem| map[a.index()];
    if f(domain.one()) != codomain.one() {
        return Err(Error::Validation(format!(
            "hom: 1 maps to {} instead of 1",
            codomain.fmt_elem(f(domain.one()))
        )));
    }
    for a in domain.elements() {
        for b in domain.elements() {
            if f(domain.add(a, b)) != codomain.add(f(a), f(b)) {
                return Err(Error::Validation(format!(
                    "hom: additivity fails at ({}, {})",
                    domain.fmt_elem(a),
                    domain.fmt_elem(b)
                )));
            }
            if f(domain.mul(a, b)) != codomain.mul(f(a), f(b)) {
                return Err(Error::Validation(format!(
                    "hom: multiplicativity fails at ({}, {})",
                    domain.fmt_elem(a),
                    domain.fmt_elem(b)
                )));
            }
        }
    }
    Ok(RingHom {
        domain: domain.clone(),
        codomain: codomain.clone(),
        map: Arc::new(map),
    })
}

/// Extends generator images to a full map by closing under `+` and `*`, then verifies it.
pub fn hom_from_generators(domain: &FiniteRing, codomain: &FiniteRing, images: &[(Elem, Elem)]) -> Result<RingHom> {
    let mut map: Vec<Option<Elem>> = vec![None; domain.size()];
    let mut known: Vec<Elem> = Vec::new();
    let mut queue = VecDeque::new();
    let assign = |a: Elem, v: Elem, map: &mut Vec<Option<Elem>>, queue: &mut VecDeque<Elem>| -> Result<()> {
        match map[a.index()] {
            Some(old) if old != v => Err(Error::Validation(format!(
                "hom: {} would map to both {} and {}",
                domain.fmt_elem(a),
                codomain.fmt_elem(old),
                codomain.fmt_elem(v)
            ))),
            Some(_) => Ok(()),
            None => {
                map[a.index()] = Some(v);
                queue.push_back(a);
                Ok(())
            }
        }
    };
    assign(domain.zero(), codomain.zero(), &mut map, &mut queue)?;
    assign(domain.one(), codomain.one(), &mut map, &mut queue)?;
    for &(a, v) in images {
        assign(a, v, &mut map, &mut queue)?;
    }
    while let Some(a) = queue.pop_front() {
        known.push(a);
        let va = map[a.index()].expect("queued elements are assigned");
        for &b in &known {
            let vb = map[b.index()].expect("known elements are assigned");
            assign(domain.add(a, b), codomain.add(va, vb), &mut map, &mut queue)?;
            assign(domain.mul(a, b), codomain.mul(va, vb), &mut map, &mut queue)?;
        }
    }
    let total: Option<Vec<Elem>> = map.into_iter().collect();
    match total {
        Some(map) => make_hom(domain, codomain, map),
        None => input("hom: generator images do not determine the map on every element"),
    }
}
