use crate::elemset::ElemSet;
use crate::error::{input, Error, Result};
use crate::ideal::Ideal;

use super::{make_hom, Construction, Elem, FiniteRing, Limits, Polynomial, RingHom};

/// Residues modulo `n`.
pub fn make_zmod(n: u64) -> Result<FiniteRing> {
    make_zmod_with(n, Limits::default())
}

pub fn make_zmod_with(n: u64, limits: Limits) -> Result<FiniteRing> {
    if n < 2 {
        return input(format!("zmod({n}): modulus must be at least 2"));
    }
    if n > limits.max_ring_size as u64 {
        return Err(Error::ResourceCap {
            what: "ring size",
            limit: limits.max_ring_size,
        });
    }
    FiniteRing::build(format!("Z/{n}"), n as usize, limits, Construction::Zmod { modulus: n })
}

/// `base[X]/(modulus)` for a monic modulus of degree at least one.
pub fn make_poly_quotient(base: &FiniteRing, modulus: &Polynomial) -> Result<FiniteRing> {
    if modulus.ring() != base {
        return input("polyquot: modulus is not a polynomial over the base ring");
    }
    let degree = match modulus.degree() {
        Some(d) if d >= 1 => d,
        _ => return input("polyquot: modulus must have degree at least 1"),
    };
    if modulus.leading() != base.one() {
        return input(format!("polyquot: modulus {} is not monic", modulus));
    }
    let limits = base.limits();
    let size = (base.size() as u128).checked_pow(degree as u32).unwrap_or(u128::MAX);
    if size > limits.max_ring_size as u128 {
        return Err(Error::ResourceCap {
            what: "ring size",
            limit: limits.max_ring_size,
        });
    }
    let low = modulus.coeffs()[..degree].to_vec();
    let name = format!("{}[X]/({})", base.name(), super::fmt_poly(base, modulus.coeffs()));
    FiniteRing::build(
        name,
        size as usize,
        limits,
        Construction::PolyQuotient { base: base.clone(), low },
    )
}

/// Componentwise product ring on pairs.
pub fn make_product(left: &FiniteRing, right: &FiniteRing) -> Result<FiniteRing> {
    let limits = left.limits();
    let size = left.size().saturating_mul(right.size());
    limits.check_ring_size(size)?;
    FiniteRing::build(
        format!("({} x {})", left.name(), right.name()),
        size,
        limits,
        Construction::Product {
            left: left.clone(),
            right: right.clone(),
        },
    )
}

/// The coset ring `R/I` with minimal coset representatives, and the canonical surjection.
pub fn make_quotient(ring: &FiniteRing, ideal: &Ideal) -> Result<(FiniteRing, RingHom)> {
    if ideal.ring() != ring {
        return input("quot: ideal belongs to a different ring");
    }
    if ideal.contains(ring.one()) {
        return input("quot: cannot take the quotient by the unit ideal");
    }
    if ideal.len() == 1 {
        return Ok((ring.clone(), RingHom::identity(ring)));
    }
    let (reps, class_of) = coset_classes(ring, ideal.members());
    let size = reps.len();
    let name = format!("{}/{}", ring.name(), ideal.fmt_generators());
    let quotient = FiniteRing::build(
        name,
        size,
        ring.limits(),
        Construction::Quotient {
            parent: ring.clone(),
            ideal: ideal.members().clone(),
            generators: ideal.generators().to_vec(),
            reps,
            class_of: class_of.clone(),
        },
    )?;
    let map = class_of.into_iter().map(Elem).collect();
    let proj = make_hom(ring, &quotient, map)?;
    Ok((quotient, proj))
}

/// Partitions the carrier into cosets of an additive subgroup. Class `k` has
/// representative `reps[k]`, the smallest member in carrier order.
pub(crate) fn coset_classes(ring: &FiniteRing, subgroup: &ElemSet) -> (Vec<Elem>, Vec<u32>) {
    let n = ring.size();
    let mut class_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let members: Vec<Elem> = subgroup.iter().collect();
    for a in ring.elements() {
        if class_of[a.index()] != u32::MAX {
            continue;
        }
        let k = reps.len() as u32;
        reps.push(a);
        for &i in &members {
            class_of[ring.add(a, i).index()] = k;
        }
    }
    (reps, class_of)
}
