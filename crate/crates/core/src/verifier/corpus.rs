use crate::amalgam::{amalgamation, duplication, trivial_extension, AmalgamInstance};
use crate::error::{Error, Result};
use crate::ideal::{all_ideals, Ideal};
use crate::module::{module_from_ideal, module_from_ring, module_product, module_quotient, module_via_hom, FiniteModule};
use crate::ring::{
    hom_from_generators, make_poly_quotient, make_product, make_quotient, make_zmod, FiniteRing, Limits, Polynomial,
    RingHom,
};

use super::Instance;

/// Family parameters for [`generate_corpus`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusBounds {
    /// Largest modulus `n` of `Z/n`.
    pub max_modulus: u64,
    /// Largest `p^k` for `F_p[X]/(X^k)`.
    pub max_poly_size: usize,
    /// Largest amalgamation kept.
    pub max_amalgam_size: usize,
    /// Largest base ring of a trivial extension.
    pub max_trivext_base: usize,
}

impl Default for CorpusBounds {
    fn default() -> Self {
        CorpusBounds {
            max_modulus: 48,
            max_poly_size: 256,
            max_amalgam_size: 1024,
            max_trivext_base: 12,
        }
    }
}

impl CorpusBounds {
    pub fn small(max_modulus: u64) -> Self {
        CorpusBounds {
            max_modulus,
            max_poly_size: 16,
            max_amalgam_size: 256,
            max_trivext_base: 4,
        }
    }
}

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn truncated(p: u64, k: usize) -> Result<FiniteRing> {
    let fp = make_zmod(p)?;
    make_poly_quotient(&fp, &Polynomial::monomial(&fp, k))
}

fn proper_ideals(ring: &FiniteRing) -> Result<Vec<Ideal>> {
    Ok(all_ideals(ring)?.into_iter().filter(|i| i.is_proper()).collect())
}

struct Collector {
    bounds: CorpusBounds,
    out: Vec<Instance>,
}

impl Collector {
    /// Every amalgamation along a proper ideal of the codomain within the size bound.
    fn along_all(&mut self, f: &RingHom) -> Result<()> {
        let (r, s) = (f.domain(), f.codomain());
        for j in proper_ideals(s)? {
            if r.size() * j.len() > self.bounds.max_amalgam_size {
                continue;
            }
            let inst = if f.is_identity() { duplication(r, &j)? } else { amalgamation(f, &j)? };
            self.out.push(inst.into());
        }
        Ok(())
    }

    fn trivext(&mut self, r: &FiniteRing, m: &FiniteModule) -> Result<()> {
        if r.size() * m.size() > self.bounds.max_amalgam_size {
            return Ok(());
        }
        let (_, inst) = trivial_extension(r, m)?;
        self.out.push(inst.into());
        Ok(())
    }
}

/// Deterministic corpus: plain rings, canonical surjections and inclusions with
/// every proper `J`, diagonal maps into products, duplications and trivial extensions.
pub fn generate_corpus(bounds: CorpusBounds) -> Result<Vec<Instance>> {
    let limits = Limits::default();
    if bounds.max_modulus as usize > limits.max_ring_size
        || bounds.max_poly_size > limits.max_ring_size
        || bounds.max_amalgam_size > limits.max_ring_size
    {
        return Err(Error::ResourceCap {
            what: "corpus bound",
            limit: limits.max_ring_size,
        });
    }
    if bounds.max_modulus < 2 {
        return Err(Error::Input("corpus: the modulus bound must be at least 2".into()));
    }
    let mut c = Collector { bounds, out: Vec::new() };

    let zmods: Vec<FiniteRing> = (2..=bounds.max_modulus).map(make_zmod).collect::<Result<_>>()?;
    let mut truncs: Vec<(u64, usize, FiniteRing)> = Vec::new();
    for p in PRIMES {
        let mut k = 2;
        while (p as usize).pow(k as u32) <= bounds.max_poly_size {
            truncs.push((p, k, truncated(p, k)?));
            k += 1;
        }
    }
    for r in &zmods {
        c.out.push(r.clone().into());
    }
    for (_, _, r) in &truncs {
        c.out.push(r.clone().into());
    }

    // Z/n onto Z/d.
    for (i, r) in zmods.iter().enumerate() {
        let n = i as u64 + 2;
        for d in (2..=n).rev().filter(|d| n.is_multiple_of(*d)) {
            let (_, f) = make_quotient(r, &Ideal::principal(r, r.from_int(d as i64)))?;
            c.along_all(&f)?;
        }
    }

    // F_p[X]/(X^k) onto F_p[X]/(X^l).
    for (_, k, r) in &truncs {
        let x = r.indeterminate().expect("polynomial quotient");
        for l in (1..=*k).rev() {
            let (_, f) = make_quotient(r, &Ideal::principal(r, r.pow(x, l as u64)))?;
            c.along_all(&f)?;
        }
    }

    // Inclusions of the coefficient field, and F_2 into F_4.
    let fields: Vec<FiniteRing> = PRIMES.iter().take(2).map(|&p| make_zmod(p)).collect::<Result<_>>()?;
    for fp in &fields {
        for k in 2..=4 {
            let s = make_poly_quotient(fp, &Polynomial::monomial(fp, k))?;
            if s.size() > bounds.max_poly_size {
                break;
            }
            let f = hom_from_generators(fp, &s, &[(fp.one(), s.one())])?;
            c.along_all(&f)?;
        }
    }
    let f2 = &fields[0];
    let f4 = make_poly_quotient(f2, &Polynomial::from_ints(f2, &[1, 1, 1]))?;
    c.along_all(&hom_from_generators(f2, &f4, &[(f2.one(), f4.one())])?)?;
    for n in [4u64, 6] {
        let zn = make_zmod(n)?;
        let s = make_poly_quotient(&zn, &Polynomial::monomial(&zn, 2))?;
        c.along_all(&hom_from_generators(&zn, &s, &[(zn.one(), s.one())])?)?;
    }

    // Diagonal maps Z/n into Z/n x Z/d.
    for n in [2u64, 3, 4, 6] {
        let zn = make_zmod(n)?;
        for d in (2..=n).rev().filter(|d| n % d == 0) {
            let zd = make_zmod(d)?;
            let s = make_product(&zn, &zd)?;
            c.along_all(&hom_from_generators(&zn, &s, &[(zn.one(), s.one())])?)?;
        }
    }
    let s = make_product(f2, &f4)?;
    c.along_all(&hom_from_generators(f2, &s, &[(f2.one(), s.one())])?)?;

    // Trivial extensions.
    let mut bases: Vec<FiniteRing> = zmods
        .iter()
        .filter(|r| r.size() <= bounds.max_trivext_base)
        .cloned()
        .collect();
    bases.extend(
        truncs
            .iter()
            .filter(|(_, _, r)| r.size() <= bounds.max_trivext_base)
            .map(|(_, _, r)| r.clone()),
    );
    for r in &bases {
        let whole = module_from_ring(r);
        c.trivext(r, &whole)?;
        for i in proper_ideals(r)?.into_iter().filter(|i| !i.is_zero()) {
            c.trivext(r, &module_from_ideal(r, &i)?)?;
            c.trivext(r, &module_quotient(r, &i)?)?;
        }
        if r.size() <= 6 {
            c.trivext(r, &module_product(&whole, &whole)?)?;
        }
    }
    for (base, ext) in [(f2.clone(), f4.clone()), (f2.clone(), truncated(2, 2)?), (make_zmod(3)?, truncated(3, 2)?)] {
        let incl = hom_from_generators(&base, &ext, &[(base.one(), ext.one())])?;
        c.trivext(&base, &module_via_hom(&incl, &module_from_ring(&ext))?)?;
    }
    let f3 = make_zmod(3)?;
    let f9 = make_poly_quotient(&f3, &Polynomial::from_ints(&f3, &[1, 0, 1]))?;
    let incl = hom_from_generators(&f3, &f9, &[(f3.one(), f9.one())])?;
    c.trivext(&f3, &module_via_hom(&incl, &module_from_ring(&f9))?)?;
    Ok(c.out)
}

/// `F_2[X]/(X^8) ⋈^f (X^2)` with `f` onto `F_2[X]/(X^4)`.
pub fn truncated_example() -> Result<AmalgamInstance> {
    surjection_example(&truncated(2, 8)?, 4, 2)
}

/// `Z/48 ⋈^f (6)` with `f` onto `Z/24`.
pub fn modular_example() -> Result<AmalgamInstance> {
    let r = make_zmod(48)?;
    let (s, f) = make_quotient(&r, &Ideal::principal(&r, r.from_int(24)))?;
    amalgamation(&f, &Ideal::principal(&s, s.from_int(6)))
}

/// `F_2[X]/(X^4) ⋈^f (X)` with `f` onto `F_2[X]/(X^2)`.
pub fn gaussian_non_arithmetical_example() -> Result<AmalgamInstance> {
    surjection_example(&truncated(2, 4)?, 2, 1)
}

fn surjection_example(r: &FiniteRing, l: u64, j: u64) -> Result<AmalgamInstance> {
    let x = r.indeterminate().expect("polynomial quotient");
    let (s, f) = make_quotient(r, &Ideal::principal(r, r.pow(x, l)))?;
    let y = s.indeterminate().expect("quotient of a polynomial quotient");
    amalgamation(&f, &Ideal::principal(&s, s.pow(y, j)))
}
