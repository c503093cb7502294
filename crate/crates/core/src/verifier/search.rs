use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::amalgam::has_condition_star;
use crate::error::{Error, Result};
use crate::predicates::{
    is_arithmetical, is_chain_ring, is_domain, is_field, is_gaussian, is_local, is_prufer, is_total_quotient_ring,
    is_valuation_domain, zero_divisors_in_jacobson,
};

use super::Instance;

/// Predicate vocabulary for profiles. All but `star` are read on the ring of the instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    Prufer,
    Gaussian,
    Arithmetical,
    Chain,
    TotalQuotient,
    Star,
    Local,
    Domain,
    Field,
    ValuationDomain,
    ZeroDivisorsInJacobson,
}

impl Property {
    pub const ALL: &'static [Property] = &[
        Property::Prufer,
        Property::Gaussian,
        Property::Arithmetical,
        Property::Chain,
        Property::TotalQuotient,
        Property::Star,
        Property::Local,
        Property::Domain,
        Property::Field,
        Property::ValuationDomain,
        Property::ZeroDivisorsInJacobson,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::Prufer => "prufer",
            Property::Gaussian => "gaussian",
            Property::Arithmetical => "arithmetical",
            Property::Chain => "chain",
            Property::TotalQuotient => "total-quotient",
            Property::Star => "star",
            Property::Local => "local",
            Property::Domain => "domain",
            Property::Field => "field",
            Property::ValuationDomain => "valuation-domain",
            Property::ZeroDivisorsInJacobson => "z-in-jac",
        }
    }

    /// `star` is false on plain rings.
    pub fn eval(self, inst: &Instance) -> Result<bool> {
        let ring = inst.ring();
        Ok(match self {
            Property::Prufer => is_prufer(ring)?,
            Property::Gaussian => is_gaussian(ring)?,
            Property::Arithmetical => is_arithmetical(ring)?,
            Property::Chain => is_chain_ring(ring),
            Property::TotalQuotient => is_total_quotient_ring(ring),
            Property::Star => inst.amalgam().is_some_and(has_condition_star),
            Property::Local => is_local(ring),
            Property::Domain => is_domain(ring),
            Property::Field => is_field(ring),
            Property::ValuationDomain => is_valuation_domain(ring),
            Property::ZeroDivisorsInJacobson => zero_divisors_in_jacobson(ring),
        })
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Property> {
        let s = s.trim().to_ascii_lowercase().replace('_', "-");
        Property::ALL
            .iter()
            .copied()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown property '{s}'")))
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Literal {
    pub property: Property,
    pub negated: bool,
}

/// A conjunction of possibly negated properties, written `prufer,!gaussian`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Profile(pub Vec<Literal>);

impl Profile {
    pub fn matches(&self, inst: &Instance) -> Result<bool> {
        for lit in &self.0 {
            if lit.property.eval(inst)? == lit.negated {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Profile> {
        let mut lits = Vec::new();
        for part in s.split(',').map(str::trim) {
            if part.is_empty() {
                return Err(Error::Input(format!("empty literal in profile '{s}'")));
            }
            let (negated, name) = match part.strip_prefix('!') {
                Some(rest) => (true, rest),
                None => (false, part),
            };
            lits.push(Literal {
                property: name.parse()?,
                negated,
            });
        }
        Ok(Profile(lits))
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| format!("{}{}", if l.negated { "!" } else { "" }, l.property))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// Corpus instances of size at most `max_size` matching the profile, smallest
/// first and in corpus order among equal sizes.
pub fn search(profile: &Profile, corpus: &[Instance], max_size: Option<usize>) -> Result<Vec<Instance>> {
    let hits: Vec<Result<Option<(usize, usize)>>> = corpus
        .par_iter()
        .enumerate()
        .map(|(i, inst)| {
            if max_size.is_some_and(|m| inst.size() > m) {
                return Ok(None);
            }
            Ok(profile.matches(inst)?.then_some((inst.size(), i)))
        })
        .collect();
    let mut keys = Vec::new();
    for h in hits {
        if let Some(k) = h? {
            keys.push(k);
        }
    }
    keys.sort();
    Ok(keys.into_iter().map(|(_, i)| corpus[i].clone()).collect())
}
