//! Forward chaining over declared attributes of rings that need not be finite.
//!
//! A knowledge base is a list of entries. Each entry describes one amalgamation
//! `A = R ⋈^f J` through tri-state attributes of the entities `R`, `S`, `A`, `f`
//! and `J`. Rules transcribe the registered claims; entries may add their own
//! cited axiom rules.

mod rules;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::verifier::ClaimId;

pub use rules::{registry_rules, Rule, RuleSource};

/// Attributes carried by the ring entities `R`, `S` and `A`.
pub const RING_ATTRIBUTES: &[&str] = &[
    "is_domain",
    "is_field",
    "is_local",
    "is_valuation_domain",
    "is_prufer",
    "is_gaussian",
    "is_arithmetical",
    "is_chain",
    "is_total_quotient",
    "Z_subset_Jac",
];

/// Attributes tied to one entity.
pub const FIXED_ATTRIBUTES: &[(&str, &str)] = &[
    ("A", "condition_star"),
    ("A", "is_duplication"),
    ("A", "is_trivial_extension"),
    ("S", "chain_off_V_J"),
    ("f", "f_reg_to_reg"),
    ("f", "f_surjective"),
    ("J", "J_proper"),
    ("J", "J_nonzero"),
    ("J", "J_subset_Jac_S"),
    ("J", "J_subset_fR"),
    ("J", "J_square_zero"),
    ("J", "J_uniserial"),
    ("J", "J_locally_divisible"),
    ("J", "J_distributive"),
    ("J", "J_stable_under_regular_scaling"),
    ("J", "J_module_stable"),
    ("J", "J_regular_scaling"),
    ("J", "J_gauss_scaling"),
    ("J", "J_chain_scaling"),
    ("J", "J_nonzero_scaling"),
    ("J", "J_local_square_zero"),
    ("J", "J_local_gauss_scaling"),
    ("J", "J_local_zero"),
    ("J", "J_support_domains"),
    ("J", "J_zero_divisors_in_Z_R"),
    ("J", "J_domain_extension"),
    ("J", "J_divisible_extension"),
];

/// `entity.attribute`, e.g. `A.is_gaussian`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub entity: String,
    pub attribute: String,
}

impl Atom {
    pub fn new(entity: &str, attribute: &str) -> Result<Atom> {
        let ok = (matches!(entity, "R" | "S" | "A") && RING_ATTRIBUTES.contains(&attribute))
            || FIXED_ATTRIBUTES.contains(&(entity, attribute));
        if !ok {
            return Err(Error::Query(format!("unknown attribute {entity}.{attribute}")));
        }
        Ok(Atom {
            entity: entity.to_string(),
            attribute: attribute.to_string(),
        })
    }

    pub fn parse(s: &str) -> Result<Atom> {
        let (e, a) = s
            .split_once('.')
            .ok_or_else(|| Error::Query(format!("attribute '{s}' is not of the form entity.attribute")))?;
        Atom::new(e.trim(), a.trim())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.entity, self.attribute)
    }
}

impl Serialize for Atom {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Atom {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Atom, D::Error> {
        let s = String::deserialize(d)?;
        Atom::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    pub fn known(self) -> Option<bool> {
        match self {
            Truth::True => Some(true),
            Truth::False => Some(false),
            Truth::Unknown => None,
        }
    }
}

impl From<bool> for Truth {
    fn from(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Axiom { citation: String, external: bool },
    Rule { rule: String, premises: Vec<Atom> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub value: Truth,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

/// All attributes of one entity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactRecord {
    pub entity: String,
    pub attributes: BTreeMap<String, Fact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    #[serde(default)]
    pub description: String,
    /// Name of a finite instance the entry describes, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub records: Vec<FactRecord>,
    /// Cited implications that hold for this entry only.
    #[serde(default)]
    pub rules: Vec<Rule>,
}

impl Entry {
    pub fn value(&self, atom: &Atom) -> Truth {
        self.fact(atom).map_or(Truth::Unknown, |f| f.value)
    }

    pub fn fact(&self, atom: &Atom) -> Option<&Fact> {
        self.records
            .iter()
            .find(|r| r.entity == atom.entity)
            .and_then(|r| r.attributes.get(&atom.attribute))
    }

    /// Every attribute with a known value.
    pub fn known(&self) -> Vec<(Atom, bool)> {
        let mut out = Vec::new();
        for r in &self.records {
            for (attr, fact) in &r.attributes {
                if let (Some(v), Ok(atom)) = (fact.value.known(), Atom::new(&r.entity, attr)) {
                    out.push((atom, v));
                }
            }
        }
        out
    }

    fn set(&mut self, atom: &Atom, value: bool, provenance: Provenance) {
        let idx = match self.records.iter().position(|r| r.entity == atom.entity) {
            Some(i) => i,
            None => {
                self.records.push(FactRecord {
                    entity: atom.entity.clone(),
                    attributes: BTreeMap::new(),
                });
                self.records.len() - 1
            }
        };
        self.records[idx].attributes.insert(
            atom.attribute.clone(),
            Fact {
                value: value.into(),
                provenance: Some(provenance),
            },
        );
    }

    fn validate(&self) -> Result<()> {
        for r in &self.records {
            for (attr, fact) in &r.attributes {
                Atom::new(&r.entity, attr)?;
                if fact.value != Truth::Unknown && fact.provenance.is_none() {
                    return Err(Error::Input(format!(
                        "{}: {}.{attr} has a value but no provenance",
                        self.name, r.entity
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnowledgeBase {
    pub entries: Vec<Entry>,
}

/// A rule whose hypotheses contradict known facts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocked {
    pub rule: String,
    pub premise: Atom,
    pub required: bool,
}

impl KnowledgeBase {
    pub fn from_json(text: &str) -> Result<KnowledgeBase> {
        let kb: KnowledgeBase =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("knowledge base: {e}")))?;
        for e in &kb.entries {
            e.validate()?;
        }
        Ok(kb)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("knowledge base serializes")
    }

    pub fn entry(&self, name: &str) -> Result<&Entry> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::Query(format!("no entry named '{name}'")))
    }
}

/// The entries shipped with the library.
pub fn shipped_kb() -> KnowledgeBase {
    KnowledgeBase::from_json(include_str!("../../data/kb.json")).expect("shipped knowledge base is valid")
}

fn rules_for(entry: &Entry) -> Vec<Rule> {
    let mut all = registry_rules();
    all.extend(entry.rules.iter().cloned());
    all
}

/// Least fixed point of rule application on every entry.
pub fn apply_rules(kb: &KnowledgeBase) -> Result<KnowledgeBase> {
    let mut out = kb.clone();
    for entry in &mut out.entries {
        let rules = rules_for(entry);
        loop {
            let mut changed = false;
            for rule in &rules {
                let fires = rule
                    .premises
                    .iter()
                    .all(|(atom, want)| entry.value(atom).known() == Some(*want));
                if !fires {
                    continue;
                }
                let (atom, value) = &rule.consequence;
                match entry.value(atom).known() {
                    Some(v) if v == *value => {}
                    Some(_) => {
                        let existing = render(&explain_entry(entry, atom)?);
                        let mut tentative = entry.clone();
                        tentative.set(atom, *value, rule.provenance());
                        let derived = render(&explain_entry(&tentative, atom)?);
                        return Err(Error::Inconsistent(format!(
                            "{}: {atom} derived both ways\n{existing}{derived}",
                            entry.name
                        )));
                    }
                    None => {
                        entry.set(atom, *value, rule.provenance());
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
    Ok(out)
}

/// Rules of an entry whose claim hypotheses contradict known facts. Listed
/// once per rule id and premise, contrapositives folded into their rule.
pub fn blocked_rules(entry: &Entry) -> Vec<Blocked> {
    let mut out = Vec::new();
    for rule in rules_for(entry) {
        if let Some((atom, want)) = rule.premises[..rule.hypotheses]
            .iter()
            .find(|(atom, want)| entry.value(atom).known() == Some(!*want))
        {
            let b = Blocked {
                rule: rule.id.trim_end_matches(" contrapositive").to_string(),
                premise: atom.clone(),
                required: *want,
            };
            if !out.contains(&b) {
                out.push(b);
            }
        }
    }
    out
}

/// A node of a derivation tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub atom: Atom,
    pub value: bool,
    pub source: String,
    pub children: Vec<Derivation>,
}

/// The derivation of an attribute, from cited axioms up to the queried value.
pub fn explain(kb: &KnowledgeBase, entry: &str, atom: &Atom) -> Result<Derivation> {
    explain_entry(kb.entry(entry)?, atom)
}

fn explain_entry(entry: &Entry, atom: &Atom) -> Result<Derivation> {
    let fact = entry
        .fact(atom)
        .filter(|f| f.value != Truth::Unknown)
        .ok_or_else(|| Error::Query(format!("{}: {atom} is unknown", entry.name)))?;
    let value = fact.value.known().expect("known");
    Ok(match fact.provenance.as_ref().expect("validated") {
        Provenance::Axiom { citation, external } => Derivation {
            atom: atom.clone(),
            value,
            source: if *external {
                format!("axiom [{citation}] (external)")
            } else {
                format!("axiom [{citation}]")
            },
            children: Vec::new(),
        },
        Provenance::Rule { rule, premises } => Derivation {
            atom: atom.clone(),
            value,
            source: format!("rule {rule}"),
            children: premises.iter().map(|p| explain_entry(entry, p)).collect::<Result<_>>()?,
        },
    })
}

/// Indented text, one node per line.
pub fn render(d: &Derivation) -> String {
    fn go(d: &Derivation, depth: usize, out: &mut String) {
        out.push_str(&format!("{}{} = {}  <- {}\n", "  ".repeat(depth), d.atom, d.value, d.source));
        for c in &d.children {
            go(c, depth + 1, out);
        }
    }
    let mut out = String::new();
    go(d, 0, &mut out);
    out
}

/// Rule ids attached to a registered claim.
pub fn rules_of_claim(claim: ClaimId) -> Vec<Rule> {
    registry_rules().into_iter().filter(|r| r.claim == Some(claim)).collect()
}

/// A computed attribute disagreeing with the knowledge base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeMismatch {
    pub entry: String,
    pub atom: Atom,
    pub symbolic: bool,
    pub computed: bool,
}

/// Compares every known attribute of the entries tied to a finite instance
/// with its computed value. `instances` resolves instance names.
pub fn consistency_bridge(
    kb: &KnowledgeBase,
    instances: impl Fn(&str) -> Option<crate::amalgam::AmalgamInstance>,
) -> Result<(usize, Vec<BridgeMismatch>)> {
    let derived = apply_rules(kb)?;
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for entry in &derived.entries {
        let Some(name) = &entry.instance else { continue };
        let inst = instances(name).ok_or_else(|| Error::Query(format!("unknown instance '{name}'")))?;
        for (atom, symbolic) in entry.known() {
            if let Some(computed) = crate::verifier::claims::atom_value(&inst, &atom.entity, &atom.attribute)? {
                checked += 1;
                if computed != symbolic {
                    mismatches.push(BridgeMismatch {
                        entry: entry.name.clone(),
                        atom,
                        symbolic,
                        computed,
                    });
                }
            }
        }
    }
    Ok((checked, mismatches))
}
