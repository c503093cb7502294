use serde::{Deserialize, Serialize};

use crate::verifier::ClaimId;

use super::{Atom, Provenance};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RuleSource {
    Registry,
    Cited { citation: String, external: bool },
}

/// `premises ⇒ consequence`, each premise an attribute with its required value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub id: String,
    #[serde(default, skip)]
    pub claim: Option<ClaimId>,
    pub premises: Vec<(Atom, bool)>,
    /// How many leading premises are hypotheses of the claim.
    #[serde(default)]
    pub hypotheses: usize,
    pub consequence: (Atom, bool),
    pub source: RuleSource,
}

impl Rule {
    pub(crate) fn provenance(&self) -> Provenance {
        Provenance::Rule {
            rule: self.id.clone(),
            premises: self.premises.iter().map(|(a, _)| a.clone()).collect(),
        }
    }
}

type Lits = &'static [(&'static str, bool)];

struct Statement {
    claim: ClaimId,
    hyps: Lits,
    lhs: Lits,
    rhs: Lits,
    iff: bool,
}

fn atom(s: &str) -> Atom {
    Atom::parse(s).expect("registry atoms are in the vocabulary")
}

fn lits(l: Lits) -> Vec<(Atom, bool)> {
    l.iter().map(|&(a, v)| (atom(a), v)).collect()
}

/// Forward rules `hyps ∧ lhs ⇒ d` for each conjunct `d` of `rhs`, and the
/// contrapositives `hyps ∧ ¬d ∧ (lhs minus c) ⇒ ¬c`.
fn expand(claim: ClaimId, tag: &str, hyps: &[(Atom, bool)], lhs: &[(Atom, bool)], rhs: &[(Atom, bool)], out: &mut Vec<Rule>) {
    let id = format!("{}{tag}", claim.as_str());
    for d in rhs {
        let mut premises = hyps.to_vec();
        premises.extend(lhs.iter().cloned());
        out.push(Rule {
            id: id.clone(),
            claim: Some(claim),
            premises,
            hypotheses: hyps.len(),
            consequence: d.clone(),
            source: RuleSource::Registry,
        });
    }
    for (da, dv) in rhs {
        for (i, (ca, cv)) in lhs.iter().enumerate() {
            let mut premises = hyps.to_vec();
            premises.push((da.clone(), !dv));
            premises.extend(lhs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, l)| l.clone()));
            // a hypothesis repeated in the conclusion makes some contrapositives vacuous
            if premises.iter().any(|(a, v)| premises.contains(&(a.clone(), !v))) {
                continue;
            }
            out.push(Rule {
                id: format!("{id} contrapositive"),
                claim: Some(claim),
                premises,
                hypotheses: hyps.len(),
                consequence: (ca.clone(), !cv),
                source: RuleSource::Registry,
            });
        }
    }
}

const STATEMENTS: &[Statement] = &[
    Statement {
        claim: ClaimId::LZdEq3,
        hyps: &[],
        lhs: &[("J.J_subset_fR", true)],
        rhs: &[("A.condition_star", true)],
        iff: false,
    },
    Statement {
        claim: ClaimId::RTrivext,
        hyps: &[],
        lhs: &[("A.is_trivial_extension", true)],
        rhs: &[("A.condition_star", true)],
        iff: false,
    },
    Statement {
        claim: ClaimId::TMain1,
        hyps: &[("f.f_reg_to_reg", true)],
        lhs: &[("A.is_prufer", true)],
        rhs: &[("R.is_prufer", true), ("J.J_stable_under_regular_scaling", true)],
        iff: false,
    },
    Statement {
        claim: ClaimId::TMain2,
        hyps: &[("f.f_reg_to_reg", true), ("A.condition_star", true), ("A.Z_subset_Jac", true)],
        lhs: &[("R.is_prufer", true), ("J.J_stable_under_regular_scaling", true)],
        rhs: &[("A.is_prufer", true)],
        iff: false,
    },
    Statement {
        claim: ClaimId::CLocal1,
        hyps: &[("R.is_local", true), ("J.J_subset_Jac_S", true), ("f.f_reg_to_reg", true)],
        lhs: &[("A.is_prufer", true)],
        rhs: &[("R.is_prufer", true), ("J.J_regular_scaling", true)],
        iff: false,
    },
    Statement {
        claim: ClaimId::CLocal2,
        hyps: &[
            ("R.is_local", true),
            ("J.J_subset_Jac_S", true),
            ("f.f_reg_to_reg", true),
            ("A.condition_star", true),
        ],
        lhs: &[("R.is_prufer", true), ("J.J_regular_scaling", true)],
        rhs: &[("A.is_prufer", true)],
        iff: false,
    },
    Statement {
        claim: ClaimId::CDup1,
        hyps: &[("A.is_duplication", true)],
        lhs: &[("A.is_prufer", true)],
        rhs: &[("R.is_prufer", true), ("J.J_module_stable", true)],
        iff: false,
    },
    Statement {
        claim: ClaimId::CDup2,
        hyps: &[("A.is_duplication", true), ("R.Z_subset_Jac", true), ("J.J_subset_Jac_S", true)],
        lhs: &[("R.is_prufer", true), ("J.J_module_stable", true)],
        rhs: &[("A.is_prufer", true)],
        iff: false,
    },
    Statement {
        claim: ClaimId::CDupLocal,
        hyps: &[("A.is_duplication", true), ("R.is_local", true)],
        lhs: &[("A.is_prufer", true)],
        rhs: &[("R.is_prufer", true), ("J.J_regular_scaling", true)],
        iff: true,
    },
    Statement {
        claim: ClaimId::CTrivext1,
        hyps: &[("A.is_trivial_extension", true), ("J.J_zero_divisors_in_Z_R", true)],
        lhs: &[("A.is_prufer", true)],
        rhs: &[("R.is_prufer", true), ("J.J_module_stable", true)],
        iff: false,
    },
    Statement {
        claim: ClaimId::CTrivext2,
        hyps: &[
            ("A.is_trivial_extension", true),
            ("J.J_zero_divisors_in_Z_R", true),
            ("R.Z_subset_Jac", true),
        ],
        lhs: &[("R.is_prufer", true), ("J.J_module_stable", true)],
        rhs: &[("A.is_prufer", true)],
        iff: false,
    },
    Statement {
        claim: ClaimId::CDomainExt,
        hyps: &[
            ("A.is_trivial_extension", true),
            ("R.is_domain", true),
            ("J.J_domain_extension", true),
        ],
        lhs: &[("A.is_prufer", true)],
        rhs: &[("R.is_prufer", true), ("R.is_domain", true), ("J.J_divisible_extension", true)],
        iff: true,
    },
    Statement {
        claim: ClaimId::PTqr1,
        hyps: &[("J.J_subset_Jac_S", true), ("A.condition_star", true)],
        lhs: &[("R.is_total_quotient", true)],
        rhs: &[("A.is_total_quotient", true)],
        iff: false,
    },
    Statement {
        claim: ClaimId::PTqr2,
        hyps: &[("f.f_reg_to_reg", true)],
        lhs: &[("A.is_total_quotient", true)],
        rhs: &[("R.is_total_quotient", true)],
        iff: false,
    },
    Statement {
        claim: ClaimId::TGaussFwd,
        hyps: &[("R.is_local", true), ("J.J_subset_fR", true), ("J.J_subset_Jac_S", true)],
        lhs: &[("A.is_gaussian", true)],
        rhs: &[("R.is_gaussian", true), ("J.J_square_zero", true), ("J.J_gauss_scaling", true)],
        iff: false,
    },
    Statement {
        claim: ClaimId::TGaussBwd,
        hyps: &[("R.is_local", true), ("J.J_subset_fR", true), ("J.J_subset_Jac_S", true)],
        lhs: &[("R.is_gaussian", true), ("J.J_square_zero", true), ("J.J_gauss_scaling", true)],
        rhs: &[("A.is_gaussian", true)],
        iff: false,
    },
    Statement {
        claim: ClaimId::CGaussLoc,
        hyps: &[("J.J_subset_fR", true), ("J.J_subset_Jac_S", true)],
        lhs: &[("A.is_gaussian", true)],
        rhs: &[
            ("R.is_gaussian", true),
            ("J.J_local_square_zero", true),
            ("J.J_local_gauss_scaling", true),
        ],
        iff: true,
    },
    Statement {
        claim: ClaimId::TChainFwd,
        hyps: &[("J.J_nonzero", true)],
        lhs: &[("A.is_chain", true)],
        rhs: &[("R.is_valuation_domain", true), ("J.J_chain_scaling", true)],
        iff: false,
    },
    Statement {
        claim: ClaimId::TChainBwd,
        hyps: &[("J.J_nonzero", true), ("J.J_uniserial", true)],
        lhs: &[("R.is_valuation_domain", true), ("J.J_chain_scaling", true)],
        rhs: &[("A.is_chain", true)],
        iff: false,
    },
    Statement {
        claim: ClaimId::CChainSq0,
        hyps: &[("J.J_nonzero", true), ("J.J_square_zero", true)],
        lhs: &[("A.is_chain", true)],
        rhs: &[
            ("R.is_valuation_domain", true),
            ("J.J_uniserial", true),
            ("J.J_nonzero_scaling", true),
        ],
        iff: true,
    },
    Statement {
        claim: ClaimId::CChainFR,
        hyps: &[("J.J_subset_fR", true)],
        lhs: &[("A.is_chain", true)],
        rhs: &[("R.is_chain", true), ("J.J_nonzero", false)],
        iff: true,
    },
    Statement {
        claim: ClaimId::CDupChain,
        hyps: &[("A.is_duplication", true)],
        lhs: &[("A.is_chain", true)],
        rhs: &[("R.is_chain", true), ("J.J_nonzero", false)],
        iff: true,
    },
    Statement {
        claim: ClaimId::CArith1,
        hyps: &[("J.J_nonzero", true), ("J.J_square_zero", true)],
        lhs: &[("A.is_arithmetical", true)],
        rhs: &[
            ("R.is_arithmetical", true),
            ("J.J_support_domains", true),
            ("J.J_locally_divisible", true),
            ("J.J_distributive", true),
        ],
        iff: true,
    },
    Statement {
        claim: ClaimId::CArith2,
        hyps: &[("J.J_subset_fR", true)],
        lhs: &[("A.is_arithmetical", true)],
        rhs: &[
            ("R.is_arithmetical", true),
            ("J.J_local_zero", true),
            ("S.chain_off_V_J", true),
        ],
        iff: true,
    },
];

/// Rules transcribing the registered claims, both directions of each equivalence.
pub fn registry_rules() -> Vec<Rule> {
    let mut out = Vec::new();
    for st in STATEMENTS {
        let (hyps, lhs, rhs) = (lits(st.hyps), lits(st.lhs), lits(st.rhs));
        if st.iff {
            expand(st.claim, " (⇒)", &hyps, &lhs, &rhs, &mut out);
            expand(st.claim, " (⇐)", &hyps, &rhs, &lhs, &mut out);
        } else {
            expand(st.claim, "", &hyps, &lhs, &rhs, &mut out);
        }
    }
    out
}
