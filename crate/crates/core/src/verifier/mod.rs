//! Registry of ring-theoretic claims, evaluated on concrete instances.
//!
//! Every claim is an implication or equivalence guarded by hypotheses. A report
//! is `verified` when all hypotheses hold and the conclusion holds,
//! `hypothesis-not-met` when some hypothesis fails, and `falsified` otherwise.

pub(crate) mod claims;
mod corpus;
mod search;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amalgam::AmalgamInstance;
use crate::error::{Error, Result};
use crate::ring::FiniteRing;

pub use corpus::{gaussian_non_arithmetical_example, generate_corpus, modular_example, truncated_example, CorpusBounds};
pub use search::{search, Literal, Profile, Property};

/// A ring, or an amalgamation with its data.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Instance {
    Ring(FiniteRing),
    Amalgam(AmalgamInstance),
}

impl Instance {
    /// The ring the ring-level claims are evaluated on: `A` for amalgamations.
    pub fn ring(&self) -> &FiniteRing {
        match self {
            Instance::Ring(r) => r,
            Instance::Amalgam(inst) => inst.a(),
        }
    }

    pub fn amalgam(&self) -> Option<&AmalgamInstance> {
        match self {
            Instance::Ring(_) => None,
            Instance::Amalgam(inst) => Some(inst),
        }
    }

    pub fn size(&self) -> usize {
        self.ring().size()
    }

    pub fn digest(&self) -> String {
        match self {
            Instance::Ring(r) => format!("ring({})", r.name()),
            Instance::Amalgam(inst) => inst.digest(),
        }
    }
}

impl From<FiniteRing> for Instance {
    fn from(r: FiniteRing) -> Self {
        Instance::Ring(r)
    }
}

impl From<AmalgamInstance> for Instance {
    fn from(a: AmalgamInstance) -> Self {
        Instance::Amalgam(a)
    }
}

macro_rules! registry {
    ($($variant:ident => $id:literal, $scope:ident, $statement:literal;)*) => {
        /// Identifier of a registered claim.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum ClaimId {
            $($variant,)*
        }

        impl ClaimId {
            pub const ALL: &'static [ClaimId] = &[$(ClaimId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(ClaimId::$variant => $id,)*
                }
            }

            /// Whether the claim needs an amalgamation or applies to any ring.
            pub fn scope(self) -> Scope {
                match self {
                    $(ClaimId::$variant => Scope::$scope,)*
                }
            }

            pub fn statement(self) -> &'static str {
                match self {
                    $(ClaimId::$variant => $statement,)*
                }
            }
        }

        impl FromStr for ClaimId {
            type Err = Error;

            fn from_str(s: &str) -> Result<ClaimId> {
                match s {
                    $($id => Ok(ClaimId::$variant),)*
                    _ => Err(Error::Input(format!("unknown claim id '{s}'"))),
                }
            }
        }
    };
}

registry! {
    LZdInc => "L-zd-inc", Amalgam, "Z(A) ⊆ S1 ∪ S2";
    LZdEq1 => "L-zd-eq1", Amalgam, "f(Z(R)) ⊆ J and f⁻¹(J) ≠ 0 ⇒ Z(A) = S1 ∪ S2";
    LZdEq2 => "L-zd-eq2", Amalgam, "f(Z(R))J = 0 and f⁻¹(J) ≠ 0 ⇒ Z(A) = S1 ∪ S2";
    LZdEq3 => "L-zd-eq3", Amalgam, "J ⊆ f(R) ⇒ Z(A) = S1 ∪ S2";
    LZdEq4 => "L-zd-eq4", Amalgam, "J torsion ⇒ Z(A) = S1 ∪ S2";
    RTrivext => "R-trivext", Amalgam, "R ⋉ M has ⋆ and Z(R ⋉ M) = (Z(R) ∪ Z(M)) ⋉ M";
    LLocReg => "L-loc-reg", Ring, "Z(R) ⊆ Jac(R) ⇒ (r/1 ∈ Reg(R_m) ⇔ r ∈ Reg(R))";
    LRtoFast => "L-rto-fast", Ring, "Z(R) ⊆ Jac(R) ⇒ (regular total order at m ⇔ regular principal pairs comparable at m)";
    RSpec => "R-spec", Amalgam, "Spec(A) = {p'} ∪ {q̄ : q ∉ V(J)}";
    RMax => "R-max", Amalgam, "Max(A) = {p' : p ∈ Max(R)} ∪ {q̄ : q ∈ Max(S) ∖ V(J)}";
    RLocA => "R-loc-a", Amalgam, "A_q̄ ≅ S_q for q ∈ Spec(S) ∖ V(J)";
    RLocB => "R-loc-b", Amalgam, "A_p' ≅ R_p for p ∌ f⁻¹(J)";
    RLocC => "R-loc-c", Amalgam, "A_p' ≅ R_p ⋈^{f_p} J_{T_p} for p ⊇ f⁻¹(J)";
    TMain1 => "T-main-1", Amalgam, "f(Reg(R)) ⊆ Reg(S): A Prüfer ⇒ R Prüfer and J_{T_m} = f(r)J_{T_m}";
    TMain2 => "T-main-2", Amalgam, "f(Reg(R)) ⊆ Reg(S), ⋆, Z(A) ⊆ Jac(A): R Prüfer and J_{T_m} = f(r)J_{T_m} ⇒ A Prüfer";
    CLocal1 => "C-local-1", Amalgam, "R local, J ⊆ Jac(S), f(Reg(R)) ⊆ Reg(S): A Prüfer ⇒ R Prüfer and J = f(r)J";
    CLocal2 => "C-local-2", Amalgam, "R local, J ⊆ Jac(S), f(Reg(R)) ⊆ Reg(S), ⋆: R Prüfer and J = f(r)J ⇒ A Prüfer";
    CDup1 => "C-dup-1", Amalgam, "R ⋈ I Prüfer ⇒ R Prüfer and I_m = rI_m";
    CDup2 => "C-dup-2", Amalgam, "Z(R) ⊆ Jac(R), I ⊆ Jac(R): R Prüfer and I_m = rI_m ⇒ R ⋈ I Prüfer";
    CDupLocal => "C-dup-local", Amalgam, "R local: R ⋈ I Prüfer ⇔ R Prüfer and I = rI";
    CTrivext1 => "C-trivext-1", Amalgam, "Z(M) ⊆ Z(R): R ⋉ M Prüfer ⇒ R Prüfer and M_m = rM_m";
    CTrivext2 => "C-trivext-2", Amalgam, "Z(M) ⊆ Z(R), Z(R) ⊆ Jac(R): R Prüfer and M_m = rM_m ⇒ R ⋉ M Prüfer";
    CDomainExt => "C-domain-ext", Amalgam, "R ⊆ B domains: R ⋉ B Prüfer ⇔ R Prüfer domain and aB = B for a ≠ 0";
    PTqr1 => "P-tqr-1", Amalgam, "J ⊆ Jac(S), ⋆: R total quotient ring ⇒ A total quotient ring";
    PTqr2 => "P-tqr-2", Amalgam, "f(Reg(R)) ⊆ Reg(S): A total quotient ring ⇒ R total quotient ring";
    TGaussFwd => "T-gauss-fwd", Amalgam, "R local, J ⊆ f(R) ∩ Jac(S): A Gaussian ⇒ R Gaussian, J² = 0, f(r)J = f(r)²J";
    TGaussBwd => "T-gauss-bwd", Amalgam, "R local, J ⊆ f(R) ∩ Jac(S): R Gaussian, J² = 0, f(r)J = f(r)²J ⇒ A Gaussian";
    CGaussLoc => "C-gauss-loc", Amalgam, "J ⊆ f(R) ∩ Jac(S): A Gaussian ⇔ R Gaussian, J_m² = 0, f(r)J_m = f(r)²J_m";
    TChainFwd => "T-chain-fwd", Amalgam, "J ≠ 0: A chain ⇒ R valuation domain and J = (f(a)+j)J";
    TChainBwd => "T-chain-bwd", Amalgam, "J ≠ 0, J uniserial: R valuation domain and J = (f(a)+j)J ⇒ A chain";
    CChainSq0 => "C-chain-sq0", Amalgam, "J ≠ 0, J² = 0: A chain ⇔ R valuation domain, J uniserial, J = f(a)J";
    CChainFR => "C-chain-fR", Amalgam, "J ⊆ f(R): A chain ⇔ R chain and J = 0";
    CDupChain => "C-dup-chain", Amalgam, "R ⋈ I chain ⇔ R chain and I = 0";
    CArith1 => "C-arith-1", Amalgam, "J ≠ 0, J² = 0: A arithmetical ⇔ R arithmetical, R_p domain on Supp(J), J locally divisible and distributive";
    CArith2 => "C-arith-2", Amalgam, "J ⊆ f(R): A arithmetical ⇔ R arithmetical, J_m = 0 on V(f⁻¹(J)), S_q chain off V(J)";
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Ring,
    Amalgam,
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for ClaimId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for ClaimId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<ClaimId, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One evaluated condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, holds: bool) -> Check {
        Check {
            name: name.into(),
            holds,
            witness: None,
        }
    }

    pub fn failing(name: impl Into<String>, witness: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            holds: false,
            witness: Some(witness.into()),
        }
    }

    /// `Check::new` with a witness attached when the condition fails.
    pub fn with(name: impl Into<String>, failure: Option<String>) -> Check {
        match failure {
            None => Check::new(name, true),
            Some(w) => Check::failing(name, w),
        }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Check {
        self.name = name.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    HypothesisNotMet,
    Falsified,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::HypothesisNotMet => "hypothesis-not-met",
            Status::Falsified => "falsified",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: ClaimId,
    pub instance_digest: String,
    pub hypotheses: Vec<Check>,
    pub conclusion: Conclusion,
    pub status: Status,
    pub timing_ms: Option<u64>,
}

impl ClaimReport {
    /// One JSON object on a single line.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} on {}: {}\n", self.claim, self.instance_digest, self.status);
        for h in &self.hypotheses {
            out.push_str(&format!("  hypothesis {}: {}", h.name, h.holds));
            if let Some(w) = &h.witness {
                out.push_str(&format!(" ({w})"));
            }
            out.push('\n');
        }
        out.push_str(&format!("  conclusion: {}", self.conclusion.holds));
        if let Some(w) = &self.conclusion.witness {
            out.push_str(&format!(" ({w})"));
        }
        out.push('\n');
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("  time: {ms} ms\n"));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Record wall-clock time in reports. Off by default so that reports are reproducible.
    pub timing: bool,
}

/// Evaluates one claim on one instance.
pub fn verify(claim: ClaimId, instance: &Instance) -> Result<ClaimReport> {
    verify_with(claim, instance, VerifyOptions::default())
}

pub fn verify_with(claim: ClaimId, instance: &Instance, opts: VerifyOptions) -> Result<ClaimReport> {
    let ctx = claims::Ctx::new(instance);
    verify_in(&ctx, claim, opts)
}

fn verify_in(ctx: &claims::Ctx<'_>, claim: ClaimId, opts: VerifyOptions) -> Result<ClaimReport> {
    let start = Instant::now();
    let (hypotheses, conclusion) = claims::evaluate(ctx, claim)?;
    let status = if hypotheses.iter().any(|h| !h.holds) {
        Status::HypothesisNotMet
    } else if conclusion.holds {
        Status::Verified
    } else {
        Status::Falsified
    };
    Ok(ClaimReport {
        claim,
        instance_digest: ctx.instance().digest(),
        hypotheses,
        conclusion,
        status,
        timing_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

/// A failed evaluation inside a suite run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteError {
    pub claim: ClaimId,
    pub instance_digest: String,
    pub error: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteSummary {
    /// Ordered by claim, then by corpus position.
    pub reports: Vec<ClaimReport>,
    pub counts: BTreeMap<String, usize>,
    pub errors: Vec<SuiteError>,
}

impl SuiteSummary {
    /// No falsified report and no evaluation error.
    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.reports.iter().all(|r| r.status != Status::Falsified)
    }

    pub fn count(&self, status: Status) -> usize {
        self.counts.get(status.as_str()).copied().unwrap_or(0)
    }

    pub fn falsified(&self) -> impl Iterator<Item = &ClaimReport> {
        self.reports.iter().filter(|r| r.status == Status::Falsified)
    }

    /// Statuses reached by each claim.
    pub fn coverage(&self) -> BTreeMap<ClaimId, Vec<Status>> {
        let mut out: BTreeMap<ClaimId, Vec<Status>> = BTreeMap::new();
        for r in &self.reports {
            let seen = out.entry(r.claim).or_default();
            if !seen.contains(&r.status) {
                seen.push(r.status);
                seen.sort();
            }
        }
        out
    }
}

/// Evaluates every applicable (claim, instance) pair. Claims needing an
/// amalgamation are skipped on plain rings.
pub fn run_suite(corpus: &[Instance], claims: &[ClaimId], opts: VerifyOptions) -> SuiteSummary {
    let per_instance: Vec<Vec<std::result::Result<ClaimReport, SuiteError>>> = corpus
        .par_iter()
        .map(|inst| {
            let ctx = claims::Ctx::new(inst);
            claims
                .iter()
                .filter(|c| c.scope() == Scope::Ring || inst.amalgam().is_some())
                .map(|&c| {
                    verify_in(&ctx, c, opts).map_err(|e| SuiteError {
                        claim: c,
                        instance_digest: inst.digest(),
                        error: e.to_string(),
                    })
                })
                .collect()
        })
        .collect();
    let mut keyed = Vec::new();
    for (i, results) in per_instance.into_iter().enumerate() {
        for r in results {
            let claim = match &r {
                Ok(rep) => rep.claim,
                Err(e) => e.claim,
            };
            keyed.push(((claim, i), r));
        }
    }
    keyed.sort_by_key(|(k, _)| *k);
    let mut summary = SuiteSummary::default();
    for (_, r) in keyed {
        match r {
            Ok(rep) => {
                *summary.counts.entry(rep.status.as_str().to_string()).or_default() += 1;
                summary.reports.push(rep);
            }
            Err(e) => summary.errors.push(e),
        }
    }
    summary
}
