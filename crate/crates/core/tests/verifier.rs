use proptest::prelude::*;
use ringlab::amalgam::{amalgamation, duplication};
use ringlab::ideal::{all_ideals, Ideal};
use ringlab::ring::{hom_from_generators, make_poly_quotient, make_quotient, make_zmod, Elem, Polynomial};
use ringlab::verifier::*;
use ringlab::Error;

fn hyp(report: &ClaimReport, name: &str) -> bool {
    report
        .hypotheses
        .iter()
        .find(|h| h.name == name)
        .unwrap_or_else(|| panic!("no hypothesis {name} in {report:?}"))
        .holds
}

#[test]
fn registry_round_trips() {
    assert_eq!(ClaimId::ALL.len(), 35);
    for &c in ClaimId::ALL {
        assert_eq!(c.as_str().parse::<ClaimId>().unwrap(), c);
    }
    assert!(matches!("T-main-3".parse::<ClaimId>(), Err(Error::Input(_))));
}

#[test]
fn gaussian_transfer_on_truncated_example() {
    let inst = truncated_example().unwrap();
    let report = verify(ClaimId::TGaussFwd, &inst.clone().into()).unwrap();
    assert_eq!(report.status, Status::Verified);
    assert!(hyp(&report, "R local"));
    assert!(hyp(&report, "J ⊆ f(R) ∩ Jac(S)"));
    let w = report.conclusion.witness.as_deref().unwrap();
    assert!(w.contains("lhs A Gaussian = false"), "{w}");
    assert!(w.contains("r = X: f(r)J = {[0], [X^3]} but f(r)²J = {[0]}"), "{w}");

    // Oracle: XJ and X^2J computed by hand in S = F2[X]/(X^4) with J = (X^2).
    let s = inst.s();
    let x = s.indeterminate().unwrap();
    let xj: Vec<Elem> = inst.j().members().iter().map(|j| s.mul(x, j)).collect();
    let xxj: Vec<Elem> = inst.j().members().iter().map(|j| s.mul(s.mul(x, x), j)).collect();
    assert!(xj.contains(&s.pow(x, 3)));
    assert!(xxj.iter().all(|&e| e == s.zero()));
}

#[test]
fn localized_gaussian_on_modular_example() {
    let inst: Instance = modular_example().unwrap().into();
    let report = verify(ClaimId::CGaussLoc, &inst).unwrap();
    assert_eq!(report.status, Status::Verified);
    let w = report.conclusion.witness.unwrap();
    assert!(w.contains("m = (2): [6]·[6] = [12] is nonzero in J_m"), "{w}");
    // Oracle: 12 is killed in Z/24 by no odd integer.
    assert!((1..24).step_by(2).all(|u| (12 * u) % 24 != 0));
}

#[test]
fn chain_converse_on_small_instance() {
    let f2 = make_zmod(2).unwrap();
    let s = make_poly_quotient(&f2, &Polynomial::monomial(&f2, 2)).unwrap();
    let f = hom_from_generators(&f2, &s, &[(f2.one(), s.one())]).unwrap();
    let j = Ideal::principal(&s, s.indeterminate().unwrap());
    let inst = amalgamation(&f, &j).unwrap();
    let report = verify(ClaimId::TChainBwd, &inst.clone().into()).unwrap();
    assert_eq!(report.status, Status::Verified);
    assert!(report.hypotheses.iter().all(|h| h.holds));
    assert!(report.conclusion.witness.is_none());
    // Oracle: the ideals of A, enumerated as sets, form a chain.
    let a = inst.a();
    assert_eq!(a.size(), 4);
    let ideals = all_ideals(a).unwrap();
    for p in &ideals {
        for q in &ideals {
            assert!(p.is_subset(q) || q.is_subset(p));
        }
    }
}

#[test]
fn shape_mismatch_is_an_error() {
    let r: Instance = make_zmod(6).unwrap().into();
    assert!(matches!(verify(ClaimId::TMain1, &r), Err(Error::Shape { .. })));
    let report = verify(ClaimId::LLocReg, &r).unwrap();
    assert_eq!(report.status, Status::HypothesisNotMet);
}

#[test]
fn report_serialization_is_stable() {
    let inst: Instance = modular_example().unwrap().into();
    let a = verify(ClaimId::TMain2, &inst).unwrap().to_json();
    let b = verify(ClaimId::TMain2, &inst).unwrap().to_json();
    assert_eq!(a, b);
    let keys = ["\"claim\"", "\"instance_digest\"", "\"hypotheses\"", "\"conclusion\"", "\"status\"", "\"timing_ms\":null"];
    let positions: Vec<usize> = keys.iter().map(|k| a.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{a}");
    let back: ClaimReport = serde_json::from_str(&a).unwrap();
    assert_eq!(back.to_json(), a);
    let timed = verify_with(ClaimId::TMain2, &inst, VerifyOptions { timing: true }).unwrap();
    assert!(timed.timing_ms.is_some());
}

#[test]
fn suite_edge_cases() {
    let empty = run_suite(&[], ClaimId::ALL, VerifyOptions::default());
    assert!(empty.reports.is_empty() && empty.counts.is_empty() && empty.passed());
    let one = run_suite(&[modular_example().unwrap().into()], &[ClaimId::RSpec], VerifyOptions::default());
    assert_eq!(one.reports.len(), 1);
    assert_eq!(one.count(Status::Verified), 1);
}

#[test]
fn small_corpus_contains_every_duplication() {
    let corpus = generate_corpus(CorpusBounds::small(8)).unwrap();
    for n in 2..=8u64 {
        let r = make_zmod(n).unwrap();
        for i in all_ideals(&r).unwrap().into_iter().filter(|i| i.is_proper()) {
            let digest = duplication(&r, &i).unwrap().digest();
            assert!(corpus.iter().any(|c| c.digest() == digest), "missing {digest}");
        }
    }
    let summary = run_suite(&corpus, ClaimId::ALL, VerifyOptions::default());
    assert!(summary.passed(), "{:?}", summary.falsified().next());
}

#[test]
fn default_corpus_shape() {
    let a = generate_corpus(CorpusBounds::default()).unwrap();
    let b = generate_corpus(CorpusBounds::default()).unwrap();
    assert!(a.len() >= 200);
    let da: Vec<String> = a.iter().map(Instance::digest).collect();
    let db: Vec<String> = b.iter().map(Instance::digest).collect();
    assert_eq!(da, db);
    for example in [truncated_example(), modular_example(), gaussian_non_arithmetical_example()] {
        let d = example.unwrap().digest();
        assert!(da.contains(&d), "missing {d}");
    }
    assert!(matches!(
        generate_corpus(CorpusBounds {
            max_poly_size: 1 << 20,
            ..CorpusBounds::default()
        }),
        Err(Error::ResourceCap { .. })
    ));
}

#[test]
fn profile_search() {
    let corpus = generate_corpus(CorpusBounds::default()).unwrap();
    let found = search(&"prufer,!gaussian".parse().unwrap(), &corpus, Some(1100)).unwrap();
    let digests: Vec<String> = found.iter().map(Instance::digest).collect();
    for example in [truncated_example(), modular_example()] {
        assert!(digests.contains(&example.unwrap().digest()));
    }
    assert!(found.windows(2).all(|w| w[0].size() <= w[1].size()));

    let found = search(&"gaussian,!arithmetical".parse().unwrap(), &corpus, None).unwrap();
    let d = gaussian_non_arithmetical_example().unwrap().digest();
    assert!(found.iter().any(|i| i.digest() == d));

    assert!(search(&"chain,!chain".parse().unwrap(), &corpus, None).unwrap().is_empty());
    assert!("prufer,,chain".parse::<Profile>().is_err());
    assert!("noetherian".parse::<Profile>().is_err());
    let p: Profile = "prufer, !total-quotient".parse().unwrap();
    assert_eq!(p.to_string(), "prufer,!total-quotient");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// No claim is falsified on a random amalgamation of Z/n onto Z/d.
    #[test]
    fn no_claim_falsified(n in 2u64..=30, pick in 0usize..64, jpick in 0usize..64) {
        let r = make_zmod(n).unwrap();
        let divisors: Vec<u64> = (2..=n).filter(|d| n % d == 0).collect();
        let d = divisors[pick % divisors.len()];
        let (s, f) = make_quotient(&r, &Ideal::principal(&r, r.from_int(d as i64))).unwrap();
        let proper: Vec<Ideal> = all_ideals(&s).unwrap().into_iter().filter(|i| i.is_proper()).collect();
        let j = &proper[jpick % proper.len()];
        let inst: Instance = amalgamation(&f, j).unwrap().into();
        for &c in ClaimId::ALL {
            let rep = verify(c, &inst).unwrap();
            prop_assert_ne!(rep.status, Status::Falsified, "{}", rep.to_text());
            let hyps_hold = rep.hypotheses.iter().all(|h| h.holds);
            prop_assert_eq!(rep.status == Status::Verified, hyps_hold && rep.conclusion.holds);
            prop_assert_eq!(rep, verify(c, &inst).unwrap());
        }
    }
}
